#include "gdisc/io.hpp"

#include <fstream>
#include <sstream>

namespace gdisc {

namespace {

struct LineReader {
    std::istringstream in;
    int lineno = 0;
    explicit LineReader(const std::string& text) : in(text) {}

    // Next non-empty line; false at end of input.
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at line " + std::to_string(lineno) + ": " + what);
    }

    std::vector<long long> fields(const std::string& line, size_t want) {
        std::istringstream ls(line);
        std::vector<long long> out;
        long long x;
        while (ls >> x) out.push_back(x);
        std::string rest;
        if (ls >> rest) fail("trailing token '" + rest + "'");
        if (out.size() != want)
            fail("expected " + std::to_string(want) + " fields, got " + std::to_string(out.size()));
        return out;
    }
};

}  // namespace

std::string write_host(const HostColouredGraph& host) {
    std::ostringstream out;
    out << host.n() << ' ' << host.r() << '\n';
    for (auto [u, v, c] : host.edges()) out << u << ' ' << v << ' ' << c << '\n';
    return out.str();
}

std::string write_pattern(const PatternGraph& g) {
    std::ostringstream out;
    out << g.n() << " 0\n";
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

std::string write_embedding(const Embedding& emb) {
    std::ostringstream out;
    for (int p = 0; p < emb.size(); ++p) out << p << ' ' << emb(p) << '\n';
    return out.str();
}

HostColouredGraph read_host(const std::string& text) {
    LineReader rd(text);
    std::string line;
    if (!rd.next(line)) rd.fail("missing header");
    auto hdr = rd.fields(line, 2);
    if (hdr[0] < 0 || hdr[1] < 1 || hdr[1] > 255) rd.fail("bad host header");
    HostColouredGraph host((int)hdr[0], (int)hdr[1]);
    while (rd.next(line)) {
        auto f = rd.fields(line, 3);
        if (f[0] < 0 || f[0] >= host.n() || f[1] < 0 || f[1] >= host.n() || f[0] >= f[1])
            rd.fail("bad edge endpoints");
        if (f[2] < 1 || f[2] > host.r()) rd.fail("colour out of range (0 marks nothing; omit absent pairs)");
        if (host.has_edge((int)f[0], (int)f[1])) rd.fail("duplicate edge");
        host.set_edge((int)f[0], (int)f[1], (int)f[2]);
    }
    return host;
}

PatternGraph read_pattern(const std::string& text) {
    LineReader rd(text);
    std::string line;
    if (!rd.next(line)) rd.fail("missing header");
    auto hdr = rd.fields(line, 2);
    if (hdr[0] < 0 || hdr[1] != 0) rd.fail("bad pattern header (want \"n 0\")");
    PatternGraph g((int)hdr[0]);
    while (rd.next(line)) {
        auto f = rd.fields(line, 2);
        if (f[0] < 0 || f[0] >= g.n() || f[1] < 0 || f[1] >= g.n() || f[0] >= f[1])
            rd.fail("bad edge endpoints");
        if (g.has_edge((int)f[0], (int)f[1])) rd.fail("duplicate edge");
        g.add_edge((int)f[0], (int)f[1]);
    }
    return g;
}

TreeGraph read_tree(const std::string& text) { return TreeGraph(read_pattern(text)); }

Embedding read_embedding(const std::string& text) {
    LineReader rd(text);
    std::string line;
    std::vector<int> map;
    while (rd.next(line)) {
        auto f = rd.fields(line, 2);
        if (f[0] != (long long)map.size()) rd.fail("pattern vertices must appear in order 0,1,...");
        if (f[1] < 0) rd.fail("negative host vertex");
        map.push_back((int)f[1]);
    }
    return Embedding(std::move(map));
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spew_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace gdisc
