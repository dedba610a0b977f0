#include "gdisc/core.hpp"

#include <algorithm>
#include <numeric>

namespace gdisc {

PatternGraph PatternGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    PatternGraph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void PatternGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
        throw std::invalid_argument("bad pattern edge");
    if (has_edge(u, v)) throw std::invalid_argument("duplicate pattern edge");
    adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
    ++m_;
}

bool PatternGraph::has_edge(int u, int v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
}

int PatternGraph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max<int>(d, (int)a.size());
    return d;
}

bool PatternGraph::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
    }
    return cnt == n_;
}

std::vector<std::pair<int, int>> PatternGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

TreeGraph::TreeGraph(const PatternGraph& g) : PatternGraph(g) {
    if (n() < 1) throw std::invalid_argument("tree needs at least one vertex");
    if (m() != n() - 1) throw std::invalid_argument("tree must have n-1 edges");
    if (!connected()) throw std::invalid_argument("tree must be connected");
}

TreeGraph TreeGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    return TreeGraph(PatternGraph::from_edges(n, edges));
}

TreeGraph TreeGraph::path(int n) {
    PatternGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return TreeGraph(g);
}

TreeGraph TreeGraph::star(int n) {
    PatternGraph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(0, i);
    return TreeGraph(g);
}

HostColouredGraph::HostColouredGraph(int n, int r) : n_(n), r_(r) {
    if (n < 0 || r < 0 || r > 255) throw std::invalid_argument("bad host dimensions");
    words_ = (n + 63) / 64;
    colour_.assign((size_t)n * n, 0);
    adj_.assign((size_t)n * words_, 0);
}

HostColouredGraph HostColouredGraph::complete(int n, int r, int c) {
    HostColouredGraph g(n, r);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_edge(u, v, c);
    return g;
}

void HostColouredGraph::check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) throw std::invalid_argument("bad host pair");
}

void HostColouredGraph::set_edge(int u, int v, int c) {
    check_pair(u, v);
    if (c < 1 || c > r_) throw std::invalid_argument("colour out of range");
    colour_[(size_t)u * n_ + v] = (uint8_t)c;
    colour_[(size_t)v * n_ + u] = (uint8_t)c;
    adj_[(size_t)u * words_ + v / 64] |= 1ull << (v % 64);
    adj_[(size_t)v * words_ + u / 64] |= 1ull << (u % 64);
}

void HostColouredGraph::remove_edge(int u, int v) {
    check_pair(u, v);
    colour_[(size_t)u * n_ + v] = 0;
    colour_[(size_t)v * n_ + u] = 0;
    adj_[(size_t)u * words_ + v / 64] &= ~(1ull << (v % 64));
    adj_[(size_t)v * words_ + u / 64] &= ~(1ull << (u % 64));
}

long long HostColouredGraph::edge_count() const {
    long long total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
}

int HostColouredGraph::degree(int v) const {
    int d = 0;
    for (int w = 0; w < words_; ++w) d += __builtin_popcountll(adj_[(size_t)v * words_ + w]);
    return d;
}

int HostColouredGraph::min_degree() const {
    if (n_ == 0) return 0;
    int d = n_;
    for (int v = 0; v < n_; ++v) d = std::min(d, degree(v));
    return d;
}

std::vector<long long> HostColouredGraph::class_sizes() const {
    std::vector<long long> counts(r_ + 1, 0);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (int c = colour(u, v)) ++counts[c];
    return counts;
}

std::vector<int> HostColouredGraph::neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
        if (has_edge(v, u)) out.push_back(u);
    return out;
}

std::vector<std::tuple<int, int, int>> HostColouredGraph::edges() const {
    std::vector<std::tuple<int, int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (int c = colour(u, v)) out.emplace_back(u, v, c);
    return out;
}

void Embedding::check_valid(int hostN) const {
    std::vector<char> used(hostN, 0);
    for (int h : map_) {
        if (h < 0 || h >= hostN) throw std::invalid_argument("embedding image out of range");
        if (used[h]) throw std::invalid_argument("embedding not injective");
        used[h] = 1;
    }
}

std::vector<int> Embedding::inverse(int hostN) const {
    check_valid(hostN);
    std::vector<int> inv(hostN, -1);
    for (int p = 0; p < (int)map_.size(); ++p) inv[map_[p]] = p;
    return inv;
}

long long ColourProfile::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0ll);
}

std::vector<std::pair<int, int>> validate_embedding(const PatternGraph& pattern,
                                                    const HostColouredGraph& host,
                                                    const Embedding& emb) {
    if (emb.size() != pattern.n()) throw std::invalid_argument("embedding size mismatch");
    emb.check_valid(host.n());
    std::vector<std::pair<int, int>> ghosts;
    for (auto [u, v] : pattern.edges())
        if (!host.has_edge(emb(u), emb(v))) ghosts.emplace_back(u, v);
    return ghosts;
}

ColourProfile colour_profile(const PatternGraph& pattern, const HostColouredGraph& host,
                             const Embedding& emb) {
    if (emb.size() != pattern.n()) throw std::invalid_argument("embedding size mismatch");
    emb.check_valid(host.n());
    ColourProfile profile;
    profile.counts.assign(host.r() + 1, 0);
    for (auto [u, v] : pattern.edges()) {
        int c = host.colour(emb(u), emb(v));
        if (c == 0) throw ghost_edge_error(u, v);
        ++profile.counts[c];
    }
    return profile;
}

int signed_colour_value(int colour) {
    if (colour == 1) return 1;
    if (colour == 2) return -1;
    throw std::invalid_argument("signed value defined for colours 1 and 2 only");
}

int signed_sum(const PatternGraph& pattern, const HostColouredGraph& host, const Embedding& emb) {
    if (host.r() != 2) throw std::invalid_argument("signed sum needs a 2-coloured host");
    ColourProfile p = colour_profile(pattern, host, emb);
    return (int)(p.counts[1] - p.counts[2]);
}

std::vector<BarePath> bare_path_decomposition(const TreeGraph& tree) {
    std::vector<BarePath> out;
    int n = tree.n();
    if (n <= 1) return out;
    // Walk from every non-degree-2 vertex through chains of degree-2
    // vertices; every edge lies on exactly one such walk.
    std::vector<std::vector<char>> used(n);
    for (int v = 0; v < n; ++v) used[v].assign(tree.neighbours(v).size(), 0);
    auto neighbourIndex = [&](int v, int w) {
        const auto& a = tree.neighbours(v);
        return (int)(std::lower_bound(a.begin(), a.end(), w) - a.begin());
    };
    for (int v = 0; v < n; ++v) {
        if (tree.degree(v) == 2) continue;
        const auto& nbrs = tree.neighbours(v);
        for (int idx = 0; idx < (int)nbrs.size(); ++idx) {
            if (used[v][idx]) continue;
            BarePath path;
            path.vertices.push_back(v);
            int prev = v, cur = nbrs[idx];
            used[v][idx] = 1;
            used[cur][neighbourIndex(cur, v)] = 1;
            while (tree.degree(cur) == 2) {
                path.vertices.push_back(cur);
                const auto& cn = tree.neighbours(cur);
                int nxt = cn[0] == prev ? cn[1] : cn[0];
                used[cur][neighbourIndex(cur, nxt)] = 1;
                used[nxt][neighbourIndex(nxt, cur)] = 1;
                prev = cur;
                cur = nxt;
            }
            path.vertices.push_back(cur);
            out.push_back(std::move(path));
        }
    }
    // Deterministic order: by smallest edge of the path.
    auto smallestEdge = [](const BarePath& p) {
        std::pair<int, int> best{INT32_MAX, INT32_MAX};
        for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
            int a = p.vertices[i], b = p.vertices[i + 1];
            if (a > b) std::swap(a, b);
            best = std::min(best, {a, b});
        }
        return best;
    };
    std::sort(out.begin(), out.end(),
              [&](const BarePath& a, const BarePath& b) { return smallestEdge(a) < smallestEdge(b); });
    return out;
}

std::vector<int> degree_histogram(const PatternGraph& g) {
    std::vector<int> hist(g.max_degree() + 1, 0);
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > 0) ++hist[g.degree(v)];
    if (!hist.empty()) hist[0] = 0;
    return hist;
}

}  // namespace gdisc
