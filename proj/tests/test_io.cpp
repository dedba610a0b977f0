#include <filesystem>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "gdisc/colourings.hpp"
#include "gdisc/core.hpp"
#include "gdisc/io.hpp"

using namespace gdisc;

TEST_CASE("host serialization round-trips bit-exactly") {
    HostColouredGraph host = gen_balanced_random(9, 3, 42);
    std::string text = write_host(host);
    HostColouredGraph back = read_host(text);
    CHECK(back.n() == host.n());
    CHECK(back.r() == host.r());
    CHECK(back.edges() == host.edges());
    CHECK(write_host(back) == text);
}

TEST_CASE("host text format is canonical") {
    HostColouredGraph host(3, 2);
    host.set_edge(1, 2, 2);
    host.set_edge(0, 2, 1);
    CHECK(write_host(host) == "3 2\n0 2 1\n1 2 2\n");
}

TEST_CASE("host parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(read_host(""), doctest::Contains("line"), std::invalid_argument);
    CHECK_THROWS_AS(read_host("3 0\n"), std::invalid_argument);           // r must be >= 1
    CHECK_THROWS_AS(read_host("3 2\n0 2 3\n"), std::invalid_argument);    // colour out of range
    CHECK_THROWS_AS(read_host("3 2\n2 0 1\n"), std::invalid_argument);    // u < v required
    CHECK_THROWS_WITH_AS(read_host("3 2\n0 1 1\n0 1 2\n"), doctest::Contains("line 3"),
                         std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(read_host("3 2\n0 3 1\n"), std::invalid_argument);    // vertex out of range
    // Out-of-order input parses; the writer re-emits the canonical order.
    HostColouredGraph host = read_host("3 2\n1 2 2\n0 1 1\n");
    CHECK(write_host(host) == "3 2\n0 1 1\n1 2 2\n");
}

TEST_CASE("pattern serialization and tree reading") {
    PatternGraph g = PatternGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    std::string text = write_pattern(g);
    CHECK(text == "4 0\n0 1\n0 3\n1 2\n2 3\n");
    PatternGraph back = read_pattern(text);
    CHECK(back.edges() == g.edges());

    // The 4-cycle is not a tree.
    CHECK_THROWS_AS(read_tree(text), std::invalid_argument);
    TreeGraph tree = read_tree(write_pattern(TreeGraph::path(4)));
    CHECK(tree.m() == 3);
}

TEST_CASE("embedding serialization round-trips") {
    Embedding emb(std::vector<int>{4, 2, 7});
    std::string text = write_embedding(emb);
    CHECK(text == "0 4\n1 2\n2 7\n");
    CHECK(read_embedding(text) == emb);
    CHECK_THROWS_AS(read_embedding("1 4\n0 2\n"), std::invalid_argument);  // p not ascending
}

TEST_CASE("file helpers") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "gdisc_io_test.txt";
    spew_file(path.string(), "hello\n");
    CHECK(slurp_file(path.string()) == "hello\n");
    fs::remove(path);
    CHECK_THROWS_AS(slurp_file(path.string()), std::runtime_error);
}
