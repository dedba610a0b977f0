#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gdisc/colourings.hpp"
#include "gdisc/core.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/rng.hpp"

using namespace gdisc;

namespace {

// Reference signed-sum set via raw embedding enumeration.
std::set<int> sums_by_enumeration(const PatternGraph& pattern, const HostColouredGraph& host) {
    std::set<int> out;
    enumerate_embeddings(pattern, host, kDefaultCap, [&](const Embedding& emb) {
        out.insert(signed_sum(pattern, host, emb));
        return true;
    });
    return out;
}

}  // namespace

TEST_CASE("embedding counts on small complete hosts") {
    HostColouredGraph k3 = HostColouredGraph::complete(3, 2, 1);
    HostColouredGraph k4 = HostColouredGraph::complete(4, 2, 1);
    CHECK(count_embeddings(TreeGraph::path(3), k3) == 6);
    CHECK(count_embeddings(TreeGraph::star(4), k4) == 24);
    CHECK(count_embeddings(TreeGraph::path(4), k4) == 24);
    PatternGraph edge(2);
    edge.add_edge(0, 1);
    CHECK(count_embeddings(edge, k4) == 12);
    PatternGraph c4 = PatternGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(count_embeddings(c4, k4) == 24);  // 3 cycles x 8 labellings
}

TEST_CASE("embedding enumeration respects holes in the host") {
    HostColouredGraph host = HostColouredGraph::complete(4, 2, 1);
    host.remove_edge(0, 1);
    // Ordered u-m-v walks with distinct vertices: middle 2 or 3 pairs the
    // other three vertices freely (6 each); middle 0 or 1 only has the two
    // opposite neighbours (2 each).
    CHECK(count_embeddings(TreeGraph::path(3), host) == 16);
}

TEST_CASE("cap exceeded carries the budget") {
    HostColouredGraph k8 = HostColouredGraph::complete(8, 2, 1);
    CHECK_THROWS_AS(count_embeddings(TreeGraph::path(8), k8, 10), cap_exceeded);
    try {
        count_embeddings(TreeGraph::path(8), k8, 10);
    } catch (const cap_exceeded& e) {
        CHECK(e.cap == 10);
        CHECK(e.nodes > 10);
    }
}

TEST_CASE("hamilton cycle and path counts on complete hosts") {
    CHECK(hamilton_cycles(HostColouredGraph::complete(5, 2, 1),
                          [](const std::vector<int>&) { return true; }) == 12);
    CHECK(hamilton_cycles(HostColouredGraph::complete(8, 2, 1),
                          [](const std::vector<int>&) { return true; }) == 2520);
    CHECK(hamilton_paths(HostColouredGraph::complete(4, 2, 1),
                         [](const std::vector<int>&) { return true; }) == 12);
    CHECK(hamilton_paths(HostColouredGraph::complete(5, 2, 1),
                         [](const std::vector<int>&) { return true; }) == 60);
    // Desk-scale guards.
    CHECK_THROWS_AS(hamilton_cycles(HostColouredGraph::complete(15, 2, 1),
                                    [](const std::vector<int>&) { return true; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(hamilton_paths(HostColouredGraph::complete(13, 2, 1),
                                   [](const std::vector<int>&) { return true; }),
                    std::invalid_argument);
}

TEST_CASE("hamilton cycles are canonical and genuine") {
    HostColouredGraph host = HostColouredGraph::complete(6, 2, 1);
    host.remove_edge(0, 1);
    long long seen = 0;
    hamilton_cycles(host, [&](const std::vector<int>& seq) {
        ++seen;
        CHECK((int)seq.size() == 6);
        CHECK(seq[0] == 0);
        CHECK(seq[1] < seq[5]);  // reflection representative
        for (int i = 0; i < 6; ++i) CHECK(host.has_edge(seq[i], seq[(i + 1) % 6]));
        return true;
    });
    // K6 has 60 cycles of 6 edges each over 15 edges, so every edge lies on
    // 60*6/15 = 24 of them; removing one edge leaves 60 - 24 = 36.
    CHECK(seen == 36);
}

TEST_CASE("star factor enumeration") {
    // A factor designates centres: 3 pairings of 4 vertices, 2 centres per
    // 2-star.
    CHECK(enumerate_sfactors(4, 2, [](const StarFactor&) { return true; }) == 12);
    CHECK(enumerate_sfactors(6, 2, [](const StarFactor&) { return true; }) == 120);
    // Partitions of 6 into two 3-sets (10) times 3 centre choices each side.
    CHECK(enumerate_sfactors(6, 3, [](const StarFactor&) { return true; }) == 90);
    long long withShape = enumerate_sfactors(6, 3, [](const StarFactor& f) {
        REQUIRE(f.stars.size() == 2);
        for (const auto& [centre, leaves] : f.stars) {
            CHECK((int)leaves.size() == 2);
            CHECK(std::find(leaves.begin(), leaves.end(), centre) == leaves.end());
        }
        return true;
    });
    CHECK(withShape == 90);
    CHECK_THROWS_AS(enumerate_sfactors(7, 2, [](const StarFactor&) { return true; }),
                    std::invalid_argument);  // starSize must divide n
}

TEST_CASE("labelled tree enumeration matches Cayley's formula") {
    CHECK(enumerate_trees_labelled(2, [](const TreeGraph&) { return true; }) == 1);
    CHECK(enumerate_trees_labelled(4, [](const TreeGraph&) { return true; }) == 16);
    CHECK(enumerate_trees_labelled(7, [](const TreeGraph&) { return true; }) == 16807);
    CHECK_THROWS_AS(enumerate_trees_labelled(11, [](const TreeGraph&) { return true; }),
                    std::invalid_argument);
}

TEST_CASE("prufer decoding") {
    TreeGraph edge = prufer_decode({});
    CHECK(edge.n() == 2);
    CHECK(edge.has_edge(0, 1));
    TreeGraph star = prufer_decode({0, 0});
    CHECK(star.n() == 4);
    CHECK(star.degree(0) == 3);
    TreeGraph path = prufer_decode({1, 2});
    CHECK(path.max_degree() == 2);
}

TEST_CASE("random trees are valid and seed-deterministic") {
    Rng a(7), b(7), c(8);
    TreeGraph ta = random_tree(12, a);
    TreeGraph tb = random_tree(12, b);
    TreeGraph tc = random_tree(12, c);
    CHECK(ta.edges() == tb.edges());
    CHECK(ta.edges() != tc.edges());
    CHECK(ta.connected());
    CHECK(ta.m() == 11);
}

TEST_CASE("max colour oracle against brute enumeration") {
    HostColouredGraph mono = HostColouredGraph::complete(5, 2, 1);
    CHECK(max_colour_oracle(TreeGraph::path(5), mono, 1) == 4);
    CHECK(max_colour_oracle(TreeGraph::path(5), mono, 2) == 0);

    HostColouredGraph host = gen_balanced_random(7, 2, 5);
    for (const TreeGraph& tree : {TreeGraph::path(7), TreeGraph::star(7)}) {
        for (int colour = 1; colour <= 2; ++colour) {
            long long brute = -1;
            enumerate_embeddings(tree, host, kDefaultCap, [&](const Embedding& emb) {
                brute = std::max(brute, colour_profile(tree, host, emb).counts[colour]);
                return true;
            });
            CHECK(max_colour_oracle(tree, host, colour) == brute);
        }
    }
    // A witnessed lower bound that is already optimal is returned unchanged.
    CHECK(max_colour_oracle(TreeGraph::path(5), mono, 1, kDefaultCap, 4) == 4);
}

TEST_CASE("reachable sums: closed forms") {
    PatternGraph edge(2);
    edge.add_edge(0, 1);
    HostColouredGraph mixed(3, 2);
    mixed.set_edge(0, 1, 1);
    mixed.set_edge(1, 2, 2);
    CHECK(reachable_sums(edge, mixed) == std::set<int>{-1, 1});

    HostColouredGraph mono = HostColouredGraph::complete(4, 2, 1);
    CHECK(reachable_sums(TreeGraph::path(3), mono) == std::set<int>{2});
    PatternGraph pm4(4);
    pm4.add_edge(0, 1);
    pm4.add_edge(2, 3);
    CHECK(reachable_sums(pm4, mono) == std::set<int>{2});
    HostColouredGraph red = HostColouredGraph::complete(4, 2, 2);
    CHECK(reachable_sums(pm4, red) == std::set<int>{-2});
}

TEST_CASE("reachable sums: dedicated enumerators match raw enumeration") {
    // n = 8 hosts run through the subset-DP fast path for paths and cycles;
    // cross-check against the definitional enumeration.
    HostColouredGraph host = gen_balanced_random(8, 2, 3);
    HostColouredGraph bip = gen_bipartite_random(8, 5);
    PatternGraph c8 = PatternGraph::from_edges(
        8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}});
    PatternGraph pm8(8);
    for (int i = 0; i < 4; ++i) pm8.add_edge(2 * i, 2 * i + 1);

    for (const HostColouredGraph* h : {&host, &bip}) {
        CHECK(reachable_sums(TreeGraph::path(8), *h) == sums_by_enumeration(TreeGraph::path(8), *h));
        CHECK(reachable_sums(c8, *h) == sums_by_enumeration(c8, *h));
        CHECK(reachable_sums(pm8, *h) == sums_by_enumeration(pm8, *h));
    }

    // Generic patterns fall back to raw enumeration: a triangle with a tail.
    PatternGraph tadpole = PatternGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}});
    CHECK(reachable_sums(tadpole, host) == sums_by_enumeration(tadpole, host));

    HostColouredGraph three = HostColouredGraph::complete(4, 3, 1);
    CHECK_THROWS_AS(reachable_sums(pm8, three), std::invalid_argument);
}
