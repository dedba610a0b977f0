#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "gdisc/colourings.hpp"
#include "gdisc/io.hpp"
#include "gdisc/switching.hpp"

using namespace gdisc;

namespace {

std::pair<int, int> norm(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// The two copy edges a switchable pair occupies.
std::set<std::pair<int, int>> pair_edges(const SwitchablePair& p) {
    return {norm(p.u, p.w), norm(p.v, p.z)};
}

}  // namespace

TEST_CASE("switchable pair kinds") {
    // Kind I: the outer edges of a path end in leaves.
    TreeGraph p4 = TreeGraph::path(4);
    auto kindI = is_switchable(p4, {0, 1}, {2, 3});
    REQUIRE(kindI.has_value());
    CHECK(kindI->kind == SwitchKind::I);
    CHECK(kindI->w == 0);  // leaves take the w/z roles
    CHECK(kindI->z == 3);
    CHECK(kindI->u == 1);
    CHECK(kindI->v == 2);

    // Kind II: degree-2 vertices 1 and 4 share neighbour 0; the far edge
    // endpoints 2 and 5 are internal, so kind I does not fire.
    TreeGraph twoLegs =
        TreeGraph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}});
    auto kindII = is_switchable(twoLegs, {1, 2}, {4, 5});
    REQUIRE(kindII.has_value());
    CHECK(kindII->kind == SwitchKind::II);
    CHECK(kindII->u == 1);
    CHECK(kindII->v == 4);

    // Kind III: degree-2 vertices joined by a tree edge.
    TreeGraph p5 = TreeGraph::path(5);
    auto kindIII = is_switchable(p5, {0, 1}, {2, 3});
    REQUIRE(kindIII.has_value());
    CHECK(kindIII->kind == SwitchKind::III);
    CHECK(kindIII->u == 1);
    CHECK(kindIII->v == 2);

    // Sharing a vertex is never switchable.
    CHECK(!is_switchable(p5, {0, 1}, {1, 2}).has_value());

    // Two internal spine edges with high-degree endpoints match no kind.
    TreeGraph spine = TreeGraph::from_edges(
        8, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {1, 5}, {2, 6}, {3, 7}});
    CHECK(!is_switchable(spine, {0, 1}, {2, 3}).has_value());
}

TEST_CASE("free families are edge-disjoint, switchable and large enough") {
    for (int n : {4, 7, 10, 13}) {
        TreeGraph path = TreeGraph::path(n);
        FreeFamily fam = find_free_family(path);
        CHECK((int)fam.pairs.size() >= (n - 1) / 3);
        std::set<std::pair<int, int>> seen;
        for (const SwitchablePair& p : fam.pairs) {
            auto cls = is_switchable(path, norm(p.u, p.w), norm(p.v, p.z));
            REQUIRE(cls.has_value());
            for (const auto& e : pair_edges(p)) CHECK(seen.insert(e).second);
        }
    }
    CHECK(find_free_family(TreeGraph::star(9)).pairs.empty());
    CHECK(free_family_guarantee(TreeGraph::star(9)) == 0);
    CHECK(free_family_guarantee(TreeGraph::path(10)) == 3);
    // General guarantee: ceil((n-1-maxdeg)/40) for a big caterpillar.
    TreeGraph cat = gen_caterpillar(60, 120);
    int maxdeg = cat.max_degree();
    FreeFamily fam = find_free_family(cat);
    CHECK((int)fam.pairs.size() >= (120 - 1 - maxdeg + 39) / 40);
}

TEST_CASE("apply_switching swaps the role images") {
    HostColouredGraph k5 = HostColouredGraph::complete(5, 2, 1);
    TreeGraph p5 = TreeGraph::path(5);
    Embedding emb(std::vector<int>{0, 1, 2, 3, 4});

    auto kindIII = is_switchable(p5, {0, 1}, {2, 3});
    REQUIRE(kindIII.has_value());
    Embedding after = apply_switching(emb, *kindIII, k5);
    CHECK(after.map() == std::vector<int>{0, 2, 1, 3, 4});  // u=1 and v=2 swap
    CHECK(validate_embedding(p5, k5, after).empty());

    TreeGraph p4 = TreeGraph::path(4);
    auto kindI = is_switchable(p4, {0, 1}, {2, 3});
    Embedding emb4(std::vector<int>{0, 1, 2, 3});
    Embedding after4 = apply_switching(emb4, *kindI, HostColouredGraph::complete(4, 2, 1));
    CHECK(after4.map() == std::vector<int>{3, 1, 2, 0});  // leaves w=0 and z=3 swap

    // Replacement edges must exist in the host.
    HostColouredGraph holed = HostColouredGraph::complete(5, 2, 1);
    holed.remove_edge(1, 3);  // new image edge u->z would be (1, 3)
    CHECK_THROWS_AS(apply_switching(emb, *kindIII, holed), ghost_replacement_error);
}

TEST_CASE("marked cycle classification by pattern") {
    auto mk = [](int cXY, int cYU, int cUV, int cVX, int r) {
        HostColouredGraph host = HostColouredGraph::complete(4, r, r);
        host.set_edge(0, 1, cXY);
        host.set_edge(1, 2, cYU);
        host.set_edge(2, 3, cUV);
        host.set_edge(0, 3, cVX);
        return host;
    };
    auto pat = [&](int cXY, int cYU, int cUV, int cVX, int r) {
        auto c = classify_marked(mk(cXY, cYU, cUV, cVX, r), 0, 1, 2, 3, 1);
        REQUIRE(c.has_value());
        return c->pattern;
    };
    CHECK(pat(1, 1, 1, 2, 2) == CyclePattern::I);
    CHECK(pat(1, 2, 1, 2, 2) == CyclePattern::II);
    CHECK(pat(1, 2, 2, 2, 2) == CyclePattern::III);
    // All-blue cycles match nothing, nor do ones with a missing edge.
    CHECK(!classify_marked(mk(1, 1, 1, 1, 2), 0, 1, 2, 3, 1).has_value());
    HostColouredGraph gap = mk(1, 2, 2, 2, 2);
    gap.remove_edge(1, 2);
    CHECK(!classify_marked(gap, 0, 1, 2, 3, 1).has_value());

    auto c = classify_marked(mk(1, 3, 2, 3, 3), 0, 1, 2, 3, 1);
    REQUIRE(c.has_value());
    CHECK(c->pattern == CyclePattern::III);
    CHECK(c->increases_colour(2));
    CHECK(!c->increases_colour(3));
    CHECK(lead_desirable(*c, 3));   // colour 3 is not increased
    CHECK(!lead_desirable(*c, 2));  // the only candidate colour is increased
}

TEST_CASE("marked cycle objects are counted once each") {
    // One blue edge in an otherwise red K4: exactly the two cycles through
    // that edge classify (pattern III), one marked pair each.
    HostColouredGraph host = HostColouredGraph::complete(4, 2, 2);
    host.set_edge(0, 1, 1);
    CycleFilter all;
    MarkedCycleCount cnt = count_marked_cycles(host, all, DecisionMode::Exact);
    CHECK(cnt.exact);
    CHECK(cnt.count == doctest::Approx(2));

    CycleFilter onlyIII;
    onlyIII.patternI = onlyIII.patternII = false;
    CHECK(count_marked_cycles(host, onlyIII, DecisionMode::Exact).count == doctest::Approx(2));

    // With a third colour elsewhere the pattern-III objects increase colour 2
    // and are excluded by the non-increasing filter.
    HostColouredGraph h3 = HostColouredGraph::complete(4, 3, 3);
    h3.set_edge(0, 1, 1);
    h3.set_edge(2, 3, 2);
    CycleFilter noInc2;
    noInc2.notIncreasingFor = 2;
    CHECK(count_marked_cycles(h3, noInc2, DecisionMode::Exact).count == doctest::Approx(0));
    CycleFilter plain;
    CHECK(count_marked_cycles(h3, plain, DecisionMode::Exact).count == doctest::Approx(2));

    MarkedCycleCount sampled =
        count_marked_cycles(gen_balanced_random(30, 3, 2), plain, DecisionMode::Sampled, 20000, 1);
    CHECK(!sampled.exact);
    CHECK(sampled.count >= 0);
    CHECK(sampled.stderrEstimate >= 0);
}

TEST_CASE("maximize pipeline on monochromatic hosts") {
    HostColouredGraph mono = HostColouredGraph::complete(8, 2, 1);
    TreeGraph p8 = TreeGraph::path(8);
    MaximizeResult r = maximize_colour(p8, mono, 1, 3, 11);
    CHECK(r.achieved == 7);
    CHECK(r.reportedBound == doctest::Approx(7.0));
    CHECK(validate_embedding(p8, mono, r.best).empty());
    CHECK((int)r.attempts.size() == 3);
    CHECK(r.bestAttempt >= 0);

    MaximizeResult zero = maximize_colour(p8, mono, 2, 2, 11);
    CHECK(zero.achieved == 0);

    MaximizeResult again = maximize_colour(p8, mono, 1, 3, 11);
    CHECK(write_embedding(again.best) == write_embedding(r.best));

    HostColouredGraph holed = mono;
    holed.remove_edge(0, 1);
    CHECK_THROWS_AS(maximize_colour(p8, holed, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("maximize pipeline beats the r-way average on random colourings") {
    HostColouredGraph host = gen_balanced_random(12, 3, 9);
    TreeGraph tree = gen_caterpillar(5, 12);
    MaximizeResult r = maximize_colour(tree, host, 1, 30, 5);
    CHECK(r.achieved >= (12 - 1 + 2) / 3);  // ceil((n-1)/r)
    ColourProfile prof = colour_profile(tree, host, r.best);
    CHECK(prof.counts[1] == r.achieved);
}

TEST_CASE("lead pipeline reports the minimum lead of colour 1") {
    HostColouredGraph mono = HostColouredGraph::complete(6, 2, 1);
    TreeGraph p6 = TreeGraph::path(6);
    LeadResult r = lead_colour_kn(p6, mono, 2, 3);
    CHECK(r.lead == 5);
    CHECK(validate_embedding(p6, mono, r.best).empty());
    REQUIRE(r.desirablePerColour.size() == r.attempts.size());

    HostColouredGraph host = gen_balanced_random(10, 3, 4);
    LeadResult s = lead_colour_kn(p6, host, 10, 3);
    ColourProfile prof = colour_profile(TreeGraph::path(6), host, s.best);
    long long lead = prof.counts[1] - std::max(prof.counts[2], prof.counts[3]);
    CHECK(s.lead == lead);
}

TEST_CASE("desirable switchings need a classified cycle") {
    TreeGraph p6 = TreeGraph::path(6);
    HostColouredGraph mono = HostColouredGraph::complete(6, 2, 1);
    FreeFamily fam = find_free_family(p6);
    Embedding emb(std::vector<int>{0, 1, 2, 3, 4, 5});
    auto always = [](const MarkedCycle&) { return true; };
    CHECK(desirable_switchings(emb, fam, mono, always, 1).empty());
}
