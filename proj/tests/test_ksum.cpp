#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "gdisc/colourings.hpp"
#include "gdisc/ksum.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/record.hpp"

using namespace gdisc;

namespace {

PatternGraph perfect_matching(int n) {
    PatternGraph g(n);
    for (int i = 0; i < n / 2; ++i) g.add_edge(2 * i, 2 * i + 1);
    return g;
}

int tree_distance(const PatternGraph& g, int a, int b) {
    std::vector<int> dist(g.n(), -1);
    std::vector<int> queue{a};
    dist[a] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        for (int w : g.neighbours(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist[b];
}

}  // namespace

TEST_CASE("(1,3)-cycles exist generically but never under bipartite colourings") {
    HostColouredGraph host = gen_balanced_random(10, 2, 2);
    auto cyc = find_13_cycle(host);
    REQUIRE(cyc.has_value());
    CHECK(verify_13_cycle(host, *cyc));
    // The minority edge leads the cycle.
    int minority = host.colour(cyc->vertices[0], cyc->vertices[1]);
    CHECK(minority == cyc->minorityColour);

    for (uint64_t seed = 0; seed < 5; ++seed)
        CHECK(!find_13_cycle(gen_bipartite_random(10, seed)).has_value());

    CHECK_THROWS_AS(find_13_cycle(gen_balanced_random(8, 3, 1)), std::invalid_argument);
}

TEST_CASE("type-2 sites verify") {
    HostColouredGraph host = gen_balanced_random(14, 2, 4);
    auto site = find_type2_site(host, 2);
    REQUIRE(site.has_value());
    CHECK(site->kind == SiteKind::Type2);
    CHECK((int)site->bprime.size() == 3);  // 2*maxDegree - 1
    CHECK(verify_site(host, *site));
    CHECK(std::is_sorted(site->bprime.begin(), site->bprime.end()));

    // Corrupting the distinguished vertex breaks verification.
    BipartiteSite bad = *site;
    bad.y = bad.x;
    CHECK(!verify_site(host, bad));
}

TEST_CASE("balanced vertices have both colours in quantity") {
    HostColouredGraph host = gen_balanced_random(20, 2, 6);
    std::vector<int> bal = balanced_vertices(host, 0.25);
    for (int v : bal) {
        int c1 = 0, c2 = 0;
        for (int w = 0; w < 20; ++w) {
            if (w == v) continue;
            if (host.colour(v, w) == 1) ++c1;
            if (host.colour(v, w) == 2) ++c2;
        }
        CHECK(c1 >= 5);
        CHECK(c2 >= 5);
    }
    // A monochromatic host has none.
    CHECK(balanced_vertices(HostColouredGraph::complete(10, 2, 1), 0.1).empty());
}

TEST_CASE("type-1 site counting modes") {
    HostColouredGraph host = gen_balanced_random(12, 2, 3);
    CountEstimate exact = count_type1_sites(host, 1, DecisionMode::Exact);
    CHECK(exact.exact);
    CHECK(exact.count >= 0);
    CountEstimate sampled = count_type1_sites(host, 1, DecisionMode::Sampled, 20000, 9);
    CHECK(!sampled.exact);
    CHECK(sampled.stderrEstimate >= 0);
    // Exact mode is only wired for maxDegree 1.
    CHECK_THROWS_AS(count_type1_sites(host, 2, DecisionMode::Exact), std::invalid_argument);
}

TEST_CASE("distance-3 pair selection") {
    PatternGraph p12 = TreeGraph::path(12);
    PairSelection sel = distance3_pairs(p12);
    REQUIRE(!sel.pairs.empty());
    CHECK(sel.degree > 0);
    std::vector<int> chosen;
    for (auto [a, b] : sel.pairs) {
        CHECK(p12.degree(a) == sel.degree);
        CHECK(p12.degree(b) == sel.degree);
        chosen.push_back(a);
        chosen.push_back(b);
    }
    for (size_t i = 0; i < chosen.size(); ++i)
        for (size_t j = i + 1; j < chosen.size(); ++j)
            CHECK(tree_distance(p12, chosen[i], chosen[j]) >= 3);

    CHECK_THROWS_AS(distance3_pairs(PatternGraph(4)), std::invalid_argument);  // no edges
}

TEST_CASE("residue prediction") {
    // Non-inert: modulus 2, class = edge parity.
    HostColouredGraph host = gen_balanced_random(10, 2, 3);
    ResiduePrediction odd = predict_residue(TreeGraph::path(8), host, 1);
    CHECK(odd.a == 2);
    CHECK(odd.b == 1);
    ResiduePrediction even = predict_residue(TreeGraph::path(5), host, 1);
    CHECK(even.a == 2);
    CHECK(even.b == 0);

    // Inert: modulus 4, class from a constructed copy, consistent with the
    // exact oracle.  The matching spans the host.
    HostColouredGraph bip = gen_bipartite_random(12, 5);
    PatternGraph pm12 = perfect_matching(12);
    ResiduePrediction inert = predict_residue(pm12, bip, 2);
    CHECK(inert.a == 4);
    std::set<int> sums = reachable_sums(pm12, bip);
    for (int s : sums) CHECK(((s % 4) + 4) % 4 == inert.b);

    // A non-spanning all-odd pattern can hit both crossing parities, so the
    // modulus falls back to 2.
    CHECK(predict_residue(perfect_matching(8), bip, 2).a == 2);
}

TEST_CASE("ksum finds targets and rejects wrong residues") {
    HostColouredGraph host = gen_balanced_random(12, 2, 7);
    PatternGraph p8 = TreeGraph::path(8);  // 7 edges: sums are odd
    KsumParams params;
    params.restarts = 40;
    params.seed = 3;

    KsumResult hit = ksum_embed(p8, host, 1, params);
    REQUIRE(hit.status == KsumStatus::Ok);
    CHECK(validate_embedding(p8, host, hit.emb).empty());
    CHECK(signed_sum(p8, host, hit.emb) == 1);
    CHECK(hit.a == 2);
    CHECK(hit.b == 1);
    CHECK(!hit.inert);

    KsumResult wrong = ksum_embed(p8, host, 0, params);
    CHECK(wrong.status == KsumStatus::Infeasible);
    CHECK(wrong.a == 2);
    CHECK(wrong.b == 1);
    CHECK(wrong.attempts.empty());  // decided without search

    // Attempt logs chain their activation deltas.
    for (const KsumAttempt& a : hit.attempts) {
        if (!a.repaired) continue;
        int sum = a.sumAfterRepair;
        for (const GadgetActivation& act : a.activations) {
            CHECK((std::abs(act.delta) == 2 || std::abs(act.delta) == 4));
            sum += act.delta;
            CHECK(act.sumAfter == sum);
        }
    }
}

TEST_CASE("ksum on inert instances uses the exact residue") {
    HostColouredGraph bip = gen_bipartite_random(12, 11);
    PatternGraph pm12 = perfect_matching(12);
    std::set<int> sums = reachable_sums(pm12, bip);
    REQUIRE(!sums.empty());
    int b = ((*sums.begin() % 4) + 4) % 4;

    KsumParams params;
    params.restarts = 60;
    params.seed = 9;
    // The reachable sum closest to zero succeeds.
    int target = *sums.begin();
    for (int s : sums)
        if (std::abs(s) < std::abs(target)) target = s;
    KsumResult ok = ksum_embed(pm12, bip, target, params);
    REQUIRE(ok.status == KsumStatus::Ok);
    CHECK(signed_sum(pm12, bip, ok.emb) == target);
    CHECK(ok.a == 4);
    CHECK(ok.inert);

    // A wrong residue class is infeasible.
    KsumResult bad = ksum_embed(pm12, bip, target + 1, params);
    CHECK(bad.status == KsumStatus::Infeasible);
    CHECK(bad.b == b);
}

TEST_CASE("ksum input validation") {
    HostColouredGraph host = gen_balanced_random(10, 2, 1);
    CHECK_THROWS_AS(ksum_embed(TreeGraph::path(12), host, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(ksum_embed(TreeGraph::path(4), gen_balanced_random(10, 3, 1), 0, {}),
                    std::invalid_argument);
    KsumParams zero;
    zero.restarts = 0;
    CHECK_THROWS_AS(ksum_embed(TreeGraph::path(4), host, 0, zero), std::invalid_argument);
}

TEST_CASE("ksum runs are deterministic") {
    HostColouredGraph host = gen_balanced_random(12, 2, 13);
    PatternGraph pm(6);
    for (int i = 0; i < 3; ++i) pm.add_edge(2 * i, 2 * i + 1);
    KsumParams params;
    params.restarts = 25;
    params.seed = 17;
    KsumResult a = ksum_embed(pm, host, 1, params);
    KsumResult b = ksum_embed(pm, host, 1, params);
    CHECK(record_ksum(pm, host, 1, params, a).dump(2) ==
          record_ksum(pm, host, 1, params, b).dump(2));
}

TEST_CASE("ksum settles rare targets and spectrum holes exactly on small hosts") {
    // K8 with one fixed perfect matching in colour 1, everything else in
    // colour 2.  A copy's sum is determined by how many of those four edges
    // it picks up, so each pattern below has a known spectrum with holes.
    HostColouredGraph host = HostColouredGraph::complete(8, 2, 2);
    for (int i = 0; i < 4; ++i) host.set_edge(2 * i, 2 * i + 1, 1);
    KsumParams params;
    params.restarts = 3;
    params.seed = 5;

    // Perfect matching: p shared edges give sum 2p - 4, and p = 3 forces the
    // fourth edge to match too, so the spectrum is {-4, -2, 0, 4}.
    PatternGraph pm = perfect_matching(8);
    for (int k : {-4, -2, 0, 4}) {
        KsumResult res = ksum_embed(pm, host, k, params);
        REQUIRE(res.status == KsumStatus::Ok);
        CHECK(validate_embedding(pm, host, res.emb).empty());
        CHECK(signed_sum(pm, host, res.emb) == k);
        if (res.exhaustiveCompletion)
            for (const KsumAttempt& a : res.attempts) CHECK(!a.success);
    }
    KsumResult hole = ksum_embed(pm, host, 2, params);
    CHECK(hole.status == KsumStatus::SearchFailed);  // right residue, no witness
    CHECK(!hole.exhaustiveCompletion);
    CHECK(ksum_embed(pm, host, 3, params).status == KsumStatus::Infeasible);

    // Spanning cycle: 8 edges, at most 4 from the matching, sum 2p - 8.
    PatternGraph c8(8);
    for (int i = 0; i < 8; ++i) c8.add_edge(i, (i + 1) % 8);
    KsumResult cyc = ksum_embed(c8, host, 0, params);
    REQUIRE(cyc.status == KsumStatus::Ok);
    CHECK(signed_sum(c8, host, cyc.emb) == 0);
    CHECK(ksum_embed(c8, host, 2, params).status == KsumStatus::SearchFailed);

    // Spanning path: 7 edges, sums 2p - 7 with p <= 4.
    TreeGraph p8 = TreeGraph::path(8);
    KsumResult path = ksum_embed(p8, host, 1, params);
    REQUIRE(path.status == KsumStatus::Ok);
    CHECK(signed_sum(p8, host, path.emb) == 1);
    CHECK(ksum_embed(p8, host, 3, params).status == KsumStatus::SearchFailed);

    // The record carries the completion flag.
    CHECK(record_ksum(p8, host, 1, params, path).contains("exhaustiveCompletion"));
}
