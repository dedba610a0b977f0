// Acceptance battery.  Usage: acceptance <criterion 1..14>.
// Each criterion prints its per-case counts indented, then a single
// "PASS <k> (<name>)" / "FAIL <k> (<name>)" line; exit code 0 iff it passed.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gdisc/colourings.hpp"
#include "gdisc/core.hpp"
#include "gdisc/ksum.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/record.hpp"
#include "gdisc/repair.hpp"
#include "gdisc/rng.hpp"
#include "gdisc/switching.hpp"
#include "gdisc/verify.hpp"

using namespace gdisc;

namespace {

struct Criterion {
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& line) {
        lines.push_back(std::string(ok ? "ok: " : "FAIL: ") + line);
        if (!ok) pass = false;
    }
};

Criterion from_report(const ClaimReport& rep) { return {rep.pass, rep.lines}; }

// Criterion 2: random switchings never corrupt the embedding, and the
// colour-profile change is exactly the one read off the host 4-cycle
// closed by the two copy edges and the two replacement edges.
Criterion switching_soundness() {
    Criterion crit;
    const long long wanted = 100000;
    long long done = 0, invalid = 0, mismatched = 0, trees = 0;
    long long byKind[4] = {0, 0, 0, 0};
    Rng rng(derive_seed(2, "switching-soundness"));
    while (done < wanted) {
        int n = 4 + (int)rng.below(21);  // 4..24 vertices
        TreeGraph tree = random_tree(n, rng);
        FreeFamily family = find_free_family(tree);
        if (family.pairs.empty()) continue;  // stars carry no switchable pair
        ++trees;
        int r = 2 + (int)rng.below(3);
        HostColouredGraph host = gen_balanced_random(n, r, rng.next());
        Embedding emb(random_injection(n, n, rng));
        for (int use = 0; use < 8 && done < wanted; ++use) {
            const SwitchablePair& p = family.pairs[(size_t)rng.below(family.pairs.size())];
            int U = emb(p.u), W = emb(p.w), V = emb(p.v), Z = emb(p.z);
            ColourProfile before = colour_profile(tree, host, emb);
            emb = apply_switching(emb, p, host);
            if (!validate_embedding(tree, host, emb).empty()) ++invalid;
            std::vector<long long> expected = before.counts;
            --expected[host.colour(U, W)];
            --expected[host.colour(V, Z)];
            ++expected[host.colour(U, Z)];
            ++expected[host.colour(V, W)];
            if (colour_profile(tree, host, emb).counts != expected) ++mismatched;
            ++byKind[(int)p.kind];
            ++done;
        }
    }
    std::ostringstream s;
    s << done << " switchings over " << trees << " random trees (kind I/II/III = " << byKind[1]
      << "/" << byKind[2] << "/" << byKind[3] << "); " << invalid << " invalid embeddings, "
      << mismatched << " profile deltas off the 4-cycle prediction";
    crit.check(invalid == 0 && mismatched == 0, s.str());
    return crit;
}

// Criterion 9: the switching pipeline reaches the averaging bound on nearly
// every random balanced instance and never beats the exact oracle.
Criterion maximize_vs_oracle() {
    Criterion crit;
    int total = 0, hits = 0, oracleViolations = 0;
    for (int n : {10, 12}) {
        for (int r : {2, 3}) {
            int cellHits = 0;
            for (int s = 0; s < 25; ++s) {
                uint64_t cellSeed =
                    derive_seed(9, "maximize-cell", (uint64_t)(n * 10 + r) * 100 + (uint64_t)s);
                HostColouredGraph host = gen_balanced_random(n, r, cellSeed);
                Rng treeRng(derive_seed(cellSeed, "tree"));
                TreeGraph tree = random_tree(n, treeRng);
                while (tree.max_degree() == n - 1) tree = random_tree(n, treeRng);
                auto sizes = host.class_sizes();
                int colour = 1;
                for (int c = 2; c <= r; ++c)
                    if (sizes[c] > sizes[colour]) colour = c;
                MaximizeResult res =
                    maximize_colour(tree, host, colour, 50, derive_seed(cellSeed, "run"));
                int need = (n - 1 + r - 1) / r;  // ceil((n-1)/r)
                if (res.achieved >= need) ++hits, ++cellHits;
                int exact = max_colour_oracle(tree, host, colour, kDefaultCap, (int)res.achieved);
                if (res.achieved > exact) ++oracleViolations;
                ++total;
            }
            std::ostringstream s;
            s << "n=" << n << " r=" << r << ": " << cellHits << "/25 instances at the bound";
            crit.lines.push_back(s.str());
        }
    }
    std::ostringstream s;
    s << hits << "/" << total << " instances reach ceil((n-1)/r) (need >= 95%); "
      << oracleViolations << " instances beat the exact oracle (need 0)";
    crit.check(hits * 100 >= total * 95 && oracleViolations == 0, s.str());
    return crit;
}

// Criterion 11: plane axioms, exact per-vertex palettes before rebalancing,
// near-equal class sizes after.
Criterion projective_colouring() {
    Criterion crit;
    for (int p : {2, 3, 5}) {
        const int q = p * p + p + 1;
        ProjectivePlane plane = gen_pg(p);
        bool shape = plane.pointCount == q && (int)plane.lines.size() == q;
        for (const auto& line : plane.lines) shape = shape && (int)line.size() == p + 1;
        for (int pt = 0; pt < q; ++pt)
            shape = shape && (int)plane.linesThroughPoint.at(pt).size() == p + 1;
        std::vector<std::vector<int>> together(q, std::vector<int>(q, 0));
        for (const auto& line : plane.lines)
            for (size_t i = 0; i < line.size(); ++i)
                for (size_t j = i + 1; j < line.size(); ++j) ++together[line[i]][line[j]];
        bool pointPairs = true;
        for (int a = 0; a < q; ++a)
            for (int b = a + 1; b < q; ++b) pointPairs = pointPairs && together[a][b] == 1;
        bool linePairs = true;
        for (int a = 0; a < q; ++a)
            for (int b = a + 1; b < q; ++b) {
                std::vector<int> meet;
                std::set_intersection(plane.lines[a].begin(), plane.lines[a].end(),
                                      plane.lines[b].begin(), plane.lines[b].end(),
                                      std::back_inserter(meet));
                linePairs = linePairs && meet.size() == 1;
            }
        std::ostringstream s1;
        s1 << "p=" << p << ": " << q << " points/lines, " << (p + 1)
           << " per line, pairs covered once";
        crit.check(shape && pointPairs && linePairs, s1.str());

        const int r = q + 1, n = 2 * q;
        HostColouredGraph raw = gen_projective_colouring(p, r, n, false);
        int offPalette = 0;
        for (int v = 0; v < n; ++v) {
            std::set<int> palette;
            for (int u = 0; u < n; ++u)
                if (u != v) palette.insert(raw.colour(u, v));
            if ((int)palette.size() != p + 2) ++offPalette;
        }
        std::ostringstream s2;
        s2 << "p=" << p << " n=" << n << " r=" << r << ": " << offPalette
           << " vertices away from an exact " << (p + 2) << "-colour palette";
        crit.check(offPalette == 0, s2.str());

        HostColouredGraph balanced = gen_projective_colouring(p, r, n, true);
        auto cs = balanced.class_sizes();
        long long lo = cs[1], hi = cs[1];
        for (int c = 2; c <= r; ++c) {
            lo = std::min(lo, cs[c]);
            hi = std::max(hi, cs[c]);
        }
        std::ostringstream s3;
        s3 << "p=" << p << " rebalanced class sizes in [" << lo << ", " << hi << "]";
        crit.check(hi - lo <= 1, s3.str());
    }
    return crit;
}

// Criterion 12: exact counts of marked-cycle objects that avoid increasing
// colour 2 grow like n^4 on random balanced 3-colourings.
Criterion marked_cycle_scaling() {
    Criterion crit;
    std::vector<double> ratios;
    for (int n : {20, 30, 40}) {
        HostColouredGraph host = gen_balanced_random(n, 3, 1200 + (uint64_t)n);
        CycleFilter filter;
        filter.notIncreasingFor = 2;
        filter.blue = 1;
        MarkedCycleCount c = count_marked_cycles(host, filter, DecisionMode::Exact);
        double ratio = c.count / ((double)n * n * n * n);
        ratios.push_back(ratio);
        std::ostringstream s;
        s << "n=" << n << ": " << (long long)c.count << " objects, count/n^4 = " << ratio;
        crit.check(c.exact && c.count > 0, s.str());
    }
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    std::ostringstream s;
    s << "ratio spread " << hi / lo << " (need < 2)";
    crit.check(hi < 2 * lo, s.str());
    return crit;
}

// Criterion 13: ghost repair on 60-vertex hosts of min degree >= 57 always
// terminates ghost-free, moves few tree-edge images and honours protection.
Criterion ghost_repair_battery() {
    Criterion crit;
    const int n = 60;
    int failures = 0, maxGhosts = 0, maxDiff = 0;
    long long steps = 0;
    for (int t = 0; t < 50; ++t) {
        Rng rng(derive_seed(13, "repair-battery", (uint64_t)t));
        HostColouredGraph host = gen_balanced_random(n, 2, rng.next());
        for (int a = 0; a < 240; ++a) {
            int u = (int)rng.below(n), v = (int)rng.below(n);
            if (u == v || !host.has_edge(u, v)) continue;
            if (host.degree(u) <= 57 || host.degree(v) <= 57) continue;
            host.remove_edge(u, v);
        }
        TreeGraph tree = random_tree(n, rng);
        while (tree.max_degree() > 5) tree = random_tree(n, rng);
        Embedding emb(random_injection(n, n, rng));
        auto ghosts = validate_embedding(tree, host, emb);
        std::vector<char> ghostIncident(n, 0);
        for (auto [a, b] : ghosts) ghostIncident[a] = ghostIncident[b] = 1;
        std::vector<int> protect;
        for (int v = 0; v < n && (int)protect.size() < 3; ++v)
            if (!ghostIncident[v]) protect.push_back(v);

        RepairResult res = remove_ghost_edges(tree, host, emb, protect);
        bool ok = res.status == RepairStatus::Ok &&
                  validate_embedding(tree, host, res.emb).empty();
        int diff = 0;
        for (auto [a, b] : tree.edges()) {
            std::pair<int, int> before{std::min(emb(a), emb(b)), std::max(emb(a), emb(b))};
            std::pair<int, int> after{std::min(res.emb(a), res.emb(b)),
                                      std::max(res.emb(a), res.emb(b))};
            if (before != after) ++diff;
        }
        ok = ok && diff <= 2 * tree.max_degree() * (int)ghosts.size();
        for (int v : protect) ok = ok && res.emb(v) == emb(v);
        if (!ok) ++failures;
        maxGhosts = std::max(maxGhosts, (int)ghosts.size());
        maxDiff = std::max(maxDiff, diff);
        steps += (long long)res.steps.size();
    }
    std::ostringstream s;
    s << "50 instances at min degree >= 57: " << failures
      << " failures; worst ghosts " << maxGhosts << ", worst edge diff " << maxDiff << ", "
      << steps << " repair steps total";
    crit.check(failures == 0, s.str());
    return crit;
}

// Criterion 14: identical seeds give byte-identical run records for all four
// pipelines.
Criterion determinism() {
    Criterion crit;
    HostColouredGraph kn = gen_balanced_random(12, 2, 5);
    TreeGraph cat = gen_caterpillar(4, 12);

    auto maximizeRecord = [&] {
        return record_maximize(cat, kn, 1, 6, 42, maximize_colour(cat, kn, 1, 6, 42)).dump(2);
    };
    crit.check(maximizeRecord() == maximizeRecord(), "maximize records byte-identical");

    auto leadRecord = [&] {
        return record_lead(cat, kn, 6, 42, lead_colour_kn(cat, kn, 6, 42)).dump(2);
    };
    crit.check(leadRecord() == leadRecord(), "lead records byte-identical");

    HostColouredGraph dense = gen_balanced_random(14, 2, 3);
    dense.remove_edge(0, 1);
    dense.remove_edge(2, 3);
    dense.remove_edge(4, 5);
    TreeGraph cat14 = gen_caterpillar(5, 14);
    auto denseRecord = [&] {
        return record_lead_dense(cat14, dense, 5, 42, lead_colour_dense(cat14, dense, 5, 42))
            .dump(2);
    };
    crit.check(denseRecord() == denseRecord(), "lead-dense records byte-identical");

    PatternGraph pm(8);
    for (int i = 0; i < 4; ++i) pm.add_edge(2 * i, 2 * i + 1);
    HostColouredGraph ksumHost = gen_balanced_random(12, 2, 13);
    KsumParams params;
    params.restarts = 12;
    params.seed = 17;
    auto ksumRecord = [&] {
        return record_ksum(pm, ksumHost, 0, params, ksum_embed(pm, ksumHost, 0, params)).dump(2);
    };
    crit.check(ksumRecord() == ksumRecord(), "ksum records byte-identical");
    return crit;
}

const char* kNames[15] = {"",
                          "free-family",
                          "switching-soundness",
                          "mirrored-halves",
                          "blue-anchor-paths",
                          "odd-parts-cycles",
                          "lopsided-factors",
                          "inert-residue",
                          "ksum-iff",
                          "maximize-vs-oracle",
                          "star-colour-gap",
                          "projective-colouring",
                          "marked-cycle-scaling",
                          "ghost-repair",
                          "determinism"};

Criterion dispatch(int which) {
    switch (which) {
        case 1: return from_report(verify_free_family(9, 100000, 1));
        case 2: return switching_soundness();
        case 3: return from_report(verify_mirrored_halves(4));
        case 4: return from_report(verify_blue_anchor_paths(2));
        case 5: return from_report(verify_odd_parts_cycles(1));
        case 6: return from_report(verify_lopsided_factors(1));
        case 7: return from_report(verify_inert_residue(50, 1));
        case 8: return from_report(verify_ksum_iff({8, 10, 12}, 20, 1, 120));
        case 9: return maximize_vs_oracle();
        case 10: return from_report(verify_star_colour_gap(48));
        case 11: return projective_colouring();
        case 12: return marked_cycle_scaling();
        case 13: return ghost_repair_battery();
        case 14: return determinism();
        default: throw std::invalid_argument("criterion out of range");
    }
}

}  // namespace

namespace {

bool run_criterion(int which) {
    Criterion crit;
    try {
        crit = dispatch(which);
    } catch (const std::exception& e) {
        crit.pass = false;
        crit.lines.push_back(std::string("exception: ") + e.what());
    }
    for (const std::string& line : crit.lines) std::cout << "  " << line << "\n";
    std::cout << (crit.pass ? "PASS " : "FAIL ") << which << " (" << kNames[which] << ")\n";
    return crit.pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 2) {
        std::cerr << "usage: acceptance [criterion 1..14]\n";
        return 2;
    }
    if (argc == 2) {
        int which = std::atoi(argv[1]);
        if (which < 1 || which > 14) {
            std::cerr << "usage: acceptance [criterion 1..14]\n";
            return 2;
        }
        return run_criterion(which) ? 0 : 1;
    }
    int failures = 0;
    for (int which = 1; which <= 14; ++which) failures += !run_criterion(which);
    return failures == 0 ? 0 : 1;
}
