#include "gdisc/verify.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>

#include "gdisc/colourings.hpp"
#include "gdisc/ksum.hpp"
#include "gdisc/oracle.hpp"
#include "gdisc/rng.hpp"
#include "gdisc/switching.hpp"

namespace gdisc {

namespace {

int mod4(long long x) { return (int)(((x % 4) + 4) % 4); }

bool is_path_tree(const TreeGraph& tree) {
    if (tree.n() < 2) return false;
    for (int v = 0; v < tree.n(); ++v)
        if (tree.degree(v) > 2) return false;
    return true;
}

// Family soundness: stored pairs switchable, their edge sets pairwise
// disjoint, and the family at least as large as the guarantee.
bool family_sound(const TreeGraph& tree, int* sizeOut) {
    FreeFamily fam = find_free_family(tree);
    if (sizeOut) *sizeOut = (int)fam.pairs.size();
    std::set<std::pair<int, int>> used;
    for (const auto& p : fam.pairs) {
        std::pair<int, int> e{std::min(p.u, p.w), std::max(p.u, p.w)};
        std::pair<int, int> f{std::min(p.v, p.z), std::max(p.v, p.z)};
        if (!used.insert(e).second || !used.insert(f).second) return false;
        if (!is_switchable(tree, {p.u, p.w}, {p.v, p.z})) return false;
    }
    int n = tree.n();
    int size = (int)fam.pairs.size();
    if (size < free_family_guarantee(tree)) return false;
    if (size < (n - 1 - tree.max_degree() + 39) / 40) return false;
    if (is_path_tree(tree) && size < (n - 1) / 3) return false;
    return true;
}

}  // namespace

ClaimReport verify_free_family(int maxExhaustiveN, long long sampledCount, uint64_t seed) {
    ClaimReport rep{"free-family", true, {}};
    for (int n = 2; n <= maxExhaustiveN; ++n) {
        long long trees = 0, failures = 0;
        int minSize = INT_MAX;
        enumerate_trees_labelled(n, [&](const TreeGraph& tree) {
            ++trees;
            int size = 0;
            if (!family_sound(tree, &size)) ++failures;
            minSize = std::min(minSize, size);
            return true;
        });
        std::ostringstream s;
        s << "n=" << n << ": " << trees << " labelled trees, min family size " << minSize << ", "
          << failures << " failures";
        rep.check(failures == 0, s.str());
    }
    Rng rng(derive_seed(seed, "tree-sample"));
    long long failures = 0;
    int minSize = INT_MAX;
    for (long long i = 0; i < sampledCount; ++i) {
        int n = 10 + (int)(i % 41);
        TreeGraph tree = random_tree(n, rng);
        int size = 0;
        if (!family_sound(tree, &size)) ++failures;
        minSize = std::min(minSize, size);
    }
    std::ostringstream s;
    s << sampledCount << " sampled trees on 10..50 vertices, min family size " << minSize << ", "
      << failures << " failures";
    rep.check(failures == 0, s.str());
    return rep;
}

ClaimReport verify_mirrored_halves(int bigN) {
    ClaimReport rep{"mirrored-halves", true, {}};
    HostColouredGraph host = gen_mirrored_halves(bigN);
    int n = host.n();
    long long unbalanced = 0;
    long long total = hamilton_cycles(host, [&](const std::vector<int>& seq) {
        long long c1 = 0, c2 = 0;
        for (int i = 0; i < n; ++i) {
            int c = host.colour(seq[i], seq[(i + 1) % n]);
            if (c == 1) ++c1;
            else if (c == 2) ++c2;
        }
        if (c1 != c2) ++unbalanced;
        return true;
    });
    long long expected = 1;
    for (int i = 2; i < n; ++i) expected *= i;
    expected /= 2;
    std::ostringstream s;
    s << total << " Hamilton cycles on " << n << " vertices (expected " << expected << "), "
      << unbalanced << " with unequal colour-1/colour-2 counts";
    rep.check(total == expected && unbalanced == 0, s.str());
    return rep;
}

ClaimReport verify_blue_anchor_paths(int bigN) {
    ClaimReport rep{"blue-anchor-paths", true, {}};
    HostColouredGraph host = gen_blue_anchor_host(bigN);
    int n = host.n();
    long long mismatched = 0;
    std::map<int, long long> distribution;
    long long total = hamilton_paths(host, [&](const std::vector<int>& seq) {
        int blue = 0;
        for (int i = 0; i + 1 < n; ++i)
            if (host.colour(seq[i], seq[i + 1]) == 1) ++blue;
        int endpointsInside = (seq[0] < bigN) + (seq[n - 1] < bigN);
        if (blue != 2 * bigN - endpointsInside) ++mismatched;
        ++distribution[blue];
        return true;
    });
    std::ostringstream s;
    s << total << " Hamilton paths on " << n << " vertices; blue counts:";
    for (auto [blue, cnt] : distribution) s << " " << blue << "x" << cnt;
    s << "; " << mismatched << " off the endpoint rule";
    bool range = true;
    for (auto [blue, cnt] : distribution) {
        (void)cnt;
        if (blue < 2 * bigN - 2 || blue > 2 * bigN) range = false;
    }
    rep.check(total > 0 && mismatched == 0 && range, s.str());
    return rep;
}

ClaimReport verify_odd_parts_cycles(int m) {
    ClaimReport rep{"odd-parts-cycles", true, {}};
    HostColouredGraph host = gen_odd_parts_colouring(m);
    int n = host.n();
    long long offClass = 0;
    long long total = hamilton_cycles(host, [&](const std::vector<int>& seq) {
        long long sum = 0;
        for (int i = 0; i < n; ++i)
            sum += signed_colour_value(host.colour(seq[i], seq[(i + 1) % n]));
        if (mod4(sum) != 2) ++offClass;
        return true;
    });
    long long expected = 1;
    for (int i = 2; i < n; ++i) expected *= i;
    expected /= 2;
    std::ostringstream s;
    s << total << " Hamilton cycles on " << n << " vertices (expected " << expected << "), "
      << offClass << " outside residue 2 mod 4";
    rep.check(total == expected && offClass == 0, s.str());
    return rep;
}

ClaimReport verify_lopsided_factors(int k) {
    ClaimReport rep{"lopsided-factors", true, {}};
    HostColouredGraph host = gen_lopsided_colouring(k);
    int n = host.n();
    int starSize = n / 2;
    long long offClass = 0, zeroSum = 0;
    long long total = enumerate_sfactors(n, starSize, [&](const StarFactor& factor) {
        long long sum = 0;
        for (const auto& [centre, leaves] : factor.stars)
            for (int leaf : leaves) sum += signed_colour_value(host.colour(centre, leaf));
        if (mod4(sum) != 2) ++offClass;
        if (sum == 0) ++zeroSum;
        return true;
    });
    std::ostringstream s;
    s << total << " two-star factors on " << n << " vertices, " << offClass
      << " outside residue 2 mod 4, " << zeroSum << " with sum 0";
    rep.check(total > 0 && offClass == 0 && zeroSum == 0, s.str());
    return rep;
}

ClaimReport verify_inert_residue(int trials, uint64_t seed) {
    ClaimReport rep{"inert-residue", true, {}};
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, "inert-trial", (uint64_t)t));
        int n = 6 + 2 * (int)rng.below(4);
        bool evenDegrees = rng.below(2) == 0;
        PatternGraph pattern(n);
        std::string shape;
        if (evenDegrees) {
            int len = rng.range(3, n);
            for (int i = 0; i < len; ++i) pattern.add_edge(i, (i + 1) % len);
            shape = "C" + std::to_string(len);
        } else {
            for (int i = 0; i < n / 2; ++i) pattern.add_edge(2 * i, 2 * i + 1);
            shape = "matching" + std::to_string(n / 2);
        }
        std::vector<int> perm = random_injection(n, n, rng);
        int size1 = rng.range(1, n - 1);
        std::vector<char> inside(n, 0);
        for (int i = 0; i < size1; ++i) inside[perm[i]] = 1;
        HostColouredGraph host(n, 2);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) host.set_edge(u, v, inside[u] == inside[v] ? 1 : 2);
        bool inert = is_inert(pattern, host);
        std::set<int> sums = reachable_sums(pattern, host);
        bool oneClass = !sums.empty();
        int residue = sums.empty() ? -1 : mod4(*sums.begin());
        for (int s : sums)
            if (mod4(s) != residue) oneClass = false;
        std::ostringstream s;
        s << "trial " << t << ": n=" << n << " H=" << shape << " parts=(" << size1 << ","
          << (n - size1) << ") sums=" << sums.size() << " residue=" << residue;
        rep.check(inert && oneClass, s.str());
    }
    return rep;
}

ClaimReport verify_star_colour_gap(int n) {
    ClaimReport rep{"star-colour-gap", true, {}};
    HostColouredGraph host = gen_circulant_parts_colouring(n, 3);
    int violations = 0, worst = INT_MIN;
    for (int c = 0; c < n; ++c) {
        long long cnt[4] = {0, 0, 0, 0};
        for (int v = 0; v < n; ++v)
            if (v != c) ++cnt[host.colour(c, v)];
        long long gap = cnt[1] - std::max(cnt[2], cnt[3]);
        worst = std::max(worst, (int)gap);
        if (gap > 0) ++violations;
    }
    std::ostringstream s;
    s << n << " centres, " << violations
      << " where colour-1 beats both others (largest lead " << worst << ")";
    rep.check(violations == 0, s.str());
    return rep;
}

ClaimReport verify_ksum_iff(const std::vector<int>& sizes, int coloursPerCell, uint64_t seed,
                            int restarts) {
    ClaimReport rep{"ksum-iff", true, {}};
    uint64_t cell = 0;
    for (int n : sizes) {
        if (n < 4 || n % 2 != 0) {
            rep.check(false, "sizes must be even and >= 4");
            continue;
        }
        std::vector<std::pair<std::string, PatternGraph>> patterns;
        {
            PatternGraph pm(n);
            for (int i = 0; i < n / 2; ++i) pm.add_edge(2 * i, 2 * i + 1);
            PatternGraph path(n);
            for (int i = 0; i + 1 < n; ++i) path.add_edge(i, i + 1);
            PatternGraph cycle(n);
            for (int i = 0; i < n; ++i) cycle.add_edge(i, (i + 1) % n);
            patterns.emplace_back("matching", pm);
            patterns.emplace_back("path", path);
            patterns.emplace_back("cycle", cycle);
        }
        for (int bip = 0; bip < 2; ++bip) {
            long long cells = 0, targets = 0, embedded = 0, infeasible = 0, failures = 0;
            for (int s = 0; s < coloursPerCell; ++s) {
                uint64_t cellSeed = derive_seed(seed, "ksum-cell", cell++);
                HostColouredGraph host = bip ? gen_bipartite_random(n, cellSeed)
                                             : gen_balanced_random(n, 2, cellSeed);
                for (const auto& [name, pattern] : patterns) {
                    ++cells;
                    ResiduePrediction pred = predict_residue(pattern, host, cellSeed, 20);
                    std::set<int> sums = reachable_sums(pattern, host);
                    bool residueRespected = !sums.empty();
                    for (int x : sums)
                        if (((x % pred.a) + pred.a) % pred.a != pred.b) residueRespected = false;
                    if (!residueRespected) {
                        ++failures;
                        std::ostringstream msg;
                        msg << "n=" << n << " " << name << (bip ? " bipartite" : " generic")
                            << " seed-cell " << s << ": reachable sums leave residue " << pred.b
                            << " mod " << pred.a;
                        rep.check(false, msg.str());
                    }
                    int m = pattern.m();
                    for (int k = -m / 2; k <= m / 2; ++k) {
                        ++targets;
                        bool feasible = sums.count(k) > 0;
                        bool residueOk = ((k % pred.a) + pred.a) % pred.a == pred.b;
                        KsumParams kp;
                        kp.restarts = restarts;
                        kp.seed = derive_seed(cellSeed, "target", (uint64_t)(k + m));
                        KsumResult res = ksum_embed(pattern, host, k, kp);
                        bool ok = true;
                        if (!residueOk) {
                            ok = res.status == KsumStatus::Infeasible && !feasible;
                            if (res.status == KsumStatus::Infeasible) ++infeasible;
                        } else if (feasible) {
                            ok = res.status == KsumStatus::Ok &&
                                 validate_embedding(pattern, host, res.emb).empty() &&
                                 signed_sum(pattern, host, res.emb) == k;
                            if (ok) ++embedded;
                        } else {
                            ok = res.status != KsumStatus::Infeasible;
                        }
                        if (!ok) {
                            ++failures;
                            std::ostringstream msg;
                            msg << "n=" << n << " " << name << (bip ? " bipartite" : " generic")
                                << " seed-cell " << s << " k=" << k << ": feasible=" << feasible
                                << " residueOk=" << residueOk << " status=" << (int)res.status;
                            rep.check(false, msg.str());
                        }
                    }
                }
            }
            std::ostringstream s;
            s << "n=" << n << (bip ? " bipartite" : " generic") << ": " << cells << " instances, "
              << targets << " targets, " << embedded << " embedded, " << infeasible
              << " infeasible, " << failures << " failures";
            rep.check(failures == 0, s.str());
        }
    }
    return rep;
}

}  // namespace gdisc
