#include "gdisc/switching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "gdisc/rng.hpp"

namespace gdisc {

namespace {

// The neighbour of a degree-2 vertex other than `away`; -1 when degree != 2.
int other_neighbour(const TreeGraph& tree, int v, int away) {
    if (tree.degree(v) != 2) return -1;
    const auto& nb = tree.neighbours(v);
    return nb[0] == away ? nb[1] : nb[0];
}

bool roles_valid(const TreeGraph& tree, int u, int w, int v, int z, SwitchKind kind) {
    switch (kind) {
        case SwitchKind::I:
            return tree.degree(w) == 1 && tree.degree(z) == 1;
        case SwitchKind::II: {
            int yu = other_neighbour(tree, u, w);
            int yv = other_neighbour(tree, v, z);
            return yu >= 0 && yu == yv;  // shared neighbour, never w or z
        }
        case SwitchKind::III:
            return tree.degree(u) == 2 && tree.degree(v) == 2 && tree.has_edge(u, v);
    }
    return false;
}

}  // namespace

std::optional<SwitchablePair> is_switchable(const TreeGraph& tree, std::pair<int, int> e,
                                            std::pair<int, int> f) {
    auto [a, b] = e;
    auto [c, d] = f;
    if (!tree.has_edge(a, b) || !tree.has_edge(c, d))
        throw std::invalid_argument("is_switchable: not a tree edge");
    if (a == c || a == d || b == c || b == d) return std::nullopt;
    const std::array<std::array<int, 4>, 8> assigns = {{{a, b, c, d},
                                                        {a, b, d, c},
                                                        {b, a, c, d},
                                                        {b, a, d, c},
                                                        {c, d, a, b},
                                                        {c, d, b, a},
                                                        {d, c, a, b},
                                                        {d, c, b, a}}};
    for (SwitchKind kind : {SwitchKind::I, SwitchKind::II, SwitchKind::III}) {
        std::optional<SwitchablePair> best;
        for (const auto& as : assigns) {
            if (!roles_valid(tree, as[0], as[1], as[2], as[3], kind)) continue;
            if (!best || std::make_pair(as[0], as[2]) < std::make_pair(best->u, best->v))
                best = SwitchablePair{as[0], as[1], as[2], as[3], kind};
        }
        if (best) return best;
    }
    return std::nullopt;
}

namespace {

// Leaf edges bucketed by their support vertex; repeatedly pair one leaf from
// each of the two fullest buckets (ties to the smaller support).
std::vector<SwitchablePair> leaf_pair_family(const TreeGraph& tree) {
    std::map<int, std::vector<int>> buckets;  // support -> leaves, ascending
    if (tree.n() < 4) return {};
    for (int v = 0; v < tree.n(); ++v)
        if (tree.degree(v) == 1) buckets[tree.neighbours(v)[0]].push_back(v);
    std::vector<std::pair<int, std::vector<int>>> bs(buckets.begin(), buckets.end());
    std::vector<size_t> taken(bs.size(), 0);
    std::vector<SwitchablePair> out;
    for (;;) {
        int first = -1, second = -1;
        for (int i = 0; i < (int)bs.size(); ++i) {
            size_t left = bs[i].second.size() - taken[i];
            if (left == 0) continue;
            if (first < 0 || left > bs[first].second.size() - taken[first])
                second = first, first = i;
            else if (second < 0 || left > bs[second].second.size() - taken[second])
                second = i;
        }
        if (second < 0) break;
        if (first > second) std::swap(first, second);  // smaller support acts as u
        int p1 = bs[first].first, l1 = bs[first].second[taken[first]++];
        int p2 = bs[second].first, l2 = bs[second].second[taken[second]++];
        out.push_back({p1, l1, p2, l2, SwitchKind::I});
    }
    return out;
}

// For a bare path listed from endpoint b, the second edge (u, w) with u the
// internal vertex adjacent to b.
std::pair<int, int> second_edge_from(const BarePath& path, int b) {
    const auto& p = path.vertices;
    if (p.front() == b) return {p[1], p[2]};
    return {p[p.size() - 2], p[p.size() - 3]};
}

// At every branch vertex, pair up the incident bare paths with at least one
// internal vertex; a pair's edges are the two second edges from the shared
// endpoint, giving kind-II pairs (the branch vertex is the common neighbour).
std::vector<SwitchablePair> branch_pair_family(const TreeGraph& tree,
                                               const std::vector<BarePath>& paths) {
    std::vector<char> used(paths.size(), 0);
    std::vector<SwitchablePair> out;
    for (int b = 0; b < tree.n(); ++b) {
        if (tree.degree(b) < 3) continue;
        std::vector<int> here;
        for (int i = 0; i < (int)paths.size(); ++i) {
            if (used[i] || paths[i].internal_count() < 1) continue;
            if (paths[i].vertices.front() == b || paths[i].vertices.back() == b)
                here.push_back(i);
        }
        for (size_t j = 0; j + 1 < here.size(); j += 2) {
            used[here[j]] = used[here[j + 1]] = 1;
            auto [u, w] = second_edge_from(paths[here[j]], b);
            auto [v, z] = second_edge_from(paths[here[j + 1]], b);
            if (u > v) std::swap(u, v), std::swap(w, z);
            out.push_back({u, w, v, z, SwitchKind::II});
        }
    }
    return out;
}

// Within each bare path, consecutive 3-edge blocks give kind-III pairs on
// the block's outer edges.  Covers whole-path trees as the single-path case.
std::vector<SwitchablePair> bare_triple_family(const std::vector<BarePath>& paths) {
    std::vector<SwitchablePair> out;
    for (const auto& path : paths) {
        const auto& p = path.vertices;
        int internal = path.internal_count();
        for (int j = 0; 3 * j + 2 <= internal; ++j) {
            int u = p[3 * j + 1], w = p[3 * j], v = p[3 * j + 2], z = p[3 * j + 3];
            if (u > v) std::swap(u, v), std::swap(w, z);
            out.push_back({u, w, v, z, SwitchKind::III});
        }
    }
    return out;
}

#ifndef NDEBUG
bool edge_disjoint(const std::vector<SwitchablePair>& pairs) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& p : pairs) {
        edges.emplace_back(std::min(p.u, p.w), std::max(p.u, p.w));
        edges.emplace_back(std::min(p.v, p.z), std::max(p.v, p.z));
    }
    std::sort(edges.begin(), edges.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}
#endif

}  // namespace

FreeFamily find_free_family(const TreeGraph& tree) {
    auto paths = bare_path_decomposition(tree);
    std::vector<std::vector<SwitchablePair>> candidates;
    candidates.push_back(leaf_pair_family(tree));
    candidates.push_back(branch_pair_family(tree, paths));
    candidates.push_back(bare_triple_family(paths));
    size_t bestIdx = 0;
    for (size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].size() > candidates[bestIdx].size()) bestIdx = i;
    FreeFamily fam{std::move(candidates[bestIdx])};
    assert(edge_disjoint(fam.pairs));
    return fam;
}

int free_family_guarantee(const TreeGraph& tree) {
    int n = tree.n();
    if (n <= 2) return 0;
    if (tree.max_degree() <= 2 && n - 1 >= 3) return (n - 1) / 3;
    int v = n - 1 - tree.max_degree();
    return v <= 0 ? 0 : (v + 39) / 40;
}

Embedding apply_switching(const Embedding& emb, const SwitchablePair& pair,
                          const HostColouredGraph& host) {
    int U = emb(pair.u), W = emb(pair.w), V = emb(pair.v), Z = emb(pair.z);
    if (!host.has_edge(U, Z)) throw ghost_replacement_error(U, Z);
    if (!host.has_edge(V, W)) throw ghost_replacement_error(V, W);
    Embedding out = emb;
    if (pair.kind == SwitchKind::I)
        std::swap(out.at(pair.w), out.at(pair.z));
    else
        std::swap(out.at(pair.u), out.at(pair.v));
    return out;
}

std::optional<MarkedCycle> classify_marked(const HostColouredGraph& host, int x, int y, int u,
                                           int v, int blue) {
    if (x == y || x == u || x == v || y == u || y == v || u == v) return std::nullopt;
    if (!host.has_edge(x, y) || !host.has_edge(y, u) || !host.has_edge(u, v) ||
        !host.has_edge(v, x))
        return std::nullopt;
    int c1 = host.colour(x, y), c2 = host.colour(y, u), c3 = host.colour(u, v),
        c4 = host.colour(v, x);
    auto isBlue = [&](int c) { return c == blue; };
    CyclePattern pat;
    if (isBlue(c1) && isBlue(c2) && isBlue(c3) && !isBlue(c4))
        pat = CyclePattern::I;
    else if (isBlue(c1) && !isBlue(c2) && isBlue(c3) && !isBlue(c4))
        pat = CyclePattern::II;
    else if (isBlue(c1) && !isBlue(c2) && !isBlue(c3) && !isBlue(c4))
        pat = CyclePattern::III;
    else
        return std::nullopt;
    return MarkedCycle{x, y, u, v, pat, blue, c1, c2, c3, c4};
}

namespace {

// The four labellings describing one marked-cycle object: rotation by two
// (swapping the unmarked edges) and reflection (reversing orientation).
std::array<std::array<int, 4>, 4> object_orbit(int x, int y, int u, int v) {
    return {{{x, y, u, v}, {u, v, x, y}, {y, x, v, u}, {v, u, y, x}}};
}

bool cycle_matches(const MarkedCycle& c, const CycleFilter& f) {
    if (c.pattern == CyclePattern::I && !f.patternI) return false;
    if (c.pattern == CyclePattern::II && !f.patternII) return false;
    if (c.pattern == CyclePattern::III && !f.patternIII) return false;
    if (f.notIncreasingFor > 0 && c.increases_colour(f.notIncreasingFor)) return false;
    return true;
}

// Classifies the object through all its labellings; the pattern is unique
// because the patterns differ in their blue-edge counts.
std::optional<MarkedCycle> classify_object(const HostColouredGraph& host,
                                           const std::array<int, 4>& t, int blue) {
    for (const auto& lab : object_orbit(t[0], t[1], t[2], t[3]))
        if (auto c = classify_marked(host, lab[0], lab[1], lab[2], lab[3], blue)) return c;
    return std::nullopt;
}

}  // namespace

MarkedCycleCount count_marked_cycles(const HostColouredGraph& host, const CycleFilter& filter,
                                     DecisionMode mode, long long samples, uint64_t seed) {
    int n = host.n();
    if (mode == DecisionMode::Exact) {
        if (n > 120) throw std::invalid_argument("exact marked-cycle count guarded at n <= 120");
        long long count = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        // six objects on {a,b,c,d}: three cycles, two marked
                        // opposite pairs each
                        const std::array<std::array<int, 4>, 6> reps = {{{a, b, c, d},
                                                                         {b, c, d, a},
                                                                         {a, b, d, c},
                                                                         {b, d, c, a},
                                                                         {a, c, b, d},
                                                                         {c, b, d, a}}};
                        for (const auto& rep : reps) {
                            auto cyc = classify_object(host, rep, filter.blue);
                            if (cyc && cycle_matches(*cyc, filter)) ++count;
                        }
                    }
        return {(double)count, true, 0.0};
    }
    if (n < 4) return {0.0, false, 0.0};
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    Rng rng(derive_seed(seed, "marked-cycle-sample"));
    // Sample labelled tuples uniformly; weight a matching tuple by one over
    // the number of matching labellings of its object so each object
    // contributes once in expectation.
    double sum = 0.0, sumSq = 0.0;
    for (long long s = 0; s < samples; ++s) {
        int t[4];
        for (int i = 0; i < 4; ++i) {
            bool fresh;
            do {
                t[i] = (int)rng.below((uint64_t)n);
                fresh = true;
                for (int j = 0; j < i; ++j) fresh &= (t[i] != t[j]);
            } while (!fresh);
        }
        auto cyc = classify_marked(host, t[0], t[1], t[2], t[3], filter.blue);
        double w = 0.0;
        if (cyc && cycle_matches(*cyc, filter)) {
            int matching = 0;
            for (const auto& lab : object_orbit(t[0], t[1], t[2], t[3]))
                if (classify_marked(host, lab[0], lab[1], lab[2], lab[3], filter.blue))
                    ++matching;
            w = 1.0 / matching;
        }
        sum += w;
        sumSq += w * w;
    }
    double tuples = (double)n * (n - 1) * (n - 2) * (n - 3);
    double mean = sum / samples;
    double var = std::max(0.0, sumSq / samples - mean * mean);
    double se = std::sqrt(var / samples) * tuples;
    return {mean * tuples, false, se};
}

std::vector<DesirableSwitching> desirable_switchings(
    const Embedding& emb, const FreeFamily& family, const HostColouredGraph& host,
    const std::function<bool(const MarkedCycle&)>& predicate, int blue) {
    std::vector<DesirableSwitching> out;
    for (int i = 0; i < (int)family.pairs.size(); ++i) {
        const auto& p = family.pairs[i];
        int U = emb(p.u), W = emb(p.w), V = emb(p.v), Z = emb(p.z);
        // Labellings of the object whose marked edges are the pair's current
        // copy edges UW, VZ and whose unmarked edges are the replacements.
        auto cyc = classify_object(host, {Z, U, W, V}, blue);
        if (cyc && (!predicate || predicate(*cyc))) out.push_back({i, *cyc});
    }
    return out;
}

namespace {

void check_pipeline_args(const TreeGraph& tree, const HostColouredGraph& host, int restarts) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (tree.n() > host.n()) throw std::invalid_argument("tree larger than host");
    if (host.min_degree() != host.n() - 1)
        throw std::invalid_argument("switching pipeline requires a complete host");
}

struct AttemptOutcome {
    Embedding emb;
    AttemptRecord rec;
    std::vector<DesirableSwitching> performed;
};

AttemptOutcome run_attempt(const TreeGraph& tree, const HostColouredGraph& host,
                           const FreeFamily& family,
                           const std::function<bool(const MarkedCycle&)>& predicate, int blue,
                           uint64_t attemptSeed) {
    Rng rng(attemptSeed);
    Embedding emb(random_injection(tree.n(), host.n(), rng));
    AttemptOutcome out;
    out.rec.seed = attemptSeed;
    out.rec.initial = colour_profile(tree, host, emb);
    out.performed = desirable_switchings(emb, family, host, predicate, blue);
    for (const auto& d : out.performed) {
        emb = apply_switching(emb, family.pairs[d.pairIndex], host);
        out.rec.switchings.push_back(
            {d.pairIndex, d.cycle.pattern, {d.cycle.x, d.cycle.y, d.cycle.u, d.cycle.v}});
    }
    out.rec.result = colour_profile(tree, host, emb);
    out.emb = std::move(emb);
    return out;
}

}  // namespace

MaximizeResult maximize_colour(const TreeGraph& tree, const HostColouredGraph& host, int colour,
                               int restarts, uint64_t seed) {
    if (colour < 1 || colour > host.r()) throw std::invalid_argument("colour out of range");
    check_pipeline_args(tree, host, restarts);
    FreeFamily family = find_free_family(tree);
    MaximizeResult res;
    res.achieved = -1;
    res.bestAttempt = -1;
    for (int a = 0; a < restarts; ++a) {
        auto got = run_attempt(tree, host, family, nullptr, colour,
                               derive_seed(seed, "maximize-attempt", (uint64_t)a));
        long long value = got.rec.result.counts[colour];
        if (value > res.achieved) {
            res.achieved = value;
            res.best = got.emb;
            res.bestAttempt = a;
        }
        res.attempts.push_back(std::move(got.rec));
    }
    auto sizes = host.class_sizes();
    long long mi = sizes[colour];
    long long mstar = std::min(mi, host.edge_count() - mi);
    double n = host.n();
    double slack = (double)(tree.n() - 1 - tree.max_degree());
    res.reportedBound = 2.0 * mi / n + 1e-5 * slack * std::pow((double)mstar / (n * n), 2.0);
    return res;
}

LeadResult lead_colour_kn(const TreeGraph& tree, const HostColouredGraph& host, int restarts,
                          uint64_t seed) {
    int r = host.r();
    if (r < 2) throw std::invalid_argument("lead pipeline needs r >= 2");
    check_pipeline_args(tree, host, restarts);
    FreeFamily family = find_free_family(tree);
    auto predicate = [r](const MarkedCycle& c) { return lead_desirable(c, r); };
    LeadResult res;
    res.lead = std::numeric_limits<long long>::min();
    res.bestAttempt = -1;
    for (int a = 0; a < restarts; ++a) {
        auto got = run_attempt(tree, host, family, predicate, 1,
                               derive_seed(seed, "lead-attempt", (uint64_t)a));
        long long lead = std::numeric_limits<long long>::max();
        for (int i = 2; i <= r; ++i)
            lead = std::min(lead, got.rec.result.counts[1] - got.rec.result.counts[i]);
        std::vector<int> perColour(r + 1, 0);
        for (const auto& d : got.performed)
            for (int i = 2; i <= r; ++i)
                if (!d.cycle.increases_colour(i)) ++perColour[i];
        if (lead > res.lead) {
            res.lead = lead;
            res.best = got.emb;
            res.bestAttempt = a;
        }
        res.attempts.push_back(std::move(got.rec));
        res.desirablePerColour.push_back(std::move(perColour));
    }
    return res;
}

}  // namespace gdisc
