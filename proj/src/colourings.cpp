#include "gdisc/colourings.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>

#include "gdisc/rng.hpp"

namespace gdisc {

HostColouredGraph gen_balanced_random(int n, int r, uint64_t seed) {
    if (n < 1 || r < 1) throw std::invalid_argument("gen_balanced_random: need n >= 1, r >= 1");
    HostColouredGraph host(n, r);
    std::vector<std::pair<int, int>> edges;
    edges.reserve((size_t)n * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    Rng rng(derive_seed(seed, "balanced-colouring"));
    rng.shuffle(edges);
    for (size_t i = 0; i < edges.size(); ++i)
        host.set_edge(edges[i].first, edges[i].second, (int)(i % r) + 1);
    return host;
}

HostColouredGraph gen_bipartite_random(int n, uint64_t seed, int size1) {
    if (n < 2) throw std::invalid_argument("gen_bipartite_random: need n >= 2");
    if (size1 < 0) size1 = n / 2;
    if (size1 < 1 || size1 > n - 1)
        throw std::invalid_argument("gen_bipartite_random: part size out of range");
    Rng rng(derive_seed(seed, "bipartite-parts"));
    std::vector<int> perm = random_injection(n, n, rng);
    std::vector<char> inFirst(n, 0);
    for (int i = 0; i < size1; ++i) inFirst[perm[i]] = 1;
    HostColouredGraph host(n, 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            host.set_edge(u, v, inFirst[u] == inFirst[v] ? 1 : 2);
    return host;
}

bool is_eps_balanced(const HostColouredGraph& host, double eps) {
    auto sizes = host.class_sizes();
    long long m = std::accumulate(sizes.begin(), sizes.end(), 0ll);
    if (m == 0) return true;
    double lo = 1.0 / host.r() - eps, hi = 1.0 / host.r() + eps;
    for (int c = 1; c <= host.r(); ++c) {
        double share = (double)sizes[c] / (double)m;
        if (share < lo || share > hi) return false;
    }
    return true;
}

namespace {

// Exhaustive eta-standard check: assign vertices to V1/V2 in index order with
// side budgets, keeping the violation counters incrementally.  Both counters
// only grow along a branch, so a branch where the V1 counter and every V2
// counter already reach the threshold cannot yield a witness.
struct EtaSearcher {
    const HostColouredGraph& host;
    long long threshold;  // violation needs both counts strictly below this
    int n, r, size1, size2;
    std::vector<int> side;                // 0 unassigned, 1, 2
    std::vector<int> v1, v2;
    long long nonFirstV1 = 0;             // edges inside V1 coloured != 1
    long long edgesV2 = 0;
    std::vector<long long> colourV2;      // per-colour edges inside V2
    std::optional<EtaStandardWitness> witness;

    EtaSearcher(const HostColouredGraph& h, long long thr)
        : host(h), threshold(thr), n(h.n()), r(h.r()) {
        size1 = (n + 1) / 2;
        size2 = n / 2;
        side.assign(n, 0);
        colourV2.assign(r + 1, 0);
    }

    bool v2_all_saturated() const {
        for (int i = 2; i <= r; ++i)
            if (edgesV2 - colourV2[i] < threshold) return false;
        return true;
    }

    bool leaf_violation() {
        if (nonFirstV1 >= threshold) return false;
        for (int i = 2; i <= r; ++i) {
            if (edgesV2 - colourV2[i] < threshold) {
                witness = EtaStandardWitness{v1, v2, i, nonFirstV1, edgesV2 - colourV2[i]};
                return true;
            }
        }
        return false;
    }

    bool run(int v) {
        if (nonFirstV1 >= threshold && v2_all_saturated()) return false;
        if (v == n) return leaf_violation();
        if ((int)v1.size() < size1) {
            long long add = 0;
            for (int u : v1)
                if (int c = host.colour(u, v); c > 1) ++add;
            nonFirstV1 += add;
            v1.push_back(v);
            if (run(v + 1)) return true;
            v1.pop_back();
            nonFirstV1 -= add;
        }
        if ((int)v2.size() < size2) {
            long long addEdges = 0;
            std::vector<int> touched;
            for (int u : v2)
                if (int c = host.colour(u, v)) {
                    ++addEdges;
                    ++colourV2[c];
                    touched.push_back(c);
                }
            edgesV2 += addEdges;
            v2.push_back(v);
            if (run(v + 1)) return true;
            v2.pop_back();
            edgesV2 -= addEdges;
            for (int c : touched) --colourV2[c];
        }
        return false;
    }
};

}  // namespace

EtaStandardResult is_eta_standard(const HostColouredGraph& host, double eta, DecisionMode mode,
                                  uint64_t seed) {
    int n = host.n();
    if (host.r() < 2) throw std::invalid_argument("is_eta_standard: need r >= 2");
    long long threshold = (long long)std::ceil(eta * (double)n * (double)n);
    if (threshold < 1) threshold = 1;  // "fewer than eta n^2" is empty for eta <= 0
    if (mode == DecisionMode::Exact) {
        if (n > 24) throw std::invalid_argument("is_eta_standard exact mode guarded at n <= 24");
        EtaSearcher searcher(host, threshold);
        bool violated = searcher.run(0);
        return {!violated, true, searcher.witness};
    }
    // Randomized witness search: local swaps minimizing the pair of counters.
    Rng rng(derive_seed(seed, "eta-standard-search"));
    int size1 = (n + 1) / 2;
    auto countInside = [&](const std::vector<int>& part, int avoid) {
        long long cnt = 0;
        for (size_t i = 0; i < part.size(); ++i)
            for (size_t j = i + 1; j < part.size(); ++j)
                if (int c = host.colour(part[i], part[j]); c != 0 && c != avoid) ++cnt;
        return cnt;
    };
    for (int attempt = 0; attempt < 30; ++attempt) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        std::vector<int> v1(order.begin(), order.begin() + size1);
        std::vector<int> v2(order.begin() + size1, order.end());
        for (int i = 2; i <= host.r(); ++i) {
            bool improved = true;
            while (improved) {
                improved = false;
                long long best = countInside(v1, 1) + countInside(v2, i);
                if (countInside(v1, 1) < threshold && countInside(v2, i) < threshold)
                    return {false, false,
                            EtaStandardWitness{v1, v2, i, countInside(v1, 1), countInside(v2, i)}};
                for (size_t a = 0; a < v1.size() && !improved; ++a)
                    for (size_t b = 0; b < v2.size() && !improved; ++b) {
                        std::swap(v1[a], v2[b]);
                        long long cand = countInside(v1, 1) + countInside(v2, i);
                        if (cand < best) {
                            improved = true;
                        } else {
                            std::swap(v1[a], v2[b]);
                        }
                    }
            }
            if (countInside(v1, 1) < threshold && countInside(v2, i) < threshold)
                return {false, false,
                        EtaStandardWitness{v1, v2, i, countInside(v1, 1), countInside(v2, i)}};
        }
    }
    return {true, false, std::nullopt};
}

std::optional<BipartiteColouring> detect_bipartite_colouring(const HostColouredGraph& host) {
    if (host.r() != 2) throw std::invalid_argument("bipartite detection needs a 2-coloured host");
    int n = host.n();
    for (int inside = 1; inside <= 2; ++inside) {
        // Union-find with parity: colour `inside` forces same side, the other
        // colour forces opposite sides.
        std::vector<int> parent(n), rank(n, 0), parity(n, 0);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::pair<int, int>(int)> find = [&](int v) -> std::pair<int, int> {
            if (parent[v] == v) return {v, 0};
            auto [root, par] = find(parent[v]);
            parent[v] = root;
            parity[v] ^= par;
            return {root, parity[v]};
        };
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v) {
                int c = host.colour(u, v);
                if (c == 0) continue;
                int want = (c == inside) ? 0 : 1;
                auto [ru, pu] = find(u);
                auto [rv, pv] = find(v);
                if (ru == rv) {
                    if ((pu ^ pv) != want) ok = false;
                } else {
                    if (rank[ru] < rank[rv]) {
                        std::swap(ru, rv);
                        std::swap(pu, pv);
                    }
                    parent[rv] = ru;
                    parity[rv] = pu ^ pv ^ want;
                    if (rank[ru] == rank[rv]) ++rank[ru];
                }
            }
        if (!ok) continue;
        BipartiteColouring out;
        out.whichColour = inside;
        for (int v = 0; v < n; ++v) {
            auto [root, par] = find(v);
            (void)root;
            (par == 0 ? out.v1 : out.v2).push_back(v);
        }
        // Orient so vertex 0 sits in V1.
        if (!out.v2.empty() && (out.v1.empty() || out.v2[0] == 0)) std::swap(out.v1, out.v2);
        return out;
    }
    return std::nullopt;
}

bool is_inert(const PatternGraph& pattern, const HostColouredGraph& host) {
    int parity = -1;
    for (int v = 0; v < pattern.n(); ++v) {
        int p = pattern.degree(v) % 2;
        if (parity == -1) parity = p;
        if (p != parity) return false;
    }
    // With all-even degrees every copy crosses the bipartition an even number
    // of times.  With all-odd degrees the crossing parity is the parity of
    // |part1 of the copy|, which is only pinned when the copy uses every host
    // vertex; smaller copies can realize both parities.
    if (parity == 1 && pattern.n() != host.n()) return false;
    return detect_bipartite_colouring(host).has_value();
}

long long next_prime(long long x) {
    if (x < 2) throw std::invalid_argument("next_prime: need x >= 2");
    auto isPrime = [](long long v) {
        if (v < 4) return v >= 2;
        if (v % 2 == 0) return false;
        for (long long d = 3; d * d <= v; d += 2)
            if (v % d == 0) return false;
        return true;
    };
    long long v = x;
    while (!isPrime(v)) ++v;
    return v;
}

ProjectivePlane gen_pg(int p) {
    if (p < 2 || next_prime(p) != p) throw std::invalid_argument("gen_pg: p must be prime");
    // Canonical representatives of projective points: (1,a,b), (0,1,c), (0,0,1).
    std::vector<std::array<int, 3>> reps;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) reps.push_back({1, a, b});
    for (int c = 0; c < p; ++c) reps.push_back({0, 1, c});
    reps.push_back({0, 0, 1});
    ProjectivePlane plane;
    plane.p = p;
    plane.pointCount = (int)reps.size();
    plane.lines.resize(reps.size());
    plane.linesThroughPoint.resize(reps.size());
    for (int li = 0; li < (int)reps.size(); ++li) {
        for (int pi = 0; pi < (int)reps.size(); ++pi) {
            int dot = 0;
            for (int k = 0; k < 3; ++k) dot += reps[li][k] * reps[pi][k];
            if (dot % p == 0) {
                plane.lines[li].push_back(pi);
                plane.linesThroughPoint[pi].push_back(li);
            }
        }
    }
    return plane;
}

namespace {

// Even out class sizes: move lexicographically-first edges out of surplus
// classes into the classes with the largest deficit until all sizes are
// within one of each other.
void rebalance_classes(HostColouredGraph& host) {
    auto sizes = host.class_sizes();
    int r = host.r();
    long long m = std::accumulate(sizes.begin(), sizes.end(), 0ll);
    long long base = m / r, rem = m % r;
    // The `rem` classes keeping base+1 edges are those currently largest;
    // ties go to smaller colour ids.
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sizes[a] > sizes[b]; });
    std::vector<long long> target(r + 1, base);
    for (int i = 0; i < rem; ++i) target[order[i]] += 1;
    std::vector<std::vector<std::pair<int, int>>> byClass(r + 1);
    for (auto [u, v, c] : host.edges()) byClass[c].emplace_back(u, v);
    for (int c = 1; c <= r; ++c) {
        size_t next = 0;
        while (sizes[c] > target[c]) {
            int best = 0;
            for (int d = 1; d <= r; ++d)
                if (sizes[d] < target[d] && (best == 0 || target[d] - sizes[d] > target[best] - sizes[best]))
                    best = d;
            auto [u, v] = byClass[c][next++];
            host.set_edge(u, v, best);
            --sizes[c];
            ++sizes[best];
        }
    }
}

// d-regular circulant on vertices base..base+t-1 (d < t; t even when d is
// odd); emits edges via the callback.
template <typename F>
void circulant_edges(int base, int t, int d, F&& emit) {
    if (d < 0 || d >= t) throw std::invalid_argument("circulant: bad degree");
    if (d % 2 == 1 && t % 2 == 1) throw std::invalid_argument("circulant: odd degree needs even order");
    for (int off = 1; off <= d / 2; ++off)
        for (int i = 0; i < t; ++i) {
            // off <= d/2 < t/2, so each wrap-around pair appears exactly once.
            int j = (i + off) % t;
            emit(base + std::min(i, j), base + std::max(i, j));
        }
    if (d % 2 == 1)
        for (int i = 0; i < t / 2; ++i) emit(base + i, base + i + t / 2);
}

}  // namespace

HostColouredGraph gen_projective_colouring(int p, int r, int n, bool rebalance) {
    ProjectivePlane plane = gen_pg(p);
    int k = p * p + p + 2;
    int parts = k - 1;  // one part per line
    if (r < k || r > 255)
        throw std::invalid_argument("gen_projective_colouring: need k = p^2+p+2 <= r <= 255");
    if (n <= 0 || n % parts != 0)
        throw std::invalid_argument("gen_projective_colouring: (p^2+p+1) must divide n");
    int t = n / parts;
    // intersection[a][b] = the unique point on lines a and b.
    std::vector<std::vector<int>> meet(parts, std::vector<int>(parts, -1));
    for (int a = 0; a < parts; ++a)
        for (int b = a + 1; b < parts; ++b) {
            const auto& la = plane.lines[a];
            const auto& lb = plane.lines[b];
            for (int x : la)
                if (std::binary_search(lb.begin(), lb.end(), x)) {
                    meet[a][b] = meet[b][a] = x;
                    break;
                }
        }
    HostColouredGraph host(n, r);
    for (int part = 0; part < parts; ++part)
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j) host.set_edge(part * t + i, part * t + j, 1);
    // Matching s between parts a < b joins the i-th vertex of a to the
    // (i+s) mod t -th of b.  The t matchings split into r-1 near-equal
    // groups indexed 2..r; groups past k are recoloured to their index.
    auto groupOf = [&](int s) {
        // largest g in 2..r with floor(t*(g-2)/(r-1)) <= s
        int lo = 2, hi = r;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if ((long long)t * (mid - 2) / (r - 1) <= s)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    };
    for (int a = 0; a < parts; ++a)
        for (int b = a + 1; b < parts; ++b) {
            int pointColour = 2 + meet[a][b];
            for (int s = 0; s < t; ++s) {
                int g = groupOf(s);
                int colour = g >= k + 1 ? g : pointColour;
                for (int i = 0; i < t; ++i)
                    host.set_edge(a * t + i, b * t + (i + s) % t, colour);
            }
        }
    if (rebalance) rebalance_classes(host);
    return host;
}

HostColouredGraph gen_circulant_parts_colouring(int n, int r, bool rebalance) {
    if (r < 3) throw std::invalid_argument("gen_circulant_parts_colouring: need r >= 3");
    if (n <= 0 || n % (2 * (r - 1)) != 0)
        throw std::invalid_argument("gen_circulant_parts_colouring: 2(r-1) must divide n");
    int t = n / (r - 1);
    long long d = (n - (long long)(r - 1) * (r - 1)) / ((long long)r * (r - 1));
    if (d < 0) d = 0;
    HostColouredGraph host(n, r);
    // Part a (0-based) carries colour a+2 internally on a d-regular
    // circulant; every other internal edge is colour 1.
    for (int a = 0; a < r - 1; ++a) {
        for (int i = 0; i < t; ++i)
            for (int j = i + 1; j < t; ++j) host.set_edge(a * t + i, a * t + j, 1);
        circulant_edges(a * t, t, (int)d, [&](int u, int v) { host.set_edge(u, v, a + 2); });
    }
    for (int a = 0; a < r - 1; ++a)
        for (int b = a + 1; b < r - 1; ++b)
            for (int s = 0; s < t; ++s) {
                int colour = s < t / 2 ? a + 2 : b + 2;
                for (int i = 0; i < t; ++i)
                    host.set_edge(a * t + i, b * t + (i + s) % t, colour);
            }
    if (rebalance) rebalance_classes(host);
    return host;
}

HostColouredGraph gen_mirrored_halves(int N) {
    if (N < 1) throw std::invalid_argument("gen_mirrored_halves: need N >= 1");
    int n = 2 * N;
    HostColouredGraph host(n, 4);
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v) host.set_edge(u, v, 1);
    for (int u = N; u < n; ++u)
        for (int v = u + 1; v < n; ++v) host.set_edge(u, v, 2);
    long long half = (long long)N * N / 2, idx = 0;
    for (int u = 0; u < N; ++u)
        for (int v = N; v < n; ++v) host.set_edge(u, v, idx++ < half ? 3 : 4);
    return host;
}

HostColouredGraph gen_blue_anchor_host(int N) {
    if (N < 1) throw std::invalid_argument("gen_blue_anchor_host: need N >= 1");
    int n = 4 * N;
    HostColouredGraph host(n, 2);
    // V1 = first N vertices: no internal edges, all incident edges blue.
    for (int u = 0; u < N; ++u)
        for (int v = N; v < n; ++v) host.set_edge(u, v, 1);
    for (int u = N; u < n; ++u)
        for (int v = u + 1; v < n; ++v) host.set_edge(u, v, 2);
    // Delete an (N-1)-regular circulant inside V2 so the host is 3N-regular.
    circulant_edges(N, 3 * N, N - 1, [&](int u, int v) { host.remove_edge(u, v); });
    return host;
}

HostColouredGraph gen_odd_parts_colouring(int m) {
    if (m < 0) throw std::invalid_argument("gen_odd_parts_colouring: need m >= 0");
    int n = 4 * m + 6, a = 2 * m + 1;
    HostColouredGraph host(n, 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) host.set_edge(u, v, (u < a) == (v < a) ? 1 : 2);
    return host;
}

HostColouredGraph gen_lopsided_colouring(int k) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("gen_lopsided_colouring: k must be odd and >= 1");
    int n = 16 * k * k, a = 8 * k * k - 2 * k;
    HostColouredGraph host(n, 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) host.set_edge(u, v, (u < a) == (v < a) ? 1 : 2);
    return host;
}

TreeGraph gen_caterpillar(int ell, int n) {
    if (ell < 0 || n < ell + 1) throw std::invalid_argument("gen_caterpillar: need n >= ell+1");
    PatternGraph g(n);
    for (int i = 0; i + 1 <= ell; ++i) g.add_edge(i, i + 1);
    std::vector<int> degree(ell + 1, 2), leaves(ell + 1, 0);
    degree[0] = ell > 0 ? 1 : 0;
    if (ell > 0) degree[ell] = 1;
    for (int v = ell + 1; v < n; ++v) {
        int best = 0;
        for (int s = 1; s <= ell; ++s)
            if (std::make_tuple(degree[s], leaves[s], s) <
                std::make_tuple(degree[best], leaves[best], best))
                best = s;
        g.add_edge(best, v);
        ++degree[best];
        ++leaves[best];
    }
    return TreeGraph(g);
}

}  // namespace gdisc
