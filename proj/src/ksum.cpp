#include "gdisc/ksum.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "gdisc/colourings.hpp"
#include "gdisc/repair.hpp"
#include "gdisc/rng.hpp"

namespace gdisc {

namespace {

std::vector<int> common_neighbours(const HostColouredGraph& host, int u, int v) {
    std::vector<int> out;
    const uint64_t* ru = host.row(u);
    const uint64_t* rv = host.row(v);
    for (int w = 0; w < host.words(); ++w) {
        uint64_t bits = ru[w] & rv[w];
        while (bits) {
            int b = __builtin_ctzll(bits);
            bits &= bits - 1;
            out.push_back(w * 64 + b);
        }
    }
    return out;
}

void require_two_colours(const HostColouredGraph& host, const char* who) {
    if (host.r() != 2) throw std::invalid_argument(std::string(who) + " needs a 2-coloured host");
}

}  // namespace

std::optional<OneThreeCycle> find_13_cycle(const HostColouredGraph& host) {
    require_two_colours(host, "find_13_cycle");
    int n = host.n();
    for (int x = 0; x < n; ++x)
        for (int z = x + 1; z < n; ++z) {
            auto common = common_neighbours(host, x, z);
            for (size_t i = 0; i < common.size(); ++i)
                for (size_t j = i + 1; j < common.size(); ++j) {
                    int y = common[i], w = common[j];
                    int c[4] = {host.colour(x, y), host.colour(y, z), host.colour(z, w),
                                host.colour(w, x)};
                    int ones = 0;
                    for (int e = 0; e < 4; ++e) ones += (c[e] == 1);
                    if (ones != 1 && ones != 3) continue;
                    int minority = (ones == 1) ? 1 : 2;
                    int at = 0;
                    while (c[at] != minority) ++at;
                    std::array<int, 4> cyc = {x, y, z, w};
                    std::rotate(cyc.begin(), cyc.begin() + at, cyc.end());
                    OneThreeCycle out{cyc, minority};
                    assert(verify_13_cycle(host, out));
                    return out;
                }
        }
    return std::nullopt;
}

bool verify_13_cycle(const HostColouredGraph& host, const OneThreeCycle& c) {
    const auto& v = c.vertices;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (v[i] == v[j]) return false;
    int col[4];
    for (int e = 0; e < 4; ++e) {
        int a = v[e], b = v[(e + 1) % 4];
        if (!host.has_edge(a, b)) return false;
        col[e] = host.colour(a, b);
    }
    if (col[0] != c.minorityColour) return false;
    return col[1] == col[2] && col[2] == col[3] && col[1] != col[0];
}

bool verify_site(const HostColouredGraph& host, const BipartiteSite& site) {
    if (host.r() != 2 || site.maxDegree < 1) return false;
    if ((int)site.bprime.size() != 2 * site.maxDegree - 1) return false;
    std::vector<int> big = site.bprime;
    big.push_back(site.y);
    std::sort(big.begin(), big.end());
    if (std::adjacent_find(big.begin(), big.end()) != big.end()) return false;
    if (site.x == site.z) return false;
    for (int v : big) {
        if (v == site.x || v == site.z) return false;
        if (!host.has_edge(site.x, v) || !host.has_edge(v, site.z)) return false;
    }
    int s = host.colour(site.x, site.bprime[0]);
    int t = host.colour(site.bprime[0], site.z);
    for (int v : site.bprime)
        if (host.colour(site.x, v) != s || host.colour(v, site.z) != t) return false;
    int cxy = host.colour(site.x, site.y), cyz = host.colour(site.y, site.z);
    if (site.kind == SiteKind::Type1) return cxy != cyz && !(cxy == s && cyz == t);
    return (cxy == cyz) != (s == t);
}

std::optional<BipartiteSite> find_type2_site(const HostColouredGraph& host, int maxDegree) {
    require_two_colours(host, "find_type2_site");
    if (maxDegree < 1) throw std::invalid_argument("maxDegree must be >= 1");
    auto cyc = find_13_cycle(host);
    if (!cyc) return std::nullopt;
    // x-v1-z is the mixed path, x-v3-z the monochromatic one.
    int x = cyc->vertices[0], v1 = cyc->vertices[1], z = cyc->vertices[2], v3 = cyc->vertices[3];
    std::map<std::pair<int, int>, std::vector<int>> classes;
    for (int h : common_neighbours(host, x, z))
        classes[{host.colour(x, h), host.colour(h, z)}].push_back(h);
    int need = 2 * maxDegree - 1;
    auto take = [&](int y, std::pair<int, int> key) -> std::optional<BipartiteSite> {
        auto it = classes.find(key);
        if (it == classes.end()) return std::nullopt;
        std::vector<int> pool;
        for (int h : it->second)
            if (h != y) pool.push_back(h);
        if ((int)pool.size() < need) return std::nullopt;
        pool.resize(need);
        BipartiteSite site{SiteKind::Type2, x, z, y, std::move(pool), maxDegree};
        return verify_site(host, site) ? std::optional<BipartiteSite>(site) : std::nullopt;
    };
    // Distinguished mixed path y = v1 with a monochromatic bucket, then
    // distinguished monochromatic path y = v3 with a mixed bucket.
    std::pair<int, int> monoKeys[2] = {{1, 1}, {2, 2}};
    if (classes[monoKeys[1]].size() > classes[monoKeys[0]].size())
        std::swap(monoKeys[0], monoKeys[1]);
    for (auto key : monoKeys)
        if (auto site = take(v1, key)) return site;
    std::pair<int, int> mixedKeys[2] = {{1, 2}, {2, 1}};
    if (classes[mixedKeys[1]].size() > classes[mixedKeys[0]].size())
        std::swap(mixedKeys[0], mixedKeys[1]);
    for (auto key : mixedKeys)
        if (auto site = take(v3, key)) return site;
    return std::nullopt;
}

std::vector<int> balanced_vertices(const HostColouredGraph& host, double xi) {
    require_two_colours(host, "balanced_vertices");
    int thr = (int)std::ceil(xi * host.n());
    std::vector<int> out;
    for (int v = 0; v < host.n(); ++v) {
        int c1 = 0, c2 = 0;
        for (int u = 0; u < host.n(); ++u) {
            if (u == v) continue;
            int c = host.colour(v, u);
            if (c == 1) ++c1;
            else if (c == 2) ++c2;
        }
        if (c1 >= thr && c2 >= thr) out.push_back(v);
    }
    return out;
}

CountEstimate count_type1_sites(const HostColouredGraph& host, int maxDegree, DecisionMode mode,
                                long long samples, uint64_t seed) {
    require_two_colours(host, "count_type1_sites");
    if (maxDegree < 1) throw std::invalid_argument("maxDegree must be >= 1");
    int n = host.n();
    if (mode == DecisionMode::Exact) {
        if (maxDegree != 1 || n > 60)
            throw std::invalid_argument("exact site count guarded at maxDegree = 1, n <= 60");
        long long count = 0;
        for (int x = 0; x < n; ++x)
            for (int z = 0; z < n; ++z) {
                if (z == x) continue;
                for (int y = 0; y < n; ++y) {
                    if (y == x || y == z) continue;
                    if (!host.has_edge(x, y) || !host.has_edge(y, z)) continue;
                    int cxy = host.colour(x, y), cyz = host.colour(y, z);
                    if (cxy == cyz) continue;
                    for (int w = 0; w < n; ++w) {
                        if (w == x || w == z || w == y) continue;
                        if (!host.has_edge(x, w) || !host.has_edge(w, z)) continue;
                        if (cxy == host.colour(x, w) && cyz == host.colour(w, z)) continue;
                        ++count;
                    }
                }
            }
        return {(double)count, true, 0.0};
    }
    int span = 2 * maxDegree + 2;
    if (n < span) return {0.0, false, 0.0};
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    Rng rng(derive_seed(seed, "type1-site-sample"));
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        auto pick = random_injection(span, n, rng);
        int x = pick[0], z = pick[1], y = pick[2];
        if (!host.has_edge(x, y) || !host.has_edge(y, z)) continue;
        int cxy = host.colour(x, y), cyz = host.colour(y, z);
        if (cxy == cyz) continue;
        bool ok = true;
        int s = 0, t = 0;
        for (int j = 3; j < span && ok; ++j) {
            int w = pick[j];
            if (!host.has_edge(x, w) || !host.has_edge(w, z)) {
                ok = false;
                break;
            }
            int cs = host.colour(x, w), ct = host.colour(w, z);
            if (s == 0) {
                s = cs;
                t = ct;
            } else if (cs != s || ct != t)
                ok = false;
        }
        if (ok && !(cxy == s && cyz == t)) ++hits;
    }
    // ordered (x, z, y) and an unordered fresh (2*maxDegree - 1)-set
    double total = (double)n * (n - 1) * (n - 2);
    for (int i = 0; i < 2 * maxDegree - 1; ++i) total *= (double)(n - 3 - i) / (i + 1);
    double p = (double)hits / samples;
    double se = std::sqrt(std::max(0.0, p * (1 - p) / samples)) * total;
    return {p * total, false, se};
}

PairSelection distance3_pairs(const PatternGraph& pattern) {
    int n = pattern.n();
    int nonIsolated = 0;
    for (int v = 0; v < n; ++v) nonIsolated += (pattern.degree(v) > 0);
    if (nonIsolated < 2)
        throw std::invalid_argument("distance3_pairs needs >= 2 non-isolated vertices");
    std::vector<int> degreesPresent;
    for (int v = 0; v < n; ++v)
        if (pattern.degree(v) > 0) degreesPresent.push_back(pattern.degree(v));
    std::sort(degreesPresent.begin(), degreesPresent.end());
    degreesPresent.erase(std::unique(degreesPresent.begin(), degreesPresent.end()),
                         degreesPresent.end());
    std::vector<int> bestSet;
    int bestDegree = 0;
    for (int d : degreesPresent) {
        std::vector<int> excluded;
        for (int v = 0; v < n; ++v)
            if (pattern.degree(v) != d) excluded.push_back(v);
        auto set = distance3_set(pattern, -1, excluded);
        if (set.size() > bestSet.size()) {
            bestSet = std::move(set);
            bestDegree = d;
        }
    }
    PairSelection sel;
    sel.degree = bestDegree;
    for (size_t i = 0; i + 1 < bestSet.size(); i += 2) sel.pairs.emplace_back(bestSet[i], bestSet[i + 1]);
    int dmax = pattern.max_degree();
    double raw = ((double)pattern.m() / dmax) / (dmax * dmax + dmax + 1) / dmax / 2;
    sel.bound = (long long)std::floor(raw);
    sel.belowBound = (long long)sel.pairs.size() < std::max(sel.bound, 1ll);
    if (sel.pairs.empty()) sel.degree = 0;
    return sel;
}

namespace {

int site_delta(const HostColouredGraph& host, const BipartiteSite& site) {
    int s = host.colour(site.x, site.bprime[0]);
    int t = host.colour(site.bprime[0], site.z);
    int cxy = host.colour(site.x, site.y), cyz = host.colour(site.y, site.z);
    return (signed_colour_value(cyz) - signed_colour_value(cxy)) +
           (signed_colour_value(s) - signed_colour_value(t));
}

// Swapping the roles of x and z keeps both site kinds valid and negates the
// activation delta.
BipartiteSite reversed_site(BipartiteSite site) {
    std::swap(site.x, site.z);
    return site;
}

std::vector<int> sorted_images(const PatternGraph& pattern, const Embedding& emb, int v) {
    std::vector<int> out;
    for (int u : pattern.neighbours(v)) out.push_back(emb(u));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Gadget> detect_gadgets(const PatternGraph& pattern, const Embedding& emb,
                                   const HostColouredGraph& host,
                                   const std::vector<std::pair<int, int>>& pairs) {
    require_two_colours(host, "detect_gadgets");
    int dmax = pattern.max_degree();
    std::vector<char> reserved(host.n(), 0);
    for (auto [a, b] : pairs) {
        reserved[emb(a)] = reserved[emb(b)] = 1;
        for (int u : pattern.neighbours(a)) reserved[emb(u)] = 1;
        for (int u : pattern.neighbours(b)) reserved[emb(u)] = 1;
    }
    std::vector<Gadget> out;
    for (auto [a, b] : pairs) {
        int d = pattern.degree(a);
        if (d < 1 || pattern.degree(b) != d) continue;
        int x = emb(a), z = emb(b);
        auto na = sorted_images(pattern, emb, a);
        auto nb = sorted_images(pattern, emb, b);
        std::optional<Gadget> found;
        for (int y : na) {
            std::vector<int> rest;
            for (int v : na)
                if (v != y) rest.push_back(v);
            rest.insert(rest.end(), nb.begin(), nb.end());
            int s = 0, t = 0;
            bool ok = true;
            for (int v : rest) {
                if (!host.has_edge(x, v) || !host.has_edge(v, z)) {
                    ok = false;
                    break;
                }
                int cs = host.colour(x, v), ct = host.colour(v, z);
                if (s == 0) {
                    s = cs;
                    t = ct;
                } else if (cs != s || ct != t) {
                    ok = false;
                    break;
                }
            }
            if (!ok || s == 0) continue;
            if (!host.has_edge(x, y) || !host.has_edge(y, z)) continue;
            int cxy = host.colour(x, y), cyz = host.colour(y, z);
            if (cxy == cyz || (cxy == s && cyz == t)) continue;
            int need = 2 * dmax - 2 * d;
            std::vector<int> filler;
            for (int h = 0; h < host.n() && (int)filler.size() < need; ++h) {
                if (h == x || h == z || reserved[h]) continue;
                if (!host.has_edge(x, h) || !host.has_edge(h, z)) continue;
                if (host.colour(x, h) != s || host.colour(h, z) != t) continue;
                filler.push_back(h);
            }
            if ((int)filler.size() < need) continue;
            BipartiteSite site{SiteKind::Type1, x, z, y, {}, dmax};
            site.bprime = rest;
            site.bprime.insert(site.bprime.end(), filler.begin(), filler.end());
            std::sort(site.bprime.begin(), site.bprime.end());
            int delta = site_delta(host, site);
            assert(delta != 0 && std::abs(delta) <= 4 && delta % 2 == 0);
            std::vector<int> b1;
            for (int v : na)
                if (v != y) b1.push_back(v);
            found = Gadget{std::move(site), std::move(b1), nb, 1, delta > 0 ? 1 : -1, delta, a, b};
            break;
        }
        if (!found) continue;
        reserved[found->site.y] = 1;
        for (int v : found->site.bprime) reserved[v] = 1;
        out.push_back(std::move(*found));
    }
    return out;
}

bool verify_gadget(const PatternGraph& pattern, const Embedding& emb,
                   const HostColouredGraph& host, const Gadget& g) {
    if (!verify_site(host, g.site)) return false;
    if ((g.order == 1) != (g.site.kind == SiteKind::Type1)) return false;
    if (emb(g.pa) != g.site.x || emb(g.pb) != g.site.z) return false;
    if (pattern.degree(g.pa) != pattern.degree(g.pb)) return false;
    std::vector<int> wantA = g.b1;
    wantA.push_back(g.site.y);
    std::sort(wantA.begin(), wantA.end());
    if (sorted_images(pattern, emb, g.pa) != wantA) return false;
    std::vector<int> wantB = g.b2;
    std::sort(wantB.begin(), wantB.end());
    if (sorted_images(pattern, emb, g.pb) != wantB) return false;
    // b1 and b2 must sit inside the site's big part
    std::vector<int> big = g.site.bprime;
    for (int v : g.b1)
        if (!std::binary_search(big.begin(), big.end(), v)) return false;
    for (int v : g.b2)
        if (!std::binary_search(big.begin(), big.end(), v)) return false;
    int delta = site_delta(host, g.site);
    if (delta != g.predictedDelta || g.sign != (delta > 0 ? 1 : -1)) return false;
    if (g.order == 2 && std::abs(delta) != 2) return false;
    return true;
}

Embedding activate_gadget(const PatternGraph& pattern, const Embedding& emb,
                          const HostColouredGraph& host, const Gadget& g) {
    if (!verify_gadget(pattern, emb, host, g)) throw stale_gadget_error();
    return exchange_vertices(emb, g.pa, emb(g.pb), host.n());
}

ResiduePrediction predict_residue(const PatternGraph& pattern, const HostColouredGraph& host,
                                  uint64_t seed, int restarts) {
    require_two_colours(host, "predict_residue");
    if (pattern.n() > host.n()) throw std::invalid_argument("pattern larger than host");
    int a = is_inert(pattern, host) ? 4 : 2;
    for (int i = 0; i < restarts; ++i) {
        Rng rng(derive_seed(seed, "residue-attempt", (uint64_t)i));
        Embedding emb(random_injection(pattern.n(), host.n(), rng));
        auto rep = remove_ghost_edges(pattern, host, std::move(emb), {});
        if (rep.status != RepairStatus::Ok) continue;
        int sum = signed_sum(pattern, host, rep.emb);
        return {a, ((sum % a) + a) % a};
    }
    throw std::runtime_error("no copy of the pattern could be constructed");
}

namespace {

struct PlacementOutcome {
    Embedding emb;
    Gadget gadget;
    int exchanges;
};

// Number of exchanges placing pair (a, b) onto the site would need now.
int placement_cost(const PatternGraph& pattern, const Embedding& emb, const BipartiteSite& site,
                   int a, int b) {
    int d = pattern.degree(a);
    int cost = (emb(a) != site.x) + (emb(b) != site.z);
    const auto& nbA = pattern.neighbours(a);
    const auto& nbB = pattern.neighbours(b);
    cost += (emb(nbA[0]) != site.y);
    for (int i = 1; i < d; ++i) cost += (emb(nbA[i]) != site.bprime[i - 1]);
    for (int i = 0; i < d; ++i) cost += (emb(nbB[i]) != site.bprime[d - 1 + i]);
    return cost;
}

// Moves pattern pair (a, b) with its neighbourhoods onto the type-2 site:
// a -> x, b -> z, N(a) -> {y} + leading bprime slots, N(b) -> the next d
// slots, exchanging in that order.
std::optional<PlacementOutcome> place_reserve(const PatternGraph& pattern,
                                              const HostColouredGraph& host, Embedding emb,
                                              const BipartiteSite& site, int a, int b) {
    int d = pattern.degree(a);
    if (d < 1 || pattern.degree(b) != d || 2 * d - 1 > (int)site.bprime.size() + 1)
        return std::nullopt;
    std::vector<std::pair<int, int>> moves = {{a, site.x}, {b, site.z}};
    const auto& nbA = pattern.neighbours(a);
    const auto& nbB = pattern.neighbours(b);
    moves.emplace_back(nbA[0], site.y);
    for (int i = 1; i < d; ++i) moves.emplace_back(nbA[i], site.bprime[i - 1]);
    for (int i = 0; i < d; ++i) moves.emplace_back(nbB[i], site.bprime[d - 1 + i]);
    int count = 0;
    for (auto [p, h] : moves) {
        if (emb(p) == h) continue;
        emb = exchange_vertices(emb, p, h, host.n());
        ++count;
    }
    std::vector<int> b1(site.bprime.begin(), site.bprime.begin() + (d - 1));
    std::vector<int> b2(site.bprime.begin() + (d - 1), site.bprime.begin() + (2 * d - 1));
    int delta = site_delta(host, site);
    Gadget g{site, std::move(b1), std::move(b2), 2, delta > 0 ? 1 : -1, delta, a, b};
    if (!verify_gadget(pattern, emb, host, g)) return std::nullopt;
    return PlacementOutcome{std::move(emb), std::move(g), count};
}

// --- desk-scale exhaustive completion ---------------------------------------
//
// The staged pipeline is randomized, and a small pattern offers only a few
// distance-3 exchange pairs, so rare-but-reachable sums near the edge of the
// spectrum can evade every restart.  On hosts small enough to enumerate, a
// failed search falls through to an exact witness search for the shapes the
// signed-sum theory cares about: matchings, single paths and single cycles
// (isolated pattern vertices imaged onto leftover host vertices afterwards).

constexpr int kDeskScaleHostN = 16;

struct DeskShape {
    enum Kind { Other, Matching, Path, Cycle };
    Kind kind = Other;
    // Matching: the endpoints of each pattern edge, flattened pairwise.
    // Path / Cycle: the pattern vertices in walk order.
    std::vector<int> order;
};

DeskShape classify_desk_shape(const PatternGraph& pattern) {
    DeskShape out;
    std::vector<int> active;
    int maxDeg = 0;
    for (int v = 0; v < pattern.n(); ++v)
        if (pattern.degree(v) > 0) {
            active.push_back(v);
            maxDeg = std::max(maxDeg, pattern.degree(v));
        }
    if (active.empty() || maxDeg > 2) return out;
    if (maxDeg == 1) {
        out.kind = DeskShape::Matching;
        for (int v : active) {
            int u = pattern.neighbours(v)[0];
            if (v < u) {
                out.order.push_back(v);
                out.order.push_back(u);
            }
        }
        return out;
    }
    int endpoints = 0, start = active[0];
    for (int v : active)
        if (pattern.degree(v) == 1) {
            ++endpoints;
            start = v;
        }
    if (endpoints != 0 && endpoints != 2) return out;
    std::vector<int> walk{start};
    std::vector<char> seen((size_t)pattern.n(), 0);
    seen[start] = 1;
    for (;;) {
        int next = -1;
        for (int u : pattern.neighbours(walk.back()))
            if (!seen[u]) {
                next = u;
                break;
            }
        if (next < 0) break;
        walk.push_back(next);
        seen[next] = 1;
    }
    if (walk.size() != active.size()) return out;  // more than one component
    if (endpoints == 2) {
        out.kind = DeskShape::Path;
    } else {
        if (!pattern.has_edge(walk.back(), walk.front())) return out;
        out.kind = DeskShape::Cycle;
    }
    out.order = std::move(walk);
    return out;
}

// q pairwise-disjoint host edges whose signed colours sum to k.  The least
// free vertex is matched or skipped, so each vertex set is visited once; the
// window prune drops branches whose remaining edges cannot close the gap.
std::optional<std::vector<std::pair<int, int>>> matching_sum_witness(const HostColouredGraph& host,
                                                                     int q, int k) {
    int n = host.n();
    std::vector<char> used((size_t)n, 0);
    std::vector<std::pair<int, int>> chosen;
    std::function<bool(int, int, int, int)> go = [&](int v, int left, int sum,
                                                     int freeLeft) -> bool {
        if (left == 0) return sum == k;
        int gap = k - sum;
        if (std::abs(gap) > left || ((gap - left) & 1)) return false;
        while (v < n && used[v]) ++v;
        if (v >= n || freeLeft < 2 * left) return false;
        for (int w = v + 1; w < n; ++w) {
            if (used[w] || !host.has_edge(v, w)) continue;
            used[v] = used[w] = 1;
            chosen.emplace_back(v, w);
            if (go(v + 1, left - 1, sum + signed_colour_value(host.colour(v, w)), freeLeft - 2))
                return true;
            chosen.pop_back();
            used[v] = used[w] = 0;
        }
        return go(v + 1, left, sum, freeLeft - 1);  // leave v unmatched
    };
    if (go(0, q, 0, n)) return chosen;
    return std::nullopt;
}

// Injective host walk v_0..v_{L-1} along host edges with signed colour sum k;
// `closed` also counts the edge v_{L-1} v_0.  Subset DP with one bit per
// reachable sum; the witness is rebuilt by walking the table backwards.  At
// the n <= 16 cap the table is 2^16 * 16 words = 8 MiB.
std::optional<std::vector<int>> walk_sum_witness(const HostColouredGraph& host, int L, int k,
                                                 bool closed) {
    int n = host.n();
    if (L < 2 || L > n || std::abs(k) > (closed ? L : L - 1)) return std::nullopt;
    const int off = L;  // bit index = open-walk sum + off, within [1, 2L-1]
    std::vector<uint64_t> dp((size_t(1) << n) * (size_t)n);
    auto entry = [&](uint32_t S, int v) -> uint64_t& { return dp[(size_t)S * n + v]; };

    auto backtrack = [&](uint32_t S, int v, int sum) {
        std::vector<int> walk;
        while (std::popcount(S) > 1) {
            walk.push_back(v);
            uint32_t R = S ^ (uint32_t(1) << v);
            int pick = -1, prevSum = 0;
            for (int u = 0; u < n && pick < 0; ++u) {
                if (!(R >> u & 1) || !host.has_edge(u, v)) continue;
                int s = sum - signed_colour_value(host.colour(u, v));
                if (std::abs(s) <= L - 1 && (entry(R, u) >> (s + off) & 1)) {
                    pick = u;
                    prevSum = s;
                }
            }
            assert(pick >= 0);  // a set DP bit always has a predecessor
            S = R;
            v = pick;
            sum = prevSum;
        }
        walk.push_back(v);
        std::reverse(walk.begin(), walk.end());
        return walk;
    };

    // Cycles are anchored at their least vertex so each rotation is built
    // once; open paths need a single pass seeded from every vertex.
    int lastAnchor = closed ? n - L : 0;
    for (int anchor = 0; anchor <= lastAnchor; ++anchor) {
        std::fill(dp.begin(), dp.end(), 0);
        if (closed)
            entry(uint32_t(1) << anchor, anchor) = uint64_t(1) << off;
        else
            for (int v = 0; v < n; ++v) entry(uint32_t(1) << v, v) = uint64_t(1) << off;
        int first = closed ? anchor : 0;
        for (uint32_t S = 1; S < (uint32_t(1) << n); ++S) {
            if (std::popcount(S) >= L) continue;
            for (int v = first; v < n; ++v) {
                if (!(S >> v & 1)) continue;
                uint64_t bits = entry(S, v);
                if (!bits) continue;
                for (int u = first; u < n; ++u) {
                    if ((S >> u & 1) || !host.has_edge(v, u)) continue;
                    uint64_t shifted =
                        signed_colour_value(host.colour(v, u)) > 0 ? bits << 1 : bits >> 1;
                    entry(S | (uint32_t(1) << u), u) |= shifted;
                }
            }
        }
        for (uint32_t S = 1; S < (uint32_t(1) << n); ++S) {
            if (std::popcount(S) != L) continue;
            if (closed && !(S >> anchor & 1)) continue;
            for (int v = first; v < n; ++v) {
                if (!(S >> v & 1)) continue;
                uint64_t bits = entry(S, v);
                if (!bits) continue;
                if (!closed) {
                    if (bits >> (k + off) & 1) return backtrack(S, v, k);
                } else {
                    if (v == anchor || !host.has_edge(v, anchor)) continue;
                    int s = k - signed_colour_value(host.colour(v, anchor));
                    if (std::abs(s) <= L - 1 && (bits >> (s + off) & 1)) return backtrack(S, v, s);
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Embedding> desk_scale_completion(const PatternGraph& pattern,
                                               const HostColouredGraph& host, int k) {
    if (host.n() > kDeskScaleHostN) return std::nullopt;
    DeskShape shape = classify_desk_shape(pattern);
    if (shape.kind == DeskShape::Other) return std::nullopt;
    std::vector<int> map((size_t)pattern.n(), -1);
    if (shape.kind == DeskShape::Matching) {
        int q = (int)shape.order.size() / 2;
        auto edges = matching_sum_witness(host, q, k);
        if (!edges) return std::nullopt;
        for (int i = 0; i < q; ++i) {
            map[shape.order[2 * i]] = (*edges)[i].first;
            map[shape.order[2 * i + 1]] = (*edges)[i].second;
        }
    } else {
        auto walk =
            walk_sum_witness(host, (int)shape.order.size(), k, shape.kind == DeskShape::Cycle);
        if (!walk) return std::nullopt;
        for (size_t i = 0; i < walk->size(); ++i) map[shape.order[i]] = (*walk)[i];
    }
    std::vector<char> taken((size_t)host.n(), 0);
    for (int h : map)
        if (h >= 0) taken[h] = 1;
    int next = 0;
    for (int v = 0; v < pattern.n(); ++v) {
        if (map[v] >= 0) continue;
        while (taken[next]) ++next;
        map[v] = next;
        taken[next] = 1;
    }
    Embedding emb(std::move(map));
    assert(validate_embedding(pattern, host, emb).empty());
    assert(signed_sum(pattern, host, emb) == k);
    return emb;
}

struct AttemptOutput {
    KsumAttempt att;
    Embedding emb;
};

AttemptOutput run_ksum_attempt(const PatternGraph& pattern, const HostColouredGraph& host,
                               const HostColouredGraph& ext, int k,
                               const std::optional<BipartiteSite>& site2, bool flipReserve,
                               const std::vector<std::pair<int, int>>& pairs, bool inert,
                               int gadgetBudget, uint64_t attemptSeed) {
    KsumAttempt att;
    att.seed = attemptSeed;
    Rng rng(attemptSeed);
    Embedding emb(random_injection(pattern.n(), host.n(), rng));
    att.sumInitial = signed_sum(pattern, ext, emb);
    std::optional<Gadget> reserve;
    std::vector<std::pair<int, int>> m3 = pairs;
    if (!inert && site2) {
        BipartiteSite oriented = flipReserve ? reversed_site(*site2) : *site2;
        int bestIdx = -1, bestCost = INT_MAX;
        for (int i = 0; i < (int)pairs.size(); ++i) {
            int cost = placement_cost(pattern, emb, oriented, pairs[i].first, pairs[i].second);
            if (cost < bestCost) {
                bestCost = cost;
                bestIdx = i;
            }
        }
        if (bestIdx >= 0) {
            auto placed = place_reserve(pattern, host, emb, oriented, pairs[bestIdx].first,
                                        pairs[bestIdx].second);
            if (placed) {
                emb = std::move(placed->emb);
                reserve = std::move(placed->gadget);
                att.placedTwoGadget = true;
                att.placementExchanges = placed->exchanges;
                m3.erase(m3.begin() + bestIdx);
            }
        }
    }
    att.sumAfterPlacement = signed_sum(pattern, ext, emb);
    std::vector<int> protect;
    if (reserve) {
        protect = {reserve->pa, reserve->pb};
        for (int u : pattern.neighbours(reserve->pa)) protect.push_back(u);
        for (int u : pattern.neighbours(reserve->pb)) protect.push_back(u);
    }
    auto rep = remove_ghost_edges(pattern, host, std::move(emb), protect);
    att.repaired = rep.status == RepairStatus::Ok;
    att.repairSteps = (int)rep.steps.size();
    emb = std::move(rep.emb);
    if (!att.repaired) {
        att.failReason = "ghost repair found no candidate exchange";
        return {std::move(att), std::move(emb)};
    }
    int sum = signed_sum(pattern, host, emb);
    att.sumAfterRepair = sum;
    int budget = gadgetBudget;
    int delta2 = reserve ? reserve->predictedDelta : 0;
    std::string fail;
    for (;;) {
        int gap = k - sum;
        if (gap == 0) break;
        if (reserve && gap == delta2) break;
        if (budget <= 0) {
            fail = "gadget budget exhausted";
            break;
        }
        auto gadgets = detect_gadgets(pattern, emb, host, m3);
        int pick = -1, pickScore = INT_MAX, pickAbs = -1;
        for (int i = 0; i < (int)gadgets.size(); ++i) {
            int delta = gadgets[i].predictedDelta;
            int score;
            if (gap - delta == 0)
                score = 0;
            else if (reserve && gap - delta == delta2)
                score = 1;
            else if (std::abs(gap - delta) < std::abs(gap))
                score = 2;
            else
                continue;
            if (score < pickScore || (score == pickScore && std::abs(delta) > pickAbs)) {
                pick = i;
                pickScore = score;
                pickAbs = std::abs(delta);
            }
        }
        if (pick < 0) {
            fail = "no detected gadget reduces the gap";
            break;
        }
        emb = activate_gadget(pattern, emb, host, gadgets[pick]);
        sum += gadgets[pick].predictedDelta;
        assert(sum == signed_sum(pattern, host, emb));
        att.activations.push_back(
            {gadgets[pick].pa, gadgets[pick].pb, gadgets[pick].predictedDelta, sum});
        --budget;
    }
    if (fail.empty() && reserve && k - sum == delta2 && sum != k) {
        emb = activate_gadget(pattern, emb, host, *reserve);
        sum += delta2;
        att.usedFinalExchange = true;
    }
    att.finalSum = signed_sum(pattern, host, emb);  // throws if a ghost crept in
    assert(att.finalSum == sum);
    att.success = att.finalSum == k;
    if (!att.success && att.failReason.empty())
        att.failReason = fail.empty() ? "round target missed" : fail;
    return {std::move(att), std::move(emb)};
}

}  // namespace

KsumResult ksum_embed(const PatternGraph& pattern, const HostColouredGraph& host, int k,
                      const KsumParams& params) {
    require_two_colours(host, "ksum_embed");
    if (pattern.n() > host.n()) throw std::invalid_argument("pattern larger than host");
    if (params.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    KsumResult res;
    res.k = k;
    res.inert = is_inert(pattern, host);
    res.a = res.inert ? 4 : 2;
    if (res.a == 2) {
        res.b = pattern.m() % 2;
    } else {
        try {
            res.b = predict_residue(pattern, host, params.seed, params.restarts).b;
        } catch (const std::runtime_error&) {
            res.status = KsumStatus::SearchFailed;
            return res;
        }
    }
    if (((k % res.a) + res.a) % res.a != res.b) {
        res.status = KsumStatus::Infeasible;
        return res;
    }
    PairSelection sel;
    try {
        sel = distance3_pairs(pattern);
    } catch (const std::invalid_argument&) {
        // Patterns with < 2 non-isolated vertices have no exchange pairs.
    }
    std::optional<BipartiteSite> site2;
    if (!res.inert) site2 = find_type2_site(host, std::max(pattern.max_degree(), 1));
    res.twoGadgetSite = site2;
    HostColouredGraph ext = extend_colouring(host);
    bool haveClosest = false;
    for (int i = 0; i < params.restarts; ++i) {
        auto got = run_ksum_attempt(pattern, host, ext, k, site2, i % 2 == 1, sel.pairs, res.inert,
                                    params.gadgetBudget,
                                    derive_seed(params.seed, "ksum-attempt", (uint64_t)i));
        if (got.att.repaired &&
            (!haveClosest || std::abs(got.att.finalSum - k) < std::abs(res.closest - k))) {
            res.closest = got.att.finalSum;
            haveClosest = true;
        }
        bool success = got.att.success;
        res.attempts.push_back(std::move(got.att));
        if (success) {
            res.status = KsumStatus::Ok;
            res.emb = std::move(got.emb);
            return res;
        }
    }
    if (auto done = desk_scale_completion(pattern, host, k)) {
        res.status = KsumStatus::Ok;
        res.exhaustiveCompletion = true;
        res.closest = k;
        res.emb = std::move(*done);
        return res;
    }
    res.status = KsumStatus::SearchFailed;
    return res;
}

}  // namespace gdisc
