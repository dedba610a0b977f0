#include "gdisc/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace gdisc {

namespace {

// Connectivity-aware vertex order: BFS from the highest-degree vertex of
// each component.  anchors[i] lists positions (in order) of the earlier
// neighbours of order[i].
struct SearchPlan {
    std::vector<int> order;
    std::vector<std::vector<int>> anchors;
    std::vector<int> edgesAfter;  // pattern edges not yet closed before step i

    explicit SearchPlan(const PatternGraph& pattern) {
        int n = pattern.n();
        std::vector<int> pos(n, -1);
        std::vector<int> byDegree(n);
        std::iota(byDegree.begin(), byDegree.end(), 0);
        std::stable_sort(byDegree.begin(), byDegree.end(), [&](int a, int b) {
            return pattern.degree(a) > pattern.degree(b);
        });
        for (int seed : byDegree) {
            if (pos[seed] != -1) continue;
            std::vector<int> queue{seed};
            pos[seed] = (int)order.size();
            order.push_back(seed);
            for (size_t qi = 0; qi < queue.size(); ++qi)
                for (int w : pattern.neighbours(queue[qi]))
                    if (pos[w] == -1) {
                        pos[w] = (int)order.size();
                        order.push_back(w);
                        queue.push_back(w);
                    }
        }
        anchors.resize(n);
        std::vector<int> closed(n + 1, 0);
        for (int i = 0; i < n; ++i) {
            for (int w : pattern.neighbours(order[i]))
                if (pos[w] < i) anchors[i].push_back(pos[w]);
            closed[i + 1] = closed[i] + (int)anchors[i].size();
        }
        edgesAfter.resize(n + 1);
        for (int i = 0; i <= n; ++i) edgesAfter[i] = pattern.m() - closed[i];
    }
};

struct EmbedSearch {
    const PatternGraph& pattern;
    const HostColouredGraph& host;
    const SearchPlan plan;
    long long cap, nodes = 0;
    std::vector<int> image;      // by plan position
    std::vector<char> usedHost;
    bool stopped = false;

    EmbedSearch(const PatternGraph& p, const HostColouredGraph& h, long long capIn)
        : pattern(p), host(h), plan(p), cap(capIn) {
        image.assign(p.n(), -1);
        usedHost.assign(h.n(), 0);
    }

    void bump() {
        if (++nodes > cap) throw cap_exceeded(nodes, cap);
    }

    template <typename Leaf>
    void run(int depth, Leaf&& leaf) {
        if (stopped) return;
        if (depth == pattern.n()) {
            if (!leaf()) stopped = true;
            return;
        }
        const auto& anchors = plan.anchors[depth];
        if (anchors.empty()) {
            for (int h = 0; h < host.n() && !stopped; ++h) {
                if (usedHost[h]) continue;
                bump();
                usedHost[h] = 1;
                image[depth] = h;
                run(depth + 1, leaf);
                usedHost[h] = 0;
            }
        } else {
            const uint64_t* base = host.row(image[anchors[0]]);
            for (int w = 0; w < host.words() && !stopped; ++w) {
                uint64_t bits = base[w];
                for (size_t a = 1; a < anchors.size(); ++a) bits &= host.row(image[anchors[a]])[w];
                while (bits) {
                    int h = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    if (usedHost[h]) continue;
                    bump();
                    usedHost[h] = 1;
                    image[depth] = h;
                    run(depth + 1, leaf);
                    usedHost[h] = 0;
                    if (stopped) break;
                }
            }
        }
    }

    Embedding current_embedding() const {
        std::vector<int> map(pattern.n());
        for (int i = 0; i < pattern.n(); ++i) map[plan.order[i]] = image[i];
        return Embedding(std::move(map));
    }
};

}  // namespace

long long enumerate_embeddings(const PatternGraph& pattern, const HostColouredGraph& host,
                               long long cap, const std::function<bool(const Embedding&)>& visit) {
    if (pattern.n() > host.n()) return 0;
    if (host.n() > 64) throw std::invalid_argument("embedding enumeration guarded at host n <= 64");
    EmbedSearch search(pattern, host, cap);
    long long found = 0;
    search.run(0, [&]() {
        ++found;
        return visit(search.current_embedding());
    });
    return found;
}

long long count_embeddings(const PatternGraph& pattern, const HostColouredGraph& host,
                           long long cap) {
    return enumerate_embeddings(pattern, host, cap, [](const Embedding&) { return true; });
}

long long hamilton_cycles(const HostColouredGraph& host,
                          const std::function<bool(const std::vector<int>&)>& visit) {
    int n = host.n();
    if (n > 14) throw std::invalid_argument("hamilton_cycles guarded at n <= 14");
    if (n < 3) return 0;
    std::vector<int> seq{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    long long count = 0;
    bool stopped = false;
    auto dfs = [&](auto&& self, int last) -> void {
        if (stopped) return;
        if ((int)seq.size() == n) {
            if (host.has_edge(last, 0) && seq[1] < seq[n - 1]) {
                ++count;
                if (!visit(seq)) stopped = true;
            }
            return;
        }
        for (int v = 1; v < n && !stopped; ++v) {
            if (used[v] || !host.has_edge(last, v)) continue;
            used[v] = 1;
            seq.push_back(v);
            self(self, v);
            seq.pop_back();
            used[v] = 0;
        }
    };
    dfs(dfs, 0);
    return count;
}

long long hamilton_paths(const HostColouredGraph& host,
                         const std::function<bool(const std::vector<int>&)>& visit) {
    int n = host.n();
    if (n > 12) throw std::invalid_argument("hamilton_paths guarded at n <= 12");
    if (n < 2) return 0;
    std::vector<int> seq;
    std::vector<char> used(n, 0);
    long long count = 0;
    bool stopped = false;
    auto dfs = [&](auto&& self, int last) -> void {
        if (stopped) return;
        if ((int)seq.size() == n) {
            if (seq[0] < seq[n - 1]) {
                ++count;
                if (!visit(seq)) stopped = true;
            }
            return;
        }
        for (int v = 0; v < n && !stopped; ++v) {
            if (used[v] || !host.has_edge(last, v)) continue;
            used[v] = 1;
            seq.push_back(v);
            self(self, v);
            seq.pop_back();
            used[v] = 0;
        }
    };
    for (int s = 0; s < n && !stopped; ++s) {
        used[s] = 1;
        seq.push_back(s);
        dfs(dfs, s);
        seq.pop_back();
        used[s] = 0;
    }
    return count;
}

long long enumerate_sfactors(int n, int starSize,
                             const std::function<bool(const StarFactor&)>& visit) {
    if (starSize < 2 || n % starSize != 0)
        throw std::invalid_argument("enumerate_sfactors: starSize must divide n");
    StarFactor factor;
    std::vector<char> used(n, 0);
    long long count = 0;
    bool stopped = false;
    // The unassigned vertex with the smallest id always joins the next star;
    // its starSize-1 companions are chosen ascending, then every member takes
    // a turn as the centre.
    auto chooseCentres = [&](auto&& self, size_t starIdx) -> void {
        if (stopped) return;
        if (starIdx == factor.stars.size()) {
            ++count;
            if (!visit(factor)) stopped = true;
            return;
        }
        auto saved = factor.stars[starIdx];
        for (int c = 0; c < starSize && !stopped; ++c) {
            std::vector<int> all = saved.second;
            all.push_back(saved.first);
            std::sort(all.begin(), all.end());
            int centre = all[c];
            std::vector<int> leaves;
            for (int v : all)
                if (v != centre) leaves.push_back(v);
            factor.stars[starIdx] = {centre, leaves};
            self(self, starIdx + 1);
        }
        factor.stars[starIdx] = saved;
    };
    auto partition = [&](auto&& self, int assigned) -> void {
        if (stopped) return;
        if (assigned == n) {
            chooseCentres(chooseCentres, 0);
            return;
        }
        int first = 0;
        while (used[first]) ++first;
        used[first] = 1;
        // Per-level buffer: deeper recursion fills its own star while this
        // level's pick loop is still live.
        std::vector<int> members(starSize);
        members[0] = first;
        auto pick = [&](auto&& pickSelf, int slot, int minNext) -> void {
            if (stopped) return;
            if (slot == starSize) {
                std::vector<int> leaves(members.begin() + 1, members.end());
                factor.stars.push_back({members[0], leaves});
                self(self, assigned + starSize);
                factor.stars.pop_back();
                return;
            }
            for (int v = minNext; v < n && !stopped; ++v) {
                if (used[v]) continue;
                used[v] = 1;
                members[slot] = v;
                pickSelf(pickSelf, slot + 1, v + 1);
                used[v] = 0;
            }
        };
        pick(pick, 1, first + 1);
        used[first] = 0;
    };
    partition(partition, 0);
    return count;
}

TreeGraph prufer_decode(const std::vector<int>& seq) {
    int n = (int)seq.size() + 2;
    std::vector<int> deg(n, 1);
    for (int x : seq) {
        if (x < 0 || x >= n) throw std::invalid_argument("prufer_decode: symbol out of range");
        ++deg[x];
    }
    PatternGraph g(n);
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        g.add_edge(leaf, x);
        if (--deg[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (ptr < n && deg[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    g.add_edge(leaf, n - 1);
    return TreeGraph(g);
}

long long enumerate_trees_labelled(int n, const std::function<bool(const TreeGraph&)>& visit) {
    if (n < 2) throw std::invalid_argument("enumerate_trees_labelled: need n >= 2");
    if (n > 10) throw std::invalid_argument("enumerate_trees_labelled guarded at n <= 10");
    std::vector<int> seq(n - 2, 0);
    long long count = 0;
    for (;;) {
        ++count;
        if (!visit(prufer_decode(seq))) return count;
        int i = (int)seq.size() - 1;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    return count;
}

TreeGraph random_tree(int n, Rng& rng) {
    if (n < 2) throw std::invalid_argument("random_tree: need n >= 2");
    std::vector<int> seq(n - 2);
    for (int& x : seq) x = (int)rng.below((uint64_t)n);
    return prufer_decode(seq);
}

int max_colour_oracle(const PatternGraph& pattern, const HostColouredGraph& host, int colour,
                      long long cap, int witnessedLower) {
    if (colour < 1 || colour > host.r()) throw std::invalid_argument("colour out of range");
    if (pattern.n() > host.n()) throw std::invalid_argument("pattern larger than host");
    if (host.n() > 64) throw std::invalid_argument("max_colour_oracle guarded at host n <= 64");
    SearchPlan plan(pattern);
    int n = pattern.n();
    std::vector<int> image(n, -1);
    std::vector<char> used(host.n(), 0);
    int best = witnessedLower;
    long long nodes = 0;
    // Candidates with more colour-`colour` anchor edges are tried first so a
    // strong incumbent appears early; prune when even all-remaining edges in
    // colour cannot beat it.
    std::vector<std::vector<int>> candidateBuf(n + 1);
    auto dfs = [&](auto&& self, int depth, int current) -> void {
        if (depth == n) {
            best = std::max(best, current);
            return;
        }
        if (current + plan.edgesAfter[depth] <= best) return;
        const auto& anchors = plan.anchors[depth];
        auto& cands = candidateBuf[depth];
        cands.clear();
        if (anchors.empty()) {
            for (int h = 0; h < host.n(); ++h)
                if (!used[h]) cands.push_back(h);
        } else {
            const uint64_t* base = host.row(image[anchors[0]]);
            for (int w = 0; w < host.words(); ++w) {
                uint64_t bits = base[w];
                for (size_t a = 1; a < anchors.size(); ++a) bits &= host.row(image[anchors[a]])[w];
                while (bits) {
                    int h = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    if (!used[h]) cands.push_back(h);
                }
            }
        }
        auto gain = [&](int h) {
            int g = 0;
            for (int a : anchors)
                if (host.colour(image[a], h) == colour) ++g;
            return g;
        };
        std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) { return gain(a) > gain(b); });
        for (int h : cands) {
            if (++nodes > cap) throw cap_exceeded(nodes, cap);
            int add = gain(h);
            if (current + add + plan.edgesAfter[depth + 1] <= best) continue;
            used[h] = 1;
            image[depth] = h;
            self(self, depth + 1, current + add);
            used[h] = 0;
        }
    };
    dfs(dfs, 0, 0);
    return best;
}

namespace {

// Pattern shape recognition for the dedicated sum enumerators.
struct Shape {
    enum Kind { Matching, Path, Cycle, Generic } kind = Generic;
    int size = 0;                 // edges for matching, vertices for path/cycle
    std::vector<int> vertices;    // non-isolated pattern vertices
};

Shape classify_shape(const PatternGraph& pattern) {
    Shape shape;
    for (int v = 0; v < pattern.n(); ++v)
        if (pattern.degree(v) > 0) shape.vertices.push_back(v);
    if (shape.vertices.empty()) return shape;
    int deg1 = 0, deg2 = 0;
    for (int v : shape.vertices) {
        if (pattern.degree(v) == 1) ++deg1;
        else if (pattern.degree(v) == 2) ++deg2;
        else return shape;
    }
    int nv = (int)shape.vertices.size();
    if (deg1 == nv) {
        shape.kind = Shape::Matching;
        shape.size = pattern.m();
        return shape;
    }
    // Paths and cycles must additionally be connected as a single strand.
    PatternGraph sub(nv);
    std::vector<int> index(pattern.n(), -1);
    for (int i = 0; i < nv; ++i) index[shape.vertices[i]] = i;
    for (auto [u, v] : pattern.edges()) sub.add_edge(index[u], index[v]);
    if (!sub.connected()) return shape;
    if (deg1 == 2 && deg2 == nv - 2) {
        shape.kind = Shape::Path;
        shape.size = nv;
    } else if (deg2 == nv && nv >= 3) {
        shape.kind = Shape::Cycle;
        shape.size = nv;
    }
    return shape;
}

struct SumSearch {
    const HostColouredGraph& host;
    long long cap, nodes = 0;
    std::set<int> sums;
    int n;

    SumSearch(const HostColouredGraph& h, long long capIn) : host(h), cap(capIn), n(h.n()) {}

    void bump() {
        if (++nodes > cap) throw cap_exceeded(nodes, cap);
    }

    int value(int u, int v) const { return host.colour(u, v) == 1 ? 1 : -1; }

    void matchings(int edgesLeft, int fromVertex, uint64_t usedMask, int sum) {
        if (edgesLeft == 0) {
            sums.insert(sum);
            return;
        }
        int u = fromVertex;
        while (u < n && (usedMask >> u & 1)) ++u;
        if (n - u < 2 * edgesLeft) return;
        // u unmatched: only if enough vertices remain without it.
        if (n - u - 1 >= 2 * edgesLeft) matchings(edgesLeft, u + 1, usedMask | (1ull << u), sum);
        for (int w = u + 1; w < n; ++w) {
            if ((usedMask >> w & 1) || !host.has_edge(u, w)) continue;
            bump();
            matchings(edgesLeft - 1, u + 1, usedMask | (1ull << u) | (1ull << w), sum + value(u, w));
        }
    }

    // Host n <= 64, so adjacency rows are a single word.
    void paths(int length) {
        std::vector<int> seq(length);
        auto dfs = [&](auto&& self, int depth, uint64_t usedMask, int sum) -> void {
            if (depth == length) {
                if (seq[0] < seq[length - 1]) sums.insert(sum);
                return;
            }
            int last = seq[depth - 1];
            uint64_t bits = host.row(last)[0] & ~usedMask;
            while (bits) {
                int v = __builtin_ctzll(bits);
                bits &= bits - 1;
                bump();
                seq[depth] = v;
                self(self, depth + 1, usedMask | (1ull << v), sum + value(last, v));
            }
        };
        for (int s = 0; s < n; ++s) {
            seq[0] = s;
            dfs(dfs, 1, 1ull << s, 0);
        }
    }

    void cycles(int length) {
        std::vector<int> seq(length);
        auto dfs = [&](auto&& self, int depth, uint64_t usedMask, uint64_t aboveBase,
                       int sum) -> void {
            int last = seq[depth - 1];
            if (depth == length) {
                if (host.has_edge(last, seq[0]) && seq[1] < seq[length - 1])
                    sums.insert(sum + value(last, seq[0]));
                return;
            }
            uint64_t bits = host.row(last)[0] & ~usedMask & aboveBase;
            while (bits) {
                int v = __builtin_ctzll(bits);
                bits &= bits - 1;
                bump();
                seq[depth] = v;
                self(self, depth + 1, usedMask | (1ull << v), aboveBase, sum + value(last, v));
            }
        };
        for (int base = 0; base + length <= n; ++base) {
            seq[0] = base;
            uint64_t aboveBase = ~((2ull << base) - 1);
            dfs(dfs, 1, 1ull << base, aboveBase, 0);
        }
    }

    // Subset dynamic programme for hosts with n <= 16: dp[mask][last] is the
    // bitset of achievable sums (offset so bit `offset` means sum 0) over
    // simple paths visiting exactly `mask` and ending at `last`.  Sums of an
    // L-vertex strand span at most 2L+1 values, which fits one word.
    void paths_dp(int length) {
        int offset = length - 1;
        size_t states = ((size_t)1 << n) * n;
        std::vector<uint64_t> dp(states, 0);
        for (int v = 0; v < n; ++v) dp[(((size_t)1 << v)) * (size_t)n + v] = 1ull << offset;
        for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
            int pc = __builtin_popcountll(mask);
            if (pc > length) continue;
            uint64_t lasts = mask;
            while (lasts) {
                int last = __builtin_ctzll(lasts);
                lasts &= lasts - 1;
                uint64_t set = dp[mask * n + last];
                if (!set) continue;
                if (pc == length) {
                    uint64_t bits = set;
                    while (bits) {
                        int b = __builtin_ctzll(bits);
                        bits &= bits - 1;
                        sums.insert(b - offset);
                    }
                    continue;
                }
                uint64_t nexts = host.row(last)[0] & ~mask;
                while (nexts) {
                    int v = __builtin_ctzll(nexts);
                    nexts &= nexts - 1;
                    uint64_t shifted = value(last, v) > 0 ? set << 1 : set >> 1;
                    dp[(mask | (1ull << v)) * n + v] |= shifted;
                }
            }
        }
    }

    // Same table, with the strand's start pinned to the minimum of `mask` so
    // each cycle is generated from a canonical rotation, closed by the edge
    // back to the start.
    void cycles_dp(int length) {
        int offset = length;
        size_t states = ((size_t)1 << n) * n;
        std::vector<uint64_t> dp(states, 0);
        for (int v = 0; v < n; ++v) dp[(((size_t)1 << v)) * (size_t)n + v] = 1ull << offset;
        for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
            int pc = __builtin_popcountll(mask);
            if (pc > length) continue;
            int start = __builtin_ctzll(mask);
            uint64_t lasts = mask;
            while (lasts) {
                int last = __builtin_ctzll(lasts);
                lasts &= lasts - 1;
                uint64_t set = dp[mask * n + last];
                if (!set) continue;
                if (pc == length) {
                    if (last == start || !host.has_edge(last, start)) continue;
                    uint64_t closed = value(last, start) > 0 ? set << 1 : set >> 1;
                    while (closed) {
                        int b = __builtin_ctzll(closed);
                        closed &= closed - 1;
                        sums.insert(b - offset);
                    }
                    continue;
                }
                uint64_t nexts = host.row(last)[0] & ~mask & ~((2ull << start) - 1);
                while (nexts) {
                    int v = __builtin_ctzll(nexts);
                    nexts &= nexts - 1;
                    uint64_t shifted = value(last, v) > 0 ? set << 1 : set >> 1;
                    dp[(mask | (1ull << v)) * n + v] |= shifted;
                }
            }
        }
    }
};

}  // namespace

std::set<int> reachable_sums(const PatternGraph& pattern, const HostColouredGraph& host,
                             long long cap) {
    if (host.r() != 2) throw std::invalid_argument("reachable_sums needs a 2-coloured host");
    if (host.n() > 64) throw std::invalid_argument("reachable_sums guarded at host n <= 64");
    Shape shape = classify_shape(pattern);
    SumSearch search(host, cap);
    switch (shape.kind) {
        case Shape::Matching:
            search.matchings(shape.size, 0, 0, 0);
            return search.sums;
        case Shape::Path:
            if (host.n() <= 16) search.paths_dp(shape.size);
            else search.paths(shape.size);
            return search.sums;
        case Shape::Cycle:
            if (host.n() <= 16) search.cycles_dp(shape.size);
            else search.cycles(shape.size);
            return search.sums;
        case Shape::Generic:
            break;
    }
    if (shape.vertices.empty()) return {0};
    // Isolated pattern vertices do not affect sums; strip them before the
    // generic embedding sweep.
    PatternGraph sub((int)shape.vertices.size());
    std::vector<int> index(pattern.n(), -1);
    for (size_t i = 0; i < shape.vertices.size(); ++i) index[shape.vertices[i]] = (int)i;
    for (auto [u, v] : pattern.edges()) sub.add_edge(index[u], index[v]);
    std::set<int> sums;
    enumerate_embeddings(sub, host, cap, [&](const Embedding& emb) {
        sums.insert(signed_sum(sub, host, emb));
        return true;
    });
    return sums;
}

}  // namespace gdisc
