#include "gdisc/repair.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "gdisc/rng.hpp"

namespace gdisc {

Embedding exchange_vertices(const Embedding& emb, int x, int hostTarget, int hostN) {
    if (x < 0 || x >= emb.size()) throw std::invalid_argument("exchange: bad pattern vertex");
    if (hostTarget < 0 || hostTarget >= hostN)
        throw std::invalid_argument("exchange: bad host target");
    if (emb(x) == hostTarget) throw std::invalid_argument("exchange: target is x's own image");
    auto inv = emb.inverse(hostN);
    Embedding out = emb;
    int z = inv[hostTarget];
    if (z >= 0) out.at(z) = emb(x);
    out.at(x) = hostTarget;
    return out;
}

std::vector<int> distance3_set(const PatternGraph& pattern, int mustInclude,
                               const std::vector<int>& excluded) {
    int n = pattern.n();
    std::vector<char> blocked(n, 0), excl(n, 0);
    for (int v : excluded) excl.at(v) = 1;
    std::vector<int> order;
    if (mustInclude >= 0) {
        if (mustInclude >= n) throw std::invalid_argument("mustInclude out of range");
        if (excl[mustInclude]) throw std::invalid_argument("mustInclude is excluded");
        order.push_back(mustInclude);
    }
    for (int v = 0; v < n; ++v) order.push_back(v);
    auto block_ball = [&](int s) {
        blocked[s] = 1;
        for (int a : pattern.neighbours(s)) {
            blocked[a] = 1;
            for (int b : pattern.neighbours(a)) blocked[b] = 1;
        }
    };
    std::vector<int> out;
    for (int v : order) {
        if (excl[v] || blocked[v]) continue;
        out.push_back(v);
        block_ball(v);
    }
    return out;
}

namespace {

// near[z] = pattern distance from x to z is at most 2.
std::vector<char> within_two(const PatternGraph& pattern, int x) {
    std::vector<char> near(pattern.n(), 0);
    near[x] = 1;
    for (int a : pattern.neighbours(x)) {
        near[a] = 1;
        for (int b : pattern.neighbours(a)) near[b] = 1;
    }
    return near;
}

}  // namespace

RepairResult remove_ghost_edges(const PatternGraph& pattern, const HostColouredGraph& host,
                                Embedding emb, const std::vector<int>& protectedVertices) {
    if (emb.size() != pattern.n()) throw std::invalid_argument("embedding size mismatch");
    emb.check_valid(host.n());
    std::vector<char> prot(pattern.n(), 0);
    for (int v : protectedVertices) prot.at(v) = 1;
    RepairResult res{RepairStatus::Ok, std::move(emb), {}};
    for (;;) {
        auto ghosts = validate_embedding(pattern, host, res.emb);
        if (ghosts.empty()) return res;
        std::vector<char> incident(pattern.n(), 0);
        for (auto [a, b] : ghosts) incident[a] = incident[b] = 1;
        auto inv = res.emb.inverse(host.n());
        bool advanced = false;
        for (int x = 0; x < pattern.n() && !advanced; ++x) {
            if (!incident[x] || prot[x]) continue;
            // Unused host vertices adjacent to all of img(N(x)) first.
            for (int h = 0; h < host.n() && !advanced; ++h) {
                if (inv[h] >= 0) continue;
                bool ok = true;
                for (int a : pattern.neighbours(x))
                    if (!host.has_edge(h, res.emb(a))) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                res.emb = exchange_vertices(res.emb, x, h, host.n());
                res.steps.push_back(
                    {x, h, -1, (int)validate_embedding(pattern, host, res.emb).size()});
                advanced = true;
            }
            // Then swaps with vertices at pattern distance >= 3, requiring
            // complete host presence between the crossed neighbourhoods.
            if (!advanced) {
                auto near = within_two(pattern, x);
                for (int z = 0; z < pattern.n() && !advanced; ++z) {
                    if (near[z] || prot[z]) continue;
                    bool ok = true;
                    for (int a : pattern.neighbours(x))
                        if (!host.has_edge(res.emb(z), res.emb(a))) {
                            ok = false;
                            break;
                        }
                    if (ok)
                        for (int b : pattern.neighbours(z))
                            if (!host.has_edge(res.emb(x), res.emb(b))) {
                                ok = false;
                                break;
                            }
                    if (!ok) continue;
                    int target = res.emb(z);
                    res.emb = exchange_vertices(res.emb, x, target, host.n());
                    res.steps.push_back(
                        {x, target, z, (int)validate_embedding(pattern, host, res.emb).size()});
                    advanced = true;
                }
            }
        }
        if (!advanced) {
            res.status = RepairStatus::NoCandidate;
            return res;
        }
        assert(res.steps.back().ghostsAfter < (int)ghosts.size());
    }
}

std::vector<int> family_vertices(const FreeFamily& family) {
    std::vector<int> out;
    for (const auto& p : family.pairs) {
        out.push_back(p.u);
        out.push_back(p.w);
        out.push_back(p.v);
        out.push_back(p.z);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HostColouredGraph extend_colouring(const HostColouredGraph& host) {
    HostColouredGraph out = host;
    int next = 1;
    for (int u = 0; u < host.n(); ++u)
        for (int v = u + 1; v < host.n(); ++v) {
            if (out.has_edge(u, v)) continue;
            out.set_edge(u, v, next);
            next = next % host.r() + 1;
        }
    return out;
}

LeadDenseResult lead_colour_dense(const TreeGraph& tree, const HostColouredGraph& host,
                                  int restarts, uint64_t seed) {
    int r = host.r();
    if (r < 2) throw std::invalid_argument("lead pipeline needs r >= 2");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (tree.n() > host.n()) throw std::invalid_argument("tree larger than host");
    HostColouredGraph ext = extend_colouring(host);
    FreeFamily family = find_free_family(tree);
    auto predicate = [r](const MarkedCycle& c) { return lead_desirable(c, r); };
    LeadDenseResult res;
    res.lead = std::numeric_limits<long long>::min();
    res.bestAttempt = -1;
    for (int a = 0; a < restarts; ++a) {
        uint64_t s = derive_seed(seed, "dense-attempt", (uint64_t)a);
        Rng rng(s);
        Embedding emb(random_injection(tree.n(), host.n(), rng));
        DenseAttempt att{};
        att.seed = s;
        att.initialExtended = colour_profile(tree, ext, emb);
        auto des = desirable_switchings(emb, family, ext, predicate, 1);
        for (const auto& d : des) emb = apply_switching(emb, family.pairs[d.pairIndex], ext);
        att.extendedSwitchings = (int)des.size();
        att.ghostsBeforeRepair = (int)validate_embedding(tree, host, emb).size();
        auto rep = remove_ghost_edges(tree, host, std::move(emb), {});
        att.repaired = rep.status == RepairStatus::Ok;
        att.repairSteps = (int)rep.steps.size();
        emb = std::move(rep.emb);
        att.lead = std::numeric_limits<long long>::min();
        if (att.repaired) {
            auto des2 = desirable_switchings(emb, family, host, predicate, 1);
            for (const auto& d : des2) emb = apply_switching(emb, family.pairs[d.pairIndex], host);
            att.restrictedSwitchings = (int)des2.size();
            att.result = colour_profile(tree, host, emb);
            att.lead = std::numeric_limits<long long>::max();
            for (int i = 2; i <= r; ++i)
                att.lead = std::min(att.lead, att.result.counts[1] - att.result.counts[i]);
            if (res.bestAttempt < 0 || att.lead > res.lead) {
                res.lead = att.lead;
                res.best = emb;
                res.bestAttempt = a;
            }
        }
        res.attempts.push_back(std::move(att));
    }
    return res;
}

}  // namespace gdisc
