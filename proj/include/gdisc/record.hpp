#pragma once

// JSON run records for the pipelines.  Key order is fixed (ordered_json) and
// every embedded number is either integral or deterministically formatted,
// so identical (instance, seed, params) runs serialize byte-identically.

#include <string>

#include "json.hpp"

#include "gdisc/ksum.hpp"
#include "gdisc/repair.hpp"
#include "gdisc/switching.hpp"

namespace gdisc {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_profile(const ColourProfile& p) {
    ordered_json counts = ordered_json::array();
    for (size_t c = 1; c < p.counts.size(); ++c) counts.push_back(p.counts[c]);
    return counts;
}

inline ordered_json json_embedding(const Embedding& emb) {
    ordered_json arr = ordered_json::array();
    for (int v = 0; v < emb.size(); ++v) arr.push_back(emb(v));
    return arr;
}

inline ordered_json json_host_summary(const HostColouredGraph& host) {
    ordered_json j;
    j["n"] = host.n();
    j["r"] = host.r();
    j["edges"] = host.edge_count();
    ordered_json sizes = ordered_json::array();
    auto cs = host.class_sizes();
    for (size_t c = 1; c < cs.size(); ++c) sizes.push_back(cs[c]);
    j["classSizes"] = sizes;
    return j;
}

inline ordered_json json_pattern_summary(const PatternGraph& pattern) {
    ordered_json j;
    j["n"] = pattern.n();
    j["m"] = pattern.m();
    j["maxDegree"] = pattern.max_degree();
    return j;
}

inline ordered_json json_switch_attempt(const AttemptRecord& a) {
    ordered_json j;
    j["seed"] = a.seed;
    j["initial"] = json_profile(a.initial);
    j["result"] = json_profile(a.result);
    ordered_json sw = ordered_json::array();
    for (const auto& e : a.switchings) {
        ordered_json s;
        s["pair"] = e.pairIndex;
        s["pattern"] = (int)e.pattern;
        s["cycle"] = {e.cycle[0], e.cycle[1], e.cycle[2], e.cycle[3]};
        sw.push_back(s);
    }
    j["switchings"] = sw;
    return j;
}

inline ordered_json record_maximize(const TreeGraph& tree, const HostColouredGraph& host,
                                    int colour, int restarts, uint64_t seed,
                                    const MaximizeResult& r) {
    ordered_json j;
    j["pipeline"] = "maximize";
    j["seed"] = seed;
    j["params"] = ordered_json{{"colour", colour}, {"restarts", restarts}};
    j["pattern"] = json_pattern_summary(tree);
    j["host"] = json_host_summary(host);
    j["achieved"] = r.achieved;
    j["reportedBound"] = r.reportedBound;
    j["bestAttempt"] = r.bestAttempt;
    j["embedding"] = json_embedding(r.best);
    ordered_json attempts = ordered_json::array();
    for (const auto& a : r.attempts) attempts.push_back(json_switch_attempt(a));
    j["attempts"] = attempts;
    return j;
}

inline ordered_json record_lead(const TreeGraph& tree, const HostColouredGraph& host, int restarts,
                                uint64_t seed, const LeadResult& r) {
    ordered_json j;
    j["pipeline"] = "lead";
    j["seed"] = seed;
    j["params"] = ordered_json{{"restarts", restarts}};
    j["pattern"] = json_pattern_summary(tree);
    j["host"] = json_host_summary(host);
    j["lead"] = r.lead;
    j["bestAttempt"] = r.bestAttempt;
    j["embedding"] = json_embedding(r.best);
    ordered_json attempts = ordered_json::array();
    for (size_t i = 0; i < r.attempts.size(); ++i) {
        ordered_json a = json_switch_attempt(r.attempts[i]);
        a["desirablePerColour"] = r.desirablePerColour[i];
        attempts.push_back(a);
    }
    j["attempts"] = attempts;
    return j;
}

inline ordered_json record_lead_dense(const TreeGraph& tree, const HostColouredGraph& host,
                                      int restarts, uint64_t seed, const LeadDenseResult& r) {
    ordered_json j;
    j["pipeline"] = "lead-dense";
    j["seed"] = seed;
    j["params"] = ordered_json{{"restarts", restarts}};
    j["pattern"] = json_pattern_summary(tree);
    j["host"] = json_host_summary(host);
    j["lead"] = r.bestAttempt >= 0 ? ordered_json(r.lead) : ordered_json(nullptr);
    j["bestAttempt"] = r.bestAttempt;
    j["embedding"] =
        r.bestAttempt >= 0 ? json_embedding(r.best) : ordered_json(ordered_json::array());
    ordered_json attempts = ordered_json::array();
    for (const auto& a : r.attempts) {
        ordered_json aj;
        aj["seed"] = a.seed;
        aj["initialExtended"] = json_profile(a.initialExtended);
        aj["extendedSwitchings"] = a.extendedSwitchings;
        aj["ghostsBeforeRepair"] = a.ghostsBeforeRepair;
        aj["repaired"] = a.repaired;
        aj["repairSteps"] = a.repairSteps;
        aj["restrictedSwitchings"] = a.restrictedSwitchings;
        aj["result"] = a.repaired ? json_profile(a.result) : ordered_json(ordered_json::array());
        aj["lead"] = a.repaired ? ordered_json(a.lead) : ordered_json(nullptr);
        attempts.push_back(aj);
    }
    j["attempts"] = attempts;
    return j;
}

inline ordered_json json_site(const BipartiteSite& site) {
    ordered_json j;
    j["kind"] = (int)site.kind;
    j["x"] = site.x;
    j["z"] = site.z;
    j["y"] = site.y;
    j["bprime"] = site.bprime;
    j["maxDegree"] = site.maxDegree;
    return j;
}

inline const char* ksum_status_name(KsumStatus s) {
    switch (s) {
        case KsumStatus::Ok: return "ok";
        case KsumStatus::Infeasible: return "infeasible";
        default: return "search-failed";
    }
}

inline ordered_json record_ksum(const PatternGraph& pattern, const HostColouredGraph& host, int k,
                                const KsumParams& params, const KsumResult& r) {
    ordered_json j;
    j["pipeline"] = "ksum";
    j["seed"] = params.seed;
    j["params"] =
        ordered_json{{"restarts", params.restarts}, {"gadgetBudget", params.gadgetBudget}};
    j["pattern"] = json_pattern_summary(pattern);
    j["host"] = json_host_summary(host);
    j["k"] = k;
    j["status"] = ksum_status_name(r.status);
    j["a"] = r.a;
    j["b"] = r.b;
    j["inert"] = r.inert;
    j["twoGadgetSite"] = r.twoGadgetSite ? json_site(*r.twoGadgetSite) : ordered_json(nullptr);
    j["closest"] = r.closest;
    j["exhaustiveCompletion"] = r.exhaustiveCompletion;
    j["embedding"] = r.status == KsumStatus::Ok ? json_embedding(r.emb)
                                                : ordered_json(ordered_json::array());
    ordered_json attempts = ordered_json::array();
    for (const auto& a : r.attempts) {
        ordered_json aj;
        aj["seed"] = a.seed;
        aj["success"] = a.success;
        aj["sumInitial"] = a.sumInitial;
        aj["placedTwoGadget"] = a.placedTwoGadget;
        aj["placementExchanges"] = a.placementExchanges;
        aj["sumAfterPlacement"] = a.sumAfterPlacement;
        aj["repaired"] = a.repaired;
        aj["repairSteps"] = a.repairSteps;
        aj["sumAfterRepair"] = a.repaired ? ordered_json(a.sumAfterRepair) : ordered_json(nullptr);
        ordered_json acts = ordered_json::array();
        for (const auto& act : a.activations) {
            acts.push_back(ordered_json{
                {"pa", act.pa}, {"pb", act.pb}, {"delta", act.delta}, {"sumAfter", act.sumAfter}});
        }
        aj["activations"] = acts;
        aj["usedFinalExchange"] = a.usedFinalExchange;
        aj["finalSum"] = a.repaired ? ordered_json(a.finalSum) : ordered_json(nullptr);
        aj["failReason"] = a.failReason;
        attempts.push_back(aj);
    }
    j["attempts"] = attempts;
    return j;
}

}  // namespace gdisc
