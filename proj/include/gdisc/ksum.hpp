#pragma once

// Signed-sum targeting for 2-coloured hosts: find a copy of a bounded-degree
// pattern whose signed edge sum (colour 1 = +1, colour 2 = -1) equals a
// requested k.  Built from lopsided 4-cycles, bipartite exchange sites,
// gadget detection/activation and a staged pipeline of vertex exchanges.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gdisc/core.hpp"

namespace gdisc {

// Thrown by activate_gadget when the embedding no longer matches the gadget.
struct stale_gadget_error : std::runtime_error {
    stale_gadget_error() : std::runtime_error("gadget no longer matches the embedding") {}
};

// 4-cycle with three edges in one colour and one in the other.  Vertices in
// cycle order (edges 01, 12, 23, 30); the minority edge is (v[0], v[1]).
struct OneThreeCycle {
    std::array<int, 4> vertices;
    int minorityColour;
};

// Exhaustive deterministic scan over opposite vertex pairs and their common
// neighbourhoods; returns the first verified hit.  Requires r = 2.
// Bipartite colourings never contain one.
std::optional<OneThreeCycle> find_13_cycle(const HostColouredGraph& host);
bool verify_13_cycle(const HostColouredGraph& host, const OneThreeCycle& c);

enum class SiteKind { Type1 = 1, Type2 = 2 };

// Complete bipartite K_{2, 2*maxDegree} between {x, z} and {y} u bprime,
// with every path x-w-z for w in bprime coloured by one ordered pair (s, t).
// Type1: c(xy) != c(yz) and (c(xy), c(yz)) != (s, t) -- swapping x, z in a
//   copy whose exchanged vertices have their neighbourhoods inside B changes
//   the signed sum by a fixed nonzero amount in {+-2, +-4}.
// Type2: the path x-y-z is monochromatic exactly when the bprime paths are
//   not -- the swap changes the signed sum by exactly +-2.
struct BipartiteSite {
    SiteKind kind;
    int x, z;
    int y;
    std::vector<int> bprime;  // ascending, size 2*maxDegree - 1
    int maxDegree;
};

bool verify_site(const HostColouredGraph& host, const BipartiteSite& site);

// Follows the lopsided-cycle route: take a (1,3)-cycle, bucket the common
// neighbours of its mixed-path endpoints by ordered path colours, and use
// the fullest monochromatic or mixed bucket.  std::nullopt when no
// (1,3)-cycle exists or every bucket is too small.
std::optional<BipartiteSite> find_type2_site(const HostColouredGraph& host, int maxDegree);

// Vertices with at least ceil(xi*n) neighbours in each of the two colours.
std::vector<int> balanced_vertices(const HostColouredGraph& host, double xi);

// Labelled type-1 sites: ordered (x, z), a distinguished y and the set
// bprime.  Exact mode only for maxDegree = 1 and n <= 60 (O(n^4)); sampled
// mode estimates arbitrary maxDegree.
CountEstimate count_type1_sites(const HostColouredGraph& host, int maxDegree, DecisionMode mode,
                                long long samples = 200000, uint64_t seed = 0);

// Pairs of same-degree pattern vertices, every two selected vertices at
// pattern distance >= 3; greedy per degree class, best class kept.
struct PairSelection {
    std::vector<std::pair<int, int>> pairs;
    int degree = 0;        // the shared positive degree (0 when empty)
    long long bound = 0;   // floor(((m / maxdeg) / (maxdeg^2+maxdeg+1)) / maxdeg / 2)
    bool belowBound = false;  // fewer pairs than the bound promises
};
PairSelection distance3_pairs(const PatternGraph& pattern);

// An embedded exchange site: pattern vertices pa, pb (same degree, distance
// >= 3) with images x, z and their neighbourhood images inside the site's
// big part.  Activation swaps the images of pa and pb and shifts the signed
// sum by exactly predictedDelta.
struct Gadget {
    BipartiteSite site;
    std::vector<int> b1, b2;  // host images of N(pa) minus y, and of N(pb)
    int order;                // 1 for type-1 sites (|delta| in {2,4}), 2 for type-2 (|delta| = 2)
    int sign;                 // sign of predictedDelta
    int predictedDelta;
    int pa, pb;
};

// One gadget per pair at most, smallest distinguished vertex first; returned
// gadgets are pairwise vertex-disjoint (filler vertices tracked in a used
// set).  The embedding must be ghost-free.
std::vector<Gadget> detect_gadgets(const PatternGraph& pattern, const Embedding& emb,
                                   const HostColouredGraph& host,
                                   const std::vector<std::pair<int, int>>& pairs);

bool verify_gadget(const PatternGraph& pattern, const Embedding& emb,
                   const HostColouredGraph& host, const Gadget& g);

// Swaps the images of g.pa and g.pb after re-verifying the gadget against
// the current embedding; throws stale_gadget_error otherwise.
Embedding activate_gadget(const PatternGraph& pattern, const Embedding& emb,
                          const HostColouredGraph& host, const Gadget& g);

// Residues of reachable signed sums: modulus a = 4 for inert instances
// (same-parity degrees + bipartite colouring), else 2; class b from the
// signed sum of one constructed copy, normalized into [0, a).  Throws
// std::runtime_error when no copy can be constructed within `restarts`
// seeded attempts.
struct ResiduePrediction {
    int a, b;
};
ResiduePrediction predict_residue(const PatternGraph& pattern, const HostColouredGraph& host,
                                  uint64_t seed = 0, int restarts = 20);

struct KsumParams {
    int restarts = 20;
    uint64_t seed = 0;
    int gadgetBudget = 64;  // activations allowed per attempt
};

enum class KsumStatus { Ok, Infeasible, SearchFailed };

struct GadgetActivation {
    int pa, pb;
    int delta;
    int sumAfter;
};

struct KsumAttempt {
    uint64_t seed = 0;
    bool success = false;
    int sumInitial = 0;  // signed sum of the random copy, completed colours
    bool placedTwoGadget = false;
    int placementExchanges = 0;
    int sumAfterPlacement = 0;  // completed colours
    bool repaired = false;
    int repairSteps = 0;
    int sumAfterRepair = 0;  // real host from here on
    std::vector<GadgetActivation> activations;
    bool usedFinalExchange = false;
    int finalSum = 0;
    std::string failReason;  // empty on success
};

struct KsumResult {
    KsumStatus status;
    Embedding emb;  // ghost-free copy with signed sum k when status == Ok
    int a = 0, b = 0;
    int k = 0;
    int closest = 0;  // reachable sum closest to k over all attempts
    bool inert = false;
    // Every staged attempt failed and the copy came from the deterministic
    // desk-scale witness search instead.
    bool exhaustiveCompletion = false;
    std::optional<BipartiteSite> twoGadgetSite;
    std::vector<KsumAttempt> attempts;
};

// Staged pipeline: random copy in the colour-completed host; for non-inert
// instances move one distance-3 pair onto a type-2 site (the +-2 reserve);
// repair ghosts while protecting that site's pattern part; activate detected
// gadgets toward k (re-detecting after every activation); spend the reserve
// when the remaining gap equals its delta.  Infeasible(a, b) when
// k != b (mod a) -- decided without search for non-inert instances.
//
// Small patterns carry only a handful of exchange pairs, so the staged
// attempts can miss rare reachable sums.  When every restart fails on a host
// with at most 16 vertices and the pattern's non-isolated part is a matching,
// a single path or a single cycle, an exact desk-scale search settles the
// verdict: Ok with a witness when one exists, SearchFailed when none does.
KsumResult ksum_embed(const PatternGraph& pattern, const HostColouredGraph& host, int k,
                      const KsumParams& params = {});

}  // namespace gdisc
