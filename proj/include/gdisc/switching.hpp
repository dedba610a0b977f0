#pragma once

// Local switchings on embedded trees: replace two vertex-disjoint copy edges
// uw, vz by uz, vw while staying isomorphic to the tree.  Free families of
// pairwise edge-disjoint switchable pairs support performing many switchings
// on one embedding; marked 4-cycles in the host decide which switchings gain
// edges of a wanted colour.

#include <array>
#include <functional>
#include <optional>

#include "gdisc/core.hpp"

namespace gdisc {

enum class SwitchKind { I = 1, II = 2, III = 3 };

// Tree edges (u,w) and (v,z), vertex-disjoint.  Kind I: w and z are leaves.
// Kind II: u, v have degree 2 and a common neighbour outside {w, z}.
// Kind III: u, v have degree 2 and uv is a tree edge.
struct SwitchablePair {
    int u, w, v, z;
    SwitchKind kind;
};

// Classifies an unordered pair of tree edges.  Kind precedence I > II > III;
// among valid role assignments of the winning kind the lexicographically
// smallest (u, v) is returned.  std::nullopt when not switchable.
std::optional<SwitchablePair> is_switchable(const TreeGraph& tree, std::pair<int, int> e,
                                            std::pair<int, int> f);

struct FreeFamily {
    std::vector<SwitchablePair> pairs;  // pairwise edge-disjoint
};

// Deterministic free family with at least ceil((n-1-max_degree)/40) pairs;
// for paths with >= 3 edges at least floor((n-1)/3) pairs.  Stars yield an
// empty family.
FreeFamily find_free_family(const TreeGraph& tree);

// The size the returned family is guaranteed to reach.
int free_family_guarantee(const TreeGraph& tree);

// Applies one switching to the embedding: swaps the images of the two role
// vertices (the leaves for kind I, u and v otherwise).  The two replacement
// edges must be present in the host; ghosts elsewhere are permitted.
Embedding apply_switching(const Embedding& emb, const SwitchablePair& pair,
                          const HostColouredGraph& host);

enum class CyclePattern { I = 1, II = 2, III = 3 };

// 4-cycle x-y-u-v with marked opposite edges {yu, vx}.  Pattern (with
// "blue" = the reference colour) under this labelling:
//   I:   xy, yu, uv blue and vx not
//   II:  xy, uv blue and yu, vx not
//   III: xy blue and yu, uv, vx not
struct MarkedCycle {
    int x, y, u, v;
    CyclePattern pattern;
    int blue;                // reference colour used for the patterns
    int cXY, cYU, cUV, cVX;  // edge colours

    // Pattern-iii cycle whose single colour-i edge sits opposite the blue
    // one; switching along it raises colours blue and i together.
    bool increases_colour(int i) const {
        return pattern == CyclePattern::III && cUV == i && cYU != i && cVX != i;
    }
};

// Strict syntactic classification of the labelled tuple; requires all four
// edges present.  std::nullopt when no pattern matches.
std::optional<MarkedCycle> classify_marked(const HostColouredGraph& host, int x, int y, int u,
                                           int v, int blue = 1);

// True when the cycle avoids increasing at least one colour i in [2, r];
// performing such a switching can only help colour 1's minimum lead.  With
// r >= 3 every classified cycle qualifies.
inline bool lead_desirable(const MarkedCycle& c, int r) {
    for (int i = 2; i <= r; ++i)
        if (!c.increases_colour(i)) return true;
    return false;
}

struct CycleFilter {
    bool patternI = true, patternII = true, patternIII = true;
    int notIncreasingFor = 0;  // exclude pattern-iii cycles increasing this colour
    int blue = 1;
};

using MarkedCycleCount = CountEstimate;

// Counts marked-cycle objects (cycle plus marked opposite pair) matching the
// filter; each object counted once even though several labellings match.
// Exact mode is O(n^4), guarded at n <= 120; sample mode draws labelled
// 4-tuples uniformly.
MarkedCycleCount count_marked_cycles(const HostColouredGraph& host, const CycleFilter& filter,
                                     DecisionMode mode, long long samples = 200000,
                                     uint64_t seed = 0);

// A free-family pair whose embedded images close a classified marked cycle:
// the pair's two copy edges are the marked edges and the replacement edges
// are the unmarked ones.
struct DesirableSwitching {
    int pairIndex;
    MarkedCycle cycle;
};

std::vector<DesirableSwitching> desirable_switchings(
    const Embedding& emb, const FreeFamily& family, const HostColouredGraph& host,
    const std::function<bool(const MarkedCycle&)>& predicate, int blue = 1);

struct SwitchingEvent {
    int pairIndex;
    CyclePattern pattern;
    std::array<int, 4> cycle;  // (x, y, u, v)
};

struct AttemptRecord {
    uint64_t seed;
    ColourProfile initial, result;
    std::vector<SwitchingEvent> switchings;
};

struct MaximizeResult {
    Embedding best;
    long long achieved;    // exact colour count of the best copy
    double reportedBound;  // 2 m_i / n + 1e-5 (n-1-maxdeg) (m*_i / n^2)^2
    int bestAttempt;
    std::vector<AttemptRecord> attempts;
};

// Random embedding plus all pattern-matching switchings (reference colour =
// `colour`), best of `restarts` seeded attempts.  Host must be complete.
MaximizeResult maximize_colour(const TreeGraph& tree, const HostColouredGraph& host, int colour,
                               int restarts, uint64_t seed);

struct LeadResult {
    Embedding best;
    long long lead;  // min over i >= 2 of counts[1] - counts[i]
    int bestAttempt;
    std::vector<AttemptRecord> attempts;
    // Per attempt and colour i, how many performed switchings were desirable
    // for colour i's non-increasing family (their count lower-bounds the
    // gain of counts[1] - counts[i]).
    std::vector<std::vector<int>> desirablePerColour;
};

// Lead pipeline on a complete host, reference colour 1: performs every
// switching whose cycle avoids increasing some colour i >= 2, maximizing the
// minimum lead of colour 1.  Requires r >= 2; with r >= 3 every classified
// cycle qualifies.
LeadResult lead_colour_kn(const TreeGraph& tree, const HostColouredGraph& host, int restarts,
                          uint64_t seed);

}  // namespace gdisc
