#pragma once

// Exhaustive ground-truth engines for small instances.  Every enumerator
// counts its search nodes against an explicit cap and throws cap_exceeded
// rather than truncating silently.

#include <functional>
#include <set>

#include "gdisc/core.hpp"
#include "gdisc/rng.hpp"

namespace gdisc {

struct cap_exceeded : std::runtime_error {
    long long nodes, cap;
    cap_exceeded(long long nodesIn, long long capIn)
        : std::runtime_error("enumeration cap exceeded: " + std::to_string(nodesIn) + " nodes > " +
                             std::to_string(capIn)),
          nodes(nodesIn),
          cap(capIn) {}
};

inline constexpr long long kDefaultCap = 4'000'000'000ll;

// Every ghost-free embedding of the pattern, exactly once (no quotient by
// pattern automorphisms).  The visitor returns false to stop early; the
// return value is the number of embeddings visited.
long long enumerate_embeddings(const PatternGraph& pattern, const HostColouredGraph& host,
                               long long cap, const std::function<bool(const Embedding&)>& visit);

long long count_embeddings(const PatternGraph& pattern, const HostColouredGraph& host,
                           long long cap = kDefaultCap);

// Hamilton cycles up to rotation and reflection, as vertex sequences starting
// at vertex 0.  Guarded at n <= 14.
long long hamilton_cycles(const HostColouredGraph& host,
                          const std::function<bool(const std::vector<int>&)>& visit);

// Hamilton paths up to reversal (first endpoint < last).  Guarded at n <= 12.
long long hamilton_paths(const HostColouredGraph& host,
                         const std::function<bool(const std::vector<int>&)>& visit);

// Spanning star factors of K_n: partitions into n/starSize stars, each a
// centre plus starSize-1 leaves.  Each factor visited exactly once.
struct StarFactor {
    std::vector<std::pair<int, std::vector<int>>> stars;  // (centre, leaves)
};
long long enumerate_sfactors(int n, int starSize,
                             const std::function<bool(const StarFactor&)>& visit);

// All labelled trees on n vertices via Prufer sequences; guarded at n <= 10.
long long enumerate_trees_labelled(int n, const std::function<bool(const TreeGraph&)>& visit);

TreeGraph prufer_decode(const std::vector<int>& seq);
TreeGraph random_tree(int n, Rng& rng);

// Exact maximum, over all copies of the pattern in the host, of the number
// of copy edges in the given colour.  Branch and bound; witnessedLower may
// carry a count known to be attained (used as the starting incumbent).
int max_colour_oracle(const PatternGraph& pattern, const HostColouredGraph& host, int colour,
                      long long cap = kDefaultCap, int witnessedLower = -1);

// Set of signed sums over all copies of the pattern (host must be
// 2-coloured).  Dedicated enumerators cover matchings, paths and cycles;
// other patterns fall back to raw embedding enumeration.
std::set<int> reachable_sums(const PatternGraph& pattern, const HostColouredGraph& host,
                             long long cap = kDefaultCap);

}  // namespace gdisc
