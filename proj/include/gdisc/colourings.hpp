#pragma once

// Colouring generators and structural deciders for edge-coloured hosts.

#include <optional>

#include "gdisc/core.hpp"

namespace gdisc {

// Near-balanced uniformly random r-colouring of K_n: shuffle the lex edge
// list with the seed, assign colours round-robin.  Class sizes differ by <= 1.
HostColouredGraph gen_balanced_random(int n, int r, uint64_t seed);

// Random bipartite 2-colouring of K_n: a seeded random vertex part of size
// size1 (floor(n/2) when -1); edges inside the parts take colour 1, crossing
// edges colour 2.
HostColouredGraph gen_bipartite_random(int n, uint64_t seed, int size1 = -1);

// Every colour's share of |E| lies within [1/r - eps, 1/r + eps].
bool is_eps_balanced(const HostColouredGraph& host, double eps);

// Witness that a colouring is not eta-standard: a near-balanced partition
// (V1, V2) and a colour i >= 2 with fewer than eta*n^2 non-colour-1 edges
// inside V1 and fewer than eta*n^2 non-colour-i edges inside V2.
struct EtaStandardWitness {
    std::vector<int> v1, v2;
    int colour;
    long long nonFirstInsideV1;   // edges inside V1 with colour != 1
    long long nonColourInsideV2;  // edges inside V2 with colour != i
};

struct EtaStandardResult {
    bool standard;    // no witness found
    bool exhaustive;  // true when every partition was checked
    std::optional<EtaStandardWitness> witness;
};

// Exact mode enumerates all |V1| = ceil(n/2) partitions (guarded n <= 24);
// sampled mode runs a seeded randomized local search for a witness and can
// only ever report standard = true non-exhaustively.
EtaStandardResult is_eta_standard(const HostColouredGraph& host, double eta, DecisionMode mode,
                                  uint64_t seed = 0);

// Bipartition with one colour exactly on the edges inside the parts and the
// other exactly on the crossing edges.  whichColour is the inside colour.
struct BipartiteColouring {
    std::vector<int> v1, v2;
    int whichColour;
};

// Detects whether a 2-coloured host is bipartite in the above sense.
std::optional<BipartiteColouring> detect_bipartite_colouring(const HostColouredGraph& host);

// Pattern degrees all of one parity and host colouring bipartite; all-odd
// patterns must additionally span the host, or the crossing-edge parity --
// and with it the signed sum mod 4 -- is not an invariant of the copies.
bool is_inert(const PatternGraph& pattern, const HostColouredGraph& host);

// Smallest prime >= x (x >= 2), trial division.
long long next_prime(long long x);

// Projective plane of prime order p over homogeneous coordinates.
struct ProjectivePlane {
    int p;
    int pointCount;                       // p^2 + p + 1
    std::vector<std::vector<int>> lines;  // each sorted; lines[i] = points on line i
    std::vector<std::vector<int>> linesThroughPoint;
};

ProjectivePlane gen_pg(int p);

// Colouring with k = p^2+p+2 parts-structure: p^2+p+1 parts (one per line),
// within-part edges colour 1, crossing edges coloured by the intersection
// point of the two lines (colours 2..k), then the t crossing matchings of
// every part pair are split into r-1 near-equal groups and the groups
// indexed k+1..r are recoloured to their index.  With rebalance, edges move
// from the largest class to the smallest until sizes differ by <= 1.
// Requires p prime, k <= r, (p^2+p+1) | n.
HostColouredGraph gen_projective_colouring(int p, int r, int n, bool rebalance = true);

// r-1 parts of size t = n/(r-1); between parts i<j the t shift matchings go
// half to colour i, half to colour j; inside part i a d-regular circulant
// in colour i with d = floor((n-(r-1)^2)/(r(r-1))), rest colour 1.
// Requires r >= 3 and 2(r-1) | n.
HostColouredGraph gen_circulant_parts_colouring(int n, int r, bool rebalance = true);

// 4-colouring of K_{2N}: two halves internally coloured 1 and 2, crossing
// edges split between colours 3 and 4 as evenly as possible (lex order).
HostColouredGraph gen_mirrored_halves(int N);

// 2-coloured host on 4N vertices: V1 of size N, V2 of size 3N; edges inside
// V1 and an (N-1)-regular circulant on V2 are deleted; edges at V1 are
// colour 1 (blue), edges inside V2 colour 2 (red).  The host is 3N-regular.
HostColouredGraph gen_blue_anchor_host(int N);

// 2-colouring of K_{4m+6}: parts of sizes 2m+1 and 2m+5, crossing edges
// red (colour 2), inside edges blue (colour 1).
HostColouredGraph gen_odd_parts_colouring(int m);

// 2-colouring of K_{16k^2} (k odd): part V1 of size m = 8k^2-2k, crossing
// edges red, inside edges blue.
HostColouredGraph gen_lopsided_colouring(int k);

// Caterpillar: spine path with ell edges; the remaining n-ell-1 vertices are
// attached as leaves so spine degrees differ by <= 1 (and so do per-spine
// leaf counts).  Spine vertices are 0..ell.
TreeGraph gen_caterpillar(int ell, int n);

}  // namespace gdisc
