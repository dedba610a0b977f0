#pragma once

// Ghost repair: turning embeddings with absent copy edges into genuine
// copies by exchanging vertex images, plus the dense-host pipeline that
// stacks colour-extension, switching and repair.

#include <vector>

#include "gdisc/core.hpp"
#include "gdisc/switching.hpp"

namespace gdisc {

// Re-routes pattern vertex x to hostTarget.  When hostTarget is an image,
// the two pattern preimages swap images; otherwise x simply moves.  Throws
// std::invalid_argument when hostTarget is x's own image or out of range.
Embedding exchange_vertices(const Embedding& emb, int x, int hostTarget, int hostN);

// Vertices that cannot join a set of pairwise tree-distance >= 3 vertices
// once one is chosen: the chosen vertex plus its radius-2 ball.
inline int distance3_block_bound(int maxDegree) { return 1 + maxDegree + maxDegree * maxDegree; }

// Greedy set of pairwise distance >= 3 pattern vertices: mustInclude first
// (pass -1 for none), then ascending ids, skipping `excluded`.  Size is at
// least ceil(eligible / distance3_block_bound(maxdeg)) where eligible counts
// the non-excluded vertices.
std::vector<int> distance3_set(const PatternGraph& pattern, int mustInclude,
                               const std::vector<int>& excluded = {});

struct RepairStep {
    int patternVertex;  // the ghost-incident vertex that moved
    int hostTarget;     // where it went
    int partner;        // pattern vertex it swapped with, or -1 for a move
    int ghostsAfter;
};

enum class RepairStatus { Ok, NoCandidate };

struct RepairResult {
    RepairStatus status;
    Embedding emb;  // repaired on Ok, best effort otherwise
    std::vector<RepairStep> steps;
};

// Removes every ghost edge by exchanges, smallest ghost-incident vertex
// first.  A vertex x may move to an unused host vertex adjacent to all of
// img(N(x)), or swap with a pattern vertex z at pattern-distance >= 3 when
// the host joins img(z) to img(N(x)) and img(x) to img(N(z)) completely;
// either way the ghost count strictly drops, so the loop terminates.
// Vertices in protectedVertices never move.
RepairResult remove_ghost_edges(const PatternGraph& pattern, const HostColouredGraph& host,
                                Embedding emb, const std::vector<int>& protectedVertices = {});

// The vertices touched by a free family's pairs, ascending; convenient as a
// protection set when repairing around performed switchings.
std::vector<int> family_vertices(const FreeFamily& family);

// Completes a host: absent pairs get colours 1..r round-robin in lex order.
// Present edges keep their colours.
HostColouredGraph extend_colouring(const HostColouredGraph& host);

struct DenseAttempt {
    uint64_t seed;
    ColourProfile initialExtended;  // first random copy, extended colours
    int extendedSwitchings;         // performed on the completed host
    int ghostsBeforeRepair;         // copy edges outside the real host
    bool repaired;
    int repairSteps;
    int restrictedSwitchings;  // performed on the real host after repair
    ColourProfile result;      // real-host profile; empty when not repaired
    long long lead;            // min over i >= 2 of counts[1] - counts[i]
};

struct LeadDenseResult {
    Embedding best;
    long long lead;
    int bestAttempt;  // -1 when no attempt survived repair
    std::vector<DenseAttempt> attempts;
};

// Lead pipeline for a non-complete dense host: complete the colouring,
// switch on the completed host, repair the copy into the real host, then
// switch again restricted to real edges.  Best of `restarts` attempts by
// final lead of colour 1.
LeadDenseResult lead_colour_dense(const TreeGraph& tree, const HostColouredGraph& host,
                                  int restarts, uint64_t seed);

}  // namespace gdisc
