#pragma once

// Oracle-backed verification batteries: exhaustive checks of the
// counterexample constructions and small-scale behavioural checks of the
// switching and sum-targeting pipelines.  Each battery returns a pass/fail
// report with per-case counts.

#include <string>
#include <vector>

#include "gdisc/core.hpp"

namespace gdisc {

struct ClaimReport {
    std::string claim;
    bool pass = true;
    std::vector<std::string> lines;

    void note(std::string line) { lines.push_back(std::move(line)); }
    void check(bool ok, const std::string& line) {
        lines.push_back(std::string(ok ? "ok: " : "FAIL: ") + line);
        if (!ok) pass = false;
    }
};

// Free families on every labelled tree with 2..maxExhaustiveN vertices
// (Prufer enumeration) plus sampledCount random trees on 10..50 vertices.
// Each family must be pairwise edge-disjoint, element-wise switchable, and
// at least as large as the guarantee: ceil((n-1-maxdeg)/40) generally,
// floor((n-1)/3) for paths.
ClaimReport verify_free_family(int maxExhaustiveN = 9, long long sampledCount = 100000,
                               uint64_t seed = 1);

// Mirrored-halves 4-colouring on 2N vertices: every Hamilton cycle carries
// equally many colour-1 and colour-2 edges.
ClaimReport verify_mirrored_halves(int bigN = 4);

// Blue-anchor host on 4N vertices: every Hamilton path has exactly
// 2N - (number of endpoints inside the anchor part) blue edges.
ClaimReport verify_blue_anchor_paths(int bigN = 2);

// Odd-parts bipartite colouring on 4m+6 vertices: every Hamilton cycle has
// signed sum congruent to 2 mod 4.
ClaimReport verify_odd_parts_cycles(int m = 1);

// Lopsided bipartite colouring on 16k^2 vertices: every spanning factor of
// two 8k^2-vertex stars has signed sum congruent to 2 mod 4; in particular
// no 0-sum factor exists.
ClaimReport verify_lopsided_factors(int k = 1);

// Random inert instances -- even-degree cycles or spanning perfect
// matchings under random bipartite colourings of complete hosts -- have all
// reachable signed sums inside a single residue class mod 4.
ClaimReport verify_inert_residue(int trials = 50, uint64_t seed = 1);

// Circulant-parts 3-colouring on n vertices: for every centre, the spanning
// star has colour-1 count at most max(colour-2 count, colour-3 count).
ClaimReport verify_star_colour_gap(int n = 48);

// Small-scale iff for sum targeting: perfect matchings, spanning paths and
// spanning cycles on each size, coloursPerCell seeded 2-colourings per size
// both bipartite and generic.  Checks that reachable_sums stays inside the
// predicted residue class, that ksum_embed succeeds for every oracle-
// feasible target with |k| <= m/2, and that it reports Infeasible exactly
// when the residue test fails.
ClaimReport verify_ksum_iff(const std::vector<int>& sizes = {8, 10, 12}, int coloursPerCell = 20,
                            uint64_t seed = 1, int restarts = 120);

}  // namespace gdisc
