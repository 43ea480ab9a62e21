#pragma once

#include <gmpxx.h>

#include <functional>
#include <random>
#include <vector>

#include "gridtrees/exact.hpp"
#include "gridtrees/shape.hpp"

namespace gridtrees {

enum class EnumMode {
    fixed,  // one shape per translation class
    free,   // one shape per dihedral class
};

// Streams every connected cell set of the given area exactly once, in a
// deterministic depth-first order, canonical translation. In free mode only
// shapes equal to their dihedral-minimal form are yielded.
void enumerate_shapes(int area, EnumMode mode, const std::function<void(const CellSet&)>& yield);

unsigned long count_shapes(int area, EnumMode mode);

// Ordered pairs (v, u) with v in the set and u an outside lattice neighbor.
long boundary_incidences(const CellSet& cells);

// Edge, boundary and cycle-rank data of a connected shape, with the lattice
// identity 4|S| = 2E + b and the square-extremality bounds. The bounds that
// require |S| = n^2 are reported vacuously true otherwise.
struct BoundsReport {
    long area = 0;
    long n = 0;  // side length when area is a perfect square, else 0
    long edges = 0;
    long boundary = 0;
    long occupied_cols = 0;
    long occupied_rows = 0;
    long cycle_rank = 0;

    bool is_square_shape = false;   // the full n x n block
    bool identity_holds = false;    // 4|S| == 2E + b
    bool edge_bound_holds = true;   // E <= 2n(n-1)
    bool chain_holds = true;        // b >= 2w+2h >= 4 sqrt(wh) >= 4n
    bool rank_bound_holds = true;   // cycle rank <= (n-1)^2
    bool equality_is_square = true;  // E == 2n(n-1) only for the square

    bool all_hold() const {
        return identity_holds && edge_bound_holds && chain_holds && rank_bound_holds &&
               equality_is_square;
    }
};

BoundsReport bounds_report(const CellSet& cells);

enum class TauBackend {
    exact,                // Bareiss determinant for every shape
    spectral_crosscheck,  // exact everywhere, plus spectral agreement on rectangles
};

struct ExploreOptions {
    EnumMode mode = EnumMode::fixed;
    TauBackend backend = TauBackend::exact;
    int workers = 1;
    long area_budget = 12;   // largest area enumerated without allow_big
    bool allow_big = false;
    // called after each finished search subtree; never affects the result
    std::function<void(unsigned long done, unsigned long total)> progress;
};

struct ExplorationReport {
    int n = 0;
    EnumMode mode = EnumMode::fixed;
    bool exhaustive = false;
    unsigned long shapes_examined = 0;

    TreeCount square_tau;             // tau of the n x n rectangle
    TreeCount max_tau;                // max over enumerated shapes
    std::vector<CellSet> argmax_shapes;     // sorted
    std::vector<CellSet> counterexamples;   // shapes with tau > square_tau, sorted
    bool conjecture_holds = true;

    unsigned long spectral_crosschecks = 0;
    unsigned long spectral_crosscheck_failures = 0;
};

// Enumerates every connected shape of area n^2, counts spanning trees
// exactly, and compares the maximum against the n x n square. The result is
// identical for every worker count.
ExplorationReport explore_conjecture(int n, const ExploreOptions& options = {});

// Connected shape grown by uniform random boundary accretion. Not uniform
// over polyominoes; used for randomized identity checks.
CellSet random_connected_shape(std::mt19937_64& rng, int area);

}  // namespace gridtrees
