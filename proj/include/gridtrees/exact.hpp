#pragma once

#include <gmpxx.h>

#include <vector>

#include "gridtrees/shape.hpp"

namespace gridtrees {

// Exact spanning-tree count. Zero iff the graph is disconnected.
using TreeCount = mpz_class;

// Dense square matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
public:
    explicit IntegerMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    int size() const { return n_; }
    mpz_class& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const mpz_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void swap_rows(int i, int j);

private:
    int n_;
    std::vector<mpz_class> a_;
};

// Laplacian of the graph with the root row and column removed.
// Requires at least two vertices and a valid root index.
IntegerMatrix laplacian_minor(const GridGraph& graph, int root);

// Exact determinant by fraction-free (Bareiss) elimination. The empty
// matrix has determinant 1.
mpz_class bareiss_determinant(IntegerMatrix m);

// Exact determinant from residues modulo a deterministic list of 62-bit
// primes covering the Hadamard bound, recombined by the Chinese Remainder
// Theorem. Optional fast path; must agree with Bareiss everywhere.
mpz_class crt_determinant(const IntegerMatrix& m);

enum class DetBackend { bareiss, modular_crt };

TreeCount tree_count_exact(const GridGraph& graph, DetBackend backend = DetBackend::bareiss);
TreeCount tree_count_exact(const CellSet& cells, DetBackend backend = DetBackend::bareiss);
TreeCount tree_count_exact(const RectShape& shape, DetBackend backend = DetBackend::bareiss);

// Counts the spanning trees by enumerating every (|V|-1)-edge subset and
// keeping the acyclic connected ones. Test-grade oracle; refuses graphs
// with more than kBruteForceEdgeLimit edges.
inline constexpr long kBruteForceEdgeLimit = 24;
TreeCount tree_count_bruteforce(const GridGraph& graph);

}  // namespace gridtrees
