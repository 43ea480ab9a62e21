#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridtrees/exact.hpp"
#include "gridtrees/shape.hpp"

namespace gridtrees {

using RealFn = std::function<double(double)>;

// Left Riemann average A_r(f) = (1/r) sum_{j=1}^{r-1} f(j/r); A_1 = 0.
double riemann_average(const RealFn& f, int r);

// Closed form of the min-kernel building-block average
// B_r(u) = (1/r) sum_{j=1}^{r-1} min(j/r, u).
double min_kernel_average(double u, int r);

struct ConcavityReport {
    std::string function_id;
    int r_max = 0;
    std::vector<double> averages;           // averages[r-1] = A_r
    std::optional<int> first_violation;     // smallest r with A_r > A_{r+1} + tolerance
};

// Checks that the Riemann averages are nondecreasing in r. Violations are
// recorded, not thrown.
ConcavityReport check_concavity_ladder(const RealFn& f, std::string function_id, int r_max,
                                       double tolerance);

// Max residual of f(x) = f'(1) x + integral of min(x,u) (-f''(u)) du over
// the given x grid, with composite-midpoint quadrature on `panels` panels.
double kernel_representation_check(const RealFn& f, const RealFn& f_prime,
                                   const RealFn& f_second, std::span<const double> x_grid,
                                   int panels);

// k_j = floor(j*b/A) for 1 <= j <= A-1. Requires 1 <= A <= b; the output is
// checked to be distinct, within [1, b-1], and to satisfy k_j/b <= j/A.
std::vector<long> matching_indices(long short_count, long long_count);

// Gamma = sum_{k=1}^{b-1} G_t(A c(k/b)) - sum_{j=1}^{A-1} G_t(b c(j/A)).
// Strictly positive when t > 1 and A < b; identically zero at t = 1.
double residual_gamma(long side_a, long side_b, const mpq_class& t);
double residual_gamma_error_bound(long side_a, long side_b, const mpq_class& t);

// Numeric decomposition of one balancing comparison
// (A, B) -> (a, b) with AB = ab and A <= a <= b <= B:
//   log(tau(a,b)/tau(A,B)) = (t-1)(A C_b - b C_A) + Gamma,  t = a/A = B/b.
struct BalancingCertificate {
    long A = 0, B = 0;  // original rectangle sides (short, long)
    long a = 0, b = 0;  // balanced rectangle sides (short, long)
    mpq_class t;        // exact ratio a/A = B/b

    double linear_term = 0.0;        // (t-1)(A C_b - b C_A), nonnegative
    double residual_term = 0.0;      // Gamma, positive when t > 1
    double log_diff_spectral = 0.0;  // log tau(a,b) - log tau(A,B), product formula
    std::optional<double> log_diff_exact;  // from big-integer counts when affordable

    double closure_residual = 0.0;  // |linear + residual - log_diff_spectral|
    double closure_budget = 0.0;    // certified bound on closure_residual

    bool closes() const { return closure_residual <= closure_budget; }
    bool trivial() const { return t == 1; }
};

struct CertificateOptions {
    // exact counts are attached when both rectangles have at most this many vertices
    long exact_count_vertex_budget = 400;
};

// Throws std::invalid_argument unless rows*cols == rows2*cols2 and
// rows <= rows2 <= cols2 <= cols.
BalancingCertificate balancing_certificate(long rows, long cols, long rows2, long cols2,
                                           const CertificateOptions& options = {});

// log of a positive big integer, accurate to a few ulps
double log_mpz(const mpz_class& value);
inline constexpr double kLogMpzErrorBound = 1e-13;

// One certificate comparison within an area sweep, together with the exact
// count ordering checks.
struct SweepEntry {
    long area = 0;
    BalancingCertificate cert;
    TreeCount tau_original;   // tau(A, B)
    TreeCount tau_balanced;   // tau(a, b)
    bool tau_ordered = false;        // tau(A,B) <= tau(a,b), strict when t > 1
    bool linear_nonnegative = false;
    bool residual_positive = false;  // Gamma > 0 when t > 1, Gamma == 0 when t == 1
    bool closure_ok = false;

    bool pass() const {
        return tau_ordered && linear_nonnegative && residual_positive && closure_ok;
    }
};

struct BalancingSweep {
    long max_area = 0;
    std::vector<SweepEntry> entries;  // sorted by (area, original pair, balanced pair)
    bool all_pass = true;
};

// Every ordered factor-pair comparison for every area up to max_area.
// Worker count only affects speed, never the result.
BalancingSweep balancing_sweep(long max_area, int workers = 1,
                               const CertificateOptions& options = {});

}  // namespace gridtrees
