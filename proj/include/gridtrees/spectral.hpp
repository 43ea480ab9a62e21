#pragma once

#include <gmpxx.h>

#include <limits>
#include <vector>

#include "gridtrees/shape.hpp"

namespace gridtrees {

// Laplacian eigenvalues of the path on r vertices, ascending; the first
// entry is always 0.
struct PathSpectrum {
    int r = 0;
    std::vector<double> eigenvalues;
};

PathSpectrum path_spectrum(int r);

// Product of the positive path eigenvalues; equals r up to rounding.
double eigen_product_check(int r);

// Natural log of a spanning-tree count together with a certified absolute
// error bound on the log value.
struct LogTau {
    double log_value = 0.0;
    double err_bound = 0.0;
};

// Error constant of tau_product_log: err_bound = c0 * (rows-1) * (cols-1) * eps.
inline constexpr double kLogTauErrorConstant = 8.0;

// log tau over the double sum of log(lambda_j + lambda_k), compensated
// summation; exact 0 for paths.
LogTau tau_product_log(const RectShape& shape);

// The spanning-tree count recovered from the eigenvalue product, evaluated
// at 256-bit precision and rounded to the nearest integer. The rounding is
// certified: the accumulated error is far below one half for every shape
// this library targets. Agrees with the Kirchhoff determinant exactly.
mpz_class tau_product_rounded(const RectShape& shape);

// q_r(x) by the three-term recurrence p_1 = 1, p_2 = x + 2,
// p_{r+1} = (x+2) p_r - p_{r-1}.
double q_eval(int r, double x);

// sinh(r theta)/sinh(theta) for theta > 0, and its log. The log form stays
// finite where the plain value would overflow.
double q_hyperbolic(int r, double theta);
double log_q_hyperbolic(int r, double theta);

// c(x) = 2 arsinh(sin(pi x / 2)) on [0, 1].
double c_func(double x);

// Closed-form first and second derivatives of c.
double c_deriv1(double x);
double c_deriv2(double x);

// Absolute error bound of a single c_func evaluation (validated in tests
// against a 256-bit reference).
inline constexpr double kCEvalErrorBound = 1e-14;

// C_r = sum_{j=1}^{r-1} c(j/r), compensated; C_1 = 0.
double c_sum(int r);
double c_sum_error_bound(int r);

// H_t(z) = log(sinh(t z)/sinh z) = (t-1) z + G_t(z).
// g_func evaluates the residual G_t with a branch switch at z = 1e-3
// between the expm1-ratio form and the log1p form.
double h_func(double t, double z);
double g_func(double t, double z);
inline constexpr double kGSmallZSwitch = 1e-3;

// Per-term evaluation error model for sums of G_t values: evaluation noise
// plus Lipschitz propagation of the argument error (|G_t'| <= t - 1,
// checked numerically in tests).
double g_term_error_bound(double t, double z_err);

// Exact-ratio data for one balancing comparison of side lengths
// (original_short, original_long) against (balanced_short, balanced_long):
// t = balanced_short/original_short = original_long/balanced_long as an
// exact rational, theta the hyperbolic angle, z = original_short * theta.
struct HyperbolicParams {
    mpq_class t;
    double theta = 0.0;
    double z = 0.0;
};

// Throws unless the two products agree exactly (equal areas, so the two
// side ratios coincide), the sides interleave, and theta > 0.
HyperbolicParams hyperbolic_params(long original_short, long original_long,
                                   long balanced_short, long balanced_long, double theta);

}  // namespace gridtrees
