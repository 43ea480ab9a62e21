#include "gridtrees/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridtrees/balancing.hpp"
#include "gridtrees/kahan.hpp"
#include "gridtrees/spectral.hpp"

namespace gridtrees {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

CheckResult residual_check(std::string name, std::string range, double worst,
                           double threshold) {
    return {std::move(name), std::move(range), worst, threshold, worst <= threshold};
}

// worst max-norm residual of L u = lambda u over the path Laplacian
double eigenvector_residual(int r_max) {
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        PathSpectrum spectrum = path_spectrum(r);
        for (int j = 0; j < r; ++j) {
            double lambda = spectrum.eigenvalues[j];
            auto u = [&](int x) {
                return std::cos((x - 0.5) * std::numbers::pi * j / r);
            };
            for (int x = 1; x <= r; ++x) {
                int degree = (x > 1) + (x < r);
                double lu = degree * u(x) - (x > 1 ? u(x - 1) : 0.0) -
                            (x < r ? u(x + 1) : 0.0);
                worst = std::max(worst, std::fabs(lu - lambda * u(x)));
            }
        }
    }
    return worst;
}

double sine_product_residual(int r_max) {
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        double product = 1.0;
        for (int j = 1; j < r; ++j) {
            product *= 2.0 * std::sin(std::numbers::pi * j / (2.0 * r));
        }
        double target = std::sqrt(static_cast<double>(r));
        worst = std::max(worst, std::fabs(product - target) / target);
    }
    return worst;
}

double eigen_product_residual(int r_max) {
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        worst = std::max(worst, std::fabs(eigen_product_check(r) - r) / r);
    }
    return worst;
}

double eigen_forms_gap(int r_max) {
    // agreement of 4 sin^2 with 2 - 2 cos, in last-place units at the
    // scale of the constant 2 the cosine form rounds against
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        PathSpectrum spectrum = path_spectrum(r);
        for (int j = 0; j < r; ++j) {
            double alt = 2.0 - 2.0 * std::cos(std::numbers::pi * j / r);
            worst = std::max(worst, std::fabs(spectrum.eigenvalues[j] - alt) / (2.0 * kEps));
        }
    }
    return worst;
}

double q_roots_residual(int r_max) {
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        PathSpectrum spectrum = path_spectrum(r);
        for (int j = 1; j < r; ++j) {
            worst = std::max(worst, std::fabs(q_eval(r, -spectrum.eigenvalues[j])));
        }
    }
    return worst;
}

double q_hyperbolic_gap(int r_max) {
    double worst = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        for (double theta : {0.05, 0.25, 1.0, 2.0}) {
            double x = 2.0 * std::cosh(theta) - 2.0;
            double via_recurrence = q_eval(r, x);
            double via_sinh = q_hyperbolic(r, theta);
            if (!std::isfinite(via_sinh) || !std::isfinite(via_recurrence)) continue;
            worst = std::max(worst,
                             std::fabs(via_recurrence - via_sinh) / std::fabs(via_sinh));
        }
    }
    return worst;
}

double c_forms_gap(int points) {
    // 2 arsinh(sin(pi x/2)) versus arcosh(2 - cos(pi x))
    double worst = 0.0;
    for (int i = 0; i <= points; ++i) {
        double x = static_cast<double>(i) / points;
        double direct = std::acosh(2.0 - std::cos(std::numbers::pi * x));
        worst = std::max(worst, std::fabs(c_func(x) - direct));
    }
    return worst;
}

struct DerivativeChecks {
    double closed_form_gap = 0.0;  // central differences vs closed forms
    double sign_violation = 0.0;   // positive part of -c' and of c''
};

DerivativeChecks c_derivative_checks(int points) {
    DerivativeChecks out;
    const double h1 = 1e-5, h2 = 1e-4;
    for (int i = 1; i <= points; ++i) {
        double x = static_cast<double>(i) / (points + 1);
        double d1 = (c_func(x + h1) - c_func(x - h1)) / (2.0 * h1);
        double d2 = (c_func(x + h2) - 2.0 * c_func(x) + c_func(x - h2)) / (h2 * h2);
        out.closed_form_gap = std::max(out.closed_form_gap, std::fabs(d1 - c_deriv1(x)));
        out.closed_form_gap = std::max(out.closed_form_gap, std::fabs(d2 - c_deriv2(x)));
        out.sign_violation = std::max(out.sign_violation, -c_deriv1(x));
        out.sign_violation = std::max(out.sign_violation, c_deriv2(x));
    }
    return out;
}

// largest increase of G_t along a growing z grid (decreasing means <= 0)
double g_monotonicity_violation() {
    double worst = -std::numeric_limits<double>::infinity();
    for (double t : {1.5, 2.0, 3.0}) {
        const int steps = 200;
        double prev = g_func(t, 1e-4);
        for (int i = 1; i <= steps; ++i) {
            double z = 1e-4 * std::pow(50.0 / 1e-4, static_cast<double>(i) / steps);
            double value = g_func(t, z);
            worst = std::max(worst, value - prev);
            prev = value;
        }
    }
    return worst;
}

double h_split_gap() {
    double worst = 0.0;
    for (double t : {1.0, 1.5, 2.0, 3.0}) {
        for (double z : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            // independent direct evaluation of log(sinh(t z)/sinh z)
            double direct = std::log(std::sinh(t * z) / std::sinh(z));
            worst = std::max(worst, std::fabs(h_func(t, z) - direct) /
                                        std::max(1.0, std::fabs(direct)));
        }
    }
    return worst;
}

double ladder_violation(int r_max) {
    auto c = [](double x) { return c_func(x); };
    ConcavityReport report = check_concavity_ladder(c, "c", r_max, 0.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (int r = 1; r < r_max; ++r) {
        worst = std::max(worst, report.averages[r - 1] - report.averages[r]);
    }
    return worst;
}

// most negative value of r C_s - s C_r plus its error budget (>= 0 passes)
double scaled_sum_margin(int max_r) {
    std::vector<double> sums(max_r + 1, 0.0);
    std::vector<double> errs(max_r + 1, 0.0);
    for (int r = 1; r <= max_r; ++r) {
        sums[r] = c_sum(r);
        errs[r] = c_sum_error_bound(r);
    }
    double worst = std::numeric_limits<double>::infinity();
    for (int r = 1; r <= max_r; ++r) {
        for (int s = r; s <= max_r; ++s) {
            double value = r * sums[s] - s * sums[r];
            double slack = r * errs[s] + s * errs[r];
            worst = std::min(worst, value + slack);
        }
    }
    return worst;
}

double matching_sum_margin() {
    // sum_{k<b} F(k/b) - sum_{j<A} F(j/A) with F(x) = G_t(A c(x)), >= 0
    double worst = std::numeric_limits<double>::infinity();
    for (long a : {1L, 2L, 3L, 5L, 8L}) {
        for (long b : {2L, 3L, 5L, 8L, 13L, 21L}) {
            if (b < a) continue;
            for (double t : {1.25, 2.0, 4.0}) {
                KahanSum left, right;
                for (long k = 1; k < b; ++k) {
                    left.add(g_func(t, a * c_func(static_cast<double>(k) / b)));
                }
                for (long j = 1; j < a; ++j) {
                    right.add(g_func(t, a * c_func(static_cast<double>(j) / a)));
                }
                worst = std::min(worst, left.value() - right.value());
            }
        }
    }
    return worst;
}

double tau_factorized_gap(int max_side) {
    // log tau as the double eigenvalue sum versus the single sum of
    // log(sinh(r theta)/sinh theta) factors, in both orientations
    double worst = 0.0;
    for (int rows = 1; rows <= max_side; ++rows) {
        for (int cols = rows; cols <= max_side; ++cols) {
            LogTau lt = tau_product_log({rows, cols});
            KahanSum by_cols, by_rows;
            for (int k = 1; k < cols; ++k) {
                by_cols.add(log_q_hyperbolic(rows, c_func(static_cast<double>(k) / cols)));
            }
            for (int j = 1; j < rows; ++j) {
                by_rows.add(log_q_hyperbolic(cols, c_func(static_cast<double>(j) / rows)));
            }
            double slack = lt.err_bound + (rows + cols) * 1e-13 + 1e-12;
            worst = std::max(worst, std::fabs(by_cols.value() - lt.log_value) / slack);
            worst = std::max(worst, std::fabs(by_rows.value() - lt.log_value) / slack);
        }
    }
    return worst;  // in units of the combined budget
}

}  // namespace

std::vector<CheckResult> lemma_suite(const LemmaSuiteConfig& config) {
    std::vector<CheckResult> results;

    results.push_back(residual_check("path_eigenvector_residual",
                                     "r <= " + std::to_string(config.eigenvector_r_max),
                                     eigenvector_residual(config.eigenvector_r_max), 1e-12));
    results.push_back(residual_check("sine_product",
                                     "r <= " + std::to_string(config.sine_product_r_max),
                                     sine_product_residual(config.sine_product_r_max), 1e-9));
    results.push_back(residual_check("eigen_product",
                                     "r <= " + std::to_string(config.eigen_forms_r_max),
                                     eigen_product_residual(config.eigen_forms_r_max), 1e-12));
    results.push_back(residual_check("eigenvalue_forms_agree_ulp",
                                     "r <= " + std::to_string(config.eigen_forms_r_max),
                                     eigen_forms_gap(config.eigen_forms_r_max), 4.0));
    results.push_back(residual_check("q_recurrence_roots",
                                     "r <= " + std::to_string(config.q_roots_r_max),
                                     q_roots_residual(config.q_roots_r_max), 1e-9));
    results.push_back(residual_check("q_recurrence_vs_hyperbolic", "r <= 40; 4 angles",
                                     q_hyperbolic_gap(40), 1e-12));
    results.push_back(residual_check("c_closed_forms_agree", "1001 points",
                                     c_forms_gap(1000), 1e-12));

    DerivativeChecks deriv = c_derivative_checks(config.derivative_points);
    results.push_back(residual_check("c_derivatives_closed_form",
                                     std::to_string(config.derivative_points) + " points",
                                     deriv.closed_form_gap, 1e-6));
    results.push_back(residual_check("c_increasing_concave",
                                     std::to_string(config.derivative_points) + " points",
                                     deriv.sign_violation, 0.0));
    {
        CheckResult check;
        check.name = "g_strictly_decreasing";
        check.range = "t in {1.5 2 3}; z in [1e-4 50]";
        check.observed = g_monotonicity_violation();  // largest step, must be < 0
        check.threshold = 0.0;
        check.pass = check.observed < 0.0;
        results.push_back(check);
    }
    results.push_back(residual_check("h_linear_plus_residual_split", "grid",
                                     h_split_gap(), 1e-12));

    {
        std::vector<double> grid(config.kernel_grid);
        for (int i = 0; i < config.kernel_grid; ++i) {
            grid[i] = static_cast<double>(i) / (config.kernel_grid - 1);
        }
        double residual = kernel_representation_check(
            [](double x) { return c_func(x); }, [](double x) { return c_deriv1(x); },
            [](double x) { return c_deriv2(x); }, grid, config.kernel_panels);
        results.push_back(residual_check(
            "kernel_representation_c",
            std::to_string(config.kernel_panels) + " panels", residual, 1e-6));
    }

    {
        double violation = ladder_violation(config.ladder_r_max);
        // two adjacent averages, each within c_sum_error_bound(r) / r of truth
        double tolerance = 2.0 * (kCEvalErrorBound + 4.0 * kEps);
        results.push_back(residual_check("riemann_ladder_c",
                                         "r <= " + std::to_string(config.ladder_r_max),
                                         violation, tolerance));
    }

    {
        double margin = scaled_sum_margin(config.scaled_sum_r_max);
        CheckResult check;
        check.name = "scaled_average_inequality";
        check.range = "r <= s <= " + std::to_string(config.scaled_sum_r_max);
        check.observed = margin;
        check.threshold = 0.0;
        check.pass = margin >= 0.0;
        results.push_back(check);
    }

    {
        double margin = matching_sum_margin();
        CheckResult check;
        check.name = "matching_sum_inequality";
        check.range = "A <= b <= 21; t in {1.25 2 4}";
        check.observed = margin;
        check.threshold = 0.0;
        check.pass = margin >= 0.0;
        results.push_back(check);
    }

    results.push_back(residual_check(
        "tau_log_factorized",
        "sides <= " + std::to_string(config.tau_factor_max_side),
        tau_factorized_gap(config.tau_factor_max_side), 1.0));

    return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace gridtrees
