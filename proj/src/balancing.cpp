#include "gridtrees/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gridtrees/kahan.hpp"
#include "gridtrees/parallel.hpp"
#include "gridtrees/spectral.hpp"

namespace gridtrees {

double riemann_average(const RealFn& f, int r) {
    if (r < 1) throw std::invalid_argument("riemann_average: r must be >= 1");
    KahanSum sum;
    for (int j = 1; j < r; ++j) sum.add(f(static_cast<double>(j) / r));
    return sum.value() / r;
}

double min_kernel_average(double u, int r) {
    if (r < 1) throw std::invalid_argument("min_kernel_average: r must be >= 1");
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("min_kernel_average: u must lie in [0, 1]");
    }
    // B_r(u) = a(a+1)/(2 r^2) + (r-1-a) u / r with a = floor(r u); the
    // expression is continuous across the breakpoints, so a one-off floor
    // slip at a representable breakpoint does not change the value
    long a = static_cast<long>(std::floor(static_cast<double>(r) * u));
    a = std::clamp(a, 0L, static_cast<long>(r));
    double rr = static_cast<double>(r);
    return static_cast<double>(a) * (a + 1) / (2.0 * rr * rr) + (rr - 1.0 - a) * u / rr;
}

ConcavityReport check_concavity_ladder(const RealFn& f, std::string function_id, int r_max,
                                       double tolerance) {
    if (r_max < 1) throw std::invalid_argument("check_concavity_ladder: r_max must be >= 1");
    ConcavityReport report;
    report.function_id = std::move(function_id);
    report.r_max = r_max;
    report.averages.reserve(r_max);
    for (int r = 1; r <= r_max; ++r) report.averages.push_back(riemann_average(f, r));
    for (int r = 1; r < r_max; ++r) {
        if (report.averages[r - 1] > report.averages[r] + tolerance) {
            report.first_violation = r;
            break;
        }
    }
    return report;
}

double kernel_representation_check(const RealFn& f, const RealFn& f_prime,
                                   const RealFn& f_second, std::span<const double> x_grid,
                                   int panels) {
    if (panels < 1) throw std::invalid_argument("kernel_representation_check: panels must be >= 1");
    const double slope_at_one = f_prime(1.0);

    // midpoint nodes and weights shared across grid points
    std::vector<double> nodes(panels), neg_second(panels);
    for (int p = 0; p < panels; ++p) {
        nodes[p] = (p + 0.5) / panels;
        neg_second[p] = -f_second(nodes[p]);
    }

    double max_residual = 0.0;
    for (double x : x_grid) {
        KahanSum integral;
        for (int p = 0; p < panels; ++p) {
            integral.add(std::min(x, nodes[p]) * neg_second[p]);
        }
        double rhs = slope_at_one * x + integral.value() / panels;
        max_residual = std::max(max_residual, std::fabs(f(x) - rhs));
    }
    return max_residual;
}

std::vector<long> matching_indices(long short_count, long long_count) {
    const long a = short_count;
    const long b = long_count;
    if (a < 1) throw std::invalid_argument("matching_indices: counts must be >= 1");
    if (a > b) throw std::invalid_argument("matching_indices: first count must not exceed second");
    std::vector<long> matched;
    matched.reserve(a > 0 ? a - 1 : 0);
    for (long j = 1; j <= a - 1; ++j) {
        long k = (j * b) / a;
        matched.push_back(k);
    }
    // guaranteed by floor arithmetic; a failure here is a library bug
    for (size_t i = 0; i < matched.size(); ++i) {
        long j = static_cast<long>(i) + 1;
        long k = matched[i];
        bool distinct = i == 0 || matched[i - 1] < k;
        if (!distinct || k < 1 || k > b - 1 || k * a > j * b) {
            throw std::logic_error("matching_indices: invariant violated");
        }
    }
    return matched;
}

double residual_gamma(long side_a, long side_b, const mpq_class& t) {
    if (side_a < 1 || side_b < 1 || side_a > side_b) {
        throw std::invalid_argument("residual_gamma: need 1 <= A <= b");
    }
    if (t < 1) throw std::invalid_argument("residual_gamma: t must be >= 1");
    if (t == 1) return 0.0;

    const double td = t.get_d();
    KahanSum plus, minus;
    for (long k = 1; k <= side_b - 1; ++k) {
        plus.add(g_func(td, side_a * c_func(static_cast<double>(k) / side_b)));
    }
    for (long j = 1; j <= side_a - 1; ++j) {
        minus.add(g_func(td, side_b * c_func(static_cast<double>(j) / side_a)));
    }
    return plus.value() - minus.value();
}

double residual_gamma_error_bound(long side_a, long side_b, const mpq_class& t) {
    const double td = t.get_d();
    // argument error of A*c(k/b) is bounded by A * (c eval error) plus scaling slack
    double z_err_plus = side_a * kCEvalErrorBound;
    double z_err_minus = side_b * kCEvalErrorBound;
    double per_plus = g_term_error_bound(td, z_err_plus);
    double per_minus = g_term_error_bound(td, z_err_minus);
    return (side_b - 1) * per_plus + (side_a - 1) * per_minus;
}

double log_mpz(const mpz_class& value) {
    if (value <= 0) throw std::domain_error("log_mpz: value must be positive");
    long exponent = 0;
    double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + exponent * std::numbers::ln2;
}

BalancingCertificate balancing_certificate(long rows, long cols, long rows2, long cols2,
                                           const CertificateOptions& options) {
    if (rows < 1 || cols < 1 || rows2 < 1 || cols2 < 1) {
        throw std::invalid_argument("balancing_certificate: sides must be >= 1");
    }
    if (rows * cols != rows2 * cols2) {
        throw std::invalid_argument("balancing_certificate: areas differ");
    }
    if (!(rows <= rows2 && rows2 <= cols2 && cols2 <= cols)) {
        throw std::invalid_argument("balancing_certificate: sides must satisfy l <= l' <= m' <= m");
    }

    BalancingCertificate cert;
    cert.A = rows;
    cert.B = cols;
    cert.a = rows2;
    cert.b = cols2;
    cert.t = mpq_class(rows2, rows);
    cert.t.canonicalize();

    const double t_minus_1 = mpq_class(cert.t - 1).get_d();
    const double c_sum_b = c_sum(static_cast<int>(cert.b));
    const double c_sum_a = c_sum(static_cast<int>(cert.A));
    cert.linear_term = t_minus_1 * (cert.A * c_sum_b - cert.b * c_sum_a);
    cert.residual_term = residual_gamma(cert.A, cert.b, cert.t);

    LogTau balanced = tau_product_log({static_cast<int>(cert.a), static_cast<int>(cert.b)});
    LogTau original = tau_product_log({static_cast<int>(cert.A), static_cast<int>(cert.B)});
    cert.log_diff_spectral = balanced.log_value - original.log_value;

    // every inequality and closure gets slack assembled from the component
    // error bounds, never a bare epsilon
    double linear_err =
        t_minus_1 * (cert.A * c_sum_error_bound(static_cast<int>(cert.b)) +
                     cert.b * c_sum_error_bound(static_cast<int>(cert.A))) +
        8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(cert.linear_term) + 1.0);
    double gamma_err = residual_gamma_error_bound(cert.A, cert.b, cert.t);
    cert.closure_budget = balanced.err_bound + original.err_bound + linear_err + gamma_err +
                          8.0 * std::numeric_limits<double>::epsilon() *
                              (std::fabs(cert.log_diff_spectral) + 1.0);
    cert.closure_residual =
        std::fabs(cert.linear_term + cert.residual_term - cert.log_diff_spectral);

    if (rows * cols <= options.exact_count_vertex_budget) {
        TreeCount tau_orig = tree_count_exact(RectShape{static_cast<int>(cert.A),
                                                        static_cast<int>(cert.B)});
        TreeCount tau_bal = tree_count_exact(RectShape{static_cast<int>(cert.a),
                                                       static_cast<int>(cert.b)});
        cert.log_diff_exact = log_mpz(tau_bal) - log_mpz(tau_orig);
    }
    return cert;
}

namespace {

// factorizations (l, m) of area with l <= m, ascending in l
std::vector<std::pair<long, long>> factor_pairs(long area) {
    std::vector<std::pair<long, long>> pairs;
    for (long l = 1; l * l <= area; ++l) {
        if (area % l == 0) pairs.emplace_back(l, area / l);
    }
    return pairs;
}

}  // namespace

BalancingSweep balancing_sweep(long max_area, int workers, const CertificateOptions& options) {
    if (max_area < 1) throw std::invalid_argument("balancing_sweep: max_area must be >= 1");

    BalancingSweep sweep;
    sweep.max_area = max_area;

    std::vector<std::vector<SweepEntry>> per_area(static_cast<size_t>(max_area));
    run_indexed_tasks(static_cast<size_t>(max_area), workers, [&](std::size_t idx) {
        const long area = static_cast<long>(idx) + 1;
        auto pairs = factor_pairs(area);
        std::vector<SweepEntry>& out = per_area[idx];

        std::vector<TreeCount> taus(pairs.size());
        for (size_t i = 0; i < pairs.size(); ++i) {
            taus[i] = tree_count_exact(RectShape{static_cast<int>(pairs[i].first),
                                                 static_cast<int>(pairs[i].second)});
        }

        for (size_t i = 0; i < pairs.size(); ++i) {
            for (size_t j = i; j < pairs.size(); ++j) {
                // pairs ascend in the short side, so (i, j) is balancing-ordered
                SweepEntry entry;
                entry.area = area;
                entry.cert = balancing_certificate(pairs[i].first, pairs[i].second,
                                                   pairs[j].first, pairs[j].second, options);
                entry.tau_original = taus[i];
                entry.tau_balanced = taus[j];
                bool strict_expected = entry.cert.t > 1;
                entry.tau_ordered = strict_expected ? entry.tau_original < entry.tau_balanced
                                                    : entry.tau_original == entry.tau_balanced;
                entry.linear_nonnegative = entry.cert.linear_term >= 0.0;
                entry.residual_positive = strict_expected ? entry.cert.residual_term > 0.0
                                                          : entry.cert.residual_term == 0.0;
                entry.closure_ok = entry.cert.closes();
                out.push_back(std::move(entry));
            }
        }
    });

    for (auto& block : per_area) {
        for (SweepEntry& entry : block) {
            sweep.all_pass = sweep.all_pass && entry.pass();
            sweep.entries.push_back(std::move(entry));
        }
    }
    return sweep;
}

}  // namespace gridtrees
