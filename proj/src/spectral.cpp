#include "gridtrees/spectral.hpp"

#include <mpfr.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gridtrees/kahan.hpp"

namespace gridtrees {

namespace {

void require_positive_r(int r, const char* who) {
    if (r < 1) throw std::invalid_argument(std::string(who) + ": r must be >= 1");
}

void require_rect(const RectShape& shape) {
    if (shape.rows < 1 || shape.cols < 1) {
        throw std::invalid_argument("rectangle sides must be >= 1");
    }
}

}  // namespace

PathSpectrum path_spectrum(int r) {
    require_positive_r(r, "path_spectrum");
    PathSpectrum s;
    s.r = r;
    s.eigenvalues.resize(r);
    for (int j = 0; j < r; ++j) {
        // 4 sin^2 keeps full accuracy for the small eigenvalues
        double sine = std::sin(std::numbers::pi * j / (2.0 * r));
        s.eigenvalues[j] = 4.0 * sine * sine;
    }
    return s;
}

double eigen_product_check(int r) {
    require_positive_r(r, "eigen_product_check");
    PathSpectrum s = path_spectrum(r);
    double product = 1.0;
    for (int j = 1; j < r; ++j) product *= s.eigenvalues[j];
    return product;
}

LogTau tau_product_log(const RectShape& shape) {
    require_rect(shape);
    const int rows = shape.rows;
    const int cols = shape.cols;
    if (rows == 1 || cols == 1) return {0.0, 0.0};  // empty double sum

    PathSpectrum row_spec = path_spectrum(rows);
    PathSpectrum col_spec = path_spectrum(cols);
    KahanSum sum;
    for (int j = 1; j < rows; ++j) {
        for (int k = 1; k < cols; ++k) {
            sum.add(std::log(row_spec.eigenvalues[j] + col_spec.eigenvalues[k]));
        }
    }
    double err = kLogTauErrorConstant * (rows - 1) * (cols - 1) *
                 std::numeric_limits<double>::epsilon();
    return {sum.value(), err};
}

namespace {

constexpr mpfr_prec_t kHighPrecision = 256;

// RAII mpfr value at the fixed working precision
class HpReal {
public:
    HpReal() { mpfr_init2(v_, kHighPrecision); }
    ~HpReal() { mpfr_clear(v_); }
    HpReal(const HpReal&) = delete;
    HpReal& operator=(const HpReal&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

}  // namespace

mpz_class tau_product_rounded(const RectShape& shape) {
    require_rect(shape);
    const int rows = shape.rows;
    const int cols = shape.cols;
    if (rows == 1 || cols == 1) return 1;

    HpReal pi, angle, lam, product, term, frac;
    mpfr_const_pi(pi.get(), MPFR_RNDN);

    auto eigenvalue = [&pi, &angle](mpfr_ptr out, int j, int r) {
        // 4 sin^2(pi j / 2r)
        mpfr_mul_si(angle.get(), pi.get(), j, MPFR_RNDN);
        mpfr_div_si(angle.get(), angle.get(), 2L * r, MPFR_RNDN);
        mpfr_sin(out, angle.get(), MPFR_RNDN);
        mpfr_sqr(out, out, MPFR_RNDN);
        mpfr_mul_si(out, out, 4, MPFR_RNDN);
    };

    std::vector<HpReal> row_eigs(rows - 1);
    for (int j = 1; j < rows; ++j) eigenvalue(row_eigs[j - 1].get(), j, rows);

    mpfr_set_si(product.get(), 1, MPFR_RNDN);
    for (int k = 1; k < cols; ++k) {
        eigenvalue(lam.get(), k, cols);
        for (int j = 1; j < rows; ++j) {
            mpfr_add(term.get(), row_eigs[j - 1].get(), lam.get(), MPFR_RNDN);
            mpfr_mul(product.get(), product.get(), term.get(), MPFR_RNDN);
        }
    }

    // the accumulated relative error leaves the product far from a half
    // integer; verify before rounding
    mpfr_frac(frac.get(), product.get(), MPFR_RNDN);
    double distance_to_half = std::fabs(std::fabs(mpfr_get_d(frac.get(), MPFR_RNDN)) - 0.5);
    if (distance_to_half < 0.25) {
        throw std::logic_error("tau_product_rounded: product too close to a half integer");
    }

    mpz_class result;
    mpfr_get_z(result.get_mpz_t(), product.get(), MPFR_RNDN);
    return result;
}

double q_eval(int r, double x) {
    require_positive_r(r, "q_eval");
    if (r == 1) return 1.0;
    double prev = 1.0;        // p_1
    double current = x + 2.0;  // p_2
    for (int k = 2; k < r; ++k) {
        double next = (x + 2.0) * current - prev;
        prev = current;
        current = next;
    }
    return current;
}

double log_q_hyperbolic(int r, double theta) {
    require_positive_r(r, "log_q_hyperbolic");
    if (theta <= 0.0) throw std::domain_error("log_q_hyperbolic: theta must be > 0");
    if (r == 1) return 0.0;
    return (r - 1) * theta + std::log1p(-std::exp(-2.0 * r * theta)) -
           std::log1p(-std::exp(-2.0 * theta));
}

double q_hyperbolic(int r, double theta) {
    return std::exp(log_q_hyperbolic(r, theta));
}

double c_func(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("c_func: x must lie in [0, 1]");
    return 2.0 * std::asinh(std::sin(0.5 * std::numbers::pi * x));
}

double c_deriv1(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("c_deriv1: x must lie in [0, 1]");
    double s = std::sin(0.5 * std::numbers::pi * x);
    return std::numbers::pi * std::cos(0.5 * std::numbers::pi * x) / std::sqrt(1.0 + s * s);
}

double c_deriv2(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("c_deriv2: x must lie in [0, 1]");
    double s = std::sin(0.5 * std::numbers::pi * x);
    double base = 1.0 + s * s;
    return -std::numbers::pi * std::numbers::pi * s / (base * std::sqrt(base));
}

double c_sum(int r) {
    require_positive_r(r, "c_sum");
    KahanSum sum;
    for (int j = 1; j < r; ++j) sum.add(c_func(static_cast<double>(j) / r));
    return sum.value();
}

double c_sum_error_bound(int r) {
    require_positive_r(r, "c_sum_error_bound");
    // per-term evaluation error plus compensated-summation slack
    return (r - 1) * (kCEvalErrorBound + 4.0 * std::numeric_limits<double>::epsilon());
}

double g_func(double t, double z) {
    if (t < 1.0) throw std::domain_error("g_func: t must be >= 1");
    if (z <= 0.0) throw std::domain_error("g_func: z must be > 0");
    if (z < kGSmallZSwitch) {
        // ratio of expm1 values; exact limit log(t) as z -> 0
        return std::log(std::expm1(-2.0 * t * z) / std::expm1(-2.0 * z));
    }
    double denom = -std::expm1(-2.0 * z);  // 1 - e^{-2z}
    return std::log1p((std::exp(-2.0 * z) - std::exp(-2.0 * t * z)) / denom);
}

double h_func(double t, double z) {
    return (t - 1.0) * z + g_func(t, z);
}

double g_term_error_bound(double t, double z_err) {
    // |G_t'| <= t - 1 on (0, inf)
    return 8.0 * std::numeric_limits<double>::epsilon() + (t - 1.0) * z_err;
}

HyperbolicParams hyperbolic_params(long original_short, long original_long,
                                   long balanced_short, long balanced_long, double theta) {
    if (original_short < 1 || original_long < 1 || balanced_short < 1 || balanced_long < 1) {
        throw std::invalid_argument("hyperbolic_params: sides must be >= 1");
    }
    if (!(original_short <= balanced_short && balanced_short <= balanced_long &&
          balanced_long <= original_long)) {
        throw std::invalid_argument("hyperbolic_params: sides must interleave");
    }
    mpq_class ratio_short(balanced_short, original_short);
    mpq_class ratio_long(original_long, balanced_long);
    ratio_short.canonicalize();
    ratio_long.canonicalize();
    if (ratio_short != ratio_long) {
        throw std::invalid_argument("hyperbolic_params: side ratios disagree (areas differ)");
    }
    if (theta <= 0.0) throw std::domain_error("hyperbolic_params: theta must be > 0");
    return {ratio_short, theta, original_short * theta};
}

}  // namespace gridtrees
