#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gridtrees/balancing.hpp"
#include "gridtrees/spectral.hpp"
#include "gridtrees/verify.hpp"

using namespace gridtrees;

TEST_CASE("riemann averages") {
    auto identity = [](double x) { return x; };
    CHECK(riemann_average(identity, 4) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(riemann_average(identity, 1) == 0.0);
    CHECK(riemann_average([](double) { return 1e9; }, 1) == 0.0);
    auto c = [](double x) { return c_func(x); };
    CHECK(riemann_average(c, 2) == doctest::Approx(std::acosh(2.0) / 2.0).epsilon(1e-15));
    for (int r = 1; r < 100; ++r) {
        double lhs = riemann_average(identity, r);
        CHECK(lhs == doctest::Approx((r - 1.0) / (2.0 * r)).epsilon(1e-14));
    }
}

TEST_CASE("min kernel closed form examples") {
    CHECK(min_kernel_average(1.0, 4) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
    CHECK(min_kernel_average(0.3, 2) == doctest::Approx(0.15).epsilon(1e-15));
    double b2 = min_kernel_average(0.3, 2);
    double b3 = min_kernel_average(0.3, 3);
    CHECK(b3 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(b3 >= b2);
}

TEST_CASE("min kernel closed form equals the defining sum in doubles") {
    for (int r = 1; r <= 64; ++r) {
        for (int k = 0; k <= 128; ++k) {
            double u = static_cast<double>(k) / 128.0;
            double direct = 0.0;
            for (int j = 1; j < r; ++j) {
                direct += std::min(static_cast<double>(j) / r, u);
            }
            direct /= r;
            CHECK(min_kernel_average(u, r) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("min kernel closed form equals the defining sum in exact rationals") {
    for (int r = 1; r <= 64; ++r) {
        for (int k = 0; k <= 128; ++k) {
            mpq_class u(k, 128);
            u.canonicalize();
            // direct sum (1/r) sum min(j/r, u)
            mpq_class direct(0);
            for (int j = 1; j < r; ++j) {
                mpq_class jr(j, r);
                jr.canonicalize();
                direct += std::min(jr, u);
            }
            direct /= r;
            // closed form with a = floor(r u)
            mpz_class a = (u.get_num() * r) / u.get_den();
            mpq_class closed = mpq_class(a * (a + 1)) / (2 * r * r) +
                               mpq_class(r - 1 - a) * u / r;
            CHECK(closed == direct);
        }
    }
}

TEST_CASE("concavity ladder of admissible functions") {
    auto c = [](double x) { return c_func(x); };
    ConcavityReport cr = check_concavity_ladder(c, "c", 1000, 2e-14);
    CHECK(cr.function_id == "c");
    CHECK_FALSE(cr.first_violation.has_value());
    CHECK(cr.averages.size() == 1000);
    CHECK(cr.averages[0] == 0.0);

    auto identity = [](double x) { return x; };
    CHECK_FALSE(check_concavity_ladder(identity, "id", 100, 0.0).first_violation.has_value());

    auto sine = [](double x) { return std::sin(0.5 * std::numbers::pi * x); };
    CHECK_FALSE(check_concavity_ladder(sine, "sin", 200, 2e-14).first_violation.has_value());

    // a narrow bump at 1/2 pushes A_2 above A_3; reported, not thrown
    auto bump = [](double x) { return std::exp(-200.0 * (x - 0.5) * (x - 0.5)); };
    ConcavityReport bad = check_concavity_ladder(bump, "bump", 50, 1e-12);
    REQUIRE(bad.first_violation.has_value());
    CHECK(*bad.first_violation == 2);
}

TEST_CASE("kernel representation residuals") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);

    double c_residual = kernel_representation_check(
        [](double x) { return c_func(x); }, [](double x) { return c_deriv1(x); },
        [](double x) { return c_deriv2(x); }, grid, 10000);
    CHECK(c_residual < 1e-6);

    double id_residual = kernel_representation_check(
        [](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; },
        grid, 1000);
    CHECK(id_residual == 0.0);

    double quad_residual = kernel_representation_check(
        [](double x) { return x - 0.5 * x * x; }, [](double x) { return 1.0 - x; },
        [](double) { return -1.0; }, grid, 10000);
    CHECK(quad_residual < 1e-8);
}

TEST_CASE("the linear part of c vanishes at the right endpoint") {
    // cos(pi/2) in doubles is ~6e-17, not exactly zero
    CHECK(std::fabs(c_deriv1(1.0)) <= 1e-15);
}

TEST_CASE("matching indices") {
    CHECK(matching_indices(2, 4) == std::vector<long>{2});
    CHECK(matching_indices(3, 5) == std::vector<long>{1, 3});
    CHECK(matching_indices(4, 4) == std::vector<long>{1, 2, 3});
    CHECK(matching_indices(1, 9).empty());
    CHECK_THROWS_AS(matching_indices(5, 4), std::invalid_argument);

    for (long a = 1; a <= 40; ++a) {
        for (long b = a; b <= 40; ++b) {
            std::vector<long> ks = matching_indices(a, b);
            REQUIRE(ks.size() == static_cast<size_t>(a - 1));
            for (size_t i = 0; i < ks.size(); ++i) {
                long j = static_cast<long>(i) + 1;
                CHECK(ks[i] >= 1);
                CHECK(ks[i] <= b - 1);
                CHECK(ks[i] * a <= j * b);  // k/b <= j/A exactly
                if (i > 0) CHECK(ks[i] > ks[i - 1]);
            }
        }
    }
}

TEST_CASE("residual gamma") {
    CHECK(residual_gamma(3, 7, mpq_class(1)) == 0.0);
    CHECK(residual_gamma(2, 4, mpq_class(2)) > 0.0);
    // equal endpoints make the two sums identical
    CHECK(residual_gamma(4, 4, mpq_class(3)) == 0.0);
    CHECK_THROWS_AS(residual_gamma(5, 4, mpq_class(2)), std::invalid_argument);
}

TEST_CASE("certificate for (2,8) against (4,4)") {
    BalancingCertificate cert = balancing_certificate(2, 8, 4, 4);
    CHECK(cert.t == mpq_class(2));
    CHECK(cert.A == 2);
    CHECK(cert.B == 8);
    CHECK(cert.a == 4);
    CHECK(cert.b == 4);

    TreeCount tau_orig = tree_count_exact(RectShape{2, 8});
    TreeCount tau_bal = tree_count_exact(RectShape{4, 4});
    CHECK(tau_orig == 10864);
    CHECK(tau_bal == 100352);
    // the brute-force oracle reaches both rectangles
    CHECK(tree_count_bruteforce(induced_graph(rect_cells({2, 8}))) == 10864);

    CHECK(cert.log_diff_spectral > 0.0);
    CHECK(cert.linear_term >= 0.0);
    CHECK(cert.residual_term > 0.0);
    CHECK(cert.closes());
    REQUIRE(cert.log_diff_exact.has_value());
    CHECK(std::fabs(*cert.log_diff_exact - cert.log_diff_spectral) <=
          cert.closure_budget + 2.0 * kLogMpzErrorBound);
}

TEST_CASE("certificate for (3,12) against (6,6)") {
    BalancingCertificate cert = balancing_certificate(3, 12, 6, 6);
    CHECK(cert.t == mpq_class(2));
    REQUIRE(cert.log_diff_exact.has_value());
    CHECK(std::fabs(*cert.log_diff_exact - cert.log_diff_spectral) <=
          cert.closure_budget + 2.0 * kLogMpzErrorBound);
    CHECK(cert.linear_term >= 0.0);
    CHECK(cert.residual_term > 0.0);
    CHECK(cert.closes());
}

TEST_CASE("trivial certificate at t = 1") {
    BalancingCertificate cert = balancing_certificate(5, 5, 5, 5);
    CHECK(cert.t == 1);
    CHECK(cert.trivial());
    CHECK(cert.linear_term == 0.0);
    CHECK(cert.residual_term == 0.0);
    CHECK(cert.log_diff_spectral == 0.0);
    CHECK(cert.closure_residual == 0.0);

    BalancingCertificate wide = balancing_certificate(2, 9, 2, 9);
    CHECK(wide.trivial());
    CHECK(wide.linear_term == 0.0);
    CHECK(wide.residual_term == 0.0);
}

TEST_CASE("certificate rejects invalid quadruples") {
    CHECK_THROWS_AS(balancing_certificate(2, 8, 4, 5), std::invalid_argument);  // area
    CHECK_THROWS_AS(balancing_certificate(4, 4, 2, 8), std::invalid_argument);  // order
    CHECK_THROWS_AS(balancing_certificate(0, 8, 4, 4), std::invalid_argument);
}

TEST_CASE("sweep over small areas passes and is worker independent") {
    BalancingSweep one = balancing_sweep(48, 1);
    CHECK(one.all_pass);
    CHECK_FALSE(one.entries.empty());
    for (const SweepEntry& entry : one.entries) {
        CHECK(entry.pass());
        if (entry.cert.t > 1) {
            CHECK(entry.tau_original < entry.tau_balanced);
        } else {
            CHECK(entry.tau_original == entry.tau_balanced);
        }
    }

    BalancingSweep two = balancing_sweep(48, 2);
    REQUIRE(two.entries.size() == one.entries.size());
    for (size_t i = 0; i < one.entries.size(); ++i) {
        CHECK(one.entries[i].area == two.entries[i].area);
        CHECK(one.entries[i].cert.A == two.entries[i].cert.A);
        CHECK(one.entries[i].cert.b == two.entries[i].cert.b);
        CHECK(one.entries[i].cert.log_diff_spectral == two.entries[i].cert.log_diff_spectral);
        CHECK(one.entries[i].cert.residual_term == two.entries[i].cert.residual_term);
        CHECK(one.entries[i].tau_balanced == two.entries[i].tau_balanced);
    }
}

TEST_CASE("lemma suite passes at reduced ranges") {
    LemmaSuiteConfig config;
    config.eigenvector_r_max = 20;
    config.eigen_forms_r_max = 60;
    config.sine_product_r_max = 60;
    config.q_roots_r_max = 20;
    config.derivative_points = 200;
    config.ladder_r_max = 200;
    config.scaled_sum_r_max = 120;
    config.kernel_panels = 4000;
    config.tau_factor_max_side = 8;
    std::vector<CheckResult> results = lemma_suite(config);
    CHECK(all_pass(results));
    for (const CheckResult& r : results) {
        INFO(r.name, " observed=", r.observed, " threshold=", r.threshold);
        CHECK(r.pass);
    }
}
