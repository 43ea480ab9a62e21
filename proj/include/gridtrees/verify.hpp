#pragma once

#include <string>
#include <vector>

namespace gridtrees {

// One verification check: worst observed value against its threshold.
// `observed` is a residual or margin whose meaning depends on `comparison`.
struct CheckResult {
    std::string name;
    std::string range;
    double observed = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct LemmaSuiteConfig {
    int eigenvector_r_max = 50;    // residual of the path eigenpairs
    int eigen_forms_r_max = 200;   // 4 sin^2 versus 2 - 2 cos, eigen product
    int sine_product_r_max = 200;
    int q_roots_r_max = 40;
    int derivative_points = 1000;  // central-difference checks of c
    int ladder_r_max = 1000;       // Riemann averages of c
    int scaled_sum_r_max = 500;    // r C_s - s C_r over r <= s
    int kernel_panels = 10000;
    int kernel_grid = 101;
    int tau_factor_max_side = 12;  // factorized log tau cross-check
};

// Runs every closed-form identity and inequality check at its pinned
// tolerance. All checks run even after a failure.
std::vector<CheckResult> lemma_suite(const LemmaSuiteConfig& config = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace gridtrees
