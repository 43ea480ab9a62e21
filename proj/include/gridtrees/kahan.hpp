#pragma once

namespace gridtrees {

// Compensated (Kahan) accumulator for long sums of doubles.
class KahanSum {
public:
    void add(double x) {
        double y = x - compensation_;
        double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }

    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace gridtrees
