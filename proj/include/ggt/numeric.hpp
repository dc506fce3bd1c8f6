// Compensated summation for the series arithmetic. Sums are accumulated in a
// fixed order everywhere, so values are bit-reproducible across runs and
// worker counts.
#pragma once

namespace ggt {

class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace ggt
