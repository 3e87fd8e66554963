#pragma once

#include <cmath>

namespace dhyp {

// Neumaier's variant of compensated summation.
class Neumaier {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Neumaier& operator+=(double x) {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }
    void reset() { sum_ = comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace dhyp
