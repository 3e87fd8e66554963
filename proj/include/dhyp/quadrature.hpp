#pragma once

#include <functional>
#include <vector>

namespace dhyp {

// Nodes and weights for weight (1-t)^a (1+t)^b on [-1, 1].
struct GaussRule {
    std::vector<double> nodes, weights;
};

// Golub-Welsch; rules are cached per (n, a, b) and safe to share across threads.
const GaussRule& gauss_jacobi(int n, double a, double b);

struct QuadratureSpec {
    int jacobi_order = 16;
    int subdivisions = 2;  // panels per half interval, graded toward the singular end
    double target_tol = 1e-10;
    bool adaptive = true;  // false: one fixed rule, smooth in the endpoints
    int max_levels = 6;

    void validate() const;
    bool operator==(const QuadratureSpec&) const = default;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Integral over [lo, hi] of (hi-t)^a (t-lo)^a f(t), a > -1.
QuadResult weighted_integral(const std::function<double(double)>& f, double lo, double hi, double a,
                             const QuadratureSpec& q);

}  // namespace dhyp
