#pragma once

#include "dhyp/special_fn.hpp"

namespace dhyp {

// Exponents 0 < m < 1, 0 <= n < 1 and spectral parameter mu.
struct ProblemParams {
    double m = 0.5, n = 0.0, mu = 0.0;
    void validate() const;
    bool operator==(const ProblemParams&) const = default;
};

// 2 alpha = n/(n-2), 2 beta = m/(m-2), lambda^2 = -mu/4.
struct CharParams {
    double alpha = 0, beta = 0, lambda2 = 0;
};

struct PhysicalPoint {
    double x = 0, y = 0;  // x >= 0, y <= 0
};

struct CharPoint {
    double xi = 0, eta = 0;
};

struct RiemannArgs {
    double sigma = 0, omega = 0, rho = 0, theta = 0;
};

enum class RiemannForm { phi_form, psi_form, automatic };

CharParams char_params(const ProblemParams& pp);

// x0 = (2/(2-n)) x^((2-n)/2) and its inverse
double x0_of(double x, double n);
double x_of(double x0, double n);
// y0 = (2/(2-m)) (-y)^((2-m)/2) and its inverse (returns y <= 0)
double y0_of(double y, double m);
double y_of(double y0, double m);

CharPoint to_characteristic(const PhysicalPoint& p, const ProblemParams& pp);
PhysicalPoint from_characteristic(const CharPoint& c, const ProblemParams& pp);

RiemannArgs riemann_args(const CharPoint& c, const CharPoint& c0, const CharParams& cp);

// automatic picks psi_form when |omega| > 0.9.
double riemann_function(const CharPoint& c, const CharPoint& c0, const CharParams& cp,
                        RiemannForm form = RiemannForm::automatic, const EvalConfig& cfg = {});

// Central-difference residual of the characteristic-form equation applied to
// R(c; .) in the second point, step h in both xi0 and eta0.
double riemann_residual(const CharPoint& c, const CharPoint& c0, const CharParams& cp, double h,
                        const EvalConfig& cfg = {});

}  // namespace dhyp
