#include "dhyp/riemann.hpp"

#include <cmath>
#include <string>

#include "dhyp/error.hpp"

namespace dhyp {

void ProblemParams::validate() const {
    if (!(m > 0.0 && m < 1.0)) throw DomainError("ProblemParams: need 0 < m < 1, got " + std::to_string(m));
    if (!(n >= 0.0 && n < 1.0)) throw DomainError("ProblemParams: need 0 <= n < 1, got " + std::to_string(n));
    if (!std::isfinite(mu)) throw DomainError("ProblemParams: mu must be finite");
}

CharParams char_params(const ProblemParams& pp) {
    pp.validate();
    return {pp.n / (2.0 * (pp.n - 2.0)), pp.m / (2.0 * (pp.m - 2.0)), -pp.mu / 4.0};
}

double x0_of(double x, double n) {
    if (x < 0) throw DomainError("x must be >= 0");
    return 2.0 / (2.0 - n) * std::pow(x, (2.0 - n) / 2.0);
}

double x_of(double x0, double n) {
    if (x0 < 0) throw DomainError("x0 must be >= 0");
    return std::pow((2.0 - n) * x0 / 2.0, 2.0 / (2.0 - n));
}

double y0_of(double y, double m) {
    if (y > 0) throw DomainError("y must be <= 0");
    return 2.0 / (2.0 - m) * std::pow(-y, (2.0 - m) / 2.0);
}

double y_of(double y0, double m) {
    if (y0 < 0) throw DomainError("y0 must be >= 0");
    return -std::pow((2.0 - m) * y0 / 2.0, 2.0 / (2.0 - m));
}

CharPoint to_characteristic(const PhysicalPoint& p, const ProblemParams& pp) {
    pp.validate();
    double x0 = x0_of(p.x, pp.n), y0 = y0_of(p.y, pp.m);
    return {x0 - y0, x0 + y0};
}

PhysicalPoint from_characteristic(const CharPoint& c, const ProblemParams& pp) {
    pp.validate();
    if (c.eta < c.xi) throw DomainError("from_characteristic: need xi <= eta");
    if (c.eta + c.xi < 0) throw DomainError("from_characteristic: need xi + eta >= 0");
    double x = std::pow((2.0 - pp.n) * (c.eta + c.xi) / 4.0, 2.0 / (2.0 - pp.n));
    double y = -std::pow((2.0 - pp.m) * (c.eta - c.xi) / 4.0, 2.0 / (2.0 - pp.m));
    return {x, y};
}

RiemannArgs riemann_args(const CharPoint& c, const CharPoint& c0, const CharParams& cp) {
    const double xi = c.xi, eta = c.eta, xi0 = c0.xi, eta0 = c0.eta;
    if (!(eta0 > xi0)) throw DomainError("riemann_args: need eta0 > xi0");
    if (!(eta + xi > 0)) throw DomainError("riemann_args: need eta + xi > 0");
    if (xi < xi0 || eta > eta0 || xi > eta)
        throw DomainError("riemann_args: need xi0 <= xi <= eta <= eta0");
    RiemannArgs r;
    double dxi = xi - xi0, deta = eta0 - eta;
    r.sigma = deta * dxi / ((eta + xi) * (eta0 + xi0));
    r.rho = -cp.lambda2 * deta * dxi;
    if (eta > xi) {
        r.omega = -deta * dxi / ((eta - xi) * (eta0 - xi0));
        r.theta = r.omega / (r.omega - 1.0);
    } else {
        // on eta = xi only the limit theta is finite
        r.omega = dxi * deta == 0.0 ? 0.0 : -HUGE_VAL;
        r.theta = dxi * deta == 0.0 ? 0.0 : 1.0;
    }
    return r;
}

double riemann_function(const CharPoint& c, const CharPoint& c0, const CharParams& cp, RiemannForm form,
                        const EvalConfig& cfg) {
    RiemannArgs ra = riemann_args(c, c0, cp);
    const double a = cp.alpha, b = cp.beta;
    const double xi = c.xi, eta = c.eta, xi0 = c0.xi, eta0 = c0.eta;
    if (form == RiemannForm::automatic)
        form = std::fabs(ra.omega) > 0.9 ? RiemannForm::psi_form : RiemannForm::phi_form;
    double pre = std::pow((eta + xi) / (eta0 + xi0), a);
    if (form == RiemannForm::phi_form) {
        if (!(std::fabs(ra.omega) < 1.0)) throw DomainError("riemann_function: phi form needs |omega| < 1");
        SeriesValue f = phi({a, b, 1.0 - a, 1.0 - b, 1.0}, ra.sigma, ra.omega, ra.rho, cfg);
        return pre * std::pow((eta - xi) / (eta0 - xi0), b) * require_converged(f, "Riemann Phi").value;
    }
    if (!(eta > xi)) throw DomainError("riemann_function: R is infinite on eta = xi");
    SeriesValue f = psi_pq({a, b, 1.0 - a, 1.0 - b, 1.0, 1.0, 1.0, 1.0, 1.0, 0, 0}, ra.sigma, ra.theta, ra.rho, cfg);
    double geo = std::pow(eta0 - xi, -b) * std::pow(eta - xi0, -b) * std::pow(eta - xi, 2.0 * b);
    return pre * geo * require_converged(f, "Riemann Psi_00").value;
}

double riemann_residual(const CharPoint& c, const CharPoint& c0, const CharParams& cp, double h,
                        const EvalConfig& cfg) {
    auto R = [&](double dx, double de) {
        return riemann_function(c, {c0.xi + dx, c0.eta + de}, cp, RiemannForm::automatic, cfg);
    };
    double r0 = R(0, 0);
    double rx = (R(h, 0) - R(-h, 0)) / (2 * h);
    double re = (R(0, h) - R(0, -h)) / (2 * h);
    double rxe = (R(h, h) - R(h, -h) - R(-h, h) + R(-h, -h)) / (4 * h * h);
    const double s = c0.eta + c0.xi, d = c0.eta - c0.xi;
    return rxe + cp.alpha / s * (re + rx) - cp.beta / d * (re - rx) - cp.lambda2 * r0;
}

}  // namespace dhyp
