#include "dhyp/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "dhyp/error.hpp"
#include "dhyp/special_fn.hpp"

namespace dhyp {
namespace {

GaussRule build_rule(int n, double a, double b) {
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        double s = 2.0 * k + ab;
        diag(k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + ab;
        double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
        double den = s * s * (s + 1.0) * (s - 1.0);
        sub(k - 1) = std::sqrt(num / den);
    }
    double mu0 = std::pow(2.0, ab + 1.0) * gamma_fn(a + 1.0) * gamma_fn(b + 1.0) * rgamma(ab + 2.0);
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    if (n == 1) {
        r.nodes[0] = diag(0);
        r.weights[0] = mu0;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw QuadratureError("gauss_jacobi: eigen-solve failed");
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v * v;
    }
    return r;
}

// Half interval with the singular end at s and the regular end at r; the
// weight factor |t-s|^a is exact, g carries everything else.
double half(const std::function<double(double)>& g, double s, double r, double a, int n, int panels,
            long& evals) {
    const double len = r - s;
    const double dir = len > 0 ? 1.0 : -1.0;
    const double alen = std::fabs(len);
    double total = 0.0;
    // first panel [s, s + len/2^(panels-1)] with the Jacobi weight, then doubling panels
    double inner = alen * std::ldexp(1.0, 1 - panels);
    {
        const GaussRule& rule = gauss_jacobi(n, 0.0, a);
        double h = inner / 2.0;
        double scale = h * std::pow(h, a);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            double t = s + dir * h * (1.0 + rule.nodes[i]);
            total += rule.weights[i] * scale * g(t);
        }
        evals += n;
    }
    const GaussRule& leg = gauss_jacobi(n, 0.0, 0.0);
    double lo = inner;
    for (int p = 1; p < panels; ++p) {
        double hi = 2.0 * lo;
        double h = (hi - lo) / 2.0, c = (hi + lo) / 2.0;
        for (std::size_t i = 0; i < leg.nodes.size(); ++i) {
            double d = c + h * leg.nodes[i];
            total += leg.weights[i] * h * std::pow(d, a) * g(s + dir * d);
        }
        evals += n;
        lo = hi;
    }
    return total;
}

double rule_value(const std::function<double(double)>& f, double lo, double hi, double a, int n, int panels,
                  long& evals) {
    const double mid = 0.5 * (lo + hi);
    auto left = [&](double t) { return std::pow(hi - t, a) * f(t); };
    auto right = [&](double t) { return std::pow(t - lo, a) * f(t); };
    return half(left, lo, mid, a, n, panels, evals) + half(right, hi, mid, a, n, panels, evals);
}

}  // namespace

const GaussRule& gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw ConfigError("gauss_jacobi: need n >= 1");
    if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    static std::mutex mtx;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{n, a, b}];
    if (!slot) slot = std::make_unique<GaussRule>(build_rule(n, a, b));
    return *slot;
}

void QuadratureSpec::validate() const {
    if (jacobi_order < 4) throw ConfigError("QuadratureSpec: jacobi_order must be >= 4");
    if (jacobi_order > 512) throw ConfigError("QuadratureSpec: jacobi_order must be <= 512");
    if (subdivisions < 1 || subdivisions > 30) throw ConfigError("QuadratureSpec: subdivisions must be in [1, 30]");
    if (!(target_tol > 0.0)) throw ConfigError("QuadratureSpec: target_tol must be > 0");
    if (max_levels < 2) throw ConfigError("QuadratureSpec: max_levels must be >= 2");
}

QuadResult weighted_integral(const std::function<double(double)>& f, double lo, double hi, double a,
                             const QuadratureSpec& q) {
    q.validate();
    if (!(hi > lo)) throw DomainError("weighted_integral: need hi > lo");
    if (!(a > -1.0)) throw DomainError("weighted_integral: exponent must exceed -1");
    QuadResult r;
    int n = q.jacobi_order, panels = q.subdivisions;
    double prev = rule_value(f, lo, hi, a, n, panels, r.evaluations);
    if (!q.adaptive) {
        r.value = prev;
        r.converged = true;
        return r;
    }
    // refine order and panels alternately
    for (int level = 1; level < q.max_levels; ++level) {
        if (level % 2 == 1)
            n = std::min(2 * n, 512);
        else
            panels = std::min(panels + 1, 30);
        double cur = rule_value(f, lo, hi, a, n, panels, r.evaluations);
        r.value = cur;
        r.error_estimate = std::fabs(cur - prev);
        if (r.error_estimate <= q.target_tol * std::max(std::fabs(cur), 1.0)) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

}  // namespace dhyp
