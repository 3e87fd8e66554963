#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>

#include "dhyp/error.hpp"
#include "dhyp/special_fn.hpp"
#include "dhyp/summation.hpp"

namespace dhyp {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
// c-a-b closer than this to an integer is treated by interpolation in c.
constexpr double kNearInteger = 1e-3;
constexpr double kInterpStep = 5e-3;
// Stop when the estimated tail is this fraction of the requested tolerance.
constexpr double kSafety = 0.1;

double tol_scale(double v) { return std::max(std::fabs(v), 1.0); }

// Gamma(p1)Gamma(p2) / (Gamma(q1)Gamma(q2)); zero when a denominator argument is a pole.
double gamma_ratio(double p1, double p2, double q1, double q2) {
    double rq = rgamma(q1) * rgamma(q2);
    if (rq == 0.0) return 0.0;
    double big = std::max({std::fabs(p1), std::fabs(p2), std::fabs(q1), std::fabs(q2)});
    if (big < 150.0) return gamma_fn(p1) * gamma_fn(p2) * rq;
    int s1, s2, s3, s4;
    double l = lgamma_r(p1, &s1) + lgamma_r(p2, &s2) - lgamma_r(q1, &s3) - lgamma_r(q2, &s4);
    return s1 * s2 * s3 * s4 * std::exp(l);
}

SeriesValue terminating(double a, double b, double c, double z) {
    double n_a = is_nonpositive_integer(a) ? -std::round(a) : std::numeric_limits<double>::infinity();
    double n_b = is_nonpositive_integer(b) ? -std::round(b) : std::numeric_limits<double>::infinity();
    long n_max = static_cast<long>(std::min(n_a, n_b));
    Neumaier acc;
    double t = 1.0;
    acc += t;
    for (long n = 0; n < n_max; ++n) {
        t *= (a + n) * (b + n) / ((n + 1.0) * (c + n)) * z;
        acc += t;
    }
    return {acc.value(), 0.0, n_max + 1, true};
}

// Plain power series; the caller guarantees |z| <= 1/2 or a terminating case.
SeriesValue direct(double a, double b, double c, double z, const EvalConfig& cfg) {
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return terminating(a, b, c, z);
    Neumaier acc;
    double t = 1.0, max_t = 1.0;
    acc += t;
    const double n_min = std::max({std::fabs(a), std::fabs(b), std::fabs(c)}) + 2.0;
    for (long n = 0; n < cfg.max_terms; ++n) {
        t *= (a + n) * (b + n) / ((n + 1.0) * (c + n)) * z;
        acc += t;
        max_t = std::max(max_t, std::fabs(t));
        double v = acc.value();
        if (t == 0.0) return {v, 0.0, n + 2, true};
        if (n + 1 < n_min) continue;
        double r_next = std::fabs((a + n + 1) * (b + n + 1) / ((n + 2.0) * (c + n + 1)) * z);
        double q = std::max(r_next, std::fabs(z));
        if (q >= 1.0) continue;
        double tail = std::fabs(t) * q / (1.0 - q);
        if (tail <= kSafety * cfg.rel_tol * tol_scale(v)) {
            bool ok = max_t * cfg.rel_tol <= tol_scale(v);
            return {v, tail, n + 2, ok};
        }
    }
    return {acc.value(), std::fabs(t), cfg.max_terms + 1L, false};
}

SeriesValue combine(double ca, const SeriesValue& fa, double cb, const SeriesValue& fb) {
    SeriesValue r;
    r.value = ca * fa.value + cb * fb.value;
    r.tail_estimate = std::fabs(ca) * fa.tail_estimate + std::fabs(cb) * fb.tail_estimate;
    r.terms_used = fa.terms_used + fb.terms_used;
    r.converged = fa.converged && fb.converged;
    return r;
}

// F(a, b; a+b+k; 1-w) for integer k >= 0 and 0 < w <= 1/2.
SeriesValue log_case(double a, double b, int k, double w, const EvalConfig& cfg) {
    const double c = a + b + k;
    Neumaier first;
    if (k > 0) {
        double t = 1.0;
        first += t;
        for (int n = 0; n + 1 < k; ++n) {
            t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - k + n)) * w;
            first += t;
        }
    }
    double pre1 = k > 0 ? gamma_fn(k) * gamma_fn(c) * rgamma(a + k) * rgamma(b + k) : 0.0;
    double pre2 = -((k % 2 == 0) ? 1.0 : -1.0) * gamma_fn(c) * rgamma(a) * rgamma(b) *
                  std::pow(w, k);

    double lw = std::log(w);
    double psi_n1 = -kEulerGamma;
    double psi_nk1 = -kEulerGamma;
    for (int j = 1; j <= k; ++j) psi_nk1 += 1.0 / j;
    double psi_a = boost::math::digamma(a + k);
    double psi_b = boost::math::digamma(b + k);
    double t = 1.0 / gamma_fn(k + 1.0);
    Neumaier acc;
    long n = 0;
    bool ok = false;
    double tail = 0.0;
    for (; n < cfg.max_terms; ++n) {
        double term = t * (lw - psi_n1 - psi_nk1 + psi_a + psi_b);
        acc += term;
        double an = a + k + n, bn = b + k + n;
        double r = an * bn / ((n + 1.0) * (n + k + 1.0)) * w;
        t *= r;
        psi_n1 += 1.0 / (n + 1.0);
        psi_nk1 += 1.0 / (n + k + 1.0);
        psi_a += 1.0 / an;
        psi_b += 1.0 / bn;
        if (t == 0.0) {
            ok = true;
            break;
        }
        double v = pre2 * acc.value();
        if (n + 1 < std::max(std::fabs(a), std::fabs(b)) + k + 2) continue;
        double q = std::max(std::fabs(r), w);
        // the log factor grows like log(n), bounded by the current bracket plus slack
        double bracket = std::fabs(lw - psi_n1 - psi_nk1 + psi_a + psi_b) + 1.0;
        tail = std::fabs(pre2 * t) * bracket / (1.0 - q);
        if (tail <= kSafety * cfg.rel_tol * tol_scale(v + pre1 * first.value())) {
            ok = true;
            break;
        }
    }
    SeriesValue s;
    s.value = pre1 * first.value() + pre2 * acc.value();
    s.tail_estimate = tail;
    s.terms_used = n + 1 + k;
    s.converged = ok;
    return s;
}

// 1-z transformation, non-integer c-a-b.
SeriesValue reflect_generic(double a, double b, double c, double w, const EvalConfig& cfg) {
    double s = c - a - b;
    double ca = gamma_ratio(c, s, c - a, c - b);
    double cb = gamma_ratio(c, -s, a, b) * std::pow(w, s);
    SeriesValue f1 = ca != 0.0 ? direct(a, b, 1.0 - s, w, cfg) : SeriesValue{0.0, 0.0, 0, true};
    SeriesValue f2 = cb != 0.0 ? direct(c - a, c - b, 1.0 + s, w, cfg) : SeriesValue{0.0, 0.0, 0, true};
    return combine(ca, f1, cb, f2);
}

// Near-integer or integer c-a-b with w = 1-z in (0, 1/2).
SeriesValue reflect_integer(double a, double b, double c, double w, const EvalConfig& cfg) {
    double s = c - a - b;
    int k = static_cast<int>(std::lround(s));
    double delta = s - k;
    if (k < 0) {
        // Euler: F(a,b;c;z) = w^(c-a-b) F(c-a, c-b; c; z)
        SeriesValue inner = reflect_integer(c - a, c - b, c, w, cfg);
        double f = std::pow(w, s);
        inner.value *= f;
        inner.tail_estimate *= f;
        return inner;
    }
    SeriesValue exact = log_case(a, b, k, w, cfg);
    if (delta == 0.0) return exact;
    // 5-point Lagrange interpolation in c of F/Gamma(c), which is entire in c
    const std::array<int, 5> offs{-2, -1, 0, 1, 2};
    std::array<SeriesValue, 5> vals;
    std::array<double, 5> reg;
    double c0 = a + b + k;
    for (int i = 0; i < 5; ++i) {
        double ci = c0 + offs[i] * kInterpStep;
        vals[i] = offs[i] == 0 ? exact : reflect_generic(a, b, ci, w, cfg);
        reg[i] = rgamma(ci);
    }
    SeriesValue r;
    r.converged = true;
    double x = delta / kInterpStep;
    double g = gamma_fn(c);
    for (int i = 0; i < 5; ++i) {
        double l = 1.0;
        for (int j = 0; j < 5; ++j)
            if (j != i) l *= (x - offs[j]) / double(offs[i] - offs[j]);
        r.value += l * reg[i] * vals[i].value;
        r.tail_estimate += std::fabs(l * reg[i]) * vals[i].tail_estimate;
        r.terms_used += vals[i].terms_used;
        r.converged = r.converged && vals[i].converged;
    }
    r.value *= g;
    r.tail_estimate *= std::fabs(g);
    return r;
}

SeriesValue reflect(double a, double b, double c, double z, const EvalConfig& cfg) {
    double w = 1.0 - z;
    double s = c - a - b;
    if (std::fabs(s - std::round(s)) < kNearInteger) return reflect_integer(a, b, c, w, cfg);
    return reflect_generic(a, b, c, w, cfg);
}

}  // namespace

SeriesValue gauss_f(const GaussParams& p, double z, const EvalConfig& cfg) {
    cfg.validate();
    const double a = p.a, b = p.b, c = p.c;
    if (is_nonpositive_integer(c)) throw PoleError("gauss_f: lower parameter c is a pole");
    if (!std::isfinite(z)) throw DomainError("gauss_f: non-finite argument");
    if (z == 0.0) return {1.0, 0.0, 1, true};
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return terminating(a, b, c, z);
    if (z >= 1.0) throw DomainError("gauss_f: argument must be < 1");
    if (std::fabs(z) <= 0.5) return direct(a, b, c, z, cfg);
    if (z > 0.5) return reflect(a, b, c, z, cfg);
    // z < -1/2: Pfaff, F = (1-z)^(-a) F(a, c-b; c; z/(z-1))
    double f = std::pow(1.0 - z, -a);
    SeriesValue inner = gauss_f({a, c - b, c}, z / (z - 1.0), cfg);
    inner.value *= f;
    inner.tail_estimate *= std::fabs(f);
    return inner;
}

}  // namespace dhyp
