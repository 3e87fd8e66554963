#include "dhyp/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dhyp/error.hpp"
#include "dhyp/summation.hpp"

namespace dhyp {

void EvalConfig::validate() const {
    if (!(rel_tol > 0.0)) throw ConfigError("EvalConfig: rel_tol must be > 0");
    if (max_terms < 1) throw ConfigError("EvalConfig: max_terms must be >= 1");
}

bool is_nonpositive_integer(double x, double tol) {
    if (x > tol) return false;
    return std::fabs(x - std::round(x)) <= tol;
}

double pochhammer(double alpha, long l) {
    if (l < 0) throw DomainError("pochhammer: negative index");
    if (l <= 64) {
        double r = 1.0;
        for (long i = 0; i < l; ++i) r *= alpha + i;
        return r;
    }
    if (is_nonpositive_integer(alpha, 0.0) && -alpha < l) return 0.0;
    int s1 = 1, s2 = 1;
    double lg = lgamma_r(alpha + l, &s1) - lgamma_r(alpha, &s2);
    return s1 * s2 * std::exp(lg);
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x, 0.0)) throw PoleError("gamma_fn: pole at " + std::to_string(x));
    return std::tgamma(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x, 0.0)) return 0.0;
    double g = std::tgamma(x);
    if (std::isinf(g)) return 0.0;
    return 1.0 / g;
}

const SeriesValue& require_converged(const SeriesValue& v, const char* what) {
    if (!v.converged) {
        throw ConvergenceError(std::string(what) + ": series did not converge (terms " +
                               std::to_string(v.terms_used) + ", tail " +
                               std::to_string(v.tail_estimate) + ")");
    }
    return v;
}

namespace {

double tol_scale(double v) { return std::max(std::fabs(v), 1.0); }

void check_lower(double x, const char* name) {
    if (is_nonpositive_integer(x))
        throw PoleError(std::string("lower parameter ") + name + " is a non-positive integer");
}

// Terms of a sequence generated in index order, cached for random access.
template <class F>
class Lazy {
public:
    explicit Lazy(F f) : f_(std::move(f)) {}
    double operator[](std::size_t i) {
        while (v_.size() <= i) v_.push_back(f_(static_cast<long>(v_.size())));
        return v_[i];
    }

private:
    F f_;
    std::vector<double> v_;
};

// Running product t_0 = first, t_i = t_{i-1} * ratio(i-1).
template <class R>
auto product_seq(double first, R ratio) {
    return [first, ratio, t = first](long i) mutable {
        if (i > 0) t *= ratio(i - 1);
        else t = first;
        return t;
    };
}

// Stopping logic shared by shell and nested loops: two consecutive small
// chunks, non-increasing, with a geometric tail bound below tolerance.
class Stopper {
public:
    Stopper(double rate, double tol) : rate_(rate), tol_(tol) {}

    // Returns true when the chunk just added closes the sum.
    bool push(double chunk_abs, double current) {
        max_abs_ = std::max(max_abs_, chunk_abs);
        double thr = tol_ * tol_scale(current);
        small_run_ = chunk_abs <= thr ? small_run_ + 1 : 0;
        bool done = false;
        if (small_run_ >= 2 && chunk_abs <= prev_) {
            double q = rate_;
            if (prev_ > 0.0) q = std::max(q, chunk_abs / prev_);
            if (q < 1.0) {
                tail_ = chunk_abs * q / (1.0 - q);
                done = tail_ <= 0.1 * thr;
            }
        }
        if (!done) tail_ = chunk_abs;
        prev_ = chunk_abs;
        return done;
    }
    double tail() const { return tail_; }
    bool cancellation_ok(double value) const { return max_abs_ * tol_ <= tol_scale(value); }

private:
    double rate_, tol_;
    double prev_ = std::numeric_limits<double>::infinity();
    double max_abs_ = 0.0;
    double tail_ = 0.0;
    int small_run_ = 0;
};

// Sum over m,k >= 0 of u_m w_k g_{m+k}.
template <class U, class W, class G>
SeriesValue sum2(U uf, W wf, G gf, double rate, const EvalConfig& cfg) {
    cfg.validate();
    Lazy<U> u(std::move(uf));
    Lazy<W> w(std::move(wf));
    Lazy<G> g(std::move(gf));
    Neumaier acc;
    Stopper stop(rate, cfg.rel_tol);
    SeriesValue r;
    const long limit = cfg.max_terms;
    if (cfg.shell_strategy == ShellStrategy::diagonal) {
        for (long s = 0; s < limit; ++s) {
            double gs = g[s];
            Neumaier shell;
            double ab = 0.0;
            if (gs != 0.0) {
                for (long m = 0; m <= s; ++m) {
                    double t = u[m] * w[s - m];
                    shell += t;
                    ab += std::fabs(t);
                }
            }
            acc += shell.value() * gs;
            r.terms_used += s + 1;
            if (stop.push(ab * std::fabs(gs), acc.value())) {
                r.converged = true;
                break;
            }
        }
    } else {
        for (long m = 0; m < limit; ++m) {
            double um = u[m];
            Neumaier row;
            double row_abs = 0.0;
            if (um != 0.0) {
                Stopper inner(0.0, cfg.rel_tol);
                bool closed = false;
                for (long k = 0; k < limit; ++k) {
                    double t = um * w[k] * g[m + k];
                    row += t;
                    row_abs += std::fabs(t);
                    ++r.terms_used;
                    if (inner.push(std::fabs(t), acc.value() + row.value())) {
                        closed = true;
                        break;
                    }
                }
                if (!closed) {
                    r.value = acc.value() + row.value();
                    r.tail_estimate = inner.tail();
                    return r;
                }
                row_abs += inner.tail();
            }
            acc += row.value();
            if (stop.push(row_abs, acc.value())) {
                r.converged = true;
                break;
            }
        }
    }
    r.value = acc.value();
    r.tail_estimate = stop.tail();
    if (r.converged && !stop.cancellation_ok(r.value)) r.converged = false;
    return r;
}

// Sum over m,n,k >= 0 of A_m B_n C_k G_{m+n+k}.
template <class A, class B, class C, class G>
SeriesValue sum3(A af, B bf, C cf, G gf, double rate, const EvalConfig& cfg) {
    cfg.validate();
    Lazy<A> a(std::move(af));
    Lazy<B> b(std::move(bf));
    Lazy<C> c(std::move(cf));
    Lazy<G> g(std::move(gf));
    Neumaier acc;
    Stopper stop(rate, cfg.rel_tol);
    SeriesValue r;
    const long limit = cfg.max_terms;
    if (cfg.shell_strategy == ShellStrategy::diagonal) {
        std::vector<double> ab, ab_abs;  // convolution of A and B by total degree
        for (long s = 0; s < limit; ++s) {
            Neumaier conv;
            double conv_abs = 0.0;
            for (long m = 0; m <= s; ++m) {
                double t = a[m] * b[s - m];
                conv += t;
                conv_abs += std::fabs(t);
            }
            ab.push_back(conv.value());
            ab_abs.push_back(conv_abs);
            double gs = g[s];
            Neumaier shell;
            double sh_abs = 0.0;
            for (long j = 0; j <= s; ++j) {
                double ck = c[s - j];
                shell += ab[j] * ck;
                sh_abs += ab_abs[j] * std::fabs(ck);
            }
            acc += shell.value() * gs;
            r.terms_used += (s + 1) * (s + 2) / 2;
            if (stop.push(sh_abs * std::fabs(gs), acc.value())) {
                r.converged = true;
                break;
            }
        }
    } else {
        for (long m = 0; m < limit; ++m) {
            double am = a[m];
            Neumaier plane;
            double plane_abs = 0.0;
            if (am != 0.0) {
                Stopper mid(0.0, cfg.rel_tol);
                bool mid_closed = false;
                for (long n = 0; n < limit; ++n) {
                    double amn = am * b[n];
                    Neumaier row;
                    double row_abs = 0.0;
                    if (amn != 0.0) {
                        Stopper inner(0.0, cfg.rel_tol);
                        bool closed = false;
                        for (long k = 0; k < limit; ++k) {
                            double t = amn * c[k] * g[m + n + k];
                            row += t;
                            row_abs += std::fabs(t);
                            ++r.terms_used;
                            if (inner.push(std::fabs(t), acc.value() + plane.value() + row.value())) {
                                closed = true;
                                break;
                            }
                        }
                        if (!closed) {
                            r.value = acc.value() + plane.value() + row.value();
                            r.tail_estimate = inner.tail();
                            return r;
                        }
                        row_abs += inner.tail();
                    }
                    plane += row.value();
                    plane_abs += row_abs;
                    if (mid.push(row_abs, acc.value() + plane.value())) {
                        mid_closed = true;
                        break;
                    }
                }
                if (!mid_closed) {
                    r.value = acc.value() + plane.value();
                    r.tail_estimate = mid.tail();
                    return r;
                }
                plane_abs += mid.tail();
            }
            acc += plane.value();
            if (stop.push(plane_abs, acc.value())) {
                r.converged = true;
                break;
            }
        }
    }
    r.value = acc.value();
    r.tail_estimate = stop.tail();
    if (r.converged && !stop.cancellation_ok(r.value)) r.converged = false;
    return r;
}

void check_sigma(double sigma) {
    if (!(std::fabs(sigma) < 1.0)) throw DomainError("series argument |sigma| must be < 1");
}

void check_pq(int p, int q) {
    if ((p != 0 && p != 1) || (q != 0 && q != 1)) throw DomainError("p and q must be 0 or 1");
}

void check_xi_params(const XiPQParams& p) {
    check_pq(p.p, p.q);
    check_lower(p.c, "c");
    if (p.p == 1) check_lower(p.c_prime, "c'");
    if (p.q == 1) check_lower(p.d_prime, "d'");
}

// u_m = (a)_m (b)_m sigma^m / m!
auto u_seq(double a, double b, double sigma) {
    return product_seq(1.0, [=](long i) { return (a + i) * (b + i) * sigma / (i + 1.0); });
}

// w_k = (a')_{pk} rho^k / (k! (c')_{pk})
auto w_seq(double ap, double cp, int p, double rho) {
    return product_seq(1.0, [=](long i) {
        double r = rho / (i + 1.0);
        if (p == 1) r *= (ap + i) / (cp + i);
        return r;
    });
}

// g_s = (b')_{qs} / ((c)_s (d')_{qs}), optionally shifted by one index.
auto g_seq(double c, double bp, double dp, int q, long shift) {
    auto ratio = [=](long i) {
        double r = 1.0 / (c + i);
        if (q == 1) r *= (bp + i) / (dp + i);
        return r;
    };
    double first = 1.0;
    for (long i = 0; i < shift; ++i) first *= ratio(i);
    return product_seq(first, [=](long i) { return ratio(i + shift); });
}

}  // namespace

SeriesValue xi2(const Xi2Params& p, double sigma, double rho, const EvalConfig& cfg) {
    check_lower(p.c, "c");
    check_sigma(sigma);
    return sum2(u_seq(p.a, p.b, sigma), w_seq(1.0, 1.0, 0, rho), g_seq(p.c, 1.0, 1.0, 0, 0),
                std::fabs(sigma), cfg);
}

SeriesValue xi_pq(const XiPQParams& p, double sigma, double rho, const EvalConfig& cfg) {
    check_xi_params(p);
    check_sigma(sigma);
    return sum2(u_seq(p.a, p.b, sigma), w_seq(p.a_prime, p.c_prime, p.p, rho),
                g_seq(p.c, p.b_prime, p.d_prime, p.q, 0), std::fabs(sigma), cfg);
}

SeriesValue xi10_dsigma(const XiPQParams& p, double sigma, double rho, const EvalConfig& cfg) {
    check_xi_params(p);
    check_sigma(sigma);
    const double a = p.a, b = p.b;
    // u'_m = (a)_{m+1} (b)_{m+1} sigma^m / m!
    auto du = product_seq(a * b, [=](long i) { return (a + i + 1) * (b + i + 1) * sigma / (i + 1.0); });
    return sum2(du, w_seq(p.a_prime, p.c_prime, p.p, rho), g_seq(p.c, p.b_prime, p.d_prime, p.q, 1),
                std::fabs(sigma), cfg);
}

SeriesValue xi10_rho_drho(const XiPQParams& p, double sigma, double rho, const EvalConfig& cfg) {
    check_xi_params(p);
    check_sigma(sigma);
    auto w = w_seq(p.a_prime, p.c_prime, p.p, rho);
    auto kw = [w](long k) mutable { return k * w(k); };
    return sum2(u_seq(p.a, p.b, sigma), kw, g_seq(p.c, p.b_prime, p.d_prime, p.q, 0),
                std::fabs(sigma), cfg);
}

SeriesValue phi(const PhiParams& p, double sigma, double omega, double rho, const EvalConfig& cfg) {
    check_lower(p.e, "e");
    check_sigma(sigma);
    if (!(std::fabs(omega) < 1.0)) throw DomainError("phi: |omega| must be < 1");
    return sum3(u_seq(p.a, p.c, sigma), u_seq(p.b, p.d, omega), w_seq(1.0, 1.0, 0, rho),
                g_seq(p.e, 1.0, 1.0, 0, 0), std::max(std::fabs(sigma), std::fabs(omega)), cfg);
}

SeriesValue phi_continued(const PhiParams& p, double sigma, double omega, double rho,
                          const EvalConfig& cfg) {
    check_lower(p.e, "e");
    check_sigma(sigma);
    if (!(omega < 1.0)) throw DomainError("phi_continued: omega must be < 1");
    const double e = p.e, b = p.b, d = p.d;
    bool all_ok = true;
    auto g = [=, &all_ok, t = 1.0](long s) mutable {
        if (s > 0) t /= (e + s - 1);
        SeriesValue f = gauss_f({b, d, e + s}, omega, cfg);
        all_ok = all_ok && f.converged;
        return t * f.value;
    };
    SeriesValue r = sum2(u_seq(p.a, p.c, sigma), w_seq(1.0, 1.0, 0, rho), g, std::fabs(sigma), cfg);
    r.converged = r.converged && all_ok;
    return r;
}

SeriesValue psi_pq(const PsiPQParams& p, double sigma, double theta, double rho,
                   const EvalConfig& cfg) {
    check_pq(p.p, p.q);
    check_lower(p.e, "e");
    if (p.p == 1) check_lower(p.c_prime, "c'");
    if (p.q == 1) check_lower(p.d_prime, "d'");
    check_sigma(sigma);
    if (!(theta < 1.0)) throw DomainError("psi_pq: theta must be < 1");
    const double b = p.b, d = p.d, e = p.e;
    bool all_ok = true;
    auto base = g_seq(e, p.b_prime, p.d_prime, p.q, 0);
    // one inner Gauss function per shell index s = m+k
    auto g = [=, &all_ok](long s) mutable {
        double gs = base(s);
        SeriesValue f = gauss_f({b, e - d + s, e + s}, theta, cfg);
        all_ok = all_ok && f.converged;
        return gs * f.value;
    };
    SeriesValue r = sum2(u_seq(p.a, p.c, sigma), w_seq(p.a_prime, p.c_prime, p.p, rho), g,
                         std::fabs(sigma), cfg);
    r.converged = r.converged && all_ok;
    return r;
}

}  // namespace dhyp
