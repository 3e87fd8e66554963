#pragma once

#include <cstdint>

namespace dhyp {

enum class ShellStrategy { diagonal, nested };

struct EvalConfig {
    double rel_tol = 1e-12;
    int max_terms = 500;  // per summation index
    ShellStrategy shell_strategy = ShellStrategy::diagonal;

    void validate() const;
    bool operator==(const EvalConfig&) const = default;
};

// Sum with truncation diagnostics. Tolerances are relative when |value| >= 1,
// absolute otherwise.
struct SeriesValue {
    double value = 0.0;
    double tail_estimate = 0.0;
    long terms_used = 0;
    bool converged = false;
};

struct GaussParams {
    double a, b, c;
};

struct Xi2Params {
    double a, b, c;
};

struct PhiParams {
    double a, b, c, d, e;
};

struct XiPQParams {
    double a, b, a_prime, b_prime, c, c_prime, d_prime;
    int p = 0, q = 0;
};

struct PsiPQParams {
    double a, b, c, d, e, a_prime, b_prime, c_prime, d_prime;
    int p = 0, q = 0;
};

struct SeriesArgs {
    double sigma = 0.0, omega = 0.0, rho = 0.0, theta = 0.0;
};

bool is_nonpositive_integer(double x, double tol = 1e-14);

double pochhammer(double alpha, long l);
double gamma_fn(double x);
// 1/Gamma(x); zero at the poles.
double rgamma(double x);

SeriesValue gauss_f(const GaussParams& p, double z, const EvalConfig& cfg = {});
SeriesValue xi2(const Xi2Params& p, double sigma, double rho, const EvalConfig& cfg = {});
SeriesValue phi(const PhiParams& p, double sigma, double omega, double rho,
                const EvalConfig& cfg = {});
SeriesValue xi_pq(const XiPQParams& p, double sigma, double rho, const EvalConfig& cfg = {});
SeriesValue psi_pq(const PsiPQParams& p, double sigma, double theta, double rho,
                   const EvalConfig& cfg = {});

// Term-wise d/dsigma and rho*d/drho of the Xi_pq series.
SeriesValue xi10_dsigma(const XiPQParams& p, double sigma, double rho, const EvalConfig& cfg = {});
SeriesValue xi10_rho_drho(const XiPQParams& p, double sigma, double rho,
                          const EvalConfig& cfg = {});

// Phi with omega outside (-1,1): sum over (m,k) with the omega-direction
// summed in closed form as F(b, d; e+m+k; omega). Valid for omega < 1.
SeriesValue phi_continued(const PhiParams& p, double sigma, double omega, double rho,
                          const EvalConfig& cfg = {});

// Throws ConvergenceError when v did not converge.
const SeriesValue& require_converged(const SeriesValue& v, const char* what);

}  // namespace dhyp
