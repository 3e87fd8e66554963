#include "dhyp/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dhyp/error.hpp"

namespace dhyp {
namespace {

constexpr double kSigmaLimit = 0.95;

XiPQParams xi_params(const CharParams& cp) {
    return {cp.alpha, 1.0 - cp.alpha, cp.beta, 1.0, cp.beta, 1.0 + cp.beta, 1.0, 1, 0};
}

void check_xi(const CharPoint& c0, double xi, bool closed) {
    if (!(c0.eta > c0.xi)) throw DomainError("kernel: need eta0 > xi0");
    if (!(xi > 0.0)) throw DomainError("kernel: xi must be > 0");
    bool inside = closed ? (xi >= c0.xi && xi <= c0.eta) : (xi > c0.xi && xi < c0.eta);
    if (!inside) throw DomainError("kernel: xi outside the integration interval");
}

struct Parts {
    double xi_value, s_factor;
};

Parts kernel_parts(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg,
                   SFactorForm form) {
    const double w = (c0.eta - xi) * (xi - c0.xi);
    const double wp = c0.eta + c0.xi - 2.0 * xi;
    const double sum0 = c0.eta + c0.xi;
    KernelArgs ka{w / (2.0 * xi * sum0), -cp.lambda2 * w};
    const double dsigma = (wp * xi - w) / (2.0 * xi * xi * sum0);
    XiPQParams p = xi_params(cp);
    double X = require_converged(xi_pq(p, ka.sigma0, ka.rho0, cfg), "Xi").value;
    double Xs = require_converged(xi10_dsigma(p, ka.sigma0, ka.rho0, cfg), "dXi/dsigma").value;
    double rXr = require_converged(xi10_rho_drho(p, ka.sigma0, ka.rho0, cfg), "rho dXi/drho").value;
    double third = Xs * dsigma * (form == SFactorForm::corrected ? wp : 1.0);
    double S = 2.0 * (1.0 + 2.0 * cp.beta) * X - cp.alpha / xi * wp * X - third + 4.0 * rXr;
    return {X, S};
}

double h3_core(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg) {
    KernelArgs ka = kernel_args(c0, xi, cp);
    double X2 = require_converged(xi2({cp.alpha, 1.0 - cp.alpha, 1.0 - cp.beta}, ka.sigma0, ka.rho0, cfg), "Xi2")
                    .value;
    return -kernel_constants(cp).gamma2 * std::pow(xi, cp.alpha) * X2;
}

}  // namespace

void CauchyData::validate() const {
    if (!tau1 || !tau1_prime || !nu1) throw ConfigError("CauchyData: tau1, tau1_prime and nu1 are required");
    const double h = 1e-6;
    for (double x : {0.25, 0.5, 0.75}) {
        double fd = (tau1(x + h) - tau1(x - h)) / (2 * h);
        double d = tau1_prime(x);
        if (std::fabs(fd - d) > 1e-5 * std::max(1.0, std::fabs(d)))
            throw ConfigError("CauchyData: tau1_prime inconsistent with tau1 at x = " + std::to_string(x));
    }
}

KernelConstants kernel_constants(const CharParams& cp) {
    const double a = cp.alpha, b = cp.beta;
    double g1 = gamma_fn(1.0 + 2.0 * b) / (std::pow(2.0, 1.0 - a) * std::pow(gamma_fn(1.0 + b), 2));
    double g2 = std::pow(2.0 * (1.0 - 2.0 * b), 2.0 * b) * std::pow(2.0, a - 1.0) * gamma_fn(1.0 - 2.0 * b) /
                std::pow(gamma_fn(1.0 - b), 2);
    return {g1, g2};
}

KernelArgs kernel_args(const CharPoint& c0, double xi, const CharParams& cp) {
    check_xi(c0, xi, true);
    double w = (c0.eta - xi) * (xi - c0.xi);
    return {w / (2.0 * xi * (c0.eta + c0.xi)), -cp.lambda2 * w};
}

double max_sigma0(const CharPoint& c0) {
    if (!(c0.xi > 0.0 && c0.eta > c0.xi)) throw DomainError("max_sigma0: need 0 < xi0 < eta0");
    double d = std::sqrt(c0.eta) - std::sqrt(c0.xi);
    return d * d / (2.0 * (c0.eta + c0.xi));
}

SeriesValue xi_shorthand(const CharParams& cp, const KernelArgs& ka, const EvalConfig& cfg) {
    if (!(ka.sigma0 < 1.0)) throw DomainError("xi_shorthand: need sigma0 < 1");
    return xi_pq(xi_params(cp), ka.sigma0, ka.rho0, cfg);
}

double s_factor(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg, SFactorForm form) {
    check_xi(c0, xi, true);
    return kernel_parts(c0, xi, cp, cfg, form).s_factor;
}

double kernel_h1_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg,
                        SFactorForm form) {
    check_xi(c0, xi, true);
    return kernel_constants(cp).gamma1 * std::pow(xi, cp.alpha) * kernel_parts(c0, xi, cp, cfg, form).s_factor;
}

double kernel_h2_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg) {
    check_xi(c0, xi, true);
    double wp = c0.eta + c0.xi - 2.0 * xi;
    return -kernel_constants(cp).gamma1 * wp * std::pow(xi, cp.alpha) *
           kernel_parts(c0, xi, cp, cfg, SFactorForm::corrected).xi_value;
}

double kernel_h3_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg) {
    check_xi(c0, xi, true);
    return h3_core(c0, xi, cp, cfg);
}

double kernel_h1(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg, SFactorForm form) {
    check_xi(c0, xi, false);
    double w = (c0.eta - xi) * (xi - c0.xi);
    return std::pow(w, cp.beta) * kernel_h1_smooth(c0, xi, cp, cfg, form);
}

double kernel_h2(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg) {
    check_xi(c0, xi, false);
    double w = (c0.eta - xi) * (xi - c0.xi);
    return std::pow(w, cp.beta) * kernel_h2_smooth(c0, xi, cp, cfg);
}

double kernel_h3(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg) {
    check_xi(c0, xi, true);
    double w = (c0.eta - xi) * (xi - c0.xi);
    return std::pow(w, -cp.beta) * h3_core(c0, xi, cp, cfg);
}

double data_point(double xi, double n) {
    if (xi < 0) throw DomainError("data_point: xi must be >= 0");
    return std::pow((2.0 - n) * xi / 2.0, 2.0 / (2.0 - n));
}

SolveResult solve_u_detail(const CharPoint& c0, const CauchyData& data, const ProblemParams& pp,
                           const SolveOptions& opt) {
    const CharParams cp = char_params(pp);
    if (!(c0.xi > 0.0)) throw DomainError("solve_u: need xi0 > 0");
    if (!(c0.eta > c0.xi)) throw DomainError("solve_u: need eta0 > xi0");
    if (!(max_sigma0(c0) < kSigmaLimit)) throw DomainError("solve_u: sigma0 reaches the restriction bound");
    if (!data.tau1 || !data.tau1_prime || !data.nu1) throw ConfigError("solve_u: incomplete CauchyData");

    const KernelConstants kc = kernel_constants(cp);
    const double n = pp.n;
    const double jac_exp = n / (2.0 - n);
    auto f_tau = [&](double xi) {
        Parts pt = kernel_parts(c0, xi, cp, opt.series, opt.s_form);
        double xa = std::pow(xi, cp.alpha);
        double X = data_point(xi, n);
        double tau = data.tau1(X);
        double dtau = data.tau1_prime(X) * std::pow((2.0 - n) * xi / 2.0, jac_exp);
        double wp = c0.eta + c0.xi - 2.0 * xi;
        return kc.gamma1 * xa * (pt.s_factor * tau - wp * pt.xi_value * dtau);
    };
    auto f_nu = [&](double xi) { return h3_core(c0, xi, cp, opt.series) * data.nu1(data_point(xi, n)); };

    QuadResult i1 = weighted_integral(f_tau, c0.xi, c0.eta, cp.beta, opt.quad);
    QuadResult i3 = weighted_integral(f_nu, c0.xi, c0.eta, -cp.beta, opt.quad);
    const double pre = std::pow(c0.eta + c0.xi, -cp.alpha);
    const double pre1 = pre * std::pow(c0.eta - c0.xi, -2.0 * cp.beta - 1.0);
    SolveResult r;
    r.value = pre1 * i1.value + pre * i3.value;
    r.error_estimate = std::fabs(pre1) * i1.error_estimate + std::fabs(pre) * i3.error_estimate;
    r.converged = i1.converged && i3.converged;
    return r;
}

double solve_u(const CharPoint& c0, const CauchyData& data, const ProblemParams& pp, const SolveOptions& opt) {
    SolveResult r = solve_u_detail(c0, data, pp, opt);
    if (!r.converged)
        throw QuadratureError("solve_u: quadrature did not reach target_tol (estimate " +
                              std::to_string(r.error_estimate) + ")");
    return r.value;
}

double solve_V(const PhysicalPoint& p, const CauchyData& data, const ProblemParams& pp, const SolveOptions& opt) {
    if (!(p.y < 0.0)) throw DomainError("solve_V: need y < 0");
    return solve_u(to_characteristic(p, pp), data, pp, opt);
}

void GridSpec::validate() const {
    if (nx < 1 || ny < 1) throw ConfigError("GridSpec: nx and ny must be >= 1");
    if (!(x_lo > 0.0 && x_hi >= x_lo)) throw ConfigError("GridSpec: need 0 < x_lo <= x_hi");
    if (!(y_lo <= y_hi && y_hi < 0.0)) throw ConfigError("GridSpec: need y_lo <= y_hi < 0");
    if ((nx > 1 && x_hi == x_lo) || (ny > 1 && y_hi == y_lo)) throw ConfigError("GridSpec: empty range");
}

double GridSpec::x(int i) const { return nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1); }
double GridSpec::y(int j) const { return ny == 1 ? y_lo : y_lo + (y_hi - y_lo) * j / (ny - 1); }

std::size_t SolutionField::failures() const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](const Sample& s) { return !s.converged; }));
}

SolutionField solve_grid(const GridSpec& gs, const CauchyData& data, const ProblemParams& pp,
                         const SolveOptions& opt, unsigned threads) {
    gs.validate();
    pp.validate();
    opt.quad.validate();
    opt.series.validate();
    SolutionField field{gs, pp, opt, {}};
    const std::size_t total = static_cast<std::size_t>(gs.nx) * gs.ny;
    field.samples.resize(total);
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t k = begin; k < total; k += step) {
            Sample& s = field.samples[k];
            s.x = gs.x(static_cast<int>(k % gs.nx));
            s.y = gs.y(static_cast<int>(k / gs.nx));
            try {
                SolveResult r = solve_u_detail(to_characteristic({s.x, s.y}, pp), data, pp, opt);
                s.V = r.value;
                s.converged = r.converged;
                if (!r.converged) s.error = "quadrature did not reach target_tol";
            } catch (const Error& e) {
                s.V = std::nan("");
                s.converged = false;
                s.error = e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }
    return field;
}

}  // namespace dhyp
