#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dhyp/quadrature.hpp"
#include "dhyp/riemann.hpp"
#include "dhyp/special_fn.hpp"

namespace dhyp {

using RealFn = std::function<double(double)>;

// Initial data V(x,0) = tau1, V_y(x,0) = nu1. Callables must be thread-safe.
struct CauchyData {
    RealFn tau1, tau1_prime, nu1;
    RealFn tau1_second;         // optional
    RealFn nu1_antiderivative;  // optional

    // Presence checks plus a finite-difference spot check of tau1_prime.
    void validate() const;
};

struct KernelArgs {
    double sigma0 = 0, rho0 = 0;
};

struct KernelConstants {
    double gamma1 = 0, gamma2 = 0;
};

enum class SFactorForm { corrected, as_printed };

KernelConstants kernel_constants(const CharParams& cp);
KernelArgs kernel_args(const CharPoint& c0, double xi, const CharParams& cp);

// Largest sigma0 over [xi0, eta0].
double max_sigma0(const CharPoint& c0);

SeriesValue xi_shorthand(const CharParams& cp, const KernelArgs& ka, const EvalConfig& cfg = {});
double s_factor(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {},
                SFactorForm form = SFactorForm::corrected);

double kernel_h1(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {},
                 SFactorForm form = SFactorForm::corrected);
double kernel_h2(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {});
double kernel_h3(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {});

// Kernels with the endpoint weight divided out: (w)^-beta H1, (w)^-beta H2,
// (w)^beta H3 with w = (eta0-xi)(xi-xi0). Defined on the closed interval.
double kernel_h1_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {},
                        SFactorForm form = SFactorForm::corrected);
double kernel_h2_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {});
double kernel_h3_smooth(const CharPoint& c0, double xi, const CharParams& cp, const EvalConfig& cfg = {});

// tau(xi) = tau1(X(xi)) with X(xi) = ((2-n) xi / 2)^(2/(2-n)); same for nu.
double data_point(double xi, double n);

struct SolveOptions {
    QuadratureSpec quad;
    EvalConfig series;
    SFactorForm s_form = SFactorForm::corrected;
};

struct SolveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

SolveResult solve_u_detail(const CharPoint& c0, const CauchyData& data, const ProblemParams& pp,
                           const SolveOptions& opt = {});
// Throws QuadratureError when the quadrature did not reach target_tol.
double solve_u(const CharPoint& c0, const CauchyData& data, const ProblemParams& pp, const SolveOptions& opt = {});
double solve_V(const PhysicalPoint& p, const CauchyData& data, const ProblemParams& pp,
               const SolveOptions& opt = {});

struct GridSpec {
    double x_lo = 0.3, x_hi = 0.6, y_lo = -0.1, y_hi = -0.02;
    int nx = 9, ny = 9;
    void validate() const;
    bool operator==(const GridSpec&) const = default;
    double x(int i) const;
    double y(int j) const;
};

struct Sample {
    double x = 0, y = 0, V = 0;
    bool converged = false;
    std::string error;
};

// Samples are stored row-major with x fastest.
struct SolutionField {
    GridSpec grid;
    ProblemParams problem;
    SolveOptions options;
    std::vector<Sample> samples;

    const Sample& at(int i, int j) const { return samples[static_cast<std::size_t>(j) * grid.nx + i]; }
    std::size_t failures() const;
};

// Per-point errors are recorded, not thrown. threads = 0 uses the hardware count.
SolutionField solve_grid(const GridSpec& gs, const CauchyData& data, const ProblemParams& pp,
                         const SolveOptions& opt = {}, unsigned threads = 1);

}  // namespace dhyp
