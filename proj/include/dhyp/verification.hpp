#pragma once

#include <vector>

#include "dhyp/cauchy.hpp"

namespace dhyp {

struct ResidualReport {
    GridSpec grid;
    double residual_l2 = 0.0;   // root mean square over stencil-interior points
    double residual_max = 0.0;
    int stencil_order = 4;
    std::vector<double> refinement_rates;  // filled by residual_refinement
};

// Fourth-order central-difference residual of x^n V_xx - (-y)^m V_yy + mu V.
// Needs a uniform grid with at least 5 points per axis and no failed samples.
ResidualReport pde_residual(const SolutionField& field, const ProblemParams& pp);

// One report per field, coarse to fine; the last report carries the observed
// orders between consecutive levels (computed from residual_max).
std::vector<ResidualReport> residual_refinement(const std::vector<SolutionField>& fields, const ProblemParams& pp);

struct OracleConfig {
    double dx = 1.0 / 400.0;
    double safety = 0.5;     // dY = safety * dx / max(x)^(n/2)
    double boot_depth = 0.0; // s0; 0 means dx^(2/(2-m))
    double x_max = 0.0;      // right edge of the marching grid; 0 means automatic
    void validate() const;
};

// Value of the two-term Frobenius expansion at depth s, used to start the march.
double boot_strip_value(const CauchyData& data, const ProblemParams& pp, double x, double s);

// Explicit march in s = -y from a Frobenius boot strip; returns V at the targets.
// Throws TargetOutsideCone when a target is not determined by the computed data.
std::vector<double> oracle_march(const CauchyData& data, const ProblemParams& pp, const OracleConfig& oc,
                                 const std::vector<PhysicalPoint>& targets);

struct OracleComparison {
    std::vector<double> formula, oracle, oracle_self_error;
    double max_deviation = 0.0;
    double max_self_error = 0.0;
    // Observed order from the max-norm differences of three resolutions
    double self_order = 0.0;
};

// Oracle at dx, dx/2, dx/4 against solve_V. The self-error estimate of the
// finest oracle is |V(dx/2) - V(dx/4)| / 3.
OracleComparison oracle_compare(const CauchyData& data, const ProblemParams& pp, const OracleConfig& coarse,
                                const std::vector<PhysicalPoint>& targets, const SolveOptions& opt = {});

// d'Alembert solution of V_xx - V_yy = 0 with V(x,0) = tau1, V_y(x,0) = nu1.
double dalembert_value(const CauchyData& data, double x, double y);

// max |solve_V - d'Alembert| over points for (m_small, n = 0, mu = 0).
double dalembert_compare(const CauchyData& data, double m_small, const std::vector<PhysicalPoint>& points,
                         const SolveOptions& opt = {});

}  // namespace dhyp
