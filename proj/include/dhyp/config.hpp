#pragma once

#include <string>
#include <vector>

#include "dhyp/cauchy.hpp"

namespace dhyp {

struct VerifyConfig {
    std::vector<int> residual_levels{33, 65, 129};  // points per axis
    double residual_min_order = 2.0;
    double residual_rel_tol = 1e-15;  // series tolerance for the residual study
    double oracle_dx = 0.02;        // coarsest oracle step; two halvings follow
    double oracle_safety = 0.5;
    double oracle_tol = 1e-3;
    std::vector<double> dalembert_m{0.04, 0.02, 0.01};
    double dalembert_min_rate = 0.95;
    bool operator==(const VerifyConfig&) const = default;
};

// Plain-text configuration: one "key = value" per line, '#' starts a comment.
// Keys: problem.{m,n,mu}; data.{tau1,nu1}; grid.{x_lo,x_hi,y_lo,y_hi,nx,ny};
// quadrature.{jacobi_order,subdivisions,target_tol,adaptive,max_levels};
// series.{rel_tol,max_terms}; output.{dir,name}; run.threads;
// verify.{residual_levels,residual_min_order,residual_rel_tol,oracle_dx,oracle_safety,oracle_tol,
// dalembert_m,dalembert_min_rate}.
struct RunConfig {
    ProblemParams problem{0.5, 0.5, -2.0};
    std::string tau1 = "quadratic", nu1 = "constant:1";
    GridSpec grid;
    QuadratureSpec quadrature;
    EvalConfig series;
    std::string out_dir;  // empty: decided by the caller
    std::string name = "solution";
    unsigned threads = 1;
    VerifyConfig verify;

    void validate() const;  // throws ConfigError naming the field
    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace dhyp
