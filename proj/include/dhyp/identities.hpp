#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dhyp/rng.hpp"
#include "dhyp/special_fn.hpp"

namespace dhyp {

enum class RelationId { R10, R11, R12, R13, R14, R15, R16, D17, D18a, D18b, D19, L20, C21, L22, A23 };

const std::vector<RelationId>& all_relations();
std::string to_string(RelationId id);
std::optional<RelationId> parse_relation(const std::string& s);

// Superset of the parameters any relation uses; each relation reads its own subset.
struct RelationParams {
    double a = 0, b = 0, c = 0, d = 0, e = 1;
    double a_prime = 1, b_prime = 1, c_prime = 1, d_prime = 1;
    int p = 0, q = 0;
};

struct RelationReport {
    RelationId id{};
    double lhs = 0, rhs = 0, abs_residual = 0, rel_residual = 0;
    SeriesArgs point;
    RelationParams params;
};

// Threshold on rel_residual for the relation's class.
double relation_threshold(RelationId id);

// Exactly as printed for R10..R16, C21, A23; the derivative and limit ids
// dispatch to their dedicated checks with default step and sequence.
RelationReport check_relation(RelationId id, const RelationParams& params, const SeriesArgs& args,
                              const EvalConfig& cfg = {});

RelationReport check_diff_formulas(RelationId which, const RelationParams& params, const SeriesArgs& args,
                                   double h = 1e-5, const EvalConfig& cfg = {});

// Default theta sequence for the theta -> 1 limits: 1 - 1e-4 * 2^-j, j = 0..3.
std::vector<double> default_limit_sequence();

// Extrapolate values f(eps_i), eps_i -> 0, whose expansion has powers
// eps^g, eps, eps^(1+g), eps^2, ... (eps^k log eps when g is an integer k).
double extrapolate_limit(const std::vector<double>& eps, const std::vector<double>& values, double g);

RelationReport check_limit_20(const RelationParams& params, double sigma, double rho,
                              const std::vector<double>& theta_seq, const EvalConfig& cfg = {});

enum class LimitForm { corrected, as_printed };

// The printed right side carries Xi_2 with lower parameter e; combining the
// continuation with the theta -> 1 limit gives e - b. Default is the corrected form.
RelationReport check_limit_22(const RelationParams& params, double sigma, double rho,
                              const std::vector<double>& omega_seq, const EvalConfig& cfg = {},
                              LimitForm form = LimitForm::corrected);

RelationReport check_continuation_21(const RelationParams& params, double sigma, double omega, double rho,
                                     const EvalConfig& cfg = {});

RelationReport check_auto_23(const RelationParams& params, const SeriesArgs& args, const EvalConfig& cfg = {});

// Lower parameters (including shifted variants) that must avoid 0, -1, -2, ...
std::vector<double> relation_lower_params(RelationId id, const RelationParams& params);

// Random admissible draw; draw index selects p (and q) so both values are swept.
RelationParams draw_relation_params(RelationId id, Rng& rng, int draw_index);
SeriesArgs draw_relation_args(RelationId id, Rng& rng);

struct SuiteRecord {
    RelationReport report;
    bool passed = false;
    std::string error;  // non-empty when an evaluation failed
};

struct SuiteSummary {
    RelationId id{};
    int draws = 0, failures = 0, errors = 0;
    double max_rel = 0, mean_rel = 0, threshold = 0;
};

std::vector<SuiteRecord> run_identity_suite(const std::vector<RelationId>& ids, int draws, std::uint64_t seed,
                                            const EvalConfig& cfg = {});
std::vector<SuiteSummary> summarize(const std::vector<SuiteRecord>& records);

}  // namespace dhyp
