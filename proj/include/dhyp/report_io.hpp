#pragma once

#include <string>
#include <vector>

#include "dhyp/cauchy.hpp"
#include "dhyp/config.hpp"
#include "dhyp/identities.hpp"
#include "dhyp/verification.hpp"

namespace dhyp {

// Doubles are written with %.17g so files round-trip and compare byte-for-byte.
std::string field_csv(const SolutionField& field);  // header x,y,V,converged
std::string field_metadata_json(const SolutionField& field, const RunConfig& cfg);
std::string relation_csv(const std::vector<SuiteRecord>& records);
std::string summary_csv(const std::vector<SuiteSummary>& summaries);
std::string residual_csv(const std::vector<ResidualReport>& reports);
std::string oracle_csv(const std::vector<PhysicalPoint>& targets, const OracleComparison& cmp);
std::string dalembert_csv(const std::vector<double>& m, const std::vector<double>& deviation);

// Creates parent directories; throws Error on failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace dhyp
