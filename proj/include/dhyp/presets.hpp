#pragma once

#include <string>
#include <vector>

#include "dhyp/cauchy.hpp"

namespace dhyp {

// A data function with its first two derivatives and an antiderivative.
struct DataFunction {
    std::string spec;
    RealFn f, df, d2f, antiderivative;
};

// constant[:c] | zero | linear | quadratic | sine | poly:c0,c1,...
// (poly coefficients in increasing degree). Throws ConfigError.
DataFunction parse_data_function(const std::string& spec);

DataFunction polynomial(const std::vector<double>& coeffs);

CauchyData make_cauchy_data(const DataFunction& tau1, const DataFunction& nu1);
CauchyData make_cauchy_data(const std::string& tau1_spec, const std::string& nu1_spec);

}  // namespace dhyp
