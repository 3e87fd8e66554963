#include "dhyp/presets.hpp"

#include <cmath>
#include <sstream>

#include "dhyp/error.hpp"

namespace dhyp {
namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<double> derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * i);
    return d;
}

std::vector<double> integrate(const std::vector<double>& c) {
    std::vector<double> d{0.0};
    for (std::size_t i = 0; i < c.size(); ++i) d.push_back(c[i] / (i + 1.0));
    return d;
}

double parse_number(const std::string& s, const std::string& spec) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("data function '" + spec + "': bad number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw ConfigError("data function '" + spec + "': bad number '" + s + "'");
    return v;
}

}  // namespace

DataFunction polynomial(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw ConfigError("polynomial: no coefficients");
    auto c0 = coeffs, c1 = derive(coeffs), c2 = derive(derive(coeffs)), ci = integrate(coeffs);
    DataFunction d;
    d.f = [c0](double x) { return horner(c0, x); };
    d.df = [c1](double x) { return horner(c1, x); };
    d.d2f = [c2](double x) { return horner(c2, x); };
    d.antiderivative = [ci](double x) { return horner(ci, x); };
    return d;
}

DataFunction parse_data_function(const std::string& spec) {
    DataFunction d;
    std::string head = spec, tail;
    if (auto pos = spec.find(':'); pos != std::string::npos) {
        head = spec.substr(0, pos);
        tail = spec.substr(pos + 1);
    }
    if (head == "zero" && tail.empty()) {
        d = polynomial({0.0});
    } else if (head == "constant") {
        d = polynomial({tail.empty() ? 1.0 : parse_number(tail, spec)});
    } else if (head == "linear" && tail.empty()) {
        d = polynomial({0.0, 1.0});
    } else if (head == "quadratic" && tail.empty()) {
        d = polynomial({0.0, 0.0, 1.0});
    } else if (head == "sine" && tail.empty()) {
        d.f = [](double x) { return std::sin(x); };
        d.df = [](double x) { return std::cos(x); };
        d.d2f = [](double x) { return -std::sin(x); };
        d.antiderivative = [](double x) { return -std::cos(x); };
    } else if (head == "poly" && !tail.empty()) {
        std::vector<double> c;
        std::stringstream ss(tail);
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(parse_number(item, spec));
        d = polynomial(c);
    } else {
        throw ConfigError("unknown data function '" + spec +
                          "' (expected constant[:c], zero, linear, quadratic, sine or poly:c0,c1,...)");
    }
    d.spec = spec;
    return d;
}

CauchyData make_cauchy_data(const DataFunction& tau1, const DataFunction& nu1) {
    return {tau1.f, tau1.df, nu1.f, tau1.d2f, nu1.antiderivative};
}

CauchyData make_cauchy_data(const std::string& tau1_spec, const std::string& nu1_spec) {
    return make_cauchy_data(parse_data_function(tau1_spec), parse_data_function(nu1_spec));
}

}  // namespace dhyp
