#include "dhyp/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dhyp/error.hpp"

namespace dhyp {
namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Error messages may contain commas or quotes.
std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

}  // namespace

std::string field_csv(const SolutionField& field) {
    std::ostringstream o;
    o << "x,y,V,converged\n";
    for (const auto& s : field.samples)
        o << g17(s.x) << ',' << g17(s.y) << ',' << g17(s.V) << ',' << (s.converged ? 1 : 0) << '\n';
    return o.str();
}

std::string field_metadata_json(const SolutionField& field, const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["problem"] = {{"m", field.problem.m}, {"n", field.problem.n}, {"mu", field.problem.mu}};
    j["data"] = {{"tau1", cfg.tau1}, {"nu1", cfg.nu1}};
    const GridSpec& g = field.grid;
    j["grid"] = {{"x_lo", g.x_lo}, {"x_hi", g.x_hi}, {"y_lo", g.y_lo}, {"y_hi", g.y_hi}, {"nx", g.nx}, {"ny", g.ny}};
    const QuadratureSpec& q = field.options.quad;
    j["quadrature"] = {{"jacobi_order", q.jacobi_order},
                       {"subdivisions", q.subdivisions},
                       {"target_tol", q.target_tol},
                       {"adaptive", q.adaptive},
                       {"max_levels", q.max_levels}};
    j["series"] = {{"rel_tol", field.options.series.rel_tol}, {"max_terms", field.options.series.max_terms}};
    j["points"] = field.samples.size();
    j["failures"] = field.failures();
    nlohmann::ordered_json errs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < field.samples.size(); ++k)
        if (!field.samples[k].error.empty())
            errs.push_back({{"index", k}, {"x", field.samples[k].x}, {"y", field.samples[k].y},
                            {"error", field.samples[k].error}});
    j["errors"] = errs;
    return j.dump(2) + "\n";
}

std::string relation_csv(const std::vector<SuiteRecord>& records) {
    std::ostringstream o;
    o << "relation,draw,passed,lhs,rhs,abs_residual,rel_residual,sigma,omega,rho,theta,"
         "a,b,c,d,e,a_prime,b_prime,c_prime,d_prime,p,q,error\n";
    std::map<RelationId, int> draw;
    for (const auto& r : records) {
        const RelationReport& rep = r.report;
        const RelationParams& p = rep.params;
        o << to_string(rep.id) << ',' << draw[rep.id]++ << ',' << (r.passed ? 1 : 0) << ',' << g17(rep.lhs) << ','
          << g17(rep.rhs) << ',' << g17(rep.abs_residual) << ',' << g17(rep.rel_residual) << ','
          << g17(rep.point.sigma) << ',' << g17(rep.point.omega) << ',' << g17(rep.point.rho) << ','
          << g17(rep.point.theta) << ',' << g17(p.a) << ',' << g17(p.b) << ',' << g17(p.c) << ',' << g17(p.d) << ','
          << g17(p.e) << ',' << g17(p.a_prime) << ',' << g17(p.b_prime) << ',' << g17(p.c_prime) << ','
          << g17(p.d_prime) << ',' << p.p << ',' << p.q << ',' << quoted(r.error) << '\n';
    }
    return o.str();
}

std::string summary_csv(const std::vector<SuiteSummary>& summaries) {
    std::ostringstream o;
    o << "relation,draws,failures,errors,max_rel,mean_rel,threshold\n";
    for (const auto& s : summaries)
        o << to_string(s.id) << ',' << s.draws << ',' << s.failures << ',' << s.errors << ',' << g17(s.max_rel) << ','
          << g17(s.mean_rel) << ',' << g17(s.threshold) << '\n';
    return o.str();
}

std::string residual_csv(const std::vector<ResidualReport>& reports) {
    std::ostringstream o;
    o << "level,nx,ny,hx,hy,residual_l2,residual_max,stencil_order,observed_order\n";
    const auto& rates = reports.empty() ? std::vector<double>{} : reports.back().refinement_rates;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const GridSpec& g = reports[k].grid;
        o << k << ',' << g.nx << ',' << g.ny << ',' << g17((g.x_hi - g.x_lo) / (g.nx - 1)) << ','
          << g17((g.y_hi - g.y_lo) / (g.ny - 1)) << ',' << g17(reports[k].residual_l2) << ','
          << g17(reports[k].residual_max) << ',' << reports[k].stencil_order << ',';
        if (k > 0 && k - 1 < rates.size()) o << g17(rates[k - 1]);
        o << '\n';
    }
    return o.str();
}

std::string oracle_csv(const std::vector<PhysicalPoint>& targets, const OracleComparison& cmp) {
    std::ostringstream o;
    o << "x,y,formula,oracle,oracle_self_error,deviation\n";
    for (std::size_t t = 0; t < targets.size(); ++t)
        o << g17(targets[t].x) << ',' << g17(targets[t].y) << ',' << g17(cmp.formula[t]) << ',' << g17(cmp.oracle[t])
          << ',' << g17(cmp.oracle_self_error[t]) << ',' << g17(std::fabs(cmp.formula[t] - cmp.oracle[t])) << '\n';
    return o.str();
}

std::string dalembert_csv(const std::vector<double>& m, const std::vector<double>& deviation) {
    std::ostringstream o;
    o << "m,max_deviation,observed_rate\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        o << g17(m[k]) << ',' << g17(deviation[k]) << ',';
        if (k > 0) o << g17(std::log(deviation[k - 1] / deviation[k]) / std::log(m[k - 1] / m[k]));
        o << '\n';
    }
    return o.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
    if (!f) throw Error("write failed for '" + path + "'");
}

}  // namespace dhyp
