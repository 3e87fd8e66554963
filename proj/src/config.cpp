#include "dhyp/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "dhyp/error.hpp"
#include "dhyp/presets.hpp"

namespace dhyp {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_floating_point_v<T>)
            out += fmt(v[i]);
        else
            out += std::to_string(v[i]);
    }
    return out;
}

struct Reader {
    std::string where;

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(where + ": " + key + ": " + msg);
    }
    double real(const std::string& key, const std::string& v) const {
        std::size_t used = 0;
        double d = 0;
        try {
            d = std::stod(v, &used);
        } catch (const std::exception&) {
            fail(key, "expected a number, got '" + v + "'");
        }
        if (used != v.size() || !std::isfinite(d)) fail(key, "expected a number, got '" + v + "'");
        return d;
    }
    long integer(const std::string& key, const std::string& v) const {
        std::size_t used = 0;
        long i = 0;
        try {
            i = std::stol(v, &used);
        } catch (const std::exception&) {
            fail(key, "expected an integer, got '" + v + "'");
        }
        if (used != v.size()) fail(key, "expected an integer, got '" + v + "'");
        return i;
    }
    bool boolean(const std::string& key, const std::string& v) const {
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        fail(key, "expected true or false, got '" + v + "'");
    }
    template <class T, class F>
    std::vector<T> list(const std::string& key, const std::string& v, F one) const {
        std::vector<T> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(one(key, trim(item)));
        if (out.empty()) fail(key, "empty list");
        return out;
    }
};

}  // namespace

void RunConfig::validate() const {
    auto wrap = [](const char* field, auto&& check) {
        try {
            check();
        } catch (const Error& e) {
            throw ConfigError(std::string(field) + ": " + e.what());
        }
    };
    wrap("problem", [&] { problem.validate(); });
    wrap("data.tau1", [&] { parse_data_function(tau1); });
    wrap("data.nu1", [&] { parse_data_function(nu1); });
    wrap("grid", [&] { grid.validate(); });
    wrap("quadrature", [&] { quadrature.validate(); });
    wrap("series", [&] { series.validate(); });
    if (name.empty() || name.find('/') != std::string::npos) throw ConfigError("output.name: must be a plain file stem");
    if (threads > 256) throw ConfigError("run.threads: must be <= 256");
    for (int l : verify.residual_levels)
        if (l < 5) throw ConfigError("verify.residual_levels: each level needs >= 5 points");
    if (!(verify.residual_rel_tol > 0)) throw ConfigError("verify.residual_rel_tol: must be > 0");
    if (!(verify.oracle_dx > 0 && verify.oracle_dx <= 0.1)) throw ConfigError("verify.oracle_dx: must be in (0, 0.1]");
    if (!(verify.oracle_safety > 0 && verify.oracle_safety < 1)) throw ConfigError("verify.oracle_safety: must be in (0, 1)");
    if (!(verify.oracle_tol > 0)) throw ConfigError("verify.oracle_tol: must be > 0");
    for (double m : verify.dalembert_m)
        if (!(m > 0 && m <= 0.05)) throw ConfigError("verify.dalembert_m: values must be in (0, 0.05]");
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        Reader r{source + ":" + std::to_string(lineno)};
        if (eq == std::string::npos) r.fail(line, "expected key = value");
        std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (seen.count(key)) r.fail(key, "duplicate key (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = lineno;
        auto real = [&](const std::string& k, const std::string& s) { return r.real(k, s); };
        auto integer = [&](const std::string& k, const std::string& s) { return static_cast<int>(r.integer(k, s)); };
        if (key == "problem.m") c.problem.m = r.real(key, v);
        else if (key == "problem.n") c.problem.n = r.real(key, v);
        else if (key == "problem.mu") c.problem.mu = r.real(key, v);
        else if (key == "data.tau1") c.tau1 = v;
        else if (key == "data.nu1") c.nu1 = v;
        else if (key == "grid.x_lo") c.grid.x_lo = r.real(key, v);
        else if (key == "grid.x_hi") c.grid.x_hi = r.real(key, v);
        else if (key == "grid.y_lo") c.grid.y_lo = r.real(key, v);
        else if (key == "grid.y_hi") c.grid.y_hi = r.real(key, v);
        else if (key == "grid.nx") c.grid.nx = static_cast<int>(r.integer(key, v));
        else if (key == "grid.ny") c.grid.ny = static_cast<int>(r.integer(key, v));
        else if (key == "quadrature.jacobi_order") c.quadrature.jacobi_order = static_cast<int>(r.integer(key, v));
        else if (key == "quadrature.subdivisions") c.quadrature.subdivisions = static_cast<int>(r.integer(key, v));
        else if (key == "quadrature.target_tol") c.quadrature.target_tol = r.real(key, v);
        else if (key == "quadrature.adaptive") c.quadrature.adaptive = r.boolean(key, v);
        else if (key == "quadrature.max_levels") c.quadrature.max_levels = static_cast<int>(r.integer(key, v));
        else if (key == "series.rel_tol") c.series.rel_tol = r.real(key, v);
        else if (key == "series.max_terms") c.series.max_terms = static_cast<int>(r.integer(key, v));
        else if (key == "output.dir") c.out_dir = v;
        else if (key == "output.name") c.name = v;
        else if (key == "run.threads") {
            long t = r.integer(key, v);
            if (t < 0) r.fail(key, "must be >= 0");
            c.threads = static_cast<unsigned>(t);
        }
        else if (key == "verify.residual_levels") c.verify.residual_levels = r.list<int>(key, v, integer);
        else if (key == "verify.residual_min_order") c.verify.residual_min_order = r.real(key, v);
        else if (key == "verify.residual_rel_tol") c.verify.residual_rel_tol = r.real(key, v);
        else if (key == "verify.oracle_dx") c.verify.oracle_dx = r.real(key, v);
        else if (key == "verify.oracle_safety") c.verify.oracle_safety = r.real(key, v);
        else if (key == "verify.oracle_tol") c.verify.oracle_tol = r.real(key, v);
        else if (key == "verify.dalembert_m") c.verify.dalembert_m = r.list<double>(key, v, real);
        else if (key == "verify.dalembert_min_rate") c.verify.dalembert_min_rate = r.real(key, v);
        else r.fail(key, "unknown key");
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o << "problem.m = " << fmt(c.problem.m) << "\n"
      << "problem.n = " << fmt(c.problem.n) << "\n"
      << "problem.mu = " << fmt(c.problem.mu) << "\n"
      << "data.tau1 = " << c.tau1 << "\n"
      << "data.nu1 = " << c.nu1 << "\n"
      << "grid.x_lo = " << fmt(c.grid.x_lo) << "\n"
      << "grid.x_hi = " << fmt(c.grid.x_hi) << "\n"
      << "grid.y_lo = " << fmt(c.grid.y_lo) << "\n"
      << "grid.y_hi = " << fmt(c.grid.y_hi) << "\n"
      << "grid.nx = " << c.grid.nx << "\n"
      << "grid.ny = " << c.grid.ny << "\n"
      << "quadrature.jacobi_order = " << c.quadrature.jacobi_order << "\n"
      << "quadrature.subdivisions = " << c.quadrature.subdivisions << "\n"
      << "quadrature.target_tol = " << fmt(c.quadrature.target_tol) << "\n"
      << "quadrature.adaptive = " << (c.quadrature.adaptive ? "true" : "false") << "\n"
      << "quadrature.max_levels = " << c.quadrature.max_levels << "\n"
      << "series.rel_tol = " << fmt(c.series.rel_tol) << "\n"
      << "series.max_terms = " << c.series.max_terms << "\n";
    if (!c.out_dir.empty()) o << "output.dir = " << c.out_dir << "\n";
    o << "output.name = " << c.name << "\n"
      << "run.threads = " << c.threads << "\n"
      << "verify.residual_levels = " << join(c.verify.residual_levels) << "\n"
      << "verify.residual_min_order = " << fmt(c.verify.residual_min_order) << "\n"
      << "verify.residual_rel_tol = " << fmt(c.verify.residual_rel_tol) << "\n"
      << "verify.oracle_dx = " << fmt(c.verify.oracle_dx) << "\n"
      << "verify.oracle_safety = " << fmt(c.verify.oracle_safety) << "\n"
      << "verify.oracle_tol = " << fmt(c.verify.oracle_tol) << "\n"
      << "verify.dalembert_m = " << join(c.verify.dalembert_m) << "\n"
      << "verify.dalembert_min_rate = " << fmt(c.verify.dalembert_min_rate) << "\n";
    return o.str();
}

}  // namespace dhyp
