#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhyp/config.hpp"
#include "dhyp/error.hpp"
#include "dhyp/identities.hpp"
#include "dhyp/presets.hpp"
#include "dhyp/report_io.hpp"
#include "dhyp/special_fn.hpp"
#include "dhyp/verification.hpp"

using namespace dhyp;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config, out;
    std::uint64_t seed = 42;
    double tol = 0.0;  // 0: keep the configured tolerance
    int draws = 200;
    unsigned threads = 0;
    bool threads_set = false;
};

std::string output_dir(const Globals& g, const std::string& from_config) {
    if (!g.out.empty()) return g.out;
    if (!from_config.empty()) return from_config;
    if (const char* env = std::getenv("DHYP_OUT_DIR"); env && *env) return env;
    return "dhyp_out";
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

RunConfig require_config(const Globals& g) {
    if (g.config.empty()) throw UsageError("--config <path> is required");
    RunConfig c = load_config(g.config);
    if (g.threads_set) c.threads = g.threads;
    return c;
}

// ---- fn-eval ----

struct FnEval {
    std::string family;
    std::vector<double> params;
    double sigma = 0, omega = 0, rho = 0, theta = 0;
    int max_terms = 0;
};

int as_int(double v, const char* what) {
    if (v != std::round(v) || v < 0 || v > 16) throw UsageError(std::string(what) + " must be a small non-negative integer");
    return static_cast<int>(v);
}

int cmd_fn_eval(const FnEval& f, const Globals& g) {
    EvalConfig cfg;
    if (g.tol > 0) cfg.rel_tol = g.tol;
    if (f.max_terms > 0) cfg.max_terms = f.max_terms;
    const auto& p = f.params;
    auto arity = [&](std::size_t n, const char* names) {
        if (p.size() != n)
            throw UsageError(f.family + " takes " + std::to_string(n) + " parameters (" + names + "), got " +
                             std::to_string(p.size()));
    };
    SeriesValue v;
    if (f.family == "F") {
        arity(3, "a b c");
        v = gauss_f({p[0], p[1], p[2]}, f.sigma, cfg);
    } else if (f.family == "Xi2") {
        arity(3, "a b c");
        v = xi2({p[0], p[1], p[2]}, f.sigma, f.rho, cfg);
    } else if (f.family == "Phi") {
        arity(5, "a b c d e");
        v = phi({p[0], p[1], p[2], p[3], p[4]}, f.sigma, f.omega, f.rho, cfg);
    } else if (f.family == "XiPQ") {
        arity(9, "a b a' b' c c' d' p q");
        v = xi_pq({p[0], p[1], p[2], p[3], p[4], p[5], p[6], as_int(p[7], "p"), as_int(p[8], "q")}, f.sigma, f.rho, cfg);
    } else if (f.family == "PsiPQ") {
        arity(11, "a b c d e a' b' c' d' p q");
        v = psi_pq({p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7], p[8], as_int(p[9], "p"), as_int(p[10], "q")},
                   f.sigma, f.theta, f.rho, cfg);
    } else {
        throw UsageError("unknown family '" + f.family + "' (expected F, Xi2, Phi, XiPQ or PsiPQ)");
    }
    std::printf("value = %.17g\ntail_estimate = %.17g\nterms_used = %ld\nconverged = %s\n", v.value, v.tail_estimate,
                v.terms_used, v.converged ? "true" : "false");
    return v.converged ? kPass : kFail;
}

// ---- identities ----

int cmd_identities(const std::string& relations, bool all, const Globals& g) {
    if (g.draws < 1) throw UsageError("--draws must be >= 1");
    std::vector<RelationId> ids;
    if (all || relations.empty()) {
        if (!all) throw UsageError("give --relations <list> or --all");
        ids = all_relations();
    } else {
        std::stringstream ss(relations);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto id = parse_relation(item);
            if (!id) throw UsageError("unknown relation '" + item + "'");
            ids.push_back(*id);
        }
    }
    EvalConfig cfg;
    if (g.tol > 0) cfg.rel_tol = g.tol;
    auto records = run_identity_suite(ids, g.draws, g.seed, cfg);
    auto summary = summarize(records);
    std::string dir = output_dir(g, "");
    write_text(join_path(dir, "identities.csv"), relation_csv(records));
    write_text(join_path(dir, "identities_summary.csv"), summary_csv(summary));
    bool ok = true;
    for (const auto& s : summary) {
        bool pass = s.failures == 0 && s.errors == 0;
        ok = ok && pass;
        std::printf("%-5s draws=%d failures=%d errors=%d max_rel=%.3e threshold=%.0e %s\n", to_string(s.id).c_str(),
                    s.draws, s.failures, s.errors, s.max_rel, s.threshold, pass ? "PASS" : "FAIL");
    }
    for (const auto& r : records)
        if (!r.error.empty()) std::fprintf(stderr, "%s: %s\n", to_string(r.report.id).c_str(), r.error.c_str());
    std::printf("wrote %s\n", join_path(dir, "identities.csv").c_str());
    return ok ? kPass : kFail;
}

// ---- solve ----

SolveOptions options_of(const RunConfig& c, const Globals& g) {
    SolveOptions o;
    o.quad = c.quadrature;
    o.series = c.series;
    if (g.tol > 0) o.quad.target_tol = g.tol;
    return o;
}

int cmd_solve(const Globals& g) {
    RunConfig c = require_config(g);
    CauchyData data = make_cauchy_data(c.tau1, c.nu1);
    SolutionField f = solve_grid(c.grid, data, c.problem, options_of(c, g), c.threads);
    std::string dir = output_dir(g, c.out_dir);
    write_text(join_path(dir, c.name + ".csv"), field_csv(f));
    write_text(join_path(dir, c.name + ".json"), field_metadata_json(f, c));
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (const auto& s : f.samples)
        if (s.converged) lo = std::min(lo, s.V), hi = std::max(hi, s.V);
    std::printf("points = %zu\nfailures = %zu\n", f.samples.size(), f.failures());
    if (f.failures() < f.samples.size()) std::printf("min_V = %.17g\nmax_V = %.17g\n", lo, hi);
    for (const auto& s : f.samples)
        if (!s.error.empty()) std::fprintf(stderr, "x=%g y=%g: %s\n", s.x, s.y, s.error.c_str());
    std::printf("wrote %s\n", join_path(dir, c.name + ".csv").c_str());
    return f.failures() == 0 ? kPass : kFail;
}

// ---- verify ----

std::vector<PhysicalPoint> grid_points(const GridSpec& gs) {
    std::vector<PhysicalPoint> pts;
    for (int j = 0; j < gs.ny; ++j)
        for (int i = 0; i < gs.nx; ++i) pts.push_back({gs.x(i), gs.y(j)});
    return pts;
}

int verify_residual(const RunConfig& c, const Globals& g, const std::string& dir) {
    CauchyData data = make_cauchy_data(c.tau1, c.nu1);
    SolveOptions opt = options_of(c, g);
    // rule switching inside an adaptive quadrature is not smooth in (x, y)
    opt.quad.adaptive = false;
    opt.series.rel_tol = c.verify.residual_rel_tol;
    std::vector<SolutionField> fields;
    for (int n : c.verify.residual_levels) {
        GridSpec gs = c.grid;
        gs.nx = gs.ny = n;
        fields.push_back(solve_grid(gs, data, c.problem, opt, c.threads));
    }
    auto reps = residual_refinement(fields, c.problem);
    write_text(join_path(dir, "residual.csv"), residual_csv(reps));
    bool ok = true;
    for (std::size_t k = 0; k < reps.size(); ++k)
        std::printf("level %zu: %dx%d residual_max=%.3e residual_l2=%.3e\n", k, reps[k].grid.nx, reps[k].grid.ny,
                    reps[k].residual_max, reps[k].residual_l2);
    if (reps.back().refinement_rates.empty()) {
        std::printf("observed orders need at least three levels\n");
        ok = false;
    }
    for (double r : reps.back().refinement_rates) {
        std::printf("observed order %.3f (need >= %.2f)\n", r, c.verify.residual_min_order);
        ok = ok && r >= c.verify.residual_min_order;
    }
    return ok ? kPass : kFail;
}

int verify_oracle(const RunConfig& c, const Globals& g, const std::string& dir) {
    CauchyData data = make_cauchy_data(c.tau1, c.nu1);
    OracleConfig oc;
    oc.dx = c.verify.oracle_dx;
    oc.safety = c.verify.oracle_safety;
    auto pts = grid_points(c.grid);
    OracleComparison r = oracle_compare(data, c.problem, oc, pts, options_of(c, g));
    write_text(join_path(dir, "oracle.csv"), oracle_csv(pts, r));
    double bound = std::max(c.verify.oracle_tol, r.max_self_error);
    std::printf("max |formula - oracle| = %.3e\noracle self-error = %.3e\noracle self-order = %.3f\nbound = %.3e\n",
                r.max_deviation, r.max_self_error, r.self_order, bound);
    return r.max_deviation <= bound ? kPass : kFail;
}

int verify_dalembert(const RunConfig& c, const Globals& g, const std::string& dir) {
    if (c.problem.n != 0.0 || c.problem.mu != 0.0)
        std::printf("note: the comparison uses n = 0, mu = 0 and the m values from verify.dalembert_m\n");
    CauchyData data = make_cauchy_data(c.tau1, c.nu1);
    auto pts = grid_points(c.grid);
    std::vector<double> dev;
    for (double m : c.verify.dalembert_m) dev.push_back(dalembert_compare(data, m, pts, options_of(c, g)));
    write_text(join_path(dir, "dalembert.csv"), dalembert_csv(c.verify.dalembert_m, dev));
    bool ok = true;
    for (std::size_t k = 0; k < dev.size(); ++k) {
        std::printf("m = %g: max deviation %.3e", c.verify.dalembert_m[k], dev[k]);
        if (k > 0) {
            double rate = std::log(dev[k - 1] / dev[k]) / std::log(c.verify.dalembert_m[k - 1] / c.verify.dalembert_m[k]);
            // exact agreement (e.g. linear data) has no rate to measure
            bool pass = rate >= c.verify.dalembert_min_rate || dev[k] <= 1e-12;
            std::printf(", observed rate %.3f", rate);
            ok = ok && pass;
        }
        std::printf("\n");
    }
    return ok ? kPass : kFail;
}

int cmd_verify(const std::string& mode, const Globals& g) {
    RunConfig c = require_config(g);
    std::string dir = output_dir(g, c.out_dir);
    if (mode == "residual") return verify_residual(c, g, dir);
    if (mode == "oracle") return verify_oracle(c, g, dir);
    if (mode == "dalembert") return verify_dalembert(c, g, dir);
    throw UsageError("unknown verify mode '" + mode + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confluent hypergeometric functions, the Riemann function and the Cauchy problem for "
                 "x^n V_xx - (-y)^m V_yy + mu V = 0"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "run configuration file (key = value)");
    app.add_option("--out", g.out, "output directory (default: output.dir, then $DHYP_OUT_DIR, then ./dhyp_out)");
    app.add_option("--seed", g.seed, "random seed for identity draws");
    app.add_option("--tol", g.tol, "series tolerance (fn-eval, identities) or quadrature tolerance (solve, verify)");
    app.add_option("--draws", g.draws, "draws per relation");
    auto* thr = app.add_option("--threads", g.threads, "worker threads for grid solves (0: all cores)");

    FnEval fe;
    auto* fn = app.add_subcommand("fn-eval", "evaluate F, Xi2, Phi, XiPQ or PsiPQ");
    fn->add_option("family", fe.family, "F | Xi2 | Phi | XiPQ | PsiPQ")->required();
    fn->add_option("params", fe.params, "parameters in the family's order");
    fn->add_option("--sigma", fe.sigma, "first argument (the F argument)");
    fn->add_option("--omega", fe.omega);
    fn->add_option("--rho", fe.rho);
    fn->add_option("--theta", fe.theta);
    fn->add_option("--max-terms", fe.max_terms, "per-index term budget");

    std::string relations;
    bool all = false;
    auto* ident = app.add_subcommand("identities", "run the identity suite; writes identities.csv");
    ident->add_option("--relations", relations, "comma-separated ids, e.g. R10,R12,L20");
    ident->add_flag("--all", all, "every relation");

    auto* solve = app.add_subcommand("solve", "solve the Cauchy problem on the configured grid");

    std::string mode;
    auto* verify = app.add_subcommand("verify", "residual | oracle | dalembert checks");
    verify->add_option("mode", mode, "residual | oracle | dalembert")->required()->check(
        CLI::IsMember({"residual", "oracle", "dalembert"}));

    for (auto* sub : {fn, ident, solve, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    g.threads_set = thr->count() > 0;

    try {
        if (fn->parsed()) return cmd_fn_eval(fe, g);
        if (ident->parsed()) return cmd_identities(relations, all, g);
        if (solve->parsed()) return cmd_solve(g);
        if (verify->parsed()) return cmd_verify(mode, g);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
    return kUsage;
}
