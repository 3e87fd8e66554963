// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "dhyp/cauchy.hpp"
#include "dhyp/config.hpp"
#include "dhyp/identities.hpp"
#include "dhyp/presets.hpp"
#include "dhyp/report_io.hpp"
#include "dhyp/riemann.hpp"
#include "dhyp/rng.hpp"
#include "dhyp/special_fn.hpp"
#include "dhyp/verification.hpp"
#include "oracles.hpp"

using namespace dhyp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double x, double ref) { return std::fabs(x - ref) / std::max(1.0, std::fabs(ref)); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// lower parameters kept 0.1 away from the poles
double lower(Rng& r) {
    for (;;) {
        double x = r.uniform(-0.9, 2.0);
        if (x > 0.1 || std::fabs(x - std::round(x)) >= 0.1) return x;
    }
}

Outcome c1_identities() {
    auto t0 = Clock::now();
    auto records = run_identity_suite(all_relations(), 200, 42);
    double dt = seconds_since(t0);
    auto sum = summarize(records);
    bool ok = dt <= 120.0;
    double series = 0, diff = 0, lim = 0, cont = 0;
    for (const auto& s : sum) {
        ok = ok && s.failures == 0 && s.errors == 0;
        std::string id = to_string(s.id);
        double& slot = id[0] == 'R' ? series : id[0] == 'D' ? diff : id[0] == 'L' ? lim : cont;
        slot = std::max(slot, s.max_rel);
    }
    return {ok, fmt("15 relations x 200 draws; max rel residual: series %.1e, derivatives %.1e, limits %.1e, "
                    "continuation/autotransformation %.1e",
                    series, diff, lim, cont)};
}

Outcome c2_brute_force() {
    double worst[5] = {0, 0, 0, 0, 0};
    Rng g(2);
    for (int i = 0; i < 50; ++i) {
        double a = g.uniform(-0.9, 2), b = g.uniform(-0.9, 2), c = lower(g), z = g.uniform(-0.8, 0.8);
        worst[0] = std::max(worst[0], rel(gauss_f({a, b, c}, z).value, oracle::gauss(a, b, c, z)));
    }
    for (int i = 0; i < 50; ++i) {
        double a = g.uniform(-0.9, 2), b = g.uniform(-0.9, 2), c = lower(g);
        double s = g.uniform(-0.5, 0.5), rho = g.uniform(-2, 2);
        worst[1] = std::max(worst[1], rel(xi2({a, b, c}, s, rho).value, oracle::xi2(a, b, c, s, rho)));
    }
    for (int i = 0; i < 50; ++i) {
        double a = g.uniform(-0.9, 2), b = g.uniform(-0.9, 2), c = g.uniform(-0.9, 2), d = g.uniform(-0.9, 2);
        double e = lower(g), s = g.uniform(-0.5, 0.5), w = g.uniform(-0.5, 0.5), rho = g.uniform(-2, 2);
        worst[2] = std::max(worst[2], rel(phi({a, b, c, d, e}, s, w, rho).value, oracle::phi(a, b, c, d, e, s, w, rho)));
    }
    for (int i = 0; i < 50; ++i) {
        int p = i % 2, q = (i / 2) % 2;
        double a = g.uniform(-0.9, 2), b = g.uniform(-0.9, 2), ap = g.uniform(-0.9, 2), bp = g.uniform(-0.9, 2);
        double c = lower(g), cp = lower(g), dp = lower(g), s = g.uniform(-0.5, 0.5), rho = g.uniform(-2, 2);
        worst[3] = std::max(worst[3], rel(xi_pq({a, b, ap, bp, c, cp, dp, p, q}, s, rho).value,
                                          oracle::xi_pq(p, q, a, b, ap, bp, c, cp, dp, s, rho)));
    }
    for (int i = 0; i < 50; ++i) {
        int p = i % 2, q = (i / 2) % 2;
        double a = g.uniform(-0.9, 2), b = g.uniform(-0.9, 2), c = g.uniform(-0.9, 2), d = g.uniform(-0.9, 2);
        double e = lower(g), ap = g.uniform(-0.9, 2), bp = g.uniform(-0.9, 2), cp = lower(g), dp = lower(g);
        double s = g.uniform(-0.5, 0.5), th = g.uniform(0.0, 0.6), rho = g.uniform(-2, 2);
        worst[4] = std::max(worst[4], rel(psi_pq({a, b, c, d, e, ap, bp, cp, dp, p, q}, s, th, rho).value,
                                          oracle::psi_pq(p, q, a, b, c, d, e, ap, bp, cp, dp, s, th, rho)));
    }
    double m = *std::max_element(worst, worst + 5);
    return {m <= 1e-11, fmt("50 points per family; max rel deviation F %.1e, Xi2 %.1e, Phi %.1e, XiPQ %.1e", worst[0],
                            worst[1], worst[2], worst[3]) +
                            fmt(", PsiPQ %.1e", worst[4])};
}

Outcome c3_riemann() {
    double unit = 0.0;
    for (ProblemParams pp : {ProblemParams{0.5, 0.0, 0.0}, ProblemParams{0.3, 0.7, 5.0}, ProblemParams{0.9, 0.4, -3.0}}) {
        CharParams cp = char_params(pp);
        for (CharPoint c0 : {CharPoint{0.1, 0.5}, CharPoint{0.4, 1.0}}) {
            unit = std::max(unit, std::fabs(riemann_function(c0, c0, cp, RiemannForm::phi_form) - 1.0));
            unit = std::max(unit, std::fabs(riemann_function(c0, c0, cp, RiemannForm::psi_form) - 1.0));
        }
    }
    Rng r(2024);
    int pairs = 0;
    double cross = 0.0;
    while (pairs < 100) {
        CharParams cp = char_params({r.uniform(0.05, 0.95), r.uniform(0.0, 0.95), r.uniform(-8.0, 8.0)});
        double xi0 = r.uniform(0.05, 0.5), eta0 = r.uniform(xi0 + 0.1, 1.0);
        double xi = r.uniform(xi0, eta0), eta = r.uniform(xi, eta0);
        if (!(eta > xi) || std::fabs(riemann_args({xi, eta}, {xi0, eta0}, cp).omega) > 0.8) continue;
        double a = riemann_function({xi, eta}, {xi0, eta0}, cp, RiemannForm::phi_form);
        double b = riemann_function({xi, eta}, {xi0, eta0}, cp, RiemannForm::psi_form);
        cross = std::max(cross, rel(a, b));
        ++pairs;
    }
    EvalConfig cfg;
    cfg.rel_tol = 1e-15;
    double min_order = HUGE_VAL;
    struct Case {
        ProblemParams pp;
        CharPoint c, c0;
    };
    for (const Case& k : {Case{{0.5, 0.5, -2.0}, {0.3, 0.5}, {0.2, 0.8}}, Case{{0.3, 0.2, 4.0}, {0.35, 0.4}, {0.25, 0.7}},
                          Case{{0.7, 0.0, 1.0}, {0.5, 0.9}, {0.4, 1.0}}}) {
        CharParams cp = char_params(k.pp);
        double res[3];
        int i = 0;
        for (double h : {1e-2, 5e-3, 2.5e-3}) res[i++] = std::fabs(riemann_residual(k.c, k.c0, cp, h, cfg));
        min_order = std::min({min_order, std::log2(res[0] / res[1]), std::log2(res[1] / res[2])});
    }
    bool ok = unit <= 1e-14 && cross <= 1e-10 && min_order >= 1.8;
    return {ok, fmt("|R(c0;c0)-1| %.1e; phi/psi forms max rel diff %.1e on 100 pairs; residual order %.2f", unit, cross,
                    min_order)};
}

Outcome c4_anchors() {
    double cdev = 0.0;
    for (ProblemParams pp : {ProblemParams{0.5, 0.5, 0.0}, ProblemParams{0.3, 0.0, 0.0}, ProblemParams{0.8, 0.9, 0.0}}) {
        SolutionField f = solve_grid({0.3, 0.6, -0.1, -0.02, 9, 9}, make_cauchy_data("constant:1", "zero"), pp);
        for (const auto& s : f.samples) cdev = std::max(cdev, s.converged ? std::fabs(s.V - 1.0) : HUGE_VAL);
    }
    ProblemParams pp{0.4, 0.3, -1.5};
    CauchyData d1 = make_cauchy_data("sine", "poly:1,2"), d2 = make_cauchy_data("quadratic", "sine");
    const double a = 0.7, b = -1.3;
    CauchyData mix{[&](double x) { return a * d1.tau1(x) + b * d2.tau1(x); },
                   [&](double x) { return a * d1.tau1_prime(x) + b * d2.tau1_prime(x); },
                   [&](double x) { return a * d1.nu1(x) + b * d2.nu1(x); }, {}, {}};
    double lin = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            PhysicalPoint p{0.3 + 0.15 * i, -0.02 - 0.04 * j};
            lin = std::max(lin, std::fabs(solve_V(p, mix, pp) - a * solve_V(p, d1, pp) - b * solve_V(p, d2, pp)));
        }
    QuadratureSpec q;
    q.adaptive = false;
    double beta_err = 0.0;
    for (double beta : {-0.05, -0.25, -0.45})
        for (auto [lo, hi] : {std::pair{0.1, 0.9}, std::pair{0.4, 0.45}}) {
            double v = weighted_integral([](double) { return 1.0; }, lo, hi, -beta, q).value;
            double ex = std::pow(hi - lo, 1 - 2 * beta) *
                        std::exp(2 * std::lgamma(1 - beta) - std::lgamma(2 - 2 * beta));
            beta_err = std::max(beta_err, std::fabs(v / ex - 1));
        }
    bool ok = cdev <= 1e-8 && lin <= 1e-11 && beta_err <= 1e-12;
    return {ok, fmt("constant data max dev %.1e (3 x 81 points); linearity %.1e; Beta identity rel err %.1e", cdev, lin,
                    beta_err)};
}

Outcome c5_initial_data() {
    ProblemParams pp{0.5, 0.5, -2.0};
    CauchyData d = make_cauchy_data("quadratic", "constant:1");
    bool ok = true;
    double last = 0.0;
    for (double x : {0.3, 0.5, 0.7}) {
        std::vector<double> dev;
        for (double y0 : {1e-2, 3e-3, 1e-3}) dev.push_back(std::fabs(solve_V({x, y_of(y0, pp.m)}, d, pp) - x * x));
        ok = ok && dev[1] < dev[0] && dev[2] < dev[1] && dev[2] <= 1e-4;
        last = std::max(last, dev[2]);
    }
    return {ok, fmt("quadratic preset, x in {0.3,0.5,0.7}: monotone decrease, max dev at y0=1e-3 is %.1e", last)};
}

Outcome c6_residual() {
    ProblemParams pp{0.5, 0.5, -2.0};
    CauchyData d = make_cauchy_data("quadratic", "constant:1");
    SolveOptions opt;
    opt.quad.adaptive = false;
    opt.series.rel_tol = 1e-15;
    std::vector<SolutionField> fs;
    for (int n : {33, 65, 129}) fs.push_back(solve_grid({0.2, 0.45, -0.1, -0.02, n, n}, d, pp, opt));
    auto reps = residual_refinement(fs, pp);
    const auto& rates = reps.back().refinement_rates;
    bool ok = rates.size() == 2 && rates[0] >= 2.0 && rates[1] >= 2.0;
    return {ok, fmt("max residual %.1e / %.1e / %.1e; observed orders ", reps[0].residual_max, reps[1].residual_max,
                    reps[2].residual_max) +
                    fmt("%.2f, %.2f", rates[0], rates[1])};
}

Outcome c7_cross_method() {
    auto t0 = Clock::now();
    CauchyData d = make_cauchy_data("sine", "poly:0.5,0,-1");
    std::vector<PhysicalPoint> tg;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) tg.push_back({0.3 + 0.075 * i, -0.02 - 0.02 * j});
    bool ok = true;
    std::string det;
    OracleConfig oc;
    oc.dx = 0.02;
    for (ProblemParams pp : {ProblemParams{0.5, 0.0, 0.0}, ProblemParams{0.5, 0.5, -2.0}, ProblemParams{0.3, 0.2, 4.0}}) {
        OracleComparison r = oracle_compare(d, pp, oc, tg);
        ok = ok && r.max_deviation <= std::max(1e-3, r.max_self_error);
        det += fmt("(%g,%g,%g): ", pp.m, pp.n, pp.mu) + fmt("dev %.1e self %.1e; ", r.max_deviation, r.max_self_error);
    }
    CauchyData q = make_cauchy_data("quadratic", "constant:1");
    std::vector<PhysicalPoint> pts;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pts.push_back({0.3 + 0.15 * i, -0.02 - 0.04 * j});
    double d1 = dalembert_compare(q, 0.04, pts), d2 = dalembert_compare(q, 0.02, pts), d3 = dalembert_compare(q, 0.01, pts);
    double r1 = std::log2(d1 / d2), r2 = std::log2(d2 / d3);
    ok = ok && r1 >= 0.95 && r2 >= 0.95;
    double dt = seconds_since(t0);
    ok = ok && dt <= 300.0;
    return {ok, det + fmt("d'Alembert dev %.1e/%.1e/%.1e rates ", d1, d2, d3) + fmt("%.2f, %.2f", r1, r2)};
}

Outcome c8_determinism() {
    RunConfig c = parse_config("problem.m = 0.3\nproblem.n = 0.2\nproblem.mu = 4\ndata.tau1 = sine\n"
                               "data.nu1 = poly:0.5,0,-1\ngrid.nx = 7\ngrid.ny = 5\n");
    auto run = [&] {
        SolveOptions opt{c.quadrature, c.series, SFactorForm::corrected};
        SolutionField f = solve_grid(c.grid, make_cauchy_data(c.tau1, c.nu1), c.problem, opt, 2);
        return field_csv(f) + field_metadata_json(f, c) + relation_csv(run_identity_suite(all_relations(), 3, 99));
    };
    std::string a = run(), b = run();
    bool round_trip = parse_config(serialize_config(c)) == c;
    return {a == b && round_trip, fmt("two runs: %.0f bytes each, identical = ", double(a.size())) +
                                      (a == b ? "yes" : "no") + "; config round-trip " + (round_trip ? "ok" : "broken")};
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, std::function<Outcome()>>> crit = {
        {"1 identity suite", c1_identities},        {"2 brute-force equivalence", c2_brute_force},
        {"3 Riemann function", c3_riemann},         {"4 exactness anchors", c4_anchors},
        {"5 initial-data reproduction", c5_initial_data}, {"6 PDE residual", c6_residual},
        {"7 cross-method", c7_cross_method},        {"8 determinism", c8_determinism},
    };
    int failed = 0;
    for (auto& [name, fn] : crit) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(crit.size()) - failed, crit.size());
    return failed == 0 ? 0 : 1;
}
