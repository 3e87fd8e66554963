#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dhyp/cauchy.hpp"
#include "dhyp/error.hpp"
#include "dhyp/identities.hpp"
#include "dhyp/presets.hpp"
#include "dhyp/riemann.hpp"
#include "dhyp/special_fn.hpp"

namespace py = pybind11;
using namespace dhyp;

namespace {

EvalConfig eval_config(double rel_tol, int max_terms) {
    EvalConfig c;
    c.rel_tol = rel_tol;
    c.max_terms = max_terms;
    return c;
}

ProblemParams problem(double m, double n, double mu) {
    ProblemParams pp{m, n, mu};
    pp.validate();
    return pp;
}

RiemannForm parse_form(const std::string& s) {
    if (s == "phi") return RiemannForm::phi_form;
    if (s == "psi") return RiemannForm::psi_form;
    if (s == "auto") return RiemannForm::automatic;
    throw ConfigError("form must be phi, psi or auto");
}

SolveOptions solve_options(double quad_tol, double series_tol) {
    SolveOptions opt;
    opt.quad.target_tol = quad_tol;
    opt.series.rel_tol = series_tol;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_dhyp, m) {
    m.doc() = "Confluent hypergeometric series, the Riemann function and the Cauchy problem solver";

    auto base = py::register_exception<Error>(m, "DhypError", PyExc_RuntimeError);
    py::register_exception<PoleError>(m, "PoleError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
    py::register_exception<TargetOutsideCone>(m, "TargetOutsideCone", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<SeriesValue>(m, "SeriesValue")
        .def_readonly("value", &SeriesValue::value)
        .def_readonly("tail_estimate", &SeriesValue::tail_estimate)
        .def_readonly("terms_used", &SeriesValue::terms_used)
        .def_readonly("converged", &SeriesValue::converged)
        .def("__float__", [](const SeriesValue& v) { return v.value; })
        .def("__repr__", [](const SeriesValue& v) {
            return "SeriesValue(value=" + py::repr(py::float_(v.value)).cast<std::string>() +
                   ", terms_used=" + std::to_string(v.terms_used) +
                   ", converged=" + (v.converged ? "True" : "False") + ")";
        });

    m.def(
        "gauss_f",
        [](double a, double b, double c, double z, double rel_tol, int max_terms) {
            return gauss_f({a, b, c}, z, eval_config(rel_tol, max_terms));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"), py::arg("rel_tol") = 1e-12,
        py::arg("max_terms") = 500);

    m.def(
        "xi2",
        [](double a, double b, double c, double sigma, double rho, double rel_tol, int max_terms) {
            return xi2({a, b, c}, sigma, rho, eval_config(rel_tol, max_terms));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("sigma"), py::arg("rho"), py::arg("rel_tol") = 1e-12,
        py::arg("max_terms") = 500);

    m.def(
        "phi",
        [](double a, double b, double c, double d, double e, double sigma, double omega, double rho,
           double rel_tol, int max_terms) {
            PhiParams p{a, b, c, d, e};
            auto cfg = eval_config(rel_tol, max_terms);
            return std::abs(omega) < 1.0 ? phi(p, sigma, omega, rho, cfg) : phi_continued(p, sigma, omega, rho, cfg);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"), py::arg("sigma"), py::arg("omega"),
        py::arg("rho"), py::arg("rel_tol") = 1e-12, py::arg("max_terms") = 500);

    m.def(
        "xi_pq",
        [](int p, int q, double a, double b, double a_prime, double b_prime, double c, double c_prime,
           double d_prime, double sigma, double rho, double rel_tol, int max_terms) {
            XiPQParams xp{a, b, a_prime, b_prime, c, c_prime, d_prime, p, q};
            return xi_pq(xp, sigma, rho, eval_config(rel_tol, max_terms));
        },
        py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("a_prime"), py::arg("b_prime"),
        py::arg("c"), py::arg("c_prime"), py::arg("d_prime"), py::arg("sigma"), py::arg("rho"),
        py::arg("rel_tol") = 1e-12, py::arg("max_terms") = 500);

    m.def(
        "psi_pq",
        [](int p, int q, double a, double b, double c, double d, double e, double a_prime, double b_prime,
           double c_prime, double d_prime, double sigma, double theta, double rho, double rel_tol,
           int max_terms) {
            PsiPQParams pp{a, b, c, d, e, a_prime, b_prime, c_prime, d_prime, p, q};
            return psi_pq(pp, sigma, theta, rho, eval_config(rel_tol, max_terms));
        },
        py::arg("p"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("e"),
        py::arg("a_prime"), py::arg("b_prime"), py::arg("c_prime"), py::arg("d_prime"), py::arg("sigma"),
        py::arg("theta"), py::arg("rho"), py::arg("rel_tol") = 1e-12, py::arg("max_terms") = 500);

    m.def(
        "to_characteristic",
        [](double x, double y, double m_, double n, double mu) {
            auto c = to_characteristic({x, y}, problem(m_, n, mu));
            return py::make_tuple(c.xi, c.eta);
        },
        py::arg("x"), py::arg("y"), py::arg("m"), py::arg("n"), py::arg("mu"),
        "(xi, eta) of a physical point");

    m.def(
        "riemann_function",
        [](double xi, double eta, double xi0, double eta0, double m_, double n, double mu, const std::string& form,
           double rel_tol) {
            auto cp = char_params(problem(m_, n, mu));
            return riemann_function({xi, eta}, {xi0, eta0}, cp, parse_form(form), eval_config(rel_tol, 500));
        },
        py::arg("xi"), py::arg("eta"), py::arg("xi0"), py::arg("eta0"), py::arg("m"), py::arg("n"), py::arg("mu"),
        py::arg("form") = "auto", py::arg("rel_tol") = 1e-12);

    m.def(
        "solve_V",
        [](double x, double y, double m_, double n, double mu, const std::string& tau1, const std::string& nu1,
           double quad_tol, double series_tol) {
            auto data = make_cauchy_data(tau1, nu1);
            return solve_V({x, y}, data, problem(m_, n, mu), solve_options(quad_tol, series_tol));
        },
        py::arg("x"), py::arg("y"), py::arg("m"), py::arg("n"), py::arg("mu"), py::arg("tau1") = "quadratic",
        py::arg("nu1") = "constant:1", py::arg("quad_tol") = 1e-10, py::arg("series_tol") = 1e-12,
        "V(x, y) for preset initial data (constant[:c], zero, linear, quadratic, sine, poly:c0,c1,...)");

    m.def(
        "solve_grid",
        [](double m_, double n, double mu, const std::string& tau1, const std::string& nu1, double x_lo,
           double x_hi, double y_lo, double y_hi, int nx, int ny, unsigned threads) {
            GridSpec gs{x_lo, x_hi, y_lo, y_hi, nx, ny};
            auto data = make_cauchy_data(tau1, nu1);
            auto pp = problem(m_, n, mu);
            SolutionField f;
            {
                py::gil_scoped_release release;
                f = solve_grid(gs, data, pp, {}, threads);
            }
            py::list rows;
            for (const auto& s : f.samples) rows.append(py::make_tuple(s.x, s.y, s.V, s.converged, s.error));
            return rows;
        },
        py::arg("m"), py::arg("n"), py::arg("mu"), py::arg("tau1") = "quadratic", py::arg("nu1") = "constant:1",
        py::arg("x_lo") = 0.3, py::arg("x_hi") = 0.6, py::arg("y_lo") = -0.1, py::arg("y_hi") = -0.02,
        py::arg("nx") = 9, py::arg("ny") = 9, py::arg("threads") = 1,
        "List of (x, y, V, converged, error) in row-major order, x fastest");

    m.def(
        "run_identity_suite",
        [](const std::vector<std::string>& relations, int draws, std::uint64_t seed, double rel_tol) {
            std::vector<RelationId> ids;
            if (relations.empty()) ids = all_relations();
            for (const auto& r : relations) {
                auto id = parse_relation(r);
                if (!id) throw ConfigError("unknown relation '" + r + "'");
                ids.push_back(*id);
            }
            auto records = run_identity_suite(ids, draws, seed, eval_config(rel_tol, 500));
            py::list out;
            for (const auto& s : summarize(records)) {
                py::dict d;
                d["relation"] = to_string(s.id);
                d["draws"] = s.draws;
                d["failures"] = s.failures;
                d["errors"] = s.errors;
                d["max_rel"] = s.max_rel;
                d["mean_rel"] = s.mean_rel;
                d["threshold"] = s.threshold;
                out.append(d);
            }
            return out;
        },
        py::arg("relations") = std::vector<std::string>{}, py::arg("draws") = 20, py::arg("seed") = 42,
        py::arg("rel_tol") = 1e-12, "Per-relation summary dicts; an empty list runs every relation");
}
