#include <cmath>
#include <vector>

#include <doctest.h>

#include "dhyp/error.hpp"
#include "dhyp/riemann.hpp"
#include "dhyp/rng.hpp"

using namespace dhyp;

namespace {

struct Pair {
    CharPoint c, c0;
};

// Random c0 in the triangle and c in its characteristic rectangle, with eta > xi.
Pair draw_pair(Rng& rng) {
    double xi0 = rng.uniform(0.05, 0.5);
    double eta0 = rng.uniform(xi0 + 0.1, 1.0);
    double xi = rng.uniform(xi0, eta0);
    double eta = rng.uniform(xi, eta0);
    return {{xi, eta}, {xi0, eta0}};
}

}  // namespace

TEST_CASE("parameter maps") {
    CharParams cp = char_params({2.0 / 3.0, 0.0, -4.0});
    CHECK(cp.alpha == 0.0);
    CHECK(cp.beta == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(cp.lambda2 == 1.0);
    CHECK_THROWS_AS(char_params({1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(char_params({0.5, 1.0, 0.0}), DomainError);
}

TEST_CASE("coordinate maps") {
    ProblemParams pp{0.4, 0.3, 1.0};
    CharPoint c = to_characteristic({0.7, 0.0}, pp);
    CHECK(c.xi == c.eta);
    CHECK(c.xi == doctest::Approx(2.0 / 1.7 * std::pow(0.7, 0.85)).epsilon(1e-15));
    CharPoint o = to_characteristic({0.0, 0.0}, pp);
    CHECK(o.xi == 0.0);
    CHECK(o.eta == 0.0);
    PhysicalPoint back = from_characteristic({0.4, 0.4}, pp);
    CHECK(back.y == 0.0);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        PhysicalPoint p{rng.uniform(0.0, 1.0), -rng.uniform(0.0, 0.5)};
        PhysicalPoint q = from_characteristic(to_characteristic(p, pp), pp);
        CHECK(std::fabs(q.x - p.x) <= 1e-13);
        CHECK(std::fabs(q.y - p.y) <= 1e-13);
    }
    CHECK_THROWS_AS(to_characteristic({-0.1, 0.0}, pp), DomainError);
    CHECK_THROWS_AS(to_characteristic({0.1, 0.1}, pp), DomainError);
    CHECK_THROWS_AS(from_characteristic({0.5, 0.4}, pp), DomainError);
}

TEST_CASE("riemann arguments") {
    CharParams cp = char_params({0.5, 0.2, 3.0});
    RiemannArgs z = riemann_args({0.3, 0.8}, {0.3, 0.8}, cp);
    CHECK(z.sigma == 0.0);
    CHECK(z.omega == 0.0);
    CHECK(z.rho == 0.0);
    CHECK(z.theta == 0.0);
    RiemannArgs e = riemann_args({0.3, 0.5}, {0.3, 0.8}, cp);
    CHECK(e.sigma == 0.0);
    CHECK(e.omega == 0.0);
    CHECK(e.rho == 0.0);
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        Pair p = draw_pair(rng);
        if (p.c.eta == p.c.xi) continue;
        RiemannArgs a = riemann_args(p.c, p.c0, cp);
        CHECK(a.sigma >= 0.0);
        CHECK(a.omega <= 0.0);
        CHECK(a.theta >= 0.0);
        CHECK(a.theta < 1.0);
    }
    CHECK_THROWS_AS(riemann_args({0.2, 0.5}, {0.3, 0.8}, cp), DomainError);
    CHECK_THROWS_AS(riemann_args({0.3, 0.5}, {0.3, 0.3}, cp), DomainError);
}

TEST_CASE("riemann function anchors") {
    CharParams cp = char_params({0.5, 0.4, -3.0});
    CharPoint c0{0.2, 0.9};
    CHECK(std::fabs(riemann_function(c0, c0, cp, RiemannForm::phi_form) - 1.0) <= 1e-14);
    CHECK(std::fabs(riemann_function(c0, c0, cp, RiemannForm::psi_form) - 1.0) <= 1e-14);
    CharPoint c{0.2, 0.6};
    double expect = std::pow((0.6 + 0.2) / 1.1, cp.alpha) * std::pow(0.4 / 0.7, cp.beta);
    CHECK(riemann_function(c, c0, cp, RiemannForm::phi_form) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(riemann_function(c, c0, cp, RiemannForm::psi_form) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(riemann_function({0.5, 0.5}, c0, cp, RiemannForm::psi_form), DomainError);
}

TEST_CASE("phi and psi forms agree") {
    Rng rng(2024);
    int checked = 0;
    double worst = 0.0;
    while (checked < 100) {
        double m = rng.uniform(0.05, 0.95), n = rng.uniform(0.0, 0.95), mu = rng.uniform(-8.0, 8.0);
        CharParams cp = char_params({m, n, mu});
        Pair p = draw_pair(rng);
        if (!(p.c.eta > p.c.xi)) continue;
        if (std::fabs(riemann_args(p.c, p.c0, cp).omega) > 0.8) continue;
        double a = riemann_function(p.c, p.c0, cp, RiemannForm::phi_form);
        double b = riemann_function(p.c, p.c0, cp, RiemannForm::psi_form);
        worst = std::max(worst, std::fabs(a - b) / std::max(std::fabs(b), 1.0));
        ++checked;
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("characteristic equation residual in the second point") {
    EvalConfig cfg;
    cfg.rel_tol = 1e-15;
    const double hs[3] = {1e-2, 5e-3, 2.5e-3};
    struct Case {
        ProblemParams pp;
        CharPoint c, c0;
    };
    std::vector<Case> cases{{{0.5, 0.5, -2.0}, {0.3, 0.5}, {0.2, 0.8}},
                            {{0.3, 0.2, 4.0}, {0.35, 0.4}, {0.25, 0.7}},
                            {{0.7, 0.0, 1.0}, {0.5, 0.9}, {0.4, 1.0}}};
    for (const auto& k : cases) {
        CharParams cp = char_params(k.pp);
        double r[3];
        for (int i = 0; i < 3; ++i) r[i] = std::fabs(riemann_residual(k.c, k.c0, cp, hs[i], cfg));
        double o1 = std::log2(r[0] / r[1]), o2 = std::log2(r[1] / r[2]);
        CAPTURE(r[0]);
        CAPTURE(r[2]);
        CHECK(o1 >= 1.8);
        CHECK(o2 >= 1.8);
    }
}

TEST_CASE("singularity order on the initial line") {
    CharParams cp = char_params({0.6, 0.3, 2.0});
    CharPoint c0{0.2, 0.8};
    const double xi = 0.45;
    std::vector<double> v;
    for (double gap : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        double r = riemann_function({xi, xi + gap}, c0, cp);
        v.push_back(std::pow(gap, -2.0 * cp.beta) * r);
    }
    for (std::size_t i = 2; i < v.size(); ++i)
        CHECK(std::fabs(v[i] - v[i - 1]) < std::fabs(v[i - 1] - v[i - 2]));
    CHECK(std::fabs(v.back()) > 1e-3);
    CHECK(std::fabs(v.back() - v[v.size() - 2]) < 1e-4 * std::fabs(v.back()));
}
