#include "dhyp/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "dhyp/error.hpp"

namespace dhyp {

ResidualReport pde_residual(const SolutionField& field, const ProblemParams& pp) {
    pp.validate();
    const GridSpec& g = field.grid;
    if (g.nx < 5 || g.ny < 5) throw ConfigError("pde_residual: need at least 5 points per axis");
    if (field.samples.size() != static_cast<std::size_t>(g.nx) * g.ny)
        throw ConfigError("pde_residual: sample count does not match the grid");
    if (field.failures() > 0) throw ConvergenceError("pde_residual: field has failed samples");
    const double hx = (g.x_hi - g.x_lo) / (g.nx - 1), hy = (g.y_hi - g.y_lo) / (g.ny - 1);
    auto V = [&](int i, int j) { return field.at(i, j).V; };
    ResidualReport rep;
    rep.grid = g;
    double sum2 = 0.0;
    long count = 0;
    for (int j = 2; j < g.ny - 2; ++j) {
        for (int i = 2; i < g.nx - 2; ++i) {
            double vxx = (-V(i - 2, j) + 16 * V(i - 1, j) - 30 * V(i, j) + 16 * V(i + 1, j) - V(i + 2, j)) /
                         (12 * hx * hx);
            double vyy = (-V(i, j - 2) + 16 * V(i, j - 1) - 30 * V(i, j) + 16 * V(i, j + 1) - V(i, j + 2)) /
                         (12 * hy * hy);
            const Sample& s = field.at(i, j);
            double r = std::pow(s.x, pp.n) * vxx - std::pow(-s.y, pp.m) * vyy + pp.mu * s.V;
            sum2 += r * r;
            rep.residual_max = std::max(rep.residual_max, std::fabs(r));
            ++count;
        }
    }
    rep.residual_l2 = std::sqrt(sum2 / count);
    return rep;
}

std::vector<ResidualReport> residual_refinement(const std::vector<SolutionField>& fields, const ProblemParams& pp) {
    std::vector<ResidualReport> out;
    for (const auto& f : fields) out.push_back(pde_residual(f, pp));
    if (out.size() >= 3) {
        auto h = [](const GridSpec& g) { return (g.x_hi - g.x_lo) / (g.nx - 1); };
        for (std::size_t k = 0; k + 1 < out.size(); ++k)
            out.back().refinement_rates.push_back(std::log(out[k].residual_max / out[k + 1].residual_max) /
                                                  std::log(h(out[k].grid) / h(out[k + 1].grid)));
    }
    return out;
}

void OracleConfig::validate() const {
    if (!(dx > 0.0 && dx <= 0.1)) throw ConfigError("OracleConfig: dx must be in (0, 0.1]");
    if (!(safety > 0.0 && safety < 1.0)) throw ConfigError("OracleConfig: safety must be in (0, 1)");
    if (boot_depth < 0.0) throw ConfigError("OracleConfig: boot_depth must be >= 0");
    if (x_max < 0.0) throw ConfigError("OracleConfig: x_max must be >= 0");
}

double boot_strip_value(const CauchyData& data, const ProblemParams& pp, double x, double s) {
    pp.validate();
    if (!data.tau1_second) throw ConfigError("boot_strip_value: tau1_second is required");
    if (s < 0.0) throw DomainError("boot_strip_value: need s >= 0");
    const double m = pp.m;
    double lt = std::pow(x, pp.n) * data.tau1_second(x) + pp.mu * data.tau1(x);
    return data.tau1(x) - data.nu1(x) * s + lt * std::pow(s, 2.0 - m) / ((2.0 - m) * (1.0 - m));
}

namespace {

// One regular branch of W_YY + (k/Y) W_Y = x^n W_xx + mu W, W(0) = f0, W_Y(0) = 0.
struct Branch {
    double k;
    std::vector<double> f0, l0;
    std::vector<double> boot(double Y) const {
        std::vector<double> v(f0.size());
        double c = Y * Y / (2.0 * (1.0 + k));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f0[i] + c * l0[i];
        return v;
    }
};

void apply_l(const std::vector<double>& v, const std::vector<double>& xn, double mu, double dx,
             std::vector<double>& out) {
    const std::size_t N = v.size();
    for (std::size_t i = 1; i + 1 < N; ++i) out[i] = xn[i] * (v[i + 1] - 2 * v[i] + v[i - 1]) / (dx * dx) + mu * v[i];
}

std::array<double, 4> lagrange4(const std::array<double, 4>& nodes, double t) {
    std::array<double, 4> l;
    for (int a = 0; a < 4; ++a) {
        l[a] = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) l[a] *= (t - nodes[b]) / (nodes[a] - nodes[b]);
    }
    return l;
}

}  // namespace

std::vector<double> oracle_march(const CauchyData& data, const ProblemParams& pp, const OracleConfig& oc,
                                 const std::vector<PhysicalPoint>& targets) {
    pp.validate();
    oc.validate();
    if (pp.m > 0.9) throw DomainError("oracle_march: refuses m > 0.9");
    if (!data.tau1 || !data.nu1) throw ConfigError("oracle_march: tau1 and nu1 are required");
    if (targets.empty()) return {};
    const double m = pp.m, n = pp.n, mu = pp.mu, dx = oc.dx;
    const double k = m / (m - 2.0);
    const double s0 = oc.boot_depth > 0 ? oc.boot_depth : std::pow(dx, 2.0 / (2.0 - m));
    const double Y0 = y0_of(-s0, m);

    std::vector<double> Yt(targets.size()), X0t(targets.size());
    double Ymax = 0.0, x0max = 0.0, xt_max = 0.0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const PhysicalPoint& p = targets[t];
        if (!(p.x >= 0.0 && p.y < 0.0)) throw DomainError("oracle_march: target outside the domain");
        Yt[t] = y0_of(p.y, m);
        X0t[t] = x0_of(p.x, n);
        Ymax = std::max(Ymax, Yt[t]);
        x0max = std::max(x0max, X0t[t] + Yt[t]);
        xt_max = std::max(xt_max, p.x);
    }
    double xr = oc.x_max > 0 ? oc.x_max : x_of(x0max + 8 * dx, n) + 4 * dx;
    const std::size_t N = static_cast<std::size_t>(std::ceil(xr / dx));
    xr = N * dx;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        double reach = Yt[t] - Y0;
        if (Yt[t] < Y0 + 1e-12) throw TargetOutsideCone("oracle_march: target lies inside the boot strip");
        if (X0t[t] - reach < 0.0 || X0t[t] + reach > x0_of(xr, n) || targets[t].x > xr - 2 * dx)
            throw TargetOutsideCone("oracle_march: target outside the computed cone at x = " +
                                    std::to_string(targets[t].x) + ", y = " + std::to_string(targets[t].y));
    }

    std::vector<double> x(N + 1), xn(N + 1);
    for (std::size_t i = 0; i <= N; ++i) {
        x[i] = i * dx;
        xn[i] = std::pow(x[i], n);
    }
    const double qscale = -std::pow((2.0 - m) / 2.0, 2.0 / (2.0 - m));
    Branch br[2] = {{k, {}, {}}, {2.0 - k, {}, {}}};
    for (int b = 0; b < 2; ++b) {
        br[b].f0.resize(N + 1);
        br[b].l0.assign(N + 1, 0.0);
        for (std::size_t i = 0; i <= N; ++i) br[b].f0[i] = b == 0 ? data.tau1(x[i]) : qscale * data.nu1(x[i]);
        apply_l(br[b].f0, xn, mu, dx, br[b].l0);
        br[b].l0[0] = n > 0 ? mu * br[b].f0[0] : 2 * br[b].l0[1] - br[b].l0[2];
        br[b].l0[N] = 2 * br[b].l0[N - 1] - br[b].l0[N - 2];
    }

    const double dY = oc.safety * dx / std::pow(xr, n / 2.0);
    // rolling window of four levels per branch
    std::array<std::array<std::vector<double>, 4>, 2> lev;
    std::array<double, 4> ylev;
    for (int b = 0; b < 2; ++b) {
        lev[b][0] = br[b].boot(Y0);
        lev[b][1] = br[b].boot(Y0 + dY);
    }
    ylev[0] = Y0;
    ylev[1] = Y0 + dY;
    int filled = 2;
    std::vector<double> out(targets.size(), 0.0);
    std::vector<bool> done(targets.size(), false);
    std::size_t remaining = targets.size();
    std::vector<double> rhs(N + 1, 0.0);
    long step = 1;
    while (remaining > 0) {
        const double Yc = Y0 + step * dY, Yn = Y0 + (step + 1) * dY;
        for (int b = 0; b < 2; ++b) {
            const auto& Vc = lev[b][(filled - 1) % 4];
            const auto& Vm = lev[b][(filled - 2) % 4];
            apply_l(Vc, xn, mu, dx, rhs);
            const double kb = br[b].k;
            const double A = 1.0 / (dY * dY) + kb / (2.0 * Yc * dY);
            std::vector<double> Vn(N + 1);
            for (std::size_t i = 1; i < N; ++i)
                Vn[i] = (rhs[i] + (2 * Vc[i] - Vm[i]) / (dY * dY) + kb * Vm[i] / (2.0 * Yc * dY)) / A;
            std::vector<double> edge = br[b].boot(Yn);
            Vn[0] = edge[0];
            Vn[N] = edge[N];
            lev[b][filled % 4] = std::move(Vn);
        }
        ylev[filled % 4] = Yn;
        ++filled;
        ++step;
        if (filled < 4) continue;
        // levels filled-4 .. filled-1; use the central interval, or the first one at the start
        std::array<double, 4> ys;
        std::array<int, 4> slot;
        for (int a = 0; a < 4; ++a) {
            slot[a] = (filled - 4 + a) % 4;
            ys[a] = ylev[slot[a]];
        }
        const double lo = filled == 4 ? ys[0] : ys[1];
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (done[t] || Yt[t] < lo || Yt[t] >= ys[2]) continue;
            std::size_t i = static_cast<std::size_t>(std::floor(targets[t].x / dx));
            i = std::clamp<std::size_t>(i, 1, N - 2);
            std::array<double, 4> xs{x[i - 1], x[i], x[i + 1], x[i + 2]};
            auto lx = lagrange4(xs, targets[t].x);
            auto ly = lagrange4(ys, Yt[t]);
            double val[2] = {0.0, 0.0};
            for (int b = 0; b < 2; ++b)
                for (int a = 0; a < 4; ++a)
                    for (int c = 0; c < 4; ++c) val[b] += ly[a] * lx[c] * lev[b][slot[a]][i - 1 + c];
            out[t] = val[0] + std::pow(Yt[t], 1.0 - k) * val[1];
            done[t] = true;
            --remaining;
        }
        if (Yc > Ymax + 4 * dY && remaining > 0) throw Error("oracle_march: internal error, target not reached");
    }
    return out;
}

OracleComparison oracle_compare(const CauchyData& data, const ProblemParams& pp, const OracleConfig& coarse,
                                const std::vector<PhysicalPoint>& targets, const SolveOptions& opt) {
    OracleConfig c1 = coarse, c2 = coarse, c3 = coarse;
    c2.dx = coarse.dx / 2;
    c3.dx = coarse.dx / 4;
    // keep one marching domain across resolutions
    if (c1.x_max == 0.0) {
        double x0max = 0.0;
        for (const auto& p : targets) x0max = std::max(x0max, x0_of(p.x, pp.n) + y0_of(p.y, pp.m));
        double xr = x_of(x0max + 8 * coarse.dx, pp.n) + 4 * coarse.dx;
        c1.x_max = c2.x_max = c3.x_max = std::ceil(xr / coarse.dx) * coarse.dx;
    }
    std::vector<double> v1 = oracle_march(data, pp, c1, targets);
    std::vector<double> v2 = oracle_march(data, pp, c2, targets);
    std::vector<double> v3 = oracle_march(data, pp, c3, targets);
    OracleComparison r;
    double n12 = 0.0, n23 = 0.0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        double f = solve_V(targets[t], data, pp, opt);
        double d12 = std::fabs(v1[t] - v2[t]), d23 = std::fabs(v2[t] - v3[t]);
        double self = d23 / 3.0;
        r.formula.push_back(f);
        r.oracle.push_back(v3[t]);
        r.oracle_self_error.push_back(self);
        r.max_deviation = std::max(r.max_deviation, std::fabs(f - v3[t]));
        r.max_self_error = std::max(r.max_self_error, self);
        n12 = std::max(n12, d12);
        n23 = std::max(n23, d23);
    }
    r.self_order = n23 > 0.0 ? std::log2(n12 / n23) : HUGE_VAL;
    return r;
}

double dalembert_value(const CauchyData& data, double x, double y) {
    if (!data.nu1_antiderivative) throw ConfigError("dalembert_value: nu1 antiderivative is required");
    return 0.5 * (data.tau1(x + y) + data.tau1(x - y)) +
           0.5 * (data.nu1_antiderivative(x + y) - data.nu1_antiderivative(x - y));
}

double dalembert_compare(const CauchyData& data, double m_small, const std::vector<PhysicalPoint>& points,
                         const SolveOptions& opt) {
    if (!(m_small > 0.0 && m_small <= 0.05)) throw DomainError("dalembert_compare: need 0 < m_small <= 0.05");
    ProblemParams pp{m_small, 0.0, 0.0};
    double worst = 0.0;
    for (const auto& p : points)
        worst = std::max(worst, std::fabs(solve_V(p, data, pp, opt) - dalembert_value(data, p.x, p.y)));
    return worst;
}

}  // namespace dhyp
