#pragma once

// Brute-force reference sums for the series families. Rectangular truncation
// in long double, grown until the boundary layer is negligible. Nothing here
// shares code with the library.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using ld = long double;

inline ld poch(ld a, int n) {
    ld r = 1;
    for (int i = 0; i < n; ++i) r *= a + i;
    return r;
}

inline ld fact(int n) {
    ld r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline ld pw(ld x, int n) {
    ld r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// (a)_0 .. (a)_(n-1); powers and factorials likewise.
inline std::vector<ld> poch_table(ld a, int n) {
    std::vector<ld> t(n);
    t[0] = 1;
    for (int i = 1; i < n; ++i) t[i] = t[i - 1] * (a + i - 1);
    return t;
}

inline std::vector<ld> pow_table(ld x, int n) {
    std::vector<ld> t(n);
    t[0] = 1;
    for (int i = 1; i < n; ++i) t[i] = t[i - 1] * x;
    return t;
}

inline std::vector<ld> fact_table(int n) { return poch_table(1, n); }

// Evaluate the truncation at n, 2n, ... until two estimates agree.
inline ld settle(const std::function<ld(int)>& at, int n0, int n_max, double tol, const char* what) {
    ld prev = 0;
    for (int n = n0; n <= n_max; n *= 2) {
        ld s = at(n);
        if (n > n0 && std::fabs(double(s - prev)) <= tol * std::fmax(1.0, std::fabs(double(s)))) return s;
        prev = s;
    }
    throw std::runtime_error(std::string("oracle: ") + what + " did not settle");
}

// Sum term(i) for i < N, doubling N until two estimates agree.
inline ld sum1(const std::function<ld(int)>& term, int n0 = 40, int n_max = 4000) {
    return settle(
        [&](int n) {
            ld s = 0;
            for (int i = 0; i < n; ++i) s += term(i);
            return s;
        },
        n0, n_max, 1e-17, "sum1");
}

inline double gauss(ld a, ld b, ld c, ld z) {
    return double(settle(
        [&](int n) {
            auto pa = poch_table(a, n), pb = poch_table(b, n), pc = poch_table(c, n), f = fact_table(n),
                 zz = pow_table(z, n);
            ld s = 0;
            for (int m = 0; m < n; ++m) s += pa[m] * pb[m] / (f[m] * pc[m]) * zz[m];
            return s;
        },
        40, 4000, 1e-17, "gauss"));
}

inline double xi2(ld a, ld b, ld c, ld s, ld r) {
    return double(settle(
        [&](int n) {
            auto pa = poch_table(a, n), pb = poch_table(b, n), pc = poch_table(c, 2 * n), f = fact_table(n),
                 ss = pow_table(s, n), rr = pow_table(r, n);
            ld t = 0;
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k) t += pa[m] * pb[m] / (f[m] * f[k] * pc[m + k]) * ss[m] * rr[k];
            return t;
        },
        30, 480, 1e-16, "xi2"));
}

inline double xi_pq(int p, int q, ld a, ld b, ld ap, ld bp, ld c, ld cp, ld dp, ld s, ld r) {
    return double(settle(
        [&](int n) {
            auto pa = poch_table(a, n), pb = poch_table(b, n), pc = poch_table(c, 2 * n), f = fact_table(n),
                 pap = poch_table(ap, n), pcp = poch_table(cp, n), pbp = poch_table(bp, 2 * n),
                 pdp = poch_table(dp, 2 * n), ss = pow_table(s, n), rr = pow_table(r, n);
            ld t = 0;
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k)
                    t += pa[m] * pb[m] * pap[p * k] * pbp[q * (m + k)] /
                         (f[m] * f[k] * pc[m + k] * pcp[p * k] * pdp[q * (m + k)]) * ss[m] * rr[k];
            return t;
        },
        30, 480, 1e-16, "xi_pq"));
}

inline double phi(ld a, ld b, ld c, ld d, ld e, ld s, ld w, ld r) {
    return double(settle(
        [&](int n) {
            auto pa = poch_table(a, n), pb = poch_table(b, n), pc = poch_table(c, n), pd = poch_table(d, n),
                 pe = poch_table(e, 3 * n), f = fact_table(n), ss = pow_table(s, n), ww = pow_table(w, n),
                 rr = pow_table(r, n);
            ld t = 0;
            for (int m = 0; m < n; ++m)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        t += pa[m] * pb[j] * pc[m] * pd[j] / (f[m] * f[j] * f[k] * pe[m + j + k]) * ss[m] * ww[j] *
                             rr[k];
            return t;
        },
        20, 160, 1e-16, "phi"));
}

// Inner Gauss factor by its own partial sums; needs |theta| well below 1.
inline double psi_pq(int p, int q, ld a, ld b, ld c, ld d, ld e, ld ap, ld bp, ld cp, ld dp, ld s, ld th,
                     ld r) {
    auto inner = [&](int sh) {
        return sum1([&](int j) {
            return poch(b, j) * poch(e - d + sh, j) / (fact(j) * poch(e + sh, j)) * pw(th, j);
        });
    };
    std::vector<ld> cache;
    return double(settle(
        [&](int n) {
            while (static_cast<int>(cache.size()) < 2 * n) cache.push_back(inner(static_cast<int>(cache.size())));
            auto pa = poch_table(a, n), pc = poch_table(c, n), pe = poch_table(e, 2 * n), f = fact_table(n),
                 pap = poch_table(ap, n), pcp = poch_table(cp, n), pbp = poch_table(bp, 2 * n),
                 pdp = poch_table(dp, 2 * n), ss = pow_table(s, n), rr = pow_table(r, n);
            ld t = 0;
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k)
                    t += pa[m] * pc[m] * pap[p * k] * pbp[q * (m + k)] /
                         (f[m] * f[k] * pe[m + k] * pcp[p * k] * pdp[q * (m + k)]) * cache[m + k] * ss[m] * rr[k];
            return t;
        },
        30, 480, 1e-16, "psi_pq"));
}

}  // namespace oracle
