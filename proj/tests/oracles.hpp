// Test-only reference implementations, independent of the library paths they
// check: high-order finite differences of the potential, brute-force
// quadrature, and the equal-area phase-equilibrium construction on p(v).
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace oracles {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max({std::fabs(got), std::fabs(want), 1e-300});
}

// Fourth-order central differences.
inline double d1_o4(const Fn1& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}
inline double d2_o4(const Fn1& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}
inline double d3_o4(const Fn1& f, double x, double h) {
    return (f(x - 3 * h) - 8 * f(x - 2 * h) + 13 * f(x - h) - 13 * f(x + h) +
            8 * f(x + 2 * h) - f(x + 3 * h)) /
           (8 * h * h * h);
}

struct FdJet {
    double phi, phi_v, phi_T, phi_vv, phi_TT, phi_vT, phi_vvv;
};

// Finite-difference jet of a scalar phi(v, T); steps relative to the point.
inline FdJet fd_jet(const Fn2& phi, double v, double T, double rel_h = 5e-3) {
    const double hv = rel_h * v;
    const double hT = rel_h * T;
    auto fv = [&](double vv) { return phi(vv, T); };
    auto fT = [&](double TT) { return phi(v, TT); };
    FdJet j;
    j.phi = phi(v, T);
    j.phi_v = d1_o4(fv, v, hv);
    j.phi_T = d1_o4(fT, T, hT);
    j.phi_vv = d2_o4(fv, v, hv);
    j.phi_TT = d2_o4(fT, T, hT);
    j.phi_vvv = d3_o4(fv, v, hv);
    auto phiv_at = [&](double TT) {
        auto g = [&](double vv) { return phi(vv, TT); };
        return d1_o4(g, v, hv);
    };
    j.phi_vT = d1_o4(phiv_at, T, hT);
    return j;
}

inline double composite_simpson(const Fn1& f, double a, double b, int panels) {
    if (panels % 2 == 1) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Equal-area construction on the pressure isotherm p(v) = RT/(v-b) - a/v^2.
struct MaxwellPair {
    double v1, v2, p_star;
};

inline MaxwellPair maxwell_equal_area(double a, double b, double R, double T,
                                      int panels = 20000) {
    auto p = [&](double v) { return R * T / (v - b) - a / (v * v); };
    auto dp = [&](double v) { return -R * T / ((v - b) * (v - b)) + 2 * a / (v * v * v); };

    auto bisect = [](const Fn1& f, double lo, double hi) {
        double flo = f(lo);
        if (flo == 0.0) return lo;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) return mid;
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    // Isotherm extrema bracket the unstable band.
    const double v_c = 3.0 * b;
    double hi = 2.0 * a / (R * T);
    while (dp(hi) > 0.0) hi *= 2.0;
    const double v_min_loc = bisect(dp, b * (1 + 1e-10), v_c);
    const double v_max_loc = bisect(dp, v_c, hi);

    const double p_hi = p(v_max_loc);
    const double p_lo = std::max(p(v_min_loc), 1e-12 * p_hi);
    if (!(p_hi > p_lo)) throw std::runtime_error("maxwell oracle: empty pressure bracket");

    auto area = [&](double ps) {
        auto f1 = [&](double v) { return p(v) - ps; };
        const double v1 = bisect(f1, b * (1 + 1e-10), v_min_loc);
        double vb = v_max_loc * 2.0;
        while (p(vb) > ps) vb *= 2.0;
        const double v2 = bisect(f1, v_max_loc, vb);
        return composite_simpson(f1, v1, v2, panels);
    };

    double lo = p_lo * (1 + 1e-9), hi_p = p_hi * (1 - 1e-9);
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi_p);
        (area(mid) > 0.0 ? lo : hi_p) = mid;
    }
    const double ps = 0.5 * (lo + hi_p);
    auto f1 = [&](double v) { return p(v) - ps; };
    double vb = v_max_loc * 2.0;
    while (p(vb) > ps) vb *= 2.0;
    return {bisect(f1, b * (1 + 1e-10), v_min_loc), bisect(f1, v_max_loc, vb), ps};
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracles
