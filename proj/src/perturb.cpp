#include "filtrate/perturb.hpp"

#include <algorithm>
#include <cmath>

#include "filtrate/errors.hpp"
#include "filtrate/numerics.hpp"
#include "filtrate/verify.hpp"

namespace filtrate::perturb {

namespace {

struct Case2Params {
    double alpha;  // prefactor of mu = alpha v / T
    double c;      // 4 alpha R
    double k;      // 3 / (1 - q)
    double m;      // (q - 7) / (1 - q), T1 integrand exponent
};

Case2Params params(const CorrectionSet& cs) {
    const auto& sol = cs.base;
    const double alpha = sol.law.alpha;
    return {alpha, 4.0 * alpha * sol.r_gas, sol.exponent(), (sol.q - 7.0) / (1.0 - sol.q)};
}

void check_radius(const CorrectionSet& cs, double r) {
    if (!(r >= cs.r_floor))
        throw DomainError("correction: r below the configured floor (integrand singular at 0)");
}

}  // namespace

CorrectionSet CorrectionSet::make(selfsim::SelfSimilarSolution base, double a, double b,
                                  double c3, double c4, double n, double r_ref) {
    if (base.mode != selfsim::PressureMode::Case2)
        throw DomainError("correction: base solution must use the case-2 pressure (mu = alpha v/T)");
    if (a < 0.0 || b < 0.0) throw DomainError("correction: a and b must be non-negative");
    if (!(n > 0.0)) throw DomainError("correction: n must be positive");
    CorrectionSet cs;
    cs.base = std::move(base);
    cs.a = a;
    cs.b = b;
    cs.c3 = c3;
    cs.c4 = c4;
    cs.n = n;
    cs.r_ref = r_ref;
    if (!(cs.r_ref >= cs.r_floor))
        throw DomainError("correction: r_ref must be at or above the radius floor");
    return cs;
}

thermo::PotentialModel CorrectionSet::truncated_model() const {
    return thermo::PotentialModel::vdw_first_order(n, a, b, base.r_gas);
}

double t1_correction(const CorrectionSet& cs, double r) {
    check_radius(cs, r);
    const Case2Params pp = params(cs);
    const auto& sol = cs.base;
    const double J = 6.0 / (sol.c1 * sol.r_gas * sol.r_gas * (sol.q - 1.0));

    // Shifted integrand e^((rho^2 - r^2)/c) rho^m equals the raw integrand
    // times the trailing e^(-r^2/c) factor of T1.
    const double r2 = r * r;
    auto integrand = [&](double rho) {
        return std::exp((rho * rho - r2) / pp.c) * std::pow(rho, pp.m);
    };
    const double shifted =
        num::integrate_adaptive(integrand, cs.r_ref, r, cs.quad_tol, cs.quad_tol).value;
    return std::pow(r, pp.k) * (J * shifted + cs.c3 * std::exp(-r2 / pp.c));
}

double t1_deriv(const CorrectionSet& cs, double r) {
    const Case2Params pp = params(cs);
    const auto& sol = cs.base;
    const double J = 6.0 / (sol.c1 * sol.r_gas * sol.r_gas * (sol.q - 1.0));
    const double T1 = t1_correction(cs, r);
    return J * std::pow(r, pp.m + pp.k) + T1 * (pp.k / r - 2.0 * r / pp.c);
}

double t2_correction(const CorrectionSet& cs, double r) {
    if (r < 0.0) throw DomainError("correction: r must be non-negative");
    if (r == 0.0 && cs.c4 != 0.0)
        throw DomainError("correction: r = 0 requires c4 = 0 (fractional power of r)");
    const Case2Params pp = params(cs);
    const auto& sol = cs.base;
    const double R = sol.r_gas;
    if (std::fabs(2.0 * sol.q + 1.0) < 1e-12)
        throw DomainError("correction: q = -1/2 is not admissible for T2");
    const double slope = sol.c2 * (sol.q - 1.0) / (2.0 * (2.0 * sol.q + 1.0) * pp.alpha * R * R);
    const double tail = cs.c4 == 0.0 ? 0.0 : cs.c4 * std::pow(r, pp.k);
    return (slope * r * r - sol.c2 / R + tail) * std::exp(-r * r / pp.c);
}

double t2_deriv(const CorrectionSet& cs, double r) {
    const Case2Params pp = params(cs);
    const auto& sol = cs.base;
    const double R = sol.r_gas;
    const double slope = sol.c2 * (sol.q - 1.0) / (2.0 * (2.0 * sol.q + 1.0) * pp.alpha * R * R);
    const double E = std::exp(-r * r / pp.c);
    const double tail_d = cs.c4 == 0.0 ? 0.0 : cs.c4 * pp.k * std::pow(r, pp.k - 1.0);
    return (2.0 * slope * r + tail_d) * E - (2.0 * r / pp.c) * t2_correction(cs, r);
}

CorrectedFields corrected_fields(const CorrectionSet& cs, double r) {
    check_radius(cs, r);
    const auto& sol = cs.base;
    const double R = sol.r_gas;
    const double v0 = selfsim::volume_profile(sol, r);
    const double p0 = selfsim::pressure(sol, r);
    const double T0 = p0 * v0 / R;

    double dT = 0.0;
    if (!cs.suppress_corrections) {
        if (cs.a != 0.0) dT += cs.a * t1_correction(cs, r);
        if (cs.b != 0.0) dT += cs.b * t2_correction(cs, r);
    }

    CorrectedFields out;
    out.v = v0;
    out.T = T0 + dT;
    double dp = 0.0;
    if (cs.b != 0.0) dp += cs.b * R * T0 / (v0 * v0);
    if (cs.a != 0.0) dp -= cs.a / (v0 * v0);
    dp += R * dT / v0;
    out.p = p0 + dp;
    return out;
}

double corrected_pressure_deriv(const CorrectionSet& cs, double r) {
    check_radius(cs, r);
    const auto& sol = cs.base;
    const double R = sol.r_gas;
    const double k = sol.exponent();
    const double v0 = selfsim::volume_profile(sol, r);
    const double p0 = selfsim::pressure(sol, r);
    const double p0p = selfsim::pressure_deriv(sol, r);
    const double T0 = p0 * v0 / R;
    const double v0p_over_v0 = k / r;
    const double T0p = (p0p * v0 + p0 * k * v0 / r) / R;

    double out = p0p;
    if (cs.b != 0.0)
        out += cs.b * R * (T0p - 2.0 * T0 * v0p_over_v0) / (v0 * v0);
    if (cs.a != 0.0)
        out += 2.0 * cs.a * v0p_over_v0 / (v0 * v0);
    if (!cs.suppress_corrections && (cs.a != 0.0 || cs.b != 0.0)) {
        const double dT = (cs.a != 0.0 ? cs.a * t1_correction(cs, r) : 0.0) +
                          (cs.b != 0.0 ? cs.b * t2_correction(cs, r) : 0.0);
        const double dTp = (cs.a != 0.0 ? cs.a * t1_deriv(cs, r) : 0.0) +
                           (cs.b != 0.0 ? cs.b * t2_deriv(cs, r) : 0.0);
        out += R * (dTp - dT * v0p_over_v0) / v0;
    }
    return out;
}

verify::FieldSet field_set(const CorrectionSet& cs) {
    verify::FieldSet fs;
    fs.potential = cs.truncated_model();
    fs.law = cs.base.law;
    const CorrectionSet c = cs;

    auto r_of = [](Point4 P) { return selfsim::similarity_variable(P.t, P.x, P.y, P.z); };
    fs.v = [c, r_of](Point4 P) { return corrected_fields(c, r_of(P)).v; };
    fs.T = [c, r_of](Point4 P) { return corrected_fields(c, r_of(P)).T; };
    fs.p = [c, r_of](Point4 P) { return corrected_fields(c, r_of(P)).p; };
    const auto pot = fs.potential;
    fs.s = [c, pot, r_of](Point4 P) {
        const auto f = corrected_fields(c, r_of(P));
        return thermo::state_from_potential(pot, f.v, f.T).s;
    };
    fs.grad_p = [c, r_of](Point4 P) {
        const double d = P.distance();
        if (d == 0.0) throw DomainError("corrected fields: gradient undefined at the origin");
        const double coeff =
            corrected_pressure_deriv(c, r_of(P)) / (std::sqrt(P.t) * d);
        return Vec3{coeff * P.x, coeff * P.y, coeff * P.z};
    };
    const auto vf = fs.v;
    const auto Tf = fs.T;
    const auto gpf = fs.grad_p;
    const auto lw = fs.law;
    fs.u = [lw, vf, Tf, gpf](Point4 P) {
        return -media::eval_mobility(lw, vf(P), Tf(P)) * gpf(P);
    };
    return fs;
}

OrderReport correction_order_check(const CorrectionSet& cs,
                                   const std::vector<double>& scale_factors,
                                   double fd_step) {
    if (scale_factors.size() < 2)
        throw DomainError("order check: need at least two scale factors");

    // Sample points around the Gaussian radius of the base profile.
    const double r_scale = std::sqrt(params(cs).c);
    std::vector<Point4> points;
    for (double rf : {0.9, 1.1, 1.3}) {
        for (double t : {1.0, 2.25}) {
            const double d = rf * r_scale * std::sqrt(t);
            points.push_back({t, 0.6 * d, 0.64 * d, 0.48 * d});
        }
    }

    OrderReport rep;
    rep.scales = scale_factors;
    for (double sf : scale_factors) {
        CorrectionSet scaled = cs;
        scaled.a = cs.a * sf;
        scaled.b = cs.b * sf;
        const verify::FieldSet fs = field_set(scaled);
        double worst = 0.0;
        for (const Point4& P : points) {
            const auto res = verify::pde_residual(fs, cs.base.law, cs.base.q, P, fd_step);
            worst = std::max({worst, res.normalized_mass(), res.normalized_entropy()});
            rep.darcy_floor = std::max(rep.darcy_floor, res.normalized_darcy());
        }
        rep.residuals.push_back(worst);
    }
    for (std::size_t i = 0; i + 1 < rep.residuals.size(); ++i)
        rep.ratios.push_back(rep.residuals[i] / std::max(rep.residuals[i + 1], 1e-300));
    rep.pass = !rep.ratios.empty();
    for (double r : rep.ratios) rep.pass = rep.pass && r >= 3.2 && r <= 4.8;
    return rep;
}

}  // namespace filtrate::perturb
