#include "filtrate/selfsim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filtrate/errors.hpp"
#include "filtrate/numerics.hpp"

namespace filtrate::selfsim {

namespace {

constexpr double kTiny = 1e-300;

bool is_close(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max({std::fabs(a), std::fabs(b), 1.0});
}

// Canonical (prefactor, beta, gamma) of a declared pure-power law
// mu = alpha v^beta T^gamma; RatioPower maps to (-beta, beta).
struct PowerParams {
    double alpha, beta, gamma;
};

PowerParams power_params(const media::MediumLaw& law) {
    switch (law.family) {
        case media::MediumFamily::PowerLaw:
            return {law.alpha, law.beta, law.gamma};
        case media::MediumFamily::RatioPower:
            return {law.alpha, -law.beta, law.beta};
        default:
            throw NumericError("self-similar: closed-form cases need a pure power law");
    }
}

void check_case_restrictions(const SelfSimilarSolution& sol) {
    if (sol.mode == PressureMode::Numeric) return;
    const PowerParams pw = power_params(sol.law);
    switch (sol.mode) {
        case PressureMode::Case1: {
            // mu = alpha (T/v)^beta with beta != -1.
            if (!is_close(pw.beta, -pw.gamma))
                throw NumericError("self-similar case 1: law must be a ratio power (T/v)^beta");
            if (is_close(pw.gamma, -1.0))
                throw NumericError("self-similar case 1: beta = -1 not admissible");
            break;
        }
        case PressureMode::Case2: {
            if (!is_close(pw.beta, 1.0) || !is_close(pw.gamma, -1.0))
                throw NumericError("self-similar case 2: law must be mu = alpha v / T");
            if (!(sol.c2 > 0.0))
                throw NumericError("self-similar case 2: c2 must be positive");
            break;
        }
        case PressureMode::Case3: {
            if (is_close(pw.gamma, -1.0))
                throw NumericError("self-similar case 3: gamma = -1 not admissible");
            const double den = 3.0 * pw.gamma + 3.0 * pw.beta + 2.0 * sol.q - 2.0;
            if (std::fabs(den) < 1e-12)
                throw NumericError(
                    "self-similar case 3: 3 gamma + 3 beta + 2q - 2 must be nonzero");
            break;
        }
        case PressureMode::Case4: {
            if (!is_close(pw.gamma, -1.0))
                throw NumericError("self-similar case 4: law must be mu = alpha v^beta / T");
            const double den = 3.0 * pw.beta + 2.0 * sol.q - 5.0;
            if (std::fabs(den) < 1e-12)
                throw NumericError("self-similar case 4: 3 beta + 2q - 5 must be nonzero");
            if (!(sol.c2 > 0.0))
                throw NumericError("self-similar case 4: c2 must be positive");
            break;
        }
        default:
            break;
    }
}

}  // namespace

SelfSimilarSolution SelfSimilarSolution::make(double q, double c1, double c2, double r_gas,
                                              media::MediumLaw law, PressureMode mode,
                                              double r0, double p0) {
    if (!(q > 0.0 && q < 1.0))
        throw DomainError("self-similar: porosity q must lie in (0, 1)");
    if (!(c1 > 0.0)) throw DomainError("self-similar: c1 must be positive");
    if (!(r_gas > 0.0)) throw DomainError("self-similar: r_gas must be positive");
    law.validate();

    SelfSimilarSolution sol;
    sol.q = q;
    sol.c1 = c1;
    sol.c2 = c2;
    sol.r_gas = r_gas;
    sol.law = std::move(law);
    sol.mode = mode;
    sol.r0 = r0;
    sol.p0 = p0;
    if (mode == PressureMode::Numeric) {
        if (!(r0 > 0.0)) throw DomainError("self-similar: numeric anchor needs r0 > 0");
        if (!(p0 > 0.0)) throw DomainError("self-similar: numeric anchor needs p0 > 0");
    }
    check_case_restrictions(sol);
    return sol;
}

double similarity_variable(double t, double x, double y, double z) {
    if (!(t > 0.0)) throw DomainError("similarity variable: t must be positive");
    return std::sqrt((x * x + y * y + z * z) / t);
}

double volume_profile(const SelfSimilarSolution& sol, double r) {
    if (!(r > 0.0)) throw DomainError("volume profile: r must be positive");
    return sol.r_gas * sol.c1 * std::pow(r, sol.exponent());
}

double pressure_closed_form(const SelfSimilarSolution& sol, double r) {
    if (r < 0.0) throw DomainError("pressure: r must be non-negative");
    const double R = sol.r_gas;
    const double q = sol.q;

    switch (sol.mode) {
        case PressureMode::Case1: {
            const PowerParams pw = power_params(sol.law);
            const double beta = pw.gamma;  // ratio exponent
            const double base = (1.0 + beta) * (sol.c2 - r * r) / (4.0 * pw.alpha * R);
            if (base < 0.0)
                throw DomainError("pressure case 1: negative base under a fractional power");
            return R * std::pow(base, 1.0 / (1.0 + beta));
        }
        case PressureMode::Case2: {
            const double c = 4.0 * sol.law.alpha * R;
            return sol.c2 * std::exp(-r * r / c);
        }
        case PressureMode::Case3: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.gamma + 3.0 * pw.beta + 2.0 * q - 2.0;
            const double m = den / (q - 1.0);
            const double D = std::pow(sol.c1, -pw.beta - pw.gamma) * (1.0 + pw.gamma) *
                             (1.0 - q) / (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            if (r == 0.0 && m < 0.0)
                throw DomainError("pressure case 3: r = 0 with a negative radial exponent");
            const double base = sol.c2 + D * std::pow(r, m);
            if (base < 0.0)
                throw DomainError("pressure case 3: negative base under a fractional power");
            return std::pow(base, 1.0 / (1.0 + pw.gamma));
        }
        case PressureMode::Case4: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.beta + 2.0 * q - 5.0;
            const double s = den / (q - 1.0);
            const double G = std::pow(sol.c1, 1.0 - pw.beta) * (1.0 - q) /
                             (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            if (r == 0.0 && s < 0.0)
                throw DomainError("pressure case 4: r = 0 with a negative radial exponent");
            return sol.c2 * std::exp(G * std::pow(r, s));
        }
        case PressureMode::Numeric:
            throw NumericError("pressure: numeric mode has no closed form");
    }
    throw NumericError("pressure: unknown mode");
}

double pressure_numeric(const SelfSimilarSolution& sol, double r_from, double p_from,
                        double r) {
    if (!(r_from > 0.0) || !(r > 0.0))
        throw DomainError("pressure ode: radii must be positive");
    if (!(p_from > 0.0)) throw DomainError("pressure ode: anchor pressure must be positive");

    auto rhs = [&](double rr, double p) {
        const double v = volume_profile(sol, rr);
        const double T = p * v / sol.r_gas;
        return -rr / (2.0 * media::eval_mobility(sol.law, v, T));
    };
    num::OdeOptions opts;
    opts.rel_tol = sol.ode_rel_tol;
    opts.abs_tol = 0.0;
    opts.require_positive = true;
    return num::integrate_ode(rhs, r_from, p_from, r, opts);
}

double pressure(const SelfSimilarSolution& sol, double r) {
    if (sol.mode == PressureMode::Numeric) return pressure_numeric(sol, sol.r0, sol.p0, r);
    return pressure_closed_form(sol, r);
}

double pressure_deriv(const SelfSimilarSolution& sol, double r) {
    const double R = sol.r_gas;
    const double q = sol.q;
    switch (sol.mode) {
        case PressureMode::Case1: {
            const PowerParams pw = power_params(sol.law);
            const double beta = pw.gamma;
            const double e = 1.0 / (1.0 + beta);
            const double Z = (1.0 + beta) * (sol.c2 - r * r) / (4.0 * pw.alpha * R);
            const double Zp = -(1.0 + beta) * r / (2.0 * pw.alpha * R);
            if (Z < 0.0) throw DomainError("pressure case 1: outside the admissible range");
            return R * e * std::pow(Z, e - 1.0) * Zp;
        }
        case PressureMode::Case2: {
            const double c = 4.0 * sol.law.alpha * R;
            return -2.0 * r / c * pressure_closed_form(sol, r);
        }
        case PressureMode::Case3: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.gamma + 3.0 * pw.beta + 2.0 * q - 2.0;
            const double m = den / (q - 1.0);
            const double D = std::pow(sol.c1, -pw.beta - pw.gamma) * (1.0 + pw.gamma) *
                             (1.0 - q) / (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            const double e = 1.0 / (1.0 + pw.gamma);
            const double Z = sol.c2 + D * std::pow(r, m);
            if (Z < 0.0) throw DomainError("pressure case 3: outside the admissible range");
            return e * std::pow(Z, e - 1.0) * D * m * std::pow(r, m - 1.0);
        }
        case PressureMode::Case4: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.beta + 2.0 * q - 5.0;
            const double s = den / (q - 1.0);
            const double G = std::pow(sol.c1, 1.0 - pw.beta) * (1.0 - q) /
                             (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            return G * s * std::pow(r, s - 1.0) * pressure_closed_form(sol, r);
        }
        case PressureMode::Numeric: {
            const double p = pressure(sol, r);
            const double v = volume_profile(sol, r);
            const double T = p * v / R;
            return -r / (2.0 * media::eval_mobility(sol.law, v, T));
        }
    }
    throw NumericError("pressure derivative: unknown mode");
}

double pressure_second_deriv(const SelfSimilarSolution& sol, double r) {
    const double R = sol.r_gas;
    const double q = sol.q;
    switch (sol.mode) {
        case PressureMode::Case1: {
            const PowerParams pw = power_params(sol.law);
            const double beta = pw.gamma;
            const double e = 1.0 / (1.0 + beta);
            const double Z = (1.0 + beta) * (sol.c2 - r * r) / (4.0 * pw.alpha * R);
            const double Zp = -(1.0 + beta) * r / (2.0 * pw.alpha * R);
            const double Zpp = -(1.0 + beta) / (2.0 * pw.alpha * R);
            if (Z < 0.0) throw DomainError("pressure case 1: outside the admissible range");
            return R * e *
                   ((e - 1.0) * std::pow(Z, e - 2.0) * Zp * Zp + std::pow(Z, e - 1.0) * Zpp);
        }
        case PressureMode::Case2: {
            const double c = 4.0 * sol.law.alpha * R;
            const double p = pressure_closed_form(sol, r);
            const double pp = -2.0 * r / c * p;
            return -2.0 / c * (p + r * pp);
        }
        case PressureMode::Case3: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.gamma + 3.0 * pw.beta + 2.0 * q - 2.0;
            const double m = den / (q - 1.0);
            const double D = std::pow(sol.c1, -pw.beta - pw.gamma) * (1.0 + pw.gamma) *
                             (1.0 - q) / (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            const double e = 1.0 / (1.0 + pw.gamma);
            const double Z = sol.c2 + D * std::pow(r, m);
            const double Zp = D * m * std::pow(r, m - 1.0);
            const double Zpp = D * m * (m - 1.0) * std::pow(r, m - 2.0);
            if (Z < 0.0) throw DomainError("pressure case 3: outside the admissible range");
            return e * (e - 1.0) * std::pow(Z, e - 2.0) * Zp * Zp +
                   e * std::pow(Z, e - 1.0) * Zpp;
        }
        case PressureMode::Case4: {
            const PowerParams pw = power_params(sol.law);
            const double den = 3.0 * pw.beta + 2.0 * q - 5.0;
            const double s = den / (q - 1.0);
            const double G = std::pow(sol.c1, 1.0 - pw.beta) * (1.0 - q) /
                             (2.0 * pw.alpha * std::pow(R, pw.beta) * den);
            const double p = pressure_closed_form(sol, r);
            const double w1 = G * s * std::pow(r, s - 1.0);
            return (G * s * (s - 1.0) * std::pow(r, s - 2.0) + w1 * w1) * p;
        }
        case PressureMode::Numeric:
            throw NumericError("pressure second derivative: not available in numeric mode");
    }
    throw NumericError("pressure second derivative: unknown mode");
}

double temperature_profile(const SelfSimilarSolution& sol, double r) {
    return pressure(sol, r) * volume_profile(sol, r) / sol.r_gas;
}

Vec3 flow_field(const SelfSimilarSolution& sol, double t, double x, double y, double z) {
    const double d = std::sqrt(x * x + y * y + z * z);
    if (d == 0.0) throw DomainError("flow field: undefined on the spatial origin");
    const double r = similarity_variable(t, x, y, z);
    const double v = volume_profile(sol, r);
    const double T = temperature_profile(sol, r);
    const double mu = media::eval_mobility(sol.law, v, T);
    const double coeff = -mu * pressure_deriv(sol, r) / (std::sqrt(t) * d);
    return {coeff * x, coeff * y, coeff * z};
}

std::pair<double, double> reduced_residual_from_jets(const media::MediumLaw& law,
                                                     double r_gas, double q, double n,
                                                     double r, double v, double v_r,
                                                     double v_rr, double T, double T_r,
                                                     double T_rr) {
    const media::MobilityJet mj = media::mobility_jet(law, v, T);
    const double mu_r = mj.mu_v * v_r + mj.mu_T * T_r;
    const double W = v_r * T - v * T_r;
    const double Wp = v_rr * T - v * T_rr;

    // Entropy-equation reduction: (2 R mu W - r v^2)(2 v_r T + n v T_r) = 0.
    const double f1a = 2.0 * r_gas * mj.mu * W;
    const double f1b = -r * v * v;
    const double f2a = 2.0 * v_r * T;
    const double f2b = n * v * T_r;
    const double scale1 = std::max(std::fabs(f1a), std::fabs(f1b));
    const double scale2 = std::max(std::fabs(f2a), std::fabs(f2b));
    const double res1 = std::fabs((f1a + f1b) * (f2a + f2b)) /
                        std::max(scale1 * scale2, kTiny);

    // Mass-conservation reduction:
    // 2 R mu (r v W' + (2v - 3 r v_r) W) + 2 R mu_r r v W + q r^2 v^2 v_r = 0.
    const double A1 = 2.0 * r_gas * mj.mu * r * v * Wp;
    const double A2 = 2.0 * r_gas * mj.mu * (2.0 * v - 3.0 * r * v_r) * W;
    const double A3 = 2.0 * r_gas * mu_r * r * v * W;
    const double A4 = q * r * r * v * v * v_r;
    const double scale_m =
        std::max({std::fabs(A1), std::fabs(A2), std::fabs(A3), std::fabs(A4), kTiny});
    const double res2 = std::fabs(A1 + A2 + A3 + A4) / scale_m;

    return {res1, res2};
}

std::pair<double, double> reduced_ode_residual(const SelfSimilarSolution& sol, double r,
                                               double n) {
    if (!(r > 0.0)) throw DomainError("reduced residual: r must be positive");
    const double k = sol.exponent();
    const double v = volume_profile(sol, r);
    const double v_r = k * v / r;
    const double v_rr = k * (k - 1.0) * v / (r * r);

    double T, T_r, T_rr;
    if (sol.mode == PressureMode::Numeric) {
        const double h = 1e-4 * r;
        auto Tof = [&](double rr) { return temperature_profile(sol, rr); };
        T = Tof(r);
        T_r = num::deriv1_o4(Tof, r, h);
        T_rr = num::deriv2_o4(Tof, r, h);
    } else {
        const double p = pressure_closed_form(sol, r);
        const double pp = pressure_deriv(sol, r);
        const double ppp = pressure_second_deriv(sol, r);
        T = p * v / sol.r_gas;
        T_r = (pp * v + p * v_r) / sol.r_gas;
        T_rr = (ppp * v + 2.0 * pp * v_r + p * v_rr) / sol.r_gas;
    }
    return reduced_residual_from_jets(sol.law, sol.r_gas, sol.q, n, r, v, v_r, v_rr, T, T_r,
                                      T_rr);
}

}  // namespace filtrate::selfsim
