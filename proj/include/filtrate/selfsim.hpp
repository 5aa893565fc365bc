#pragma once

#include <utility>

#include "filtrate/media.hpp"
#include "filtrate/types.hpp"

namespace filtrate::selfsim {

/// Pressure evaluation route. Cases 1-4 are the closed forms admitted by the
/// matching mobility families; Numeric integrates dp/dr = -r / (2 mu(v, pv/R))
/// from a caller-supplied anchor.
enum class PressureMode { Case1, Case2, Case3, Case4, Numeric };

/// Radially self-similar solution of the filtration system for an ideal gas:
/// profiles of v, p, T over the similarity variable r = sqrt((x^2+y^2+z^2)/t).
///
///   v(r) = R C1 r^(3/(1-q))
///   p(r) from the selected closed form, or by integrating the radial ODE
///   T(r) = p(r) v(r) / R
struct SelfSimilarSolution {
    double q = 0.5;      // porosity, in (0, 1)
    double c1 = 1.0;     // volume-profile constant, > 0
    double c2 = 1.0;     // pressure integration constant
    double r_gas = 1.0;  // specific gas constant
    media::MediumLaw law;
    PressureMode mode = PressureMode::Case2;
    double r0 = 1.0;          // numeric-mode anchor radius
    double p0 = 0.0;          // numeric-mode anchor pressure
    double ode_rel_tol = 1e-9;

    double exponent() const { return 3.0 / (1.0 - q); }

    /// Validates ranges and that the mobility law matches the selected case.
    static SelfSimilarSolution make(double q, double c1, double c2, double r_gas,
                                    media::MediumLaw law, PressureMode mode, double r0 = 1.0,
                                    double p0 = 0.0);
};

/// r = sqrt((x^2 + y^2 + z^2) / t); requires t > 0.
double similarity_variable(double t, double x, double y, double z);

double volume_profile(const SelfSimilarSolution& sol, double r);

/// Closed-form pressure for modes Case1..Case4. Throws DomainError when a
/// fractional power would see a negative base (e.g. case 1 with r^2 > C2) and
/// NumericError for violated case restrictions.
double pressure_closed_form(const SelfSimilarSolution& sol, double r);

/// Integrate the pressure ODE from (r_from, p_from) to r. The temperature
/// substitution T = p v(r) / R closes the equation in p. Throws NumericError
/// on step underflow or when p crosses zero (message carries the radius).
double pressure_numeric(const SelfSimilarSolution& sol, double r_from, double p_from,
                        double r);

/// Dispatch: closed form for Case1..4, anchored integration for Numeric.
double pressure(const SelfSimilarSolution& sol, double r);

/// dp/dr: analytic for the closed forms, ODE right-hand side for Numeric.
double pressure_deriv(const SelfSimilarSolution& sol, double r);

/// d2p/dr2 for the closed forms (used by the reduced-system residuals).
double pressure_second_deriv(const SelfSimilarSolution& sol, double r);

double temperature_profile(const SelfSimilarSolution& sol, double r);

/// Darcy flow u = -mu(v, T) grad p evaluated on the self-similar field.
Vec3 flow_field(const SelfSimilarSolution& sol, double t, double x, double y, double z);

/// Residuals of the two reduced radial equations, each scaled by its largest
/// constituent term. The second argument of the pair is the mass-conservation
/// reduction; the first factors through the entropy equation and needs the
/// degrees-of-freedom parameter n.
std::pair<double, double> reduced_ode_residual(const SelfSimilarSolution& sol, double r,
                                               double n = 3.0);

/// Residuals from explicitly supplied profile jets (v, v_r, v_rr, T, T_r, T_rr).
std::pair<double, double> reduced_residual_from_jets(const media::MediumLaw& law,
                                                     double r_gas, double q, double n,
                                                     double r, double v, double v_r,
                                                     double v_rr, double T, double T_r,
                                                     double T_rr);

}  // namespace filtrate::selfsim
