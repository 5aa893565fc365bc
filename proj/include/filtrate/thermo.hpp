#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace filtrate::thermo {

enum class PotentialKind { Ideal, VanDerWaalsExact, VanDerWaalsFirstOrder, Virial };

/// Temperature-dependent virial coefficient A_k(T) with its first two derivatives.
struct VirialCoefficient {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

/// Massieu-Planck potential phi(v, T) of a gas.
///
/// Closed-form kinds:
///   Ideal:                 phi = (n/2) ln T + ln v
///   VanDerWaalsExact:      phi = (n/2) ln T + ln(v - b) + sign * a / (R v T)
///   VanDerWaalsFirstOrder: phi = (n/2) ln T + ln v - b/v + sign * a / (R v T)
///   Virial:                phi = (n/2) ln T + ln v - sum_k A_k(T) v^-k / k
///
/// The attraction term enters with `attraction_sign` (default +1, which yields
/// the standard p = RT/(v-b) - a/v^2 for the exact kind). All quantities use one
/// caller-chosen consistent unit system; r_gas is the specific gas constant of
/// that system.
struct PotentialModel {
    PotentialKind kind = PotentialKind::Ideal;
    double n = 3.0;      // degrees-of-freedom parameter, > 0
    double a = 0.0;      // attraction parameter, >= 0
    double b = 0.0;      // co-volume, >= 0
    double r_gas = 1.0;  // specific gas constant, > 0
    double attraction_sign = 1.0;
    std::vector<VirialCoefficient> virial_coeffs;

    static PotentialModel ideal(double n, double r_gas);
    static PotentialModel vdw_exact(double n, double a, double b, double r_gas);
    static PotentialModel vdw_first_order(double n, double a, double b, double r_gas);
    static PotentialModel virial(double n, double r_gas, std::vector<VirialCoefficient> coeffs);

    /// Smallest admissible specific volume (b for the exact kind, 0 otherwise).
    double v_floor() const;
    void validate() const;
};

/// phi and its partial derivatives at one (v, T) point.
struct PotentialJet {
    double phi = 0.0;
    double phi_v = 0.0;
    double phi_T = 0.0;
    double phi_vv = 0.0;
    double phi_TT = 0.0;
    double phi_vT = 0.0;
    double phi_vvv = 0.0;
};

struct ThermoState {
    double p = 0.0;        // pressure
    double epsilon = 0.0;  // specific energy
    double s = 0.0;        // specific entropy
    double v = 0.0;
    double T = 0.0;
    double r_gas = 0.0;
};

struct ApplicabilityFlags {
    bool convexity_ok = false;      // phi_vv < 0 (strict)
    bool heat_capacity_ok = false;  // T phi_TT + 2 phi_T > 0 (strict)
};

/// Evaluate phi and all partials analytically. Throws DomainError for
/// v <= v_floor or T <= 0.
PotentialJet eval_potential(const PotentialModel& model, double v, double T);

/// State relations p = R T phi_v, epsilon = R T^2 phi_T, s = R (phi + T phi_T).
ThermoState state_from_potential(const PotentialModel& model, double v, double T);

ApplicabilityFlags applicability(const PotentialModel& model, double v, double T);

/// Temperature on the local-stability boundary phi_vv(v, T) = 0 at fixed v.
/// Uses the closed form for the van der Waals kinds; throws NumericError when
/// phi_vv has fixed sign (no boundary), e.g. for the ideal gas.
double spinodal_temperature(const PotentialModel& model, double v);

/// The two volumes bounding the unstable band phi_vv > 0 at fixed T < T_c.
std::pair<double, double> spinodal_volumes(const PotentialModel& model, double T);

struct CriticalPoint {
    double v_c = 0.0;
    double T_c = 0.0;
};

/// Simultaneous root of phi_vv = 0 and phi_vvv = 0.
CriticalPoint critical_point(const PotentialModel& model);

struct CoexistencePair {
    double v1 = 0.0;  // dense phase
    double v2 = 0.0;  // dilute phase
};

/// Phase-coexistence volumes at temperature T < T_c, from
///   phi_v(v1,T) - phi_v(v2,T) = 0
///   phi(v2,T) - phi(v1,T) + v1 phi_v(v1,T) - v2 phi_v(v2,T) = 0
/// solved by damped Newton. Default guesses bracket the unstable band:
/// v1 = midpoint of (v_floor, v_sp_low), v2 = 2 v_sp_high. Throws NumericError
/// on non-convergence or when the pair collapses (|v2 - v1| < 1e-8).
CoexistencePair coexistence_at_T(const PotentialModel& model, double T,
                                 std::optional<CoexistencePair> guess = std::nullopt);

struct CoexistenceRow {
    double T = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

/// Continuation sweep from T_hi down to T_lo (each row seeds the next guess).
std::vector<CoexistenceRow> coexistence_curve(const PotentialModel& model, double T_lo,
                                              double T_hi, int steps);

/// Rectangular (v, T) grid with the differencing steps for the compatibility check.
struct CompatibilityGrid {
    double v_lo = 0.0, v_hi = 0.0;
    int nv = 0;
    double T_lo = 0.0, T_hi = 0.0;
    int nT = 0;
    double h_v = 0.0;
    double h_T = 0.0;
};

/// Max over the grid of |(T^-2 B)_v - (T^-1 A)_T| by central differences, where
/// A(v,T) is the thermic and B(v,T) the caloric state function. Pairs generated
/// from one potential satisfy the identity, so the residual is O(h^2).
double caloric_compatibility_residual(const std::function<double(double, double)>& A,
                                      const std::function<double(double, double)>& B,
                                      const CompatibilityGrid& grid);

}  // namespace filtrate::thermo
