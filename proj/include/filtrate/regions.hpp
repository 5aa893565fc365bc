#pragma once

#include <string>
#include <utility>
#include <vector>

#include "filtrate/selfsim.hpp"
#include "filtrate/thermo.hpp"

namespace filtrate::regions {

/// Physical bounds classifying points of the (distance, time) plane, plus the
/// plotting window and grid resolution.
struct RegionSpec {
    double v_min = 0.0;     // dilute-gas validity: v(r) >= v_min
    double p_min = 0.0;     // pressure band
    double p_max = 0.0;
    double temp_min = 0.0;  // temperature band
    double temp_max = 0.0;
    double d_max = 1.0;     // window (0, d_max] x (0, t_max]
    double t_max = 1.0;
    int nx = 2;
    int ny = 2;

    void validate() const;

    /// Similarity-variable range covered by the grid.
    std::pair<double, double> r_range() const;
};

struct PointFlags {
    bool density_ok = false;
    bool pressure_ok = false;
    bool temperature_ok = false;
    bool all_ok = false;
};

/// Flags at (d, t): all bounds are evaluated on the profiles at r = d / sqrt(t),
/// so the classification depends on (d, t) only through r.
PointFlags classify_point(const selfsim::SelfSimilarSolution& sol, const RegionSpec& spec,
                          double d, double t);

struct GridRow {
    double d = 0.0;
    double t = 0.0;
    PointFlags flags;
};

/// Row-major nx x ny sweep over (0, d_max] x (0, t_max].
std::vector<GridRow> region_grid(const selfsim::SelfSimilarSolution& sol,
                                 const RegionSpec& spec);

struct BoundaryCurve {
    std::string label;  // v_min, p_min, p_max, T_min, T_max
    double r_star = 0.0;
};

/// All radii where a bound binds; each sweeps the parabola d = r* sqrt(t).
/// Thresholds that never bind are absent (not an error).
std::vector<BoundaryCurve> boundary_curves(const selfsim::SelfSimilarSolution& sol,
                                           const RegionSpec& spec);

enum class PhaseCurveKind { Coexistence, Spinodal };

struct PhaseCurve {
    PhaseCurveKind kind = PhaseCurveKind::Coexistence;
    double r_star = 0.0;
    double v_at = 0.0;  // trajectory state at the crossing
    double T_at = 0.0;
};

struct PhaseTraceOptions {
    int samples = 2048;          // log-uniform sampling in r
    double r_lo = 0.0;           // 0 = derive from the region grid
    double r_hi = 0.0;
    double coex_T_floor_frac = 0.15;  // skip coexistence tracing below this * T_c
};

/// Crossings of the solution trajectory (v(r), T(r)) with the coexistence
/// curve and with the stability boundary phi_vv = 0; each r* defines the
/// parabola d = r* sqrt(t). Sorted by r*. Empty when the gas has no phase
/// region (e.g. ideal).
std::vector<PhaseCurve> phase_curves(const selfsim::SelfSimilarSolution& sol,
                                     const thermo::PotentialModel& model,
                                     const PhaseTraceOptions& opts = {});

struct PhaseReport {
    bool no_phase_transition_in_physical_region = true;
    std::vector<PhaseCurve> curves;
    std::vector<std::pair<double, double>> all_ok_intervals;  // in r
    std::vector<double> min_distances;  // |r*| distance to the all_ok set, per curve
};

/// True iff no phase curve enters the all_ok region of the grid window.
PhaseReport physical_phase_report(const selfsim::SelfSimilarSolution& sol,
                                  const thermo::PotentialModel& model,
                                  const RegionSpec& spec,
                                  const PhaseTraceOptions& opts = {});

}  // namespace filtrate::regions
