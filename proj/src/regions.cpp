#include "filtrate/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "filtrate/errors.hpp"
#include "filtrate/numerics.hpp"

namespace filtrate::regions {

void RegionSpec::validate() const {
    if (!(v_min > 0.0)) throw DomainError("region: v_min must be positive");
    if (!(0.0 < p_min && p_min < p_max))
        throw DomainError("region: need 0 < p_min < p_max");
    if (!(0.0 < temp_min && temp_min < temp_max))
        throw DomainError("region: need 0 < temp_min < temp_max");
    if (!(d_max > 0.0) || !(t_max > 0.0))
        throw DomainError("region: window extents must be positive");
    if (nx < 2 || ny < 2) throw DomainError("region: grid must be at least 2 x 2");
}

std::pair<double, double> RegionSpec::r_range() const {
    const double d_min = d_max / nx;
    const double t_min = t_max / ny;
    return {d_min / std::sqrt(t_max), d_max / std::sqrt(t_min)};
}

PointFlags classify_point(const selfsim::SelfSimilarSolution& sol, const RegionSpec& spec,
                          double d, double t) {
    if (!(t > 0.0) || !(d > 0.0))
        throw DomainError("region: classification needs d > 0 and t > 0");
    const double r = d / std::sqrt(t);
    const double v = selfsim::volume_profile(sol, r);
    const double p = selfsim::pressure(sol, r);
    const double T = p * v / sol.r_gas;

    PointFlags f;
    f.density_ok = v >= spec.v_min;
    f.pressure_ok = p >= spec.p_min && p <= spec.p_max;
    f.temperature_ok = T >= spec.temp_min && T <= spec.temp_max;
    f.all_ok = f.density_ok && f.pressure_ok && f.temperature_ok;
    return f;
}

std::vector<GridRow> region_grid(const selfsim::SelfSimilarSolution& sol,
                                 const RegionSpec& spec) {
    spec.validate();
    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny));
    for (int i = 1; i <= spec.nx; ++i) {
        const double d = spec.d_max * static_cast<double>(i) / spec.nx;
        for (int j = 1; j <= spec.ny; ++j) {
            const double t = spec.t_max * static_cast<double>(j) / spec.ny;
            rows.push_back({d, t, classify_point(sol, spec, d, t)});
        }
    }
    return rows;
}

namespace {

// All roots of f on [r_lo, r_hi] by log-uniform sampling plus bisection.
// An endpoint where |f| is already below tol * scale counts as a root
// (threshold binding in the limit, e.g. p_min equal to the peak pressure).
std::vector<double> threshold_roots(const std::function<double(double)>& f, double r_lo,
                                    double r_hi, double scale, int samples) {
    std::vector<double> roots;
    const auto rs = num::logspace(r_lo, r_hi, samples);
    auto safe_f = [&](double r) {
        try {
            return f(r);
        } catch (const DomainError&) {
            return std::nan("");
        } catch (const NumericError&) {
            return std::nan("");
        }
    };
    const double f_lo = safe_f(r_lo);
    if (std::isfinite(f_lo) && std::fabs(f_lo) <= 1e-10 * scale) roots.push_back(r_lo);
    for (const auto& [a, b] : num::sign_change_brackets(safe_f, rs)) {
        if (a == b) {
            roots.push_back(a);
            continue;
        }
        roots.push_back(num::bisect_root(safe_f, a, b, 1e-12));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) {
                                return std::fabs(a - b) <=
                                       1e-9 * std::max(std::fabs(a), std::fabs(b));
                            }),
                roots.end());
    return roots;
}

}  // namespace

std::vector<BoundaryCurve> boundary_curves(const selfsim::SelfSimilarSolution& sol,
                                           const RegionSpec& spec) {
    spec.validate();
    const auto [r_lo, r_hi] = spec.r_range();

    auto v_of = [&](double r) { return selfsim::volume_profile(sol, r); };
    auto p_of = [&](double r) { return selfsim::pressure(sol, r); };
    auto T_of = [&](double r) { return p_of(r) * v_of(r) / sol.r_gas; };

    std::vector<BoundaryCurve> out;
    struct Threshold {
        std::string label;
        std::function<double(double)> f;
        double scale;
    };
    const std::vector<Threshold> thresholds = {
        {"v_min", [&](double r) { return v_of(r) - spec.v_min; }, spec.v_min},
        {"p_min", [&](double r) { return p_of(r) - spec.p_min; }, spec.p_min},
        {"p_max", [&](double r) { return p_of(r) - spec.p_max; }, spec.p_max},
        {"T_min", [&](double r) { return T_of(r) - spec.temp_min; }, spec.temp_min},
        {"T_max", [&](double r) { return T_of(r) - spec.temp_max; }, spec.temp_max},
    };
    const int samples = 2048;
    for (const auto& th : thresholds)
        for (double r : threshold_roots(th.f, r_lo, r_hi, th.scale, samples))
            out.push_back({th.label, r});
    return out;
}

namespace {

// Signed inside-the-two-phase-dome indicator along the trajectory, positive
// strictly inside. Continuation-seeded coexistence pairs per temperature.
class DomeDistance {
  public:
    DomeDistance(const thermo::PotentialModel& model, double T_floor)
        : model_(model), cp_(thermo::critical_point(model)), T_floor_(T_floor) {}

    double T_c() const { return cp_.T_c; }
    double T_floor() const { return T_floor_; }

    std::optional<double> operator()(double v, double T) {
        if (T >= cp_.T_c) return -(T - cp_.T_c) - 1e-300;
        if (T < T_floor_) return std::nullopt;  // untraceable: too far below critical
        const auto pair = pair_at(T);
        return std::min(v - pair.v1, pair.v2 - v);
    }

    thermo::CoexistencePair pair_at(double T) {
        const auto r = thermo::coexistence_at_T(model_, T, seed_);
        seed_ = r;
        return r;
    }

  private:
    thermo::PotentialModel model_;
    thermo::CriticalPoint cp_;
    double T_floor_;
    std::optional<thermo::CoexistencePair> seed_;
};

}  // namespace

std::vector<PhaseCurve> phase_curves(const selfsim::SelfSimilarSolution& sol,
                                     const thermo::PotentialModel& model,
                                     const PhaseTraceOptions& opts) {
    std::vector<PhaseCurve> out;

    thermo::CriticalPoint cp;
    try {
        cp = thermo::critical_point(model);
    } catch (const NumericError&) {
        return out;  // no phase region (ideal gas, degenerate truncation)
    }

    double r_lo = opts.r_lo, r_hi = opts.r_hi;
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw DomainError("phase curves: tracing needs 0 < r_lo < r_hi");

    auto v_of = [&](double r) { return selfsim::volume_profile(sol, r); };
    auto T_of = [&](double r) { return selfsim::temperature_profile(sol, r); };

    // Restrict to radii where the trajectory stays in the model's domain.
    auto in_domain = [&](double r) {
        const double v = v_of(r);
        const double T = T_of(r);
        return v > model.v_floor() * (1.0 + 1e-9) && T > 0.0 && std::isfinite(v) &&
               std::isfinite(T);
    };

    const auto rs = num::logspace(r_lo, r_hi, opts.samples);

    // Stability boundary: sign changes of phi_vv along the trajectory.
    auto spinodal_f = [&](double r) -> double {
        if (!in_domain(r)) return std::nan("");
        return thermo::eval_potential(model, v_of(r), T_of(r)).phi_vv;
    };
    for (const auto& [a, b] : num::sign_change_brackets(spinodal_f, rs)) {
        const double r_star = a == b ? a : num::bisect_root(spinodal_f, a, b, 1e-12);
        out.push_back({PhaseCurveKind::Spinodal, r_star, v_of(r_star), T_of(r_star)});
    }

    // Coexistence: sign changes of the dome indicator.
    DomeDistance dome(model, opts.coex_T_floor_frac * cp.T_c);
    auto coex_f = [&](double r) -> double {
        if (!in_domain(r)) return std::nan("");
        const auto d = dome(v_of(r), T_of(r));
        return d ? *d : std::nan("");
    };
    for (const auto& [a, b] : num::sign_change_brackets(coex_f, rs)) {
        const double r_star = a == b ? a : num::bisect_root(coex_f, a, b, 1e-12);
        out.push_back({PhaseCurveKind::Coexistence, r_star, v_of(r_star), T_of(r_star)});
    }

    std::sort(out.begin(), out.end(),
              [](const PhaseCurve& a, const PhaseCurve& b) { return a.r_star < b.r_star; });
    return out;
}

PhaseReport physical_phase_report(const selfsim::SelfSimilarSolution& sol,
                                  const thermo::PotentialModel& model,
                                  const RegionSpec& spec, const PhaseTraceOptions& opts) {
    spec.validate();
    const auto [r_lo, r_hi] = spec.r_range();

    PhaseTraceOptions topts = opts;
    if (!(topts.r_lo > 0.0)) topts.r_lo = r_lo;
    if (!(topts.r_hi > 0.0)) topts.r_hi = r_hi;

    PhaseReport rep;
    rep.curves = phase_curves(sol, model, topts);

    // all_ok intervals in r: segment [r_lo, r_hi] at every threshold root and
    // classify midpoints.
    std::vector<double> cuts = {r_lo, r_hi};
    for (const auto& bc : boundary_curves(sol, spec))
        if (bc.r_star > r_lo && bc.r_star < r_hi) cuts.push_back(bc.r_star);
    std::sort(cuts.begin(), cuts.end());

    auto all_ok_at = [&](double r) {
        const double v = selfsim::volume_profile(sol, r);
        const double p = selfsim::pressure(sol, r);
        const double T = p * v / sol.r_gas;
        return v >= spec.v_min && p >= spec.p_min && p <= spec.p_max &&
               T >= spec.temp_min && T <= spec.temp_max;
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = std::sqrt(cuts[i] * cuts[i + 1]);
        if (all_ok_at(mid)) rep.all_ok_intervals.emplace_back(cuts[i], cuts[i + 1]);
    }

    for (const auto& pc : rep.curves) {
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& [a, b] : rep.all_ok_intervals) {
            if (pc.r_star >= a && pc.r_star <= b) {
                dist = 0.0;
                break;
            }
            dist = std::min({dist, std::fabs(pc.r_star - a), std::fabs(pc.r_star - b)});
        }
        if (rep.all_ok_intervals.empty()) dist = std::numeric_limits<double>::infinity();
        rep.min_distances.push_back(dist);
        if (dist == 0.0) rep.no_phase_transition_in_physical_region = false;
    }
    return rep;
}

}  // namespace filtrate::regions
