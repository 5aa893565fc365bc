#include "filtrate/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filtrate/errors.hpp"
#include "filtrate/numerics.hpp"

namespace filtrate::thermo {

PotentialModel PotentialModel::ideal(double n, double r_gas) {
    PotentialModel m;
    m.kind = PotentialKind::Ideal;
    m.n = n;
    m.r_gas = r_gas;
    m.validate();
    return m;
}

PotentialModel PotentialModel::vdw_exact(double n, double a, double b, double r_gas) {
    PotentialModel m;
    m.kind = PotentialKind::VanDerWaalsExact;
    m.n = n;
    m.a = a;
    m.b = b;
    m.r_gas = r_gas;
    m.validate();
    return m;
}

PotentialModel PotentialModel::vdw_first_order(double n, double a, double b, double r_gas) {
    PotentialModel m;
    m.kind = PotentialKind::VanDerWaalsFirstOrder;
    m.n = n;
    m.a = a;
    m.b = b;
    m.r_gas = r_gas;
    m.validate();
    return m;
}

PotentialModel PotentialModel::virial(double n, double r_gas,
                                      std::vector<VirialCoefficient> coeffs) {
    PotentialModel m;
    m.kind = PotentialKind::Virial;
    m.n = n;
    m.r_gas = r_gas;
    m.virial_coeffs = std::move(coeffs);
    m.validate();
    return m;
}

double PotentialModel::v_floor() const {
    return kind == PotentialKind::VanDerWaalsExact ? b : 0.0;
}

void PotentialModel::validate() const {
    if (!(n > 0.0)) throw DomainError("potential: n must be positive");
    if (a < 0.0) throw DomainError("potential: a must be non-negative");
    if (b < 0.0) throw DomainError("potential: b must be non-negative");
    if (!(r_gas > 0.0)) throw DomainError("potential: r_gas must be positive");
    if (std::fabs(attraction_sign) != 1.0)
        throw DomainError("potential: attraction_sign must be +1 or -1");
    if (kind == PotentialKind::Virial)
        for (const auto& c : virial_coeffs)
            if (!c.value || !c.d1 || !c.d2)
                throw DomainError("potential: virial coefficient needs value, d1, d2");
}

namespace {

void check_point(const PotentialModel& m, double v, double T) {
    if (!(T > 0.0)) throw DomainError("potential: T must be positive");
    if (!(v > m.v_floor()))
        throw DomainError(m.kind == PotentialKind::VanDerWaalsExact
                              ? "potential: v must exceed the co-volume b"
                              : "potential: v must be positive");
}

}  // namespace

PotentialJet eval_potential(const PotentialModel& model, double v, double T) {
    check_point(model, v, T);
    PotentialJet j;
    const double n = model.n;

    // Common thermal part (n/2) ln T.
    j.phi = 0.5 * n * std::log(T);
    j.phi_T = 0.5 * n / T;
    j.phi_TT = -0.5 * n / (T * T);

    switch (model.kind) {
        case PotentialKind::Ideal: {
            j.phi += std::log(v);
            j.phi_v = 1.0 / v;
            j.phi_vv = -1.0 / (v * v);
            j.phi_vvv = 2.0 / (v * v * v);
            break;
        }
        case PotentialKind::VanDerWaalsExact: {
            const double w = v - model.b;
            const double c = model.attraction_sign * model.a / model.r_gas;
            j.phi += std::log(w) + c / (v * T);
            j.phi_v = 1.0 / w - c / (v * v * T);
            j.phi_vv = -1.0 / (w * w) + 2.0 * c / (v * v * v * T);
            j.phi_vvv = 2.0 / (w * w * w) - 6.0 * c / (v * v * v * v * T);
            j.phi_T += -c / (v * T * T);
            j.phi_TT += 2.0 * c / (v * T * T * T);
            j.phi_vT = c / (v * v * T * T);
            break;
        }
        case PotentialKind::VanDerWaalsFirstOrder: {
            const double c = model.attraction_sign * model.a / model.r_gas;
            j.phi += std::log(v) - model.b / v + c / (v * T);
            j.phi_v = 1.0 / v + model.b / (v * v) - c / (v * v * T);
            j.phi_vv = -1.0 / (v * v) - 2.0 * model.b / (v * v * v) + 2.0 * c / (v * v * v * T);
            j.phi_vvv =
                2.0 / (v * v * v) + 6.0 * model.b / (v * v * v * v) - 6.0 * c / (v * v * v * v * T);
            j.phi_T += -c / (v * T * T);
            j.phi_TT += 2.0 * c / (v * T * T * T);
            j.phi_vT = c / (v * v * T * T);
            break;
        }
        case PotentialKind::Virial: {
            j.phi += std::log(v);
            j.phi_v = 1.0 / v;
            j.phi_vv = -1.0 / (v * v);
            j.phi_vvv = 2.0 / (v * v * v);
            double vk = v;  // v^k
            for (std::size_t i = 0; i < model.virial_coeffs.size(); ++i) {
                const double k = static_cast<double>(i + 1);
                const auto& c = model.virial_coeffs[i];
                const double ak = c.value(T);
                const double ak1 = c.d1(T);
                const double ak2 = c.d2(T);
                const double inv = 1.0 / vk;  // v^-k
                j.phi -= ak * inv / k;
                j.phi_v += ak * inv / v;
                j.phi_vv -= (k + 1.0) * ak * inv / (v * v);
                j.phi_vvv += (k + 1.0) * (k + 2.0) * ak * inv / (v * v * v);
                j.phi_T -= ak1 * inv / k;
                j.phi_TT -= ak2 * inv / k;
                j.phi_vT += ak1 * inv / v;
                vk *= v;
            }
            break;
        }
    }
    return j;
}

ThermoState state_from_potential(const PotentialModel& model, double v, double T) {
    const PotentialJet j = eval_potential(model, v, T);
    const double R = model.r_gas;
    ThermoState st;
    st.p = R * T * j.phi_v;
    st.epsilon = R * T * T * j.phi_T;
    st.s = R * (j.phi + T * j.phi_T);
    st.v = v;
    st.T = T;
    st.r_gas = R;
    return st;
}

ApplicabilityFlags applicability(const PotentialModel& model, double v, double T) {
    const PotentialJet j = eval_potential(model, v, T);
    return {j.phi_vv < 0.0, T * j.phi_TT + 2.0 * j.phi_T > 0.0};
}

double spinodal_temperature(const PotentialModel& model, double v) {
    if (!(v > model.v_floor())) throw DomainError("spinodal: v outside the model domain");
    const double R = model.r_gas;
    const double sa = model.attraction_sign * model.a;

    switch (model.kind) {
        case PotentialKind::Ideal:
            throw NumericError("spinodal: phi_vv < 0 everywhere for the ideal gas");
        case PotentialKind::VanDerWaalsExact: {
            if (sa <= 0.0) throw NumericError("spinodal: phi_vv has fixed sign (a = 0)");
            const double w = v - model.b;
            const double T = 2.0 * sa * w * w / (R * v * v * v);
            const double res = eval_potential(model, v, T).phi_vv;
            if (std::fabs(res) > 1e-10)
                throw NumericError("spinodal: closed-form residual check failed");
            return T;
        }
        case PotentialKind::VanDerWaalsFirstOrder: {
            if (sa <= 0.0) throw NumericError("spinodal: phi_vv has fixed sign (a = 0)");
            const double T = 2.0 * sa / (R * (v + 2.0 * model.b));
            const double res = eval_potential(model, v, T).phi_vv;
            if (std::fabs(res) > 1e-10)
                throw NumericError("spinodal: closed-form residual check failed");
            return T;
        }
        case PotentialKind::Virial: {
            auto g = [&](double T) { return eval_potential(model, v, T).phi_vv; };
            const auto Ts = num::logspace(1e-8, 1e8, 257);
            const auto brackets = num::sign_change_brackets(g, Ts);
            if (brackets.empty())
                throw NumericError("spinodal: phi_vv has fixed sign over the search bracket");
            const double T = num::bisect_root(g, brackets[0].first, brackets[0].second, 1e-15);
            if (std::fabs(g(T)) > 1e-10)
                throw NumericError("spinodal: residual above tolerance after bisection");
            return T;
        }
    }
    throw NumericError("spinodal: unsupported model kind");
}

std::pair<double, double> spinodal_volumes(const PotentialModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("spinodal volumes: T must be positive");
    auto g = [&](double v) { return eval_potential(model, v, T).phi_vv; };

    if (model.kind == PotentialKind::VanDerWaalsExact) {
        const CriticalPoint cp = critical_point(model);
        if (!(T < cp.T_c))
            throw NumericError("spinodal volumes: no unstable band at or above T_c");
        const double b = model.b;
        // phi_vv > 0 strictly between the two roots; bracket around v_c = 3b.
        double v_hi = 2.0 * model.attraction_sign * model.a / (model.r_gas * T);
        while (g(v_hi) > 0.0) v_hi *= 2.0;
        const double lo = num::bisect_root(g, b * (1.0 + 1e-12) + 1e-300, 3.0 * b, 1e-14);
        const double hi = num::bisect_root(g, 3.0 * b, v_hi, 1e-14);
        return {lo, hi};
    }

    const auto vs = num::logspace(std::max(model.v_floor() * (1 + 1e-9), 1e-12), 1e10, 2049);
    const auto brackets = num::sign_change_brackets(g, vs);
    if (brackets.size() < 2)
        throw NumericError("spinodal volumes: need two sign changes of phi_vv",
                           "found " + std::to_string(brackets.size()));
    const double lo = num::bisect_root(g, brackets.front().first, brackets.front().second, 1e-14);
    const double hi = num::bisect_root(g, brackets.back().first, brackets.back().second, 1e-14);
    return {lo, hi};
}

CriticalPoint critical_point(const PotentialModel& model) {
    const double R = model.r_gas;
    const double sa = model.attraction_sign * model.a;

    switch (model.kind) {
        case PotentialKind::Ideal:
            throw NumericError("critical point: ideal gas has no spinodal");
        case PotentialKind::VanDerWaalsExact: {
            if (sa <= 0.0 || model.b <= 0.0)
                throw NumericError("critical point: requires a > 0 and b > 0");
            return {3.0 * model.b, 8.0 * sa / (27.0 * R * model.b)};
        }
        case PotentialKind::VanDerWaalsFirstOrder:
            throw NumericError(
                "critical point: the first-order truncation has no simultaneous root of "
                "phi_vv and phi_vvv with v > 0");
        case PotentialKind::Virial: {
            // The critical point maximizes the stability-boundary temperature:
            // scan T_sp(v), then polish with Newton on (phi_vv, phi_vvv).
            double best_v = 0.0, best_T = -1.0;
            for (double v : num::logspace(1e-9, 1e9, 2049)) {
                try {
                    const double T = spinodal_temperature(model, v);
                    if (T > best_T) {
                        best_T = T;
                        best_v = v;
                    }
                } catch (const NumericError&) {
                }
            }
            if (best_T <= 0.0)
                throw NumericError("critical point: no stability boundary found");

            auto F = [&](double v, double T) {
                const auto j = eval_potential(model, v, T);
                return std::make_pair(j.phi_vv, j.phi_vvv);
            };
            auto J = [&](double v, double T) -> std::array<double, 4> {
                const double hv = 1e-6 * std::max(std::fabs(v), 1e-12);
                const double hT = 1e-6 * std::max(std::fabs(T), 1e-12);
                const auto jvp = eval_potential(model, v + hv, T);
                const auto jvm = eval_potential(model, v - hv, T);
                const auto jTp = eval_potential(model, v, T + hT);
                const auto jTm = eval_potential(model, v, T - hT);
                return {(jvp.phi_vv - jvm.phi_vv) / (2 * hv),
                        (jTp.phi_vv - jTm.phi_vv) / (2 * hT),
                        (jvp.phi_vvv - jvm.phi_vvv) / (2 * hv),
                        (jTp.phi_vvv - jTm.phi_vvv) / (2 * hT)};
            };
            num::Newton2dOptions opts;
            opts.in_domain = [&](double v, double T) {
                return v > model.v_floor() && T > 0.0;
            };
            const auto r = num::newton_2d(F, J, best_v, best_T, opts);
            const auto j = eval_potential(model, r.x1, r.x2);
            const double scale = std::max({std::fabs(j.phi_vv), std::fabs(j.phi_vvv), 1.0});
            if (!r.converged || std::max(std::fabs(j.phi_vv), std::fabs(j.phi_vvv)) >
                                    1e-10 * scale) {
                std::ostringstream os;
                os << "iterate (v, T) = (" << r.x1 << ", " << r.x2 << "), residuals ("
                   << r.f1 << ", " << r.f2 << ") after " << r.iterations << " iterations";
                throw NumericError("critical point: Newton did not converge", os.str());
            }
            return {r.x1, r.x2};
        }
    }
    throw NumericError("critical point: unsupported model kind");
}

CoexistencePair coexistence_at_T(const PotentialModel& model, double T,
                                 std::optional<CoexistencePair> guess) {
    const CriticalPoint cp = critical_point(model);
    if (!(T < cp.T_c))
        throw NumericError("coexistence: T must lie strictly below the critical temperature",
                           "pair collapses to v_c at T >= T_c");

    const auto [v_sp_lo, v_sp_hi] = spinodal_volumes(model, T);
    double v1 = guess ? guess->v1 : 0.5 * (model.v_floor() + v_sp_lo);
    double v2 = guess ? guess->v2 : 2.0 * v_sp_hi;

    auto F = [&](double a, double b) {
        const auto j1 = eval_potential(model, a, T);
        const auto j2 = eval_potential(model, b, T);
        const double f1 = j1.phi_v - j2.phi_v;
        const double f2 = j2.phi - j1.phi + a * j1.phi_v - b * j2.phi_v;
        return std::make_pair(f1, f2);
    };
    auto J = [&](double a, double b) -> std::array<double, 4> {
        const auto j1 = eval_potential(model, a, T);
        const auto j2 = eval_potential(model, b, T);
        return {j1.phi_vv, -j2.phi_vv, a * j1.phi_vv, -b * j2.phi_vv};
    };

    num::Newton2dOptions opts;
    opts.max_iter = 400;
    const double floor = model.v_floor();
    opts.in_domain = [&](double a, double b) {
        return a > floor && a < v_sp_lo && b > v_sp_hi && b > a;
    };
    // Convergence tolerance scaled to the magnitude of phi_v on the dense branch.
    const double scale = std::max(std::fabs(eval_potential(model, v1, T).phi_v), 1.0);
    opts.tol = 1e-13 * scale;

    const auto r = num::newton_2d(F, J, v1, v2, opts);
    if (!r.converged) {
        std::ostringstream os;
        os << "T = " << T << ", iterate (" << r.x1 << ", " << r.x2 << "), residuals ("
           << r.f1 << ", " << r.f2 << ")";
        throw NumericError("coexistence: Newton did not converge", os.str());
    }
    if (std::fabs(r.x2 - r.x1) < 1e-8)
        throw NumericError("coexistence: pair collapsed (too close to the critical point)");
    return {r.x1, r.x2};
}

std::vector<CoexistenceRow> coexistence_curve(const PotentialModel& model, double T_lo,
                                              double T_hi, int steps) {
    if (steps < 1) throw DomainError("coexistence curve: steps must be >= 1");
    if (steps == 1 && T_lo != T_hi)
        throw DomainError("coexistence curve: a single step requires T_lo == T_hi");
    if (T_lo > T_hi) throw DomainError("coexistence curve: T_lo must not exceed T_hi");

    std::vector<CoexistenceRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    std::optional<CoexistencePair> seed;
    for (int i = 0; i < steps; ++i) {
        const double T =
            steps == 1 ? T_hi : T_hi + (T_lo - T_hi) * static_cast<double>(i) / (steps - 1);
        try {
            const CoexistencePair pair = coexistence_at_T(model, T, seed);
            rows.push_back({T, pair.v1, pair.v2});
            seed = pair;
        } catch (const NumericError& e) {
            std::ostringstream os;
            os << "failed at T = " << T << ": " << e.what();
            throw NumericError("coexistence curve: solver failure", os.str());
        }
    }
    return rows;
}

double caloric_compatibility_residual(const std::function<double(double, double)>& A,
                                      const std::function<double(double, double)>& B,
                                      const CompatibilityGrid& grid) {
    if (grid.nv < 1 || grid.nT < 1)
        throw DomainError("compatibility: grid must have at least one point per axis");
    if (!(grid.h_v > 0.0) || !(grid.h_T > 0.0))
        throw DomainError("compatibility: differencing steps must be positive");

    const auto vs = num::linspace(grid.v_lo, grid.v_hi, grid.nv);
    const auto Ts = num::linspace(grid.T_lo, grid.T_hi, grid.nT);
    double worst = 0.0;
    for (double v : vs) {
        for (double T : Ts) {
            const double lhs =
                (B(v + grid.h_v, T) - B(v - grid.h_v, T)) / (2.0 * grid.h_v * T * T);
            const double rhs = (A(v, T + grid.h_T) / (T + grid.h_T) -
                                A(v, T - grid.h_T) / (T - grid.h_T)) /
                               (2.0 * grid.h_T);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    return worst;
}

}  // namespace filtrate::thermo
