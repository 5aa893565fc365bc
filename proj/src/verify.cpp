#include "filtrate/verify.hpp"

#include <algorithm>
#include <cmath>

#include "filtrate/errors.hpp"

namespace filtrate::verify {

namespace {

constexpr double kTiny = 1e-300;

double step_for(double coord, double h) { return h * std::max(std::fabs(coord), 1.0); }

}  // namespace

FieldSet field_set_from_solution(const selfsim::SelfSimilarSolution& sol,
                                 const thermo::PotentialModel& potential) {
    if (potential.r_gas != sol.r_gas)
        throw DomainError("field set: potential and solution disagree on the gas constant");

    FieldSet fs;
    fs.potential = potential;
    fs.law = sol.law;

    auto r_of = [sol](Point4 P) { return selfsim::similarity_variable(P.t, P.x, P.y, P.z); };
    fs.v = [sol, r_of](Point4 P) { return selfsim::volume_profile(sol, r_of(P)); };
    fs.T = [sol, r_of](Point4 P) { return selfsim::temperature_profile(sol, r_of(P)); };
    fs.p = [sol, r_of](Point4 P) { return selfsim::pressure(sol, r_of(P)); };
    const auto pot = potential;
    const auto vf = fs.v;
    const auto Tf = fs.T;
    fs.s = [pot, vf, Tf](Point4 P) {
        return thermo::state_from_potential(pot, vf(P), Tf(P)).s;
    };
    fs.grad_p = [sol, r_of](Point4 P) {
        const double d = P.distance();
        if (d == 0.0) throw DomainError("field set: gradient undefined on the spatial origin");
        const double r = r_of(P);
        const double coeff = selfsim::pressure_deriv(sol, r) / (std::sqrt(P.t) * d);
        return Vec3{coeff * P.x, coeff * P.y, coeff * P.z};
    };
    const auto gpf = fs.grad_p;
    const auto lw = sol.law;
    fs.u = [lw, vf, Tf, gpf](Point4 P) {
        return -media::eval_mobility(lw, vf(P), Tf(P)) * gpf(P);
    };
    return fs;
}

double PdeResidual::normalized_darcy() const {
    double worst = 0.0;
    const double comps[3] = {darcy.x, darcy.y, darcy.z};
    const double scales[3] = {darcy_scale.x, darcy_scale.y, darcy_scale.z};
    for (int i = 0; i < 3; ++i)
        worst = std::max(worst, std::fabs(comps[i]) / std::max(scales[i], kTiny));
    return worst;
}

double PdeResidual::normalized_mass() const {
    return std::fabs(mass) / std::max(mass_scale, kTiny);
}

double PdeResidual::normalized_entropy() const {
    return std::fabs(entropy) / std::max(entropy_scale, kTiny);
}

double PdeResidual::max_normalized() const {
    return std::max({normalized_darcy(), normalized_mass(), normalized_entropy()});
}

PdeResidual pde_residual(const FieldSet& fields, const media::MediumLaw& law, double q,
                         Point4 point, double h) {
    const double ht = step_for(point.t, h);
    const double hx = step_for(point.x, h);
    const double hy = step_for(point.y, h);
    const double hz = step_for(point.z, h);
    if (!(point.t - ht > 0.0))
        throw DomainError("pde residual: temporal stencil leaves t > 0");

    auto at = [&](double dt, double dx, double dy, double dz) {
        return Point4{point.t + dt, point.x + dx, point.y + dy, point.z + dz};
    };
    auto d_t = [&](const std::function<double(Point4)>& f) {
        return (f(at(ht, 0, 0, 0)) - f(at(-ht, 0, 0, 0))) / (2.0 * ht);
    };
    auto grad = [&](const std::function<double(Point4)>& f) {
        return Vec3{(f(at(0, hx, 0, 0)) - f(at(0, -hx, 0, 0))) / (2.0 * hx),
                    (f(at(0, 0, hy, 0)) - f(at(0, 0, -hy, 0))) / (2.0 * hy),
                    (f(at(0, 0, 0, hz)) - f(at(0, 0, 0, -hz))) / (2.0 * hz)};
    };

    const double v0 = fields.v(point);
    const double T0 = fields.T(point);
    const double s_unused = fields.s(point);
    (void)s_unused;  // touch the evaluator so domain errors surface at the point itself
    const Vec3 u0 = fields.u(point);

    PdeResidual res;

    // Darcy: u + mu grad p.
    const double mu = media::eval_mobility(law, v0, T0);
    const Vec3 gp = grad(fields.p);
    res.darcy = u0 + mu * gp;
    res.darcy_scale = {std::max(std::fabs(u0.x), std::fabs(mu * gp.x)),
                       std::max(std::fabs(u0.y), std::fabs(mu * gp.y)),
                       std::max(std::fabs(u0.z), std::fabs(mu * gp.z))};

    // Mass: q v_t + u . grad v - v div u.
    const double v_t = d_t(fields.v);
    const Vec3 gv = grad(fields.v);
    const double div_u =
        (fields.u(at(0, hx, 0, 0)).x - fields.u(at(0, -hx, 0, 0)).x) / (2.0 * hx) +
        (fields.u(at(0, 0, hy, 0)).y - fields.u(at(0, 0, -hy, 0)).y) / (2.0 * hy) +
        (fields.u(at(0, 0, 0, hz)).z - fields.u(at(0, 0, 0, -hz)).z) / (2.0 * hz);
    const double adv_v = dot(u0, gv);
    res.mass = q * v_t + adv_v - v0 * div_u;
    res.mass_scale =
        std::max({std::fabs(q * v_t), std::fabs(adv_v), std::fabs(v0 * div_u)});

    // Entropy: s_t + u . grad s.
    const double s_t = d_t(fields.s);
    const double adv_s = dot(u0, grad(fields.s));
    res.entropy = s_t + adv_s;
    res.entropy_scale = std::max(std::fabs(s_t), std::fabs(adv_s));

    return res;
}

double isentropic_material_derivative(const FieldSet& fields, Point4 point, double h) {
    const double ht = step_for(point.t, h);
    if (!(point.t - ht > 0.0))
        throw DomainError("material derivative: temporal stencil leaves t > 0");
    const double hx = step_for(point.x, h);
    const double hy = step_for(point.y, h);
    const double hz = step_for(point.z, h);

    auto at = [&](double dt, double dx, double dy, double dz) {
        return Point4{point.t + dt, point.x + dx, point.y + dy, point.z + dz};
    };
    const double s_t =
        (fields.s(at(ht, 0, 0, 0)) - fields.s(at(-ht, 0, 0, 0))) / (2.0 * ht);
    const Vec3 gs{(fields.s(at(0, hx, 0, 0)) - fields.s(at(0, -hx, 0, 0))) / (2.0 * hx),
                  (fields.s(at(0, 0, hy, 0)) - fields.s(at(0, 0, -hy, 0))) / (2.0 * hy),
                  (fields.s(at(0, 0, 0, hz)) - fields.s(at(0, 0, 0, -hz))) / (2.0 * hz)};
    return s_t + dot(fields.u(point), gs);
}

double symmetry_orbit_check(const FieldSet& fields, const media::GeneratorDescriptor& gen,
                            double lambda, const std::vector<Point4>& sample_points,
                            const media::MediumLaw& law, double q, double h) {
    const FieldSet moved = fields.transformed(gen, lambda);
    double worst = 0.0;
    for (const Point4& P : sample_points)
        worst = std::max(worst, pde_residual(moved, law, q, P, h).max_normalized());
    return worst;
}

}  // namespace filtrate::verify
