#include "filtrate/fieldset.hpp"

#include <array>
#include <cmath>

#include "filtrate/errors.hpp"

namespace filtrate::verify {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Vec3 apply_transposed(const Mat3& m, Vec3 g) {
    return {m[0][0] * g.x + m[1][0] * g.y + m[2][0] * g.z,
            m[0][1] * g.x + m[1][1] * g.y + m[2][1] * g.z,
            m[0][2] * g.x + m[1][2] * g.y + m[2][2] * g.z};
}

Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

std::size_t spatial_index(media::Coord c) {
    switch (c) {
        case media::Coord::x: return 0;
        case media::Coord::y: return 1;
        case media::Coord::z: return 2;
        default:
            throw NumericError("field transform: generator acts outside (t, x, y, z)");
    }
}

}  // namespace

FieldSet FieldSet::transformed(const media::GeneratorDescriptor& gen, double lambda) const {
    using media::Coord;
    using media::GeneratorKind;

    // Inverse base map B = exp(-lambda * gen) on (t, x, y, z), its spatial
    // Jacobian, and the multiplicative factors on the v and T fibers.
    std::function<Point4(Point4)> back;
    Mat3 jac = identity3();
    double fv = 1.0, fT = 1.0;

    switch (gen.kind) {
        case GeneratorKind::Translation: {
            if (gen.axis == Coord::v || gen.axis == Coord::T)
                throw NumericError("field transform: fiber translations are not representable");
            const Coord axis = gen.axis;
            back = [axis, lambda](Point4 P) {
                media::StatePoint sp{P.t, P.x, P.y, P.z, 0, 0};
                sp[axis] -= lambda;
                return Point4{sp.t, sp.x, sp.y, sp.z};
            };
            break;
        }
        case GeneratorKind::Rotation: {
            const std::size_t ia = spatial_index(gen.plane_a);
            const std::size_t ib = spatial_index(gen.plane_b);
            const double c = std::cos(lambda), s = std::sin(lambda);
            // Flow at -lambda: a -> a c - b s, b -> b c + a s.
            jac[ia][ia] = c;
            jac[ia][ib] = -s;
            jac[ib][ia] = s;
            jac[ib][ib] = c;
            const Mat3 m = jac;
            back = [m](Point4 P) {
                const Vec3 r{m[0][0] * P.x + m[0][1] * P.y + m[0][2] * P.z,
                             m[1][0] * P.x + m[1][1] * P.y + m[1][2] * P.z,
                             m[2][0] * P.x + m[2][1] * P.y + m[2][2] * P.z};
                return Point4{P.t, r.x, r.y, r.z};
            };
            break;
        }
        case GeneratorKind::Scaling: {
            const double et = std::exp(-gen.scale[0] * lambda);
            const double ex = std::exp(-gen.scale[1] * lambda);
            const double ey = std::exp(-gen.scale[2] * lambda);
            const double ez = std::exp(-gen.scale[3] * lambda);
            fv = std::exp(gen.scale[4] * lambda);
            fT = std::exp(gen.scale[5] * lambda);
            jac[0][0] = ex;
            jac[1][1] = ey;
            jac[2][2] = ez;
            back = [et, ex, ey, ez](Point4 P) {
                return Point4{P.t * et, P.x * ex, P.y * ey, P.z * ez};
            };
            break;
        }
    }

    const bool fiber_scaled = fv != 1.0 || fT != 1.0;
    if (fiber_scaled && potential.kind != thermo::PotentialKind::Ideal)
        throw NumericError(
            "field transform: v/T-scaling generators are supported for the ideal potential only");

    FieldSet out;
    out.potential = potential;
    out.law = law;

    const auto v0 = v, T0 = T, p0 = p, s0 = s;
    const auto gp0 = grad_p;
    const auto pot = potential;

    out.v = [v0, back, fv](Point4 P) { return fv * v0(back(P)); };
    out.T = [T0, back, fT](Point4 P) { return fT * T0(back(P)); };
    if (fiber_scaled) {
        const auto vf = out.v;
        const auto Tf = out.T;
        out.p = [pot, vf, Tf](Point4 P) {
            return thermo::state_from_potential(pot, vf(P), Tf(P)).p;
        };
        out.s = [pot, vf, Tf](Point4 P) {
            return thermo::state_from_potential(pot, vf(P), Tf(P)).s;
        };
        const double pscale = fT / fv;  // ideal: p = R T / v
        out.grad_p = [gp0, back, jac, pscale](Point4 P) {
            return pscale * apply_transposed(jac, gp0(back(P)));
        };
    } else {
        out.p = [p0, back](Point4 P) { return p0(back(P)); };
        out.s = [s0, back](Point4 P) { return s0(back(P)); };
        out.grad_p = [gp0, back, jac](Point4 P) {
            return apply_transposed(jac, gp0(back(P)));
        };
    }

    const auto vf = out.v;
    const auto Tf = out.T;
    const auto gpf = out.grad_p;
    const auto lw = law;
    out.u = [lw, vf, Tf, gpf](Point4 P) {
        return -media::eval_mobility(lw, vf(P), Tf(P)) * gpf(P);
    };
    return out;
}

FieldSet FieldSet::with_scaled_volume(double factor) const {
    FieldSet out = *this;
    const auto v0 = v;
    out.v = [v0, factor](Point4 P) { return factor * v0(P); };
    const auto vf = out.v;
    const auto Tf = T;
    const auto pot = potential;
    out.s = [pot, vf, Tf](Point4 P) {
        return thermo::state_from_potential(pot, vf(P), Tf(P)).s;
    };
    const auto gpf = grad_p;
    const auto lw = law;
    out.u = [lw, vf, Tf, gpf](Point4 P) {
        return -media::eval_mobility(lw, vf(P), Tf(P)) * gpf(P);
    };
    return out;
}

FieldSet FieldSet::with_entropy(std::function<double(Point4)> s_fn) const {
    FieldSet out = *this;
    out.s = std::move(s_fn);
    return out;
}

}  // namespace filtrate::verify
