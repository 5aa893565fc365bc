#pragma once

#include <vector>

#include "filtrate/fieldset.hpp"
#include "filtrate/selfsim.hpp"

namespace filtrate::verify {

/// Build the 4-D field set of a self-similar solution; s comes from the
/// potential (whose r_gas must match the solution's), u from the Darcy
/// relation with the solution's analytic radial pressure derivative.
FieldSet field_set_from_solution(const selfsim::SelfSimilarSolution& sol,
                                 const thermo::PotentialModel& potential);

/// Residuals of the three filtration equations at one point, all derivatives
/// taken by second-order central differences with per-coordinate step
/// h * max(|coord|, 1). Each residual carries the magnitude of its largest
/// constituent term, so normalized() values are unit-free.
struct PdeResidual {
    Vec3 darcy;        // u + mu(v,T) grad p
    Vec3 darcy_scale;
    double mass = 0.0;  // q v_t + u . grad v - v div u
    double mass_scale = 0.0;
    double entropy = 0.0;  // s_t + u . grad s
    double entropy_scale = 0.0;

    double normalized_darcy() const;
    double normalized_mass() const;
    double normalized_entropy() const;
    double max_normalized() const;
};

PdeResidual pde_residual(const FieldSet& fields, const media::MediumLaw& law, double q,
                         Point4 point, double h = 1e-4);

/// s_t + u . grad s by central differences (raw, not normalized).
double isentropic_material_derivative(const FieldSet& fields, Point4 point, double h = 1e-4);

/// Pull the fields back along exp(lambda * gen) and report the worst
/// max_normalized() residual over the sample points. A true symmetry keeps
/// the result at the discretization floor of the untransformed fields.
double symmetry_orbit_check(const FieldSet& fields, const media::GeneratorDescriptor& gen,
                            double lambda, const std::vector<Point4>& sample_points,
                            const media::MediumLaw& law, double q, double h = 1e-4);

}  // namespace filtrate::verify
