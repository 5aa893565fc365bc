#pragma once

#include <functional>

#include "filtrate/media.hpp"
#include "filtrate/thermo.hpp"
#include "filtrate/types.hpp"

namespace filtrate::verify {

/// Candidate solution fields of the filtration system over (t, x, y, z).
///
/// Construction keeps s consistent with (v, T) through the declared potential
/// and derives u from the Darcy relation u = -mu(v, T) grad p, so transformed
/// or modified sets stay internally coherent. with_entropy is a deliberate
/// escape hatch that breaks the consistency (negative controls).
struct FieldSet {
    std::function<double(Point4)> v;
    std::function<double(Point4)> T;
    std::function<double(Point4)> p;
    std::function<double(Point4)> s;
    std::function<Vec3(Point4)> u;
    std::function<Vec3(Point4)> grad_p;
    thermo::PotentialModel potential;
    media::MediumLaw law;

    /// Pullback along exp(lambda * gen). Generators with v/T components
    /// rescale the fields and re-derive p and s from the potential (ideal
    /// kind only); u is re-derived from the Darcy relation in all cases.
    FieldSet transformed(const media::GeneratorDescriptor& gen, double lambda) const;

    /// v multiplied pointwise; s and u re-derived, p kept.
    FieldSet with_scaled_volume(double factor) const;

    /// Replace the entropy evaluator (breaks the (v,T)-consistency on purpose).
    FieldSet with_entropy(std::function<double(Point4)> s_fn) const;
};

}  // namespace filtrate::verify
