#pragma once
#include <optional>
#include <string>

#include "lorentz/charted_space.hpp"

namespace lorentz {

enum class FieldClass { Conformal, ClosedConformal, Homothetic, Parallel, Killing };

const char* field_class_name(FieldClass c);

/// A vector field on a charted space. Timelikeness is a property of use
/// sites, not of construction; consumers check <V,V> < 0 where they need it.
struct AmbientVectorField {
    SpacePtr space;
    SmoothMap eval; // dim -> dim, coordinate components
    std::string name;
    std::optional<FieldClass> declared_class;

    template <class T>
    VecT<T> operator()(const VecT<T>& x) const { return eval(x); }
};

/// psi-hat = div V / dim, the conformal factor candidate of V.
template <class T>
T psi_hat_impl(const AmbientVectorField& f, const VecT<T>& x) {
    return divergence_impl(*f.space, f.eval, x) / static_cast<double>(f.space->dim);
}

/// psi-hat as a smooth scalar on the ambient chart (capped: it consumes two
/// derivative levels internally).
SmoothScalar psi_hat_field(const AmbientVectorField& f);

} // namespace lorentz
