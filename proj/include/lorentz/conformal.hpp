#pragma once
#include "lorentz/immersion.hpp"

namespace lorentz {

struct ConformalTolerances {
    double conformal = 1e-8;       // |L_V g - 2 psi g|
    double closed = 1e-8;          // |nabla_X V - psi X|
    double homothetic_grad = 1e-8; // sup |grad psi| for homothetic
    double parallel_psi = 1e-6;    // sup |psi| below which homothetic -> parallel
};

/// Residual certificate for the conformal hierarchy of a vector field. The
/// classification ladder: conformal -> closed conformal -> homothetic ->
/// parallel, each by thresholding the next residual.
struct ConformalCertificate {
    double conformal_residual = 0.0; // sup |<nab_X V,Y> + <X,nab_Y V> - 2 psi <X,Y>|
    double closed_residual = 0.0;    // sup |nab_X V - psi X|
    double psi_sup = 0.0;            // sup |psi-hat|
    double grad_psi_sup = 0.0;       // sup |d psi-hat| (coordinate partials)
    std::optional<FieldClass> classification;
    Vec psi_samples;                 // psi-hat at the sample points

    bool is(FieldClass c) const { return classification && *classification == c; }
};

std::vector<Vec> sample_points(const ChartedSpace& sp, std::uint64_t seed, int n);

ConformalCertificate certify(const AmbientVectorField& field, const std::vector<Vec>& samples,
                             const ConformalTolerances& tol = {});

struct GradientIdentityResiduals {
    double grad_vv; // sup |grad <V,V> - 2 psi V|
    double grad_psi; // sup |grad psi + nu(psi) nu|
};

/// Checks grad<V,V> = 2 psi V and grad psi = -nu(psi) nu for a timelike
/// closed conformal field; nu = V / sqrt(-<V,V>).
GradientIdentityResiduals gradient_identities_check(const AmbientVectorField& field,
                                                    const std::vector<Vec>& samples,
                                                    const ConformalTolerances& tol = {});

/// Projection of a closed conformal field eta onto the leaf of V-perp at p:
/// U = eta + <eta,nu> nu. Two conformal-factor readings are returned: the
/// literal one (psi_eta + psi_V <eta,nu>) and the leafwise one, which rescales
/// psi_V by 1/sqrt(-<V,V>) so that nu itself satisfies nab_Z nu = psi_nu Z
/// along the leaf. The two agree where <V,V> = -1.
struct LeafProjection {
    Vec U;
    double psi_U_literal;
    double psi_U_leafwise;
    bool degenerate;          // |U| ~ 0 (eta parallel to nu)
    double tangency;          // |<U, nu>|
    double intrinsic_residual; // sup_Z |D_Z U - psi_U Z| over a leaf-tangent frame
};

LeafProjection project_to_leaf(const AmbientVectorField& eta, const AmbientVectorField& V,
                               const Vec& p, const ConformalTolerances& tol = {});

/// Intrinsic leafwise closed-conformal certificate of the projected field:
/// sup over points and leaf-tangent directions of |D_Z U - psi_U Z|.
double leaf_conformal_certificate(const AmbientVectorField& eta, const AmbientVectorField& V,
                                  const std::vector<Vec>& leaf_points);

/// Shape data of a leaf of V-perp supplied as an explicit immersion.
/// `psi_identity_residual` checks nab_X V = psi X along leaf directions
/// (the umbilicity statement in the conformal field's own scale);
/// `normalized_shape_residual` checks the literal -nab_X nu against the
/// predicted umbilicity factor -psi/sqrt(-<V,V>) of the unit normal.
struct LeafUmbilicityResult {
    double psi_identity_residual;
    double normalized_shape_residual;
    double umbilicity_factor; // -psi/sqrt(-<V,V>) at the first sample
    double orthogonality;     // sup |<dx(Z), V>| (leaf validity)
};

LeafUmbilicityResult leaf_umbilicity_check(const AmbientVectorField& V,
                                           const SpacelikeImmersion& leaf,
                                           const std::vector<Vec>& params,
                                           double ortho_tol = 1e-8);

} // namespace lorentz
