#pragma once
#include "lorentz/curvature_invariants.hpp"
#include "lorentz/integrate.hpp"
#include "lorentz/conformal.hpp"

namespace lorentz {

struct VariationCache;

/// One-parameter normal-geodesic variation of a closed spacelike base:
/// X(u, t) = ambient geodesic from x(u) with initial velocity t f(u) N(u).
/// This family has X(.,0) = x and (dX/dt)^top = 0 at t = 0.
struct VariationScenario {
    SpacelikeImmersion base;
    SmoothScalar speed;       // f on parameters
    double eps = 0.08;        // |t| half-width
    std::vector<int> mesh;    // quadrature sizes per parameter axis
    int geodesic_steps = 12;
    double ambient_curvature = 0.0; // certified constant curvature c
    std::shared_ptr<VariationCache> cache; // per-t mesh data, set by make
};

/// Builds a scenario and certifies the ambient constant curvature (required
/// by the F_r recurrence and the variation formulas).
VariationScenario make_variation_scenario(const SpacelikeImmersion& base, SmoothScalar speed,
                                          double eps = 0.08, std::vector<int> mesh = {},
                                          std::uint64_t seed = 1);

/// Geodesic endpoint and velocity after unit time, templated for duals.
template <class T>
std::pair<VecT<T>, VecT<T>> geodesic_endpoint(const ChartedSpace& sp, const VecT<T>& x0,
                                              const VecT<T>& v0, int steps) {
    const int d = sp.dim;
    VecT<T> y(static_cast<std::size_t>(2 * d));
    for (int a = 0; a < d; ++a) {
        y[static_cast<std::size_t>(a)] = x0[static_cast<std::size_t>(a)];
        y[static_cast<std::size_t>(d + a)] = v0[static_cast<std::size_t>(a)];
    }
    auto rhs = [&](double, const VecT<T>& s) {
        VecT<T> x(s.begin(), s.begin() + d);
        VecT<T> v(s.begin() + d, s.end());
        auto gam = christoffel_impl(sp, x);
        VecT<T> acc = gam.apply(v, v);
        VecT<T> out(static_cast<std::size_t>(2 * d));
        for (int a = 0; a < d; ++a) {
            out[static_cast<std::size_t>(a)] = v[static_cast<std::size_t>(a)];
            out[static_cast<std::size_t>(d + a)] = -acc[static_cast<std::size_t>(a)];
        }
        return out;
    };
    VecT<T> yf = rk4_unit(rhs, y, steps);
    return {VecT<T>(yf.begin(), yf.begin() + d), VecT<T>(yf.begin() + d, yf.end())};
}

/// Varied point X(u, t) and the variation vector dX/dt there.
template <class T>
std::pair<VecT<T>, VecT<T>> varied_point(const VariationScenario& scn, const VecT<T>& u,
                                         double t) {
    FrameT<T> fr = frame_core(scn.base, u);
    T f = scn.speed(u);
    VecT<T> v0 = vec_scale(fr.N, f * t);
    if (t == 0.0) return {fr.x, vec_scale(fr.N, f)};
    auto [x, v] = geodesic_endpoint(*scn.base.ambient, fr.x, v0, scn.geodesic_steps);
    return {x, vec_scale(v, T(1.0 / t))};
}

/// The varied surface at fixed t as an immersion (map capped at depth 3).
SpacelikeImmersion varied_immersion(const VariationScenario& scn, double t);

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

/// c_r constant of the first-variation formula: 0 for even r, and for odd r
/// -[n(n-2)...(n-r+1)] / [(r-1)(r-3)...2] (-c)^{(r+1)/2} with empty products
/// equal to 1 (so c_1 = n c).
double c_r_constant(int n, double c, int r);

/// F_0..F_r from the recurrence F_0 = 1, F_1 = -S_1,
/// F_r = (-1)^r S_r - c (n-r+1)/(r-1) F_{r-2}.
Vec f_r_values(const Vec& S, double c, int r, int n);

/// Balance of volume V(t) = int_{M x [0,t]} X^*(vol), oriented so that
/// (N, tangent frame) is positive.
double volume_balance(const VariationScenario& scn, double t, int s_nodes = 8);

struct VolumeVariationReport {
    double residual;          // sup_t |dV/dt (FD) - int f_t dM_t|
    bool volume_preserving;   // int f_t dM_t ~ 0 across the whole grid
    Vec flux;                 // int f_t dM_t per grid point

    /// The variational-field-level balance: int f dM = 0 at t = 0. The
    /// normal-geodesic family generally fails the all-t version even when
    /// this holds (the corrected volume-preserving family is not built).
    bool flux_zero_at(std::size_t i, double tol = 1e-8) const {
        return i < flux.size() && std::fabs(flux[i]) < tol;
    }
};

VolumeVariationReport first_variation_volume(const VariationScenario& scn, const Vec& t_grid);

double r_area(const VariationScenario& scn, int r, double t);

struct FirstVariationReport {
    double residual_functional; // |FD dA_r/dt|_0 - formula|
    double residual_pointwise0; // eq. dS_{r+1}/dt at t = 0, sup over mesh
    double residual_pointwise_t; // same identity at a nonzero t
};

FirstVariationReport first_variation_r_area(const VariationScenario& scn, int r);

struct JacobiReport {
    double lambda;
    Vec j_values;          // J_r over the t-grid
    double jprime0;        // FD derivative at 0
    double jprime_residual; // |FD - b_r int [H_{r+1} - mean] f dM|
};

JacobiReport jacobi_functional(const VariationScenario& scn, int r, const Vec& t_grid);

struct SecondVariationReport {
    double analytic; // (r+1) int [L_r f + c tr P_r f - tr(A^2 P_r) f] f dM
    double fd;       // centered second difference of J_r
    double rel_error;
};

SecondVariationReport second_variation(const VariationScenario& scn, int r,
                                       double h_rel = 0.5);

/// Lemma-style L_r support identity for eta = <V,N>:
/// L_r eta = tr(A^2 P_r) eta - c tr(P_r) eta - b_r H_r N(psi) + b_r H_{r+1} psi
///           + b_r/(r+1) <V, grad H_{r+1}>.
double lr_support_identity_check(const SpacelikeImmersion& imm, const AmbientVectorField& V,
                                 int r, const std::vector<Vec>& params,
                                 std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Strong r-stability probe
// ---------------------------------------------------------------------------

struct StabilityReport {
    double cosh_theta_min = 0.0, cosh_theta_max = 0.0;
    double h_r1_value = 0.0;   // constant H_{r+1}
    double h_r1_spread = 0.0;
    double h_r_value = 0.0;
    double psi_zero_fraction = 0.0; // fraction of mesh with |psi| < tol
    double hyp_margin_min = 0.0;    // min over mesh of lhs - rhs of the slope condition
    bool hypothesis_holds = false;
    Vec jpp_values;                 // J_r''(0) per test function
    double jpp_max = 0.0;
    bool strongly_r_stable = false; // max J'' <= 0 within tolerance
    std::string classifier;         // "r-maximal" | "leaf" | "neither"
};

StabilityReport stability_probe(const SpacelikeImmersion& imm, const AmbientVectorField& V,
                                int r, const std::vector<SmoothScalar>& test_basis,
                                std::vector<int> mesh = {}, double tol = 1e-6);

/// Low-order real spherical-harmonic basis for (theta, phi) parameter domains
/// (smooth across the poles), 9 functions.
std::vector<SmoothScalar> sphere_test_basis();

/// Tensor-product Fourier basis for periodic boxes (9 functions for n = 2).
std::vector<SmoothScalar> fourier_test_basis(const ParamDomain& dom);

} // namespace lorentz
