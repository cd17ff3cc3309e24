#pragma once
#include "lorentz/conformal.hpp"
#include "lorentz/integrate.hpp"

namespace lorentz {

/// Isometric immersion of an n-manifold into a leaf of V-perp, with an
/// explicit orthonormal spacelike normal frame inside the leaf (codimension k
/// within the leaf, k+1 in the ambient).
struct LeafSubmanifoldImmersion {
    ParamDomain domain;                  // n parameters
    SmoothMap map;                       // params -> ambient coordinates
    std::vector<SmoothMap> leaf_normals; // eta_1..eta_k: params -> ambient components
    SpacePtr ambient;
    std::string name;

    int n() const { return domain.dim(); }
    int codim() const { return static_cast<int>(leaf_normals.size()); }
};

struct FlowOptions {
    double integrator_tol = 1e-10;
    int base_samples = 8;     // q-samples used for validation/clipping
    double psi_floor = 1e-7;  // |psi| below this on the base -> ConformalFactorVanishes
    double v_floor = 1e-9;    // |V| below this -> SingularV
};

/// The flowed immersion Phi(t, q) = Psi(t, phi(q)) on (-eps, eps) x M.
struct FlowedImmersion {
    LeafSubmanifoldImmersion base;
    AmbientVectorField V;
    double eps_requested = 0.0;
    double eps = 0.0;        // clipped so trajectories stay in-chart with margin
    double integrator_tol = 1e-10;
    int steps = 64;          // RK4 steps across the eps horizon

    int n() const { return base.n(); }
    int strip_dim() const { return base.n() + 1; }
};

/// Flow of V from p for time t (RK4 at tolerance-derived step count, with
/// chart checks and a step-doubling divergence estimate).
Vec flow_conformal_field(const AmbientVectorField& V, const Vec& p, double t,
                         double integrator_tol = 1e-10);

FlowedImmersion build_flowed_immersion(const LeafSubmanifoldImmersion& phi,
                                       const AmbientVectorField& V, double eps,
                                       const FlowOptions& opt = {});

/// Point of the flowed strip at w = (t, q_1..q_n), templated for duals.
template <class T>
VecT<T> strip_point(const FlowedImmersion& fl, const VecT<T>& w) {
    VecT<T> q(w.begin() + 1, w.end());
    VecT<T> x0 = fl.base.map(q);
    const SmoothMap& Vf = fl.V.eval;
    T t = w[0];
    auto rhs = [&](double, const VecT<T>& y) { return vec_scale(Vf(y), t); };
    return rk4_unit(rhs, x0, fl.steps);
}

/// Mean curvature vector of the flowed strip at (t, q), ambient components,
/// normalized by 1/(n+1) with the metric (signature-aware) trace.
template <class T>
VecT<T> mean_curvature_impl(const FlowedImmersion& fl, const VecT<T>& w);

Vec mean_curvature_vector(const FlowedImmersion& fl, double t, const Vec& q);

/// Residual bundle of the flow decay law and its supporting identities.
struct DecayLawReport {
    double decay_residual = 0.0;        // |Hbar - exp(-int psi) h^b_ii N_b/(n+1)|
    double tangent_e_residual = 0.0;    // |<nab_{E_i} E_i, E_k>| over the strip
    double v_pairing_residual = 0.0;    // |<nab_{E_i} E_i, V> + n psi|
    double transport_orthonormality = 0.0; // frame inner-product drift
    double nu_geodesic_residual = 0.0;  // |(nab_nu nu)^perp|
    std::string hypothesis;             // "constant-curvature" or "ric-v-zero"
    double max_residual() const {
        return std::max({decay_residual, tangent_e_residual, v_pairing_residual,
                         transport_orthonormality, nu_geodesic_residual});
    }
};

DecayLawReport decay_law_check(const FlowedImmersion& fl, const Vec& t_grid, int q_samples,
                               std::uint64_t seed = 1, double hypothesis_tol = 1e-7);

/// The three quantities whose joint smallness expresses the maximality
/// equivalence: sup over the base of |trace A_beta|, sup over the strip of
/// |Hbar|, and sup over the strip of |nab-perp Hbar|.
struct EquivalenceVerdict {
    double base_trace_sup = 0.0;
    double mean_curvature_sup = 0.0;
    double normal_gradient_sup = 0.0;
    bool all_small = false;
    bool all_large = false;
    bool consistent = false; // jointly small or jointly large
};

EquivalenceVerdict simons_equivalence_probe(const LeafSubmanifoldImmersion& phi,
                                            const AmbientVectorField& V, double eps,
                                            const FlowOptions& opt = {},
                                            double small_tol = 1e-6, double large_tol = 1e-3);

/// h^beta_{ii}(q): metric trace of the second fundamental form of the base
/// against each leaf normal.
Vec base_normal_traces(const LeafSubmanifoldImmersion& phi, const Vec& q);

} // namespace lorentz
