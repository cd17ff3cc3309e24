#pragma once
#include "lorentz/vector_field.hpp"

namespace lorentz {

/// Pullback of the ambient metric along a chart/immersion map, as a smooth
/// map on the parameters. Capped at depth 3 (building the Jacobian consumes
/// one dual level).
SmoothMap pullback_metric_map(const SmoothMap& chart, SpacePtr ambient);

// ---------------------------------------------------------------------------
// Flat models
// ---------------------------------------------------------------------------

/// Pseudo-Euclidean space of the given index: index 1 gives Lorentz space
/// L^dim = diag(1,...,1,-1), index 2 gives diag(1,...,1,-1,-1). The last
/// coordinate(s) carry the minus signs; for index 1 the future orientation is
/// "last coordinate increasing".
SpacePtr make_flat(int dim, int index);

// ---------------------------------------------------------------------------
// Riemannian fibers (polar-type charts, poles excluded from sampling)
// ---------------------------------------------------------------------------

SpacePtr make_sphere_fiber(int n);      // curvature +1
SpacePtr make_hyperbolic_fiber(int n);  // curvature -1
SpacePtr make_flat_fiber(int n);        // curvature 0

// ---------------------------------------------------------------------------
// GRW warped products  -I x_phi F
// ---------------------------------------------------------------------------

struct GRWModel {
    double t_lo = 0.0, t_hi = 0.0;   // interval I
    double sample_lo = 0.0, sample_hi = 0.0;
    SmoothFn1 warp;
    std::string warp_name;
    SpacePtr fiber;
    std::optional<double> fiber_curvature; // declared constant curvature of F
    SpacePtr assembled;                    // -dt^2 + phi(t)^2 g_F, t first

    /// Canonical closed conformal field (phi o pi_I) d_t, factor phi'.
    AmbientVectorField canonical_field() const;
};

GRWModel make_grw(double t_lo, double t_hi, SmoothFn1 warp, const std::string& warp_name,
                  SpacePtr fiber, std::optional<double> fiber_curvature,
                  double sample_lo, double sample_hi);

/// Built-in models (n = fiber dimension).
GRWModel make_de_sitter_grw(int n = 2);            // -R x_cosh S^n, curvature +1
GRWModel make_anti_de_sitter_grw(int n = 2);       // -(0,pi) x_sin H^n, curvature -1
GRWModel make_de_sitter_hyperbolic_grw(int n = 2); // -(0,inf) x_sinh H^n, curvature +1
GRWModel make_grw_cone(int n = 2);                 // -(0,inf) x_t R^n, Ric(V) = 0

struct GrwCurvatureResidual {
    double res1; // sup |phi''/phi - c|
    double res2; // sup |((phi')^2 + k)/phi^2 - c|
};

/// Residuals of the constant-curvature warp ODE over sampled I.
GrwCurvatureResidual grw_curvature_residual(const GRWModel& m, double c_target,
                                            int nsamples = 64);

struct SliceData {
    double umbilicity_factor; // -phi'(t0)/phi(t0), future-pointing normal
    double V_t_component;     // phi(t0)
    double psi;               // phi'(t0)
};

SliceData slice_data(const GRWModel& m, double t0);

// ---------------------------------------------------------------------------
// Hyperquadrics (graph charts over a coordinate box)
// ---------------------------------------------------------------------------

enum class HyperquadricKind { DeSitter, AntiDeSitter };

struct HyperquadricModel {
    HyperquadricKind kind;
    int n = 0;             // hypersurface dimension
    SpacePtr ambient_flat; // L^{n+1} or R^{n+1}_2
    int level = 0;         // <x,x> on the quadric
    SmoothMap chart;       // params -> ambient coordinates
    SpacePtr induced;      // chart with pullback metric (Lorentz)

    /// sup |<x,x> - level| over sampled chart points.
    double level_residual(std::uint64_t seed, int nsamples = 64) const;
};

HyperquadricModel make_hyperquadric(HyperquadricKind kind, int n);

// ---------------------------------------------------------------------------
// Common ambient fields
// ---------------------------------------------------------------------------

/// Position field nu(x) = x on a flat model (homothetic, psi = 1).
AmbientVectorField position_field(SpacePtr flat);

/// Constant-component field.
AmbientVectorField constant_field(SpacePtr space, Vec components, const std::string& name = "constant");

/// Phi(t) d_t on a GRW model for a named profile Phi (need not be conformal).
AmbientVectorField warp_dt_field(const GRWModel& m, SmoothFn1 profile, const std::string& name);

SmoothFn1 named_warp(const std::string& name);

} // namespace lorentz
