#pragma once
#include "lorentz/simons_flow.hpp"

namespace lorentz {

/// Named desk-scale fixtures shared by the test suites and the scenario
/// catalog. Every immersion here admits a single global chart on the region
/// it samples.
namespace fixtures {

/// Spacelike hyperplane x_last = height in a flat Lorentz space.
SpacelikeImmersion hyperplane(SpacePtr flat, double height = 0.4, double halfwidth = 1.0);

/// Upper unit hyperboloid branch as a graph over a coordinate box.
SpacelikeImmersion hyperboloid_graph(SpacePtr l3, double halfwidth = 0.8);

/// Hyperboloid graph with a Gaussian bump of the given amplitude.
SpacelikeImmersion perturbed_hyperboloid(SpacePtr l3, double halfwidth = 0.8,
                                         double amplitude = 0.05);

/// Plane patch with both parameter axes periodic (flat-torus quadrature).
SpacelikeImmersion flat_torus_patch(SpacePtr l3, double height = 0.3);

/// Slice {t0} x F of a GRW model over the full fiber chart.
SpacelikeImmersion grw_slice(const GRWModel& m, double t0);

/// Spacelike graph t = t0 + amp sin(theta) sin(phi) in a GRW model with an
/// S^2 fiber (a non-umbilic test surface).
SpacelikeImmersion grw_graph(const GRWModel& m, double t0, double amp = 0.15);

/// Circle theta = theta0 inside the slice {t0} x S^2 of a cosh-warped GRW
/// model, with its in-leaf unit normal (theta0 = pi/2 is a great circle).
LeafSubmanifoldImmersion slice_circle(const GRWModel& m, double t0, double theta0);

/// Radial geodesic segment through the slice {t0} x H^2 of a sin-warped GRW
/// model, with its in-leaf unit normal.
LeafSubmanifoldImmersion slice_geodesic_h2(const GRWModel& m, double t0, double r_lo = 0.2,
                                           double r_hi = 1.4);

/// Straight coordinate line in the slice {t0} x R^2 of the cone model,
/// with its in-leaf unit normal.
LeafSubmanifoldImmersion cone_line(const GRWModel& m, double t0, double halfwidth = 1.0);

} // namespace fixtures

} // namespace lorentz
