#include "lorentz/scenario.hpp"

namespace lorentz {

namespace {

json parse(const char* text) { return json::parse(text); }

const std::map<std::string, const char*>& scenario_texts() {
    static const std::map<std::string, const char*> texts = {
        {"minkowski-flat-suite", R"({
  "schema_version": 1,
  "id": "minkowski-flat-suite",
  "seed": 2024,
  "ambient": {"builtin": "minkowski"},
  "fields": [
    {"name": "P", "kind": "position"},
    {"name": "E", "kind": "constant", "components": [0.0, 0.0, 1.0]}
  ],
  "checks": [
    {"name": "metric", "op": "metric-signature"},
    {"name": "flat-connection", "op": "christoffel-metricity"},
    {"name": "flat-curvature", "op": "sectional-curvature", "c": 0.0},
    {"name": "cov-linearity", "op": "covariant-derivative", "field": "P"},
    {"name": "div-trace", "op": "divergence-trace", "field": "P"},
    {"name": "position-homothetic", "op": "conformal-certify", "field": "P",
     "expect": "homothetic", "psi_const": 1.0, "tol": 1e-10},
    {"name": "constant-parallel", "op": "conformal-certify", "field": "E",
     "expect": "parallel"}
  ]
})"},
        {"desitter-ambient-suite", R"({
  "schema_version": 1,
  "id": "desitter-ambient-suite",
  "seed": 2025,
  "ambient": {"builtin": "de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "checks": [
    {"name": "metric", "op": "metric-signature"},
    {"name": "metricity", "op": "christoffel-metricity"},
    {"name": "riemann-symmetries", "op": "curvature-symmetries"},
    {"name": "sectional-plus-one", "op": "sectional-curvature", "c": 1.0},
    {"name": "warp-ode", "op": "grw-curvature-ode", "c": 1.0},
    {"name": "assembly", "op": "grw-assembly"},
    {"name": "canonical-closed-conformal", "op": "conformal-certify", "field": "V",
     "expect": "closed_conformal", "psi_fn": "sinh"},
    {"name": "gradient-identities", "op": "gradient-identities", "field": "V"}
  ]
})"},
        {"antidesitter-ambient-suite", R"({
  "schema_version": 1,
  "id": "antidesitter-ambient-suite",
  "seed": 2026,
  "ambient": {"builtin": "anti-de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "checks": [
    {"name": "metric", "op": "metric-signature"},
    {"name": "sectional-minus-one", "op": "sectional-curvature", "c": -1.0},
    {"name": "warp-ode", "op": "grw-curvature-ode", "c": -1.0},
    {"name": "sin-dt-closed-conformal", "op": "conformal-certify", "field": "V",
     "expect": "closed_conformal", "psi_fn": "cos"},
    {"name": "slice-umbilicity", "op": "slice-data", "t0": 1.5707963267948966,
     "expect_factor": 0.0}
  ]
})"},
        {"desitter-hyperbolic-suite", R"({
  "schema_version": 1,
  "id": "desitter-hyperbolic-suite",
  "seed": 2027,
  "ambient": {"builtin": "de-sitter-hyperbolic-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "checks": [
    {"name": "sectional-plus-one", "op": "sectional-curvature", "c": 1.0},
    {"name": "warp-ode", "op": "grw-curvature-ode", "c": 1.0},
    {"name": "sinh-dt-closed-conformal", "op": "conformal-certify", "field": "V",
     "expect": "closed_conformal", "psi_fn": "cosh"},
    {"name": "gradient-identities", "op": "gradient-identities", "field": "V"}
  ]
})"},
        {"hyperquadric-suite", R"({
  "schema_version": 1,
  "id": "hyperquadric-suite",
  "seed": 2028,
  "ambient": {"builtin": "de-sitter-hyperquadric"},
  "checks": [
    {"name": "level", "op": "hyperquadric-level"},
    {"name": "sectional-plus-one", "op": "sectional-curvature", "c": 1.0},
    {"name": "metric", "op": "metric-signature"}
  ]
})"},
        {"antidesitter-hyperquadric-suite", R"({
  "schema_version": 1,
  "id": "antidesitter-hyperquadric-suite",
  "seed": 2029,
  "ambient": {"builtin": "anti-de-sitter-hyperquadric"},
  "checks": [
    {"name": "level", "op": "hyperquadric-level"},
    {"name": "sectional-minus-one", "op": "sectional-curvature", "c": -1.0}
  ]
})"},
        {"conformal-suite", R"({
  "schema_version": 1,
  "id": "conformal-suite",
  "seed": 2030,
  "ambient": {"builtin": "minkowski"},
  "fields": [
    {"name": "P", "kind": "position"},
    {"name": "Pexpr", "kind": "expression", "components": ["x0", "x1", "x2"],
     "variables": ["x0", "x1", "x2"]},
    {"name": "eta", "kind": "constant", "components": [0.3, -0.2, 0.15]}
  ],
  "immersions": [{"name": "leaf", "kind": "hyperboloid-graph"}],
  "checks": [
    {"name": "position-homothetic", "op": "conformal-certify", "field": "P",
     "expect": "homothetic", "psi_const": 1.0, "tol": 1e-10},
    {"name": "expression-field-matches", "op": "conformal-certify", "field": "Pexpr",
     "expect": "homothetic", "psi_const": 1.0, "tol": 1e-10},
    {"name": "lemma-projection", "op": "project-to-leaf", "eta": "eta", "field": "P",
     "leaf": "leaf"},
    {"name": "leaf-umbilicity", "op": "leaf-umbilicity", "field": "P", "leaf": "leaf"}
  ]
})"},
        {"curvature-suite", R"({
  "schema_version": 1,
  "id": "curvature-suite",
  "seed": 2031,
  "ambient": {"builtin": "minkowski"},
  "fields": [
    {"name": "P", "kind": "position"},
    {"name": "W", "kind": "constant", "components": [0.1, -0.2, 1.0]}
  ],
  "immersions": [
    {"name": "plane", "kind": "hyperplane", "height": 0.4},
    {"name": "hb", "kind": "hyperboloid-graph"},
    {"name": "bump", "kind": "perturbed-hyperboloid", "amplitude": 0.05},
    {"name": "torus", "kind": "flat-torus"}
  ],
  "checks": [
    {"name": "newton-random", "op": "newton-identities", "count": 1000},
    {"name": "frames", "op": "frame-orthonormality", "immersion": "hb"},
    {"name": "hyperboloid-shape", "op": "shape-operator", "immersion": "hb",
     "expect_factor": -1.0},
    {"name": "plane-shape", "op": "shape-operator", "immersion": "plane",
     "expect_factor": 0.0},
    {"name": "lr-forms", "op": "lr-two-forms", "immersion": "hb", "r": 1},
    {"name": "support-identities", "op": "support-identities", "immersion": "hb",
     "field": "P", "second_field": "W"},
    {"name": "audit-hyperboloid", "op": "bernstein-audit", "immersion": "hb", "field": "P",
     "expect_verdict_contains": "totally umbilical"},
    {"name": "audit-bump", "op": "bernstein-audit", "immersion": "bump", "field": "P",
     "expect_verdict_contains": "conclusions not met"}
  ]
})"},
        {"desitter-slice-suite", R"({
  "schema_version": 1,
  "id": "desitter-slice-suite",
  "seed": 2032,
  "ambient": {"builtin": "de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "immersions": [{"name": "slice1", "kind": "grw-slice", "t0": 1.0}],
  "checks": [
    {"name": "sectional-plus-one", "op": "sectional-curvature", "c": 1.0},
    {"name": "slice-umbilicity", "op": "slice-data", "t0": 1.0,
     "expect_factor": -0.76159415595576485},
    {"name": "canonical-field", "op": "conformal-certify", "field": "V",
     "expect": "closed_conformal", "psi_fn": "sinh"},
    {"name": "support-identities", "op": "support-identities", "immersion": "slice1",
     "field": "V"},
    {"name": "leaf-umbilicity", "op": "leaf-umbilicity", "field": "V", "leaf": "slice1"},
    {"name": "stability", "op": "stability-probe", "immersion": "slice1", "field": "V",
     "r": 1, "expect_classifier": "leaf", "expect_cosh_theta_one": true}
  ]
})"},
        {"simons-great-circle", R"({
  "schema_version": 1,
  "id": "simons-great-circle",
  "seed": 2033,
  "ambient": {"builtin": "de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "bases": [
    {"name": "great", "kind": "slice-circle", "t0": 1.0, "theta0": 1.5707963267948966},
    {"name": "small", "kind": "slice-circle", "t0": 1.0, "theta0": 1.0707963267948966}
  ],
  "checks": [
    {"name": "flow-composition", "op": "flow-property", "field": "V"},
    {"name": "great-circle-maximal", "op": "mean-curvature-flow", "base": "great",
     "field": "V", "expect_maximal": true},
    {"name": "small-circle-not-maximal", "op": "mean-curvature-flow", "base": "small",
     "field": "V", "expect_maximal": false, "floor": 0.001},
    {"name": "decay-law", "op": "decay-law", "base": "small", "field": "V"},
    {"name": "equivalence-great", "op": "simons-equivalence", "base": "great",
     "field": "V", "expect_small": true},
    {"name": "equivalence-small", "op": "simons-equivalence", "base": "small",
     "field": "V", "expect_small": false}
  ]
})"},
        {"simons-ads-suite", R"({
  "schema_version": 1,
  "id": "simons-ads-suite",
  "seed": 2034,
  "ambient": {"builtin": "anti-de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "bases": [{"name": "geodesic", "kind": "h2-geodesic", "t0": 1.0}],
  "checks": [
    {"name": "geodesic-maximal", "op": "simons-equivalence", "base": "geodesic",
     "field": "V", "expect_small": true, "eps": 0.3}
  ]
})"},
        {"simons-cone-suite", R"({
  "schema_version": 1,
  "id": "simons-cone-suite",
  "seed": 2035,
  "ambient": {"builtin": "grw-cone"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "bases": [{"name": "line", "kind": "cone-line", "t0": 1.2}],
  "checks": [
    {"name": "decay-law-ric-v-zero", "op": "decay-law", "base": "line", "field": "V",
     "eps": 0.25, "t_grid": [-0.2, 0.0, 0.2]},
    {"name": "line-maximal", "op": "simons-equivalence", "base": "line", "field": "V",
     "expect_small": true, "eps": 0.25}
  ]
})"},
        {"stability-suite", R"({
  "schema_version": 1,
  "id": "stability-suite",
  "seed": 2036,
  "ambient": {"builtin": "de-sitter-grw"},
  "fields": [{"name": "V", "kind": "canonical"}],
  "immersions": [{"name": "slice1", "kind": "grw-slice", "t0": 1.0}],
  "checks": [
    {"name": "volume-balance", "op": "volume-first-variation", "immersion": "slice1",
     "speed": "one"},
    {"name": "volume-preserving-mode", "op": "volume-first-variation", "immersion": "slice1",
     "speed": "sphere-mode", "mode": 2, "expect_flux0": 0.0},
    {"name": "area-first-variation", "op": "r-area-first-variation", "immersion": "slice1",
     "r": 0},
    {"name": "one-area-first-variation", "op": "r-area-first-variation",
     "immersion": "slice1", "r": 1},
    {"name": "jacobi-critical", "op": "jacobi-critical", "immersion": "slice1", "r": 1,
     "speed": "sphere-mode", "mode": 2},
    {"name": "second-variation-area", "op": "second-variation", "immersion": "slice1",
     "r": 0},
    {"name": "second-variation-one", "op": "second-variation", "immersion": "slice1",
     "r": 1},
    {"name": "lr-support", "op": "lr-support-identity", "immersion": "slice1",
     "field": "V", "r": 1},
    {"name": "stability-probe", "op": "stability-probe", "immersion": "slice1",
     "field": "V", "r": 1, "expect_classifier": "leaf"}
  ]
})"},
    };
    return texts;
}

} // namespace

json builtin_scenario(const std::string& name) {
    auto it = scenario_texts().find(name);
    if (it == scenario_texts().end())
        fail(ErrorCode::UnresolvedReference, "unknown built-in scenario '" + name + "'");
    return parse(it->second);
}

Catalog list_builtins() {
    Catalog cat;
    cat.models = {
        {"minkowski", "Lorentz 3-space, metric diag(1,1,-1)"},
        {"minkowski4", "Lorentz 4-space, metric diag(1,1,1,-1)"},
        {"r42", "pseudo-Euclidean R^4_2, metric diag(1,1,-1,-1)"},
        {"de-sitter-grw", "warped product -R x_cosh S^2, curvature +1"},
        {"de-sitter-grw3", "warped product -R x_cosh S^3, curvature +1"},
        {"anti-de-sitter-grw", "warped product -(0,pi) x_sin H^2, curvature -1"},
        {"de-sitter-hyperbolic-grw", "warped product -(0,inf) x_sinh H^2, curvature +1"},
        {"grw-cone", "warped product -(0,inf) x_t R^2, Ric(V) = 0"},
        {"de-sitter-hyperquadric", "graph chart of {<x,x> = 1} in Lorentz 3-space"},
        {"anti-de-sitter-hyperquadric", "graph chart of {<x,x> = -1} in R^3_2"},
    };
    cat.fields = {
        {"canonical", "warp(t) d_t on a GRW model (closed conformal, factor warp')"},
        {"position", "nu(x) = x on a flat model (homothetic, factor 1)"},
        {"constant", "constant-component parallel field"},
        {"warp-dt", "profile(t) d_t for a named profile function"},
        {"expression", "components given as arithmetic expressions"},
    };
    cat.immersions = {
        {"hyperplane", "spacelike hyperplane x_last = const"},
        {"hyperboloid-graph", "upper unit hyperboloid as a graph"},
        {"perturbed-hyperboloid", "hyperboloid graph with a Gaussian bump"},
        {"flat-torus", "plane patch with doubly periodic parameters"},
        {"grw-slice", "slice {t0} x F of a GRW model"},
        {"grw-graph", "graph t = t0 + amp sin(theta) sin(phi) in a GRW model"},
    };
    cat.bases = {
        {"slice-circle", "circle theta = theta0 in {t0} x S^2 with in-leaf normal"},
        {"h2-geodesic", "radial geodesic in {t0} x H^2 with in-leaf normal"},
        {"cone-line", "coordinate line in {t0} x R^2 of the cone model"},
    };
    cat.suites = {
        {"minkowski-flat-suite", "flat-space kernel and conformal classification checks"},
        {"desitter-ambient-suite", "de Sitter model: curvature, warp ODE, canonical field"},
        {"antidesitter-ambient-suite", "anti-de Sitter model checks"},
        {"desitter-hyperbolic-suite", "hyperbolic-slicing de Sitter presentation checks"},
        {"hyperquadric-suite", "de Sitter hyperquadric chart checks"},
        {"antidesitter-hyperquadric-suite", "anti-de Sitter hyperquadric chart checks"},
        {"conformal-suite", "certificates, leaf projection and leaf umbilicity"},
        {"curvature-suite", "Newton identities, shape operators, support identities, audits"},
        {"desitter-slice-suite", "slice geometry, support identities and the stability probe"},
        {"simons-great-circle", "flow construction over great/small circle bases"},
        {"simons-ads-suite", "flowed geodesic in the anti-de Sitter model"},
        {"simons-cone-suite", "flow construction under the Ric(V) = 0 hypothesis"},
        {"stability-suite", "variational functionals and the strong r-stability probe"},
    };
    cat.checks = {
        {"metric-signature", "metric_at"},
        {"christoffel-metricity", "christoffel_at"},
        {"curvature-symmetries", "curvature_at"},
        {"sectional-curvature", "curvature_at"},
        {"covariant-derivative", "covariant_derivative"},
        {"divergence-trace", "divergence_at"},
        {"grw-assembly", "make_grw"},
        {"grw-curvature-ode", "grw_curvature_residual"},
        {"hyperquadric-level", "make_hyperquadric"},
        {"slice-data", "slice_data"},
        {"conformal-certify", "certify"},
        {"gradient-identities", "gradient_identities_check"},
        {"project-to-leaf", "project_to_leaf"},
        {"leaf-umbilicity", "leaf_umbilicity_check"},
        {"frame-orthonormality", "frame_at"},
        {"shape-operator", "shape_operator_at"},
        {"newton-identities", "newton_identities_check"},
        {"lr-two-forms", "lr_apply"},
        {"support-identities", "support_identities_check"},
        {"bernstein-audit", "bernstein_audit"},
        {"flow-property", "flow_conformal_field"},
        {"mean-curvature-flow", "mean_curvature_vector"},
        {"decay-law", "decay_law_check"},
        {"simons-equivalence", "simons_equivalence_probe"},
        {"volume-first-variation", "volume_balance"},
        {"r-area-first-variation", "first_variation_r_area"},
        {"jacobi-critical", "jacobi_functional"},
        {"second-variation", "second_variation"},
        {"lr-support-identity", "lr_support_identity_check"},
        {"stability-probe", "stability_probe"},
    };
    return cat;
}

} // namespace lorentz
