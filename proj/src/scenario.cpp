#include "lorentz/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "lorentz/expr.hpp"
#include "lorentz/support_identities.hpp"

namespace lorentz {

const AmbientVectorField& ScenarioContext::field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end()) fail(ErrorCode::UnresolvedReference, "unknown field '" + name + "'");
    return it->second;
}
const SpacelikeImmersion& ScenarioContext::immersion(const std::string& name) const {
    auto it = immersions.find(name);
    if (it == immersions.end())
        fail(ErrorCode::UnresolvedReference, "unknown immersion '" + name + "'");
    return it->second;
}
const LeafSubmanifoldImmersion& ScenarioContext::base(const std::string& name) const {
    auto it = bases.find(name);
    if (it == bases.end()) fail(ErrorCode::UnresolvedReference, "unknown base '" + name + "'");
    return it->second;
}

std::string format_residual(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

GRWModel builtin_grw(const std::string& name) {
    if (name == "de-sitter-grw") return make_de_sitter_grw(2);
    if (name == "de-sitter-grw3") return make_de_sitter_grw(3);
    if (name == "anti-de-sitter-grw") return make_anti_de_sitter_grw(2);
    if (name == "de-sitter-hyperbolic-grw") return make_de_sitter_hyperbolic_grw(2);
    if (name == "grw-cone") return make_grw_cone(2);
    fail(ErrorCode::UnresolvedReference, "unknown GRW model '" + name + "'");
}

bool is_grw_name(const std::string& name) {
    return name == "de-sitter-grw" || name == "de-sitter-grw3" ||
           name == "anti-de-sitter-grw" || name == "de-sitter-hyperbolic-grw" ||
           name == "grw-cone";
}

void resolve_ambient(ScenarioContext& ctx, const json& spec) {
    if (spec.contains("builtin")) {
        std::string name = spec["builtin"].get<std::string>();
        if (name == "minkowski") {
            ctx.ambient = make_flat(3, 1);
        } else if (name == "minkowski4") {
            ctx.ambient = make_flat(4, 1);
        } else if (name == "r42") {
            ctx.ambient = make_flat(4, 2);
        } else if (is_grw_name(name)) {
            ctx.grw = builtin_grw(name);
            ctx.ambient = ctx.grw->assembled;
        } else if (name == "de-sitter-hyperquadric") {
            ctx.hyperquadric = make_hyperquadric(HyperquadricKind::DeSitter, 2);
            ctx.ambient = ctx.hyperquadric->induced;
        } else if (name == "anti-de-sitter-hyperquadric") {
            ctx.hyperquadric = make_hyperquadric(HyperquadricKind::AntiDeSitter, 2);
            ctx.ambient = ctx.hyperquadric->induced;
        } else {
            fail(ErrorCode::UnresolvedReference, "unknown ambient '" + name + "'");
        }
        return;
    }
    if (spec.contains("flat")) {
        ctx.ambient = make_flat(spec["flat"].value("dim", 3), spec["flat"].value("index", 1));
        return;
    }
    if (spec.contains("grw")) {
        const json& g = spec["grw"];
        std::string warp = g.value("warp", "cosh");
        std::string fiber = g.value("fiber", "sphere2");
        SpacePtr F;
        std::optional<double> k;
        if (fiber.rfind("sphere", 0) == 0) { F = make_sphere_fiber(fiber.back() - '0'); k = 1.0; }
        else if (fiber.rfind("hyperbolic", 0) == 0) { F = make_hyperbolic_fiber(fiber.back() - '0'); k = -1.0; }
        else if (fiber.rfind("flat", 0) == 0) { F = make_flat_fiber(fiber.back() - '0'); k = 0.0; }
        else fail(ErrorCode::UnresolvedReference, "unknown fiber '" + fiber + "'");
        double lo = g["interval"][0].get<double>();
        double hi = g["interval"][1].get<double>();
        double slo = g.contains("sample") ? g["sample"][0].get<double>() : lo;
        double shi = g.contains("sample") ? g["sample"][1].get<double>() : hi;
        ctx.grw = make_grw(lo, hi, named_warp(warp), warp, F, k, slo, shi);
        ctx.ambient = ctx.grw->assembled;
        return;
    }
    if (spec.contains("hyperquadric")) {
        const json& h = spec["hyperquadric"];
        auto kind = h.value("kind", "de-sitter") == "de-sitter" ? HyperquadricKind::DeSitter
                                                                : HyperquadricKind::AntiDeSitter;
        ctx.hyperquadric = make_hyperquadric(kind, h.value("n", 2));
        ctx.ambient = ctx.hyperquadric->induced;
        return;
    }
    fail(ErrorCode::ConfigParse, "scenario is missing an ambient model");
}

AmbientVectorField resolve_field(const ScenarioContext& ctx, const json& spec) {
    std::string kind = spec.value("kind", "");
    if (kind == "canonical") {
        if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "canonical field needs a GRW ambient");
        return ctx.grw->canonical_field();
    }
    if (kind == "position") return position_field(ctx.ambient);
    if (kind == "constant") {
        Vec comps = spec["components"].get<Vec>();
        return constant_field(ctx.ambient, comps, spec.value("name", "constant"));
    }
    if (kind == "warp-dt") {
        if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "warp-dt field needs a GRW ambient");
        std::string fn = spec.value("fn", "sinh");
        return warp_dt_field(*ctx.grw, named_warp(fn), fn + "-dt");
    }
    if (kind == "expression") {
        std::vector<std::string> comps = spec["components"].get<std::vector<std::string>>();
        std::vector<std::string> vars = spec["variables"].get<std::vector<std::string>>();
        if (static_cast<int>(comps.size()) != ctx.ambient->dim ||
            static_cast<int>(vars.size()) != ctx.ambient->dim)
            fail(ErrorCode::ConfigParse, "expression field arity mismatch");
        std::vector<ScalarExpr> exprs;
        for (const auto& c : comps) exprs.push_back(ScalarExpr::parse(c, vars));
        AmbientVectorField f;
        f.space = ctx.ambient;
        f.name = spec.value("name", "expression");
        const int d = ctx.ambient->dim;
        f.eval = SmoothMap::make(d, d, [exprs, d](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            VecT<T> v(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = exprs[static_cast<std::size_t>(i)].eval(x);
            return v;
        });
        return f;
    }
    fail(ErrorCode::UnresolvedReference, "unknown field kind '" + kind + "'");
}

SpacelikeImmersion resolve_immersion(const ScenarioContext& ctx, const json& spec) {
    std::string kind = spec.value("kind", "");
    if (kind == "hyperplane") return fixtures::hyperplane(ctx.ambient, spec.value("height", 0.4));
    if (kind == "hyperboloid-graph")
        return fixtures::hyperboloid_graph(ctx.ambient, spec.value("halfwidth", 0.8));
    if (kind == "perturbed-hyperboloid")
        return fixtures::perturbed_hyperboloid(ctx.ambient, spec.value("halfwidth", 0.8),
                                               spec.value("amplitude", 0.05));
    if (kind == "flat-torus") return fixtures::flat_torus_patch(ctx.ambient, spec.value("height", 0.3));
    if (kind == "grw-slice") {
        if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "grw-slice needs a GRW ambient");
        return fixtures::grw_slice(*ctx.grw, spec.value("t0", 1.0));
    }
    if (kind == "grw-graph") {
        if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "grw-graph needs a GRW ambient");
        return fixtures::grw_graph(*ctx.grw, spec.value("t0", 1.0), spec.value("amp", 0.15));
    }
    fail(ErrorCode::UnresolvedReference, "unknown immersion kind '" + kind + "'");
}

LeafSubmanifoldImmersion resolve_base(const ScenarioContext& ctx, const json& spec) {
    std::string kind = spec.value("kind", "");
    if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "flow bases need a GRW ambient");
    if (kind == "slice-circle")
        return fixtures::slice_circle(*ctx.grw, spec.value("t0", 1.0),
                                      spec.value("theta0", M_PI / 2));
    if (kind == "h2-geodesic")
        return fixtures::slice_geodesic_h2(*ctx.grw, spec.value("t0", 1.0));
    if (kind == "cone-line") return fixtures::cone_line(*ctx.grw, spec.value("t0", 1.0));
    fail(ErrorCode::UnresolvedReference, "unknown base kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// check handlers
// ---------------------------------------------------------------------------

using Handler = std::function<CheckResult(const ScenarioContext&, const json&, double)>;

void push(CheckResult& r, const std::string& name, double v) { r.residuals.emplace_back(name, v); }

void finish(CheckResult& r, double worst) {
    if (!(worst <= r.tolerance)) r.status = "fail";
}

CheckResult metric_signature_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    SplitMix64 rng(ctx.seed);
    int n = p.value("samples", 20);
    double sym = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec pt = sample_point(*ctx.ambient, rng);
        Mat g = metric_at(*ctx.ambient, pt); // throws on signature mismatch
        for (int a = 0; a < ctx.ambient->dim; ++a)
            for (int b = 0; b < a; ++b) sym = std::max(sym, std::fabs(g(a, b) - g(b, a)));
    }
    push(r, "symmetry", sym);
    finish(r, sym);
    return r;
}

CheckResult christoffel_metricity_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    SplitMix64 rng(ctx.seed);
    int n = p.value("samples", 20);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst, metricity_residual(*ctx.ambient, sample_point(*ctx.ambient, rng)));
    push(r, "metricity", worst);
    finish(r, worst);
    return r;
}

CheckResult curvature_symmetries_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    SplitMix64 rng(ctx.seed);
    int n = p.value("samples", 12);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        worst = std::max(worst,
                         curvature_at(*ctx.ambient, sample_point(*ctx.ambient, rng)).symmetry_residual());
    push(r, "riemann_symmetries", worst);
    finish(r, worst);
    return r;
}

CheckResult sectional_curvature_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    double c = p.value("c", 1.0);
    int n = p.value("samples", 100);
    SplitMix64 rng(ctx.seed);
    double worst = 0.0, worst_form = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec pt = sample_point(*ctx.ambient, rng);
        auto R = curvature_at(*ctx.ambient, pt);
        worst_form = std::max(worst_form, R.constant_curvature_residual(c));
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vec X(static_cast<std::size_t>(ctx.ambient->dim)), Y(static_cast<std::size_t>(ctx.ambient->dim));
            for (int a = 0; a < ctx.ambient->dim; ++a) {
                X[static_cast<std::size_t>(a)] = rng.uniform(-1.0, 1.0);
                Y[static_cast<std::size_t>(a)] = rng.uniform(-1.0, 1.0);
            }
            double xx = metric_dot(R.g, X, X), yy = metric_dot(R.g, Y, Y), xy = metric_dot(R.g, X, Y);
            if (std::fabs(xx * yy - xy * xy) < 0.05) continue;
            worst = std::max(worst, std::fabs(R.sectional(X, Y) - c));
            break;
        }
    }
    push(r, "sectional", worst);
    push(r, "constant_curvature_form", worst_form);
    finish(r, worst);
    return r;
}

CheckResult covariant_derivative_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int i = 0; i < p.value("samples", 10); ++i) {
        Vec pt = sample_point(*ctx.ambient, rng);
        Vec X(static_cast<std::size_t>(ctx.ambient->dim)), Y(static_cast<std::size_t>(ctx.ambient->dim));
        for (int a = 0; a < ctx.ambient->dim; ++a) {
            X[static_cast<std::size_t>(a)] = rng.uniform(-1.0, 1.0);
            Y[static_cast<std::size_t>(a)] = rng.uniform(-1.0, 1.0);
        }
        double al = rng.uniform(-2.0, 2.0), be = rng.uniform(-2.0, 2.0);
        Vec lhs = covariant_derivative(*ctx.ambient, V.eval, pt,
                                       vec_add(vec_scale(X, al), vec_scale(Y, be)));
        Vec rhs = vec_add(vec_scale(covariant_derivative(*ctx.ambient, V.eval, pt, X), al),
                          vec_scale(covariant_derivative(*ctx.ambient, V.eval, pt, Y), be));
        worst = std::max(worst, norm2(vec_sub(lhs, rhs)));
    }
    push(r, "linearity", worst);
    finish(r, worst);
    return r;
}

CheckResult divergence_trace_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    SplitMix64 rng(ctx.seed);
    const int d = ctx.ambient->dim;
    double worst = 0.0;
    for (int i = 0; i < p.value("samples", 10); ++i) {
        Vec pt = sample_point(*ctx.ambient, rng);
        double div = divergence_at(*ctx.ambient, V.eval, pt);
        Mat g = ctx.ambient->metric_mat(pt);
        Mat ginv = inverse(g);
        double tr = 0.0;
        for (int a = 0; a < d; ++a) {
            Vec ea(static_cast<std::size_t>(d), 0.0);
            ea[static_cast<std::size_t>(a)] = 1.0;
            Vec cv = covariant_derivative(*ctx.ambient, V.eval, pt, ea);
            for (int b = 0; b < d; ++b) tr += ginv(a, b) * metric_dot(g, cv, [&] {
                Vec eb(static_cast<std::size_t>(d), 0.0);
                eb[static_cast<std::size_t>(b)] = 1.0;
                return eb;
            }());
        }
        worst = std::max(worst, std::fabs(div - tr));
    }
    push(r, "trace_identity", worst);
    finish(r, worst);
    return r;
}

CheckResult grw_assembly_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "grw-assembly needs a GRW ambient");
    const GRWModel& m = *ctx.grw;
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int i = 0; i < p.value("samples", 16); ++i) {
        Vec pt = sample_point(*m.assembled, rng);
        Mat g = metric_at(*m.assembled, pt);
        Vec y(pt.begin() + 1, pt.end());
        Mat gf = m.fiber->metric_mat(y);
        double w2 = m.warp(pt[0]) * m.warp(pt[0]);
        worst = std::max(worst, std::fabs(g(0, 0) + 1.0));
        for (int a = 0; a < m.fiber->dim; ++a)
            for (int b = 0; b < m.fiber->dim; ++b)
                worst = std::max(worst, std::fabs(g(a + 1, b + 1) - w2 * gf(a, b)));
    }
    push(r, "warped_metric", worst);
    finish(r, worst);
    return r;
}

CheckResult grw_curvature_ode_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "grw-curvature-ode needs a GRW ambient");
    auto res = grw_curvature_residual(*ctx.grw, p.value("c", 1.0));
    push(r, "phi_second_over_phi", res.res1);
    push(r, "first_order_form", res.res2);
    finish(r, std::max(res.res1, res.res2));
    return r;
}

CheckResult hyperquadric_level_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    if (!ctx.hyperquadric)
        fail(ErrorCode::UnresolvedReference, "hyperquadric-level needs a hyperquadric ambient");
    double res = ctx.hyperquadric->level_residual(ctx.seed, p.value("samples", 64));
    push(r, "level", res);
    finish(r, res);
    return r;
}

CheckResult slice_data_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    if (!ctx.grw) fail(ErrorCode::UnresolvedReference, "slice-data needs a GRW ambient");
    double t0 = p.value("t0", 1.0);
    auto sd = slice_data(*ctx.grw, t0);
    push(r, "umbilicity_factor", sd.umbilicity_factor);
    if (p.contains("expect_factor"))
        push(r, "factor_error", std::fabs(sd.umbilicity_factor - p["expect_factor"].get<double>()));
    // cross-module consistency: the slice shape operator equals factor * Id
    SpacelikeImmersion sl = fixtures::grw_slice(*ctx.grw, t0);
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int s = 0; s < p.value("samples", 6); ++s) {
        Vec u(static_cast<std::size_t>(sl.n()));
        for (int i = 0; i < sl.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(sl.domain.lo[static_cast<std::size_t>(i)] + 0.3,
                                                         sl.domain.hi[static_cast<std::size_t>(i)] - 0.3);
        auto inv = shape_operator_at(sl, u);
        for (int a = 0; a < inv.n; ++a)
            for (int b = 0; b < inv.n; ++b) {
                double id = a == b ? sd.umbilicity_factor : 0.0;
                worst = std::max(worst, std::fabs(inv.A(a, b) - id));
            }
    }
    push(r, "shape_vs_factor", worst);
    double ferr = p.contains("expect_factor")
                      ? std::fabs(sd.umbilicity_factor - p["expect_factor"].get<double>())
                      : 0.0;
    finish(r, std::max(worst, ferr));
    return r;
}

CheckResult conformal_certify_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    auto samples = sample_points(*ctx.ambient, ctx.seed, p.value("samples", 20));
    auto cert = certify(V, samples);
    push(r, "conformal_residual", cert.conformal_residual);
    push(r, "closed_residual", cert.closed_residual);
    push(r, "grad_psi_sup", cert.grad_psi_sup);
    std::string cls = cert.classification ? field_class_name(*cert.classification) : "none";
    r.detail = "classified " + cls;
    double worst = 0.0;
    if (p.contains("expect") && cls != p["expect"].get<std::string>()) {
        r.status = "fail";
        r.detail += ", expected " + p["expect"].get<std::string>();
    }
    if (p.contains("psi_fn")) {
        // compare psi-hat against a named function of the first coordinate
        SmoothFn1 ref = named_warp(p["psi_fn"].get<std::string>());
        double worst_psi = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            worst_psi = std::max(worst_psi,
                                 std::fabs(cert.psi_samples[i] - ref(samples[i][0])));
        push(r, "psi_error", worst_psi);
        worst = std::max(worst, worst_psi);
    }
    if (p.contains("psi_const")) {
        double worst_psi = 0.0;
        for (double psi : cert.psi_samples)
            worst_psi = std::max(worst_psi, std::fabs(psi - p["psi_const"].get<double>()));
        push(r, "psi_error", worst_psi);
        worst = std::max(worst, worst_psi);
    }
    finish(r, worst);
    return r;
}

CheckResult gradient_identities_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    auto samples = sample_points(*ctx.ambient, ctx.seed, p.value("samples", 15));
    auto res = gradient_identities_check(V, samples);
    push(r, "grad_vv", res.grad_vv);
    push(r, "grad_psi", res.grad_psi);
    finish(r, std::max(res.grad_vv, res.grad_psi));
    return r;
}

CheckResult project_to_leaf_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& eta = ctx.field(p.value("eta", "eta"));
    const auto& V = ctx.field(p.value("field", "V"));
    // leaf points: image of a named immersion (a leaf of V-perp)
    const auto& leaf = ctx.immersion(p.value("leaf", "leaf"));
    SplitMix64 rng(ctx.seed);
    std::vector<Vec> pts;
    for (int s = 0; s < p.value("samples", 10); ++s) {
        Vec u(static_cast<std::size_t>(leaf.n()));
        for (int i = 0; i < leaf.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(leaf.domain.lo[static_cast<std::size_t>(i)],
                                                         leaf.domain.hi[static_cast<std::size_t>(i)]);
        pts.push_back(leaf.map(u));
    }
    double res = leaf_conformal_certificate(eta, V, pts);
    push(r, "intrinsic_certificate", res);
    finish(r, res);
    return r;
}

CheckResult leaf_umbilicity_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    const auto& leaf = ctx.immersion(p.value("leaf", "leaf"));
    SplitMix64 rng(ctx.seed);
    std::vector<Vec> params;
    for (int s = 0; s < p.value("samples", 8); ++s) {
        Vec u(static_cast<std::size_t>(leaf.n()));
        for (int i = 0; i < leaf.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(leaf.domain.lo[static_cast<std::size_t>(i)] + 0.2,
                                                         leaf.domain.hi[static_cast<std::size_t>(i)] - 0.2);
        params.push_back(u);
    }
    auto res = leaf_umbilicity_check(V, leaf, params);
    push(r, "psi_identity", res.psi_identity_residual);
    push(r, "normalized_shape", res.normalized_shape_residual);
    push(r, "umbilicity_factor", res.umbilicity_factor);
    finish(r, std::max(res.psi_identity_residual, res.normalized_shape_residual));
    return r;
}

CheckResult frame_orthonormality_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int s = 0; s < p.value("samples", 10); ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.2,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - 0.2);
        auto fd = frame_at(imm, u);
        worst = std::max(worst, std::fabs(metric_dot(fd.ambient_metric, fd.normal, fd.normal) + 1.0));
        for (int i = 0; i < imm.n(); ++i) {
            Vec ti(static_cast<std::size_t>(imm.ambient->dim));
            for (int a = 0; a < imm.ambient->dim; ++a) ti[static_cast<std::size_t>(a)] = fd.tangent_basis(a, i);
            worst = std::max(worst, std::fabs(metric_dot(fd.ambient_metric, fd.normal, ti)));
        }
    }
    push(r, "frame", worst);
    finish(r, worst);
    return r;
}

CheckResult shape_operator_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    SplitMix64 rng(ctx.seed);
    double selfadj = 0.0, umb = 0.0;
    for (int s = 0; s < p.value("samples", 8); ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.2,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - 0.2);
        auto inv = shape_operator_at(imm, u);
        selfadj = std::max(selfadj, inv.self_adjoint_residual());
        if (p.contains("expect_factor")) {
            double f = p["expect_factor"].get<double>();
            for (int a = 0; a < inv.n; ++a)
                for (int b = 0; b < inv.n; ++b)
                    umb = std::max(umb, std::fabs(inv.A(a, b) - (a == b ? f : 0.0)));
        }
    }
    push(r, "self_adjoint", selfadj);
    if (p.contains("expect_factor")) push(r, "factor_error", umb);
    finish(r, std::max(selfadj, umb));
    return r;
}

CheckResult newton_identities_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    SplitMix64 rng(ctx.seed);
    int count = p.value("count", 1000);
    std::vector<int> dims = p.contains("dims") ? p["dims"].get<std::vector<int>>()
                                               : std::vector<int>{2, 3};
    double worst = 0.0;
    for (int s = 0; s < count; ++s) {
        int n = dims[static_cast<std::size_t>(s) % dims.size()];
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                A(i, j) = rng.uniform(-2.0, 2.0);
                A(j, i) = A(i, j);
            }
        auto inv = invariants_from_matrix(A);
        auto rep = newton_identities_check(inv);
        worst = std::max(worst, rep.max_residual());
    }
    push(r, "max_identity_residual", worst);
    finish(r, worst);
    return r;
}

CheckResult lr_two_forms_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    int rr = p.value("r", 1);
    // test function: first coordinate of the ambient image
    SpacelikeImmersion cap = imm;
    SmoothScalar f = SmoothScalar::make_capped<3>(imm.n(), [cap](const auto& u) {
        return cap.map(u)[0];
    });
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int s = 0; s < p.value("samples", 6); ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.2,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - 0.2);
        auto res = lr_apply(imm, f, rr, u, true);
        worst = std::max(worst, res.agreement());
    }
    push(r, "two_form_agreement", worst);
    finish(r, worst);
    return r;
}

CheckResult support_identities_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    const auto& V = ctx.field(p.value("field", "V"));
    const AmbientVectorField* W = nullptr;
    AmbientVectorField Wv;
    if (p.contains("second_field")) {
        Wv = ctx.field(p["second_field"].get<std::string>());
        W = &Wv;
    }
    SplitMix64 rng(ctx.seed);
    std::vector<Vec> params;
    for (int s = 0; s < p.value("samples", 6); ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.25,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - 0.25);
        params.push_back(u);
    }
    SupportIdentityOptions opt;
    opt.seed = ctx.seed;
    auto rep = support_identities_check(imm, V, W, params, opt);
    push(r, "grad_fv", rep.res_grad_fv);
    push(r, "lap_fv", rep.res_lap_fv);
    push(r, "grad_g", rep.res_grad_g);
    push(r, "lap_g", rep.res_lap_g);
    push(r, "div_vtop", rep.res_div_vtop);
    push(r, "fv_max", rep.fv_max);
    finish(r, rep.max_residual());
    return r;
}

CheckResult bernstein_audit_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    const auto& V = ctx.field(p.value("field", "V"));
    BernsteinOptions opt;
    opt.seed = ctx.seed;
    opt.tol = tol;
    if (p.contains("mesh")) opt.mesh = p["mesh"].get<std::vector<int>>();
    auto rep = bernstein_audit(imm, V, opt);
    push(r, "sup_A", rep.sup_A);
    push(r, "sup_umbilicity", rep.sup_umbilicity);
    push(r, "sup_ric_nn", rep.sup_ric_nn);
    push(r, "h_min", rep.h_min);
    push(r, "h_max", rep.h_max);
    push(r, "sup_vtop", rep.sup_vtop);
    r.detail = rep.verdict + "; |V^top| trend " + rep.vtop_trend;
    if (p.contains("expect_verdict_contains")) {
        std::string want = p["expect_verdict_contains"].get<std::string>();
        if (rep.verdict.find(want) == std::string::npos) {
            r.status = "fail";
            r.detail += " (expected '" + want + "')";
        }
    }
    return r;
}

CheckResult flow_property_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& V = ctx.field(p.value("field", "V"));
    double t1 = p.value("t1", 0.25), t2 = p.value("t2", 0.15);
    double itol = p.value("integrator_tol", 1e-12);
    SplitMix64 rng(ctx.seed);
    double worst = 0.0;
    for (int s = 0; s < p.value("samples", 5); ++s) {
        Vec pt = sample_point(*ctx.ambient, rng);
        Vec a = flow_conformal_field(V, pt, t1, itol);
        Vec b = flow_conformal_field(V, a, t2, itol);
        Vec c = flow_conformal_field(V, pt, t1 + t2, itol);
        worst = std::max(worst, norm2(vec_sub(b, c)));
    }
    push(r, "composition", worst);
    finish(r, worst);
    return r;
}

CheckResult mean_curvature_flow_check(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& base = ctx.base(p.value("base", "base"));
    const auto& V = ctx.field(p.value("field", "V"));
    auto fl = build_flowed_immersion(base, V, p.value("eps", 0.45));
    SplitMix64 rng(ctx.seed);
    double sup = 0.0;
    for (int s = 0; s < p.value("samples", 8); ++s) {
        Vec q(static_cast<std::size_t>(base.n()));
        for (int i = 0; i < base.n(); ++i)
            q[static_cast<std::size_t>(i)] = rng.uniform(base.domain.lo[static_cast<std::size_t>(i)],
                                                         base.domain.hi[static_cast<std::size_t>(i)]);
        for (double frac : {-0.85, -0.4, 0.0, 0.4, 0.85}) {
            Vec H = mean_curvature_vector(fl, frac * fl.eps, q);
            Vec w(static_cast<std::size_t>(fl.strip_dim()));
            w[0] = frac * fl.eps;
            for (int i = 0; i < base.n(); ++i) w[static_cast<std::size_t>(i + 1)] = q[static_cast<std::size_t>(i)];
            Mat G = V.space->metric_mat(strip_point(fl, w));
            sup = std::max(sup, std::sqrt(std::fabs(metric_dot(G, H, H))));
        }
    }
    push(r, "sup_mean_curvature", sup);
    if (p.value("expect_maximal", true)) finish(r, sup);
    else if (sup <= p.value("floor", 1e-3)) r.status = "fail";
    return r;
}

CheckResult decay_law_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& base = ctx.base(p.value("base", "base"));
    const auto& V = ctx.field(p.value("field", "V"));
    auto fl = build_flowed_immersion(base, V, p.value("eps", 0.45));
    Vec tg = p.contains("t_grid") ? p["t_grid"].get<Vec>()
                                  : Vec{-0.35, -0.2, 0.0, 0.2, 0.35};
    auto rep = decay_law_check(fl, tg, p.value("q_samples", 4), ctx.seed);
    push(r, "decay", rep.decay_residual);
    push(r, "tangent_components", rep.tangent_e_residual);
    push(r, "v_pairing", rep.v_pairing_residual);
    push(r, "transport_orthonormality", rep.transport_orthonormality);
    push(r, "nu_geodesic", rep.nu_geodesic_residual);
    r.detail = "hypothesis: " + rep.hypothesis;
    finish(r, rep.max_residual());
    return r;
}

CheckResult simons_equivalence_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& base = ctx.base(p.value("base", "base"));
    const auto& V = ctx.field(p.value("field", "V"));
    auto verdict = simons_equivalence_probe(base, V, p.value("eps", 0.45), {},
                                            p.value("small_tol", 1e-6),
                                            p.value("large_tol", 1e-3));
    push(r, "base_trace_sup", verdict.base_trace_sup);
    push(r, "mean_curvature_sup", verdict.mean_curvature_sup);
    push(r, "normal_gradient_sup", verdict.normal_gradient_sup);
    r.detail = verdict.all_small ? "jointly small" : (verdict.all_large ? "jointly large" : "mixed");
    bool want_small = p.value("expect_small", true);
    if (!verdict.consistent || (want_small && !verdict.all_small) ||
        (!want_small && !verdict.all_large))
        r.status = "fail";
    return r;
}

VariationScenario scenario_from_params(const ScenarioContext& ctx, const json& p) {
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    SmoothScalar f;
    std::string speed = p.value("speed", "one");
    if (speed == "one") {
        f = SmoothScalar::make(imm.n(), [](const auto& u) {
            using T = typename std::decay_t<decltype(u)>::value_type;
            return T(1.0) + 0.0 * u[0];
        });
    } else if (speed == "sphere-mode") {
        f = sphere_test_basis()[static_cast<std::size_t>(p.value("mode", 2))];
    } else {
        fail(ErrorCode::UnresolvedReference, "unknown speed '" + speed + "'");
    }
    std::vector<int> mesh = p.contains("mesh") ? p["mesh"].get<std::vector<int>>()
                                               : std::vector<int>{16, 32};
    return make_variation_scenario(imm, f, p.value("eps", 0.08), mesh, ctx.seed);
}

CheckResult volume_variation_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    auto scn = scenario_from_params(ctx, p);
    Vec tg = p.contains("t_grid") ? p["t_grid"].get<Vec>() : Vec{-0.04, 0.0, 0.04};
    auto rep = first_variation_volume(scn, tg);
    push(r, "first_variation", rep.residual);
    for (std::size_t i = 0; i < rep.flux.size(); ++i)
        push(r, "flux_" + std::to_string(i), rep.flux[i]);
    r.detail = rep.volume_preserving ? "volume-preserving family" : "not volume-preserving";
    double worst = rep.residual;
    if (p.contains("expect_flux0"))
        worst = std::max(worst, std::fabs(rep.flux[tg.size() / 2] - p["expect_flux0"].get<double>()));
    finish(r, worst);
    return r;
}

CheckResult r_area_variation_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    auto scn = scenario_from_params(ctx, p);
    int rr = p.value("r", 0);
    auto rep = first_variation_r_area(scn, rr);
    push(r, "functional", rep.residual_functional);
    push(r, "pointwise_t0", rep.residual_pointwise0);
    push(r, "pointwise_t", rep.residual_pointwise_t);
    finish(r, std::max({rep.residual_functional, rep.residual_pointwise0, rep.residual_pointwise_t}));
    return r;
}

CheckResult jacobi_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    auto scn = scenario_from_params(ctx, p);
    int rr = p.value("r", 1);
    auto rep = jacobi_functional(scn, rr, {});
    push(r, "jprime0", rep.jprime0);
    push(r, "formula_residual", rep.jprime_residual);
    push(r, "lambda", rep.lambda);
    double worst = rep.jprime_residual;
    if (p.value("expect_critical", true)) worst = std::max(worst, std::fabs(rep.jprime0));
    finish(r, worst);
    return r;
}

CheckResult second_variation_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    auto scn = scenario_from_params(ctx, p);
    int rr = p.value("r", 0);
    auto rep = second_variation(scn, rr);
    push(r, "analytic", rep.analytic);
    push(r, "fd", rep.fd);
    push(r, "rel_error", rep.rel_error);
    finish(r, rep.rel_error);
    return r;
}

CheckResult lr_support_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    const auto& V = ctx.field(p.value("field", "V"));
    SplitMix64 rng(ctx.seed);
    std::vector<Vec> params;
    for (int s = 0; s < p.value("samples", 5); ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.25,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - 0.25);
        params.push_back(u);
    }
    double res = lr_support_identity_check(imm, V, p.value("r", 1), params, ctx.seed);
    push(r, "lr_support", res);
    finish(r, res);
    return r;
}

CheckResult stability_probe_handler(const ScenarioContext& ctx, const json& p, double tol) {
    CheckResult r;
    r.tolerance = tol;
    const auto& imm = ctx.immersion(p.value("immersion", "imm"));
    const auto& V = ctx.field(p.value("field", "V"));
    auto basis = sphere_test_basis();
    auto rep = stability_probe(imm, V, p.value("r", 1), basis);
    push(r, "cosh_theta_minus_one", rep.cosh_theta_max - 1.0);
    push(r, "h_r1", rep.h_r1_value);
    push(r, "h_r", rep.h_r_value);
    push(r, "hyp_margin_min", rep.hyp_margin_min);
    push(r, "psi_zero_fraction", rep.psi_zero_fraction);
    push(r, "jpp_max", rep.jpp_max);
    r.detail = "classifier: " + rep.classifier +
               (rep.hypothesis_holds ? "; slope condition holds" : "; slope condition fails");
    if (p.contains("expect_classifier") &&
        rep.classifier != p["expect_classifier"].get<std::string>())
        r.status = "fail";
    double worst = 0.0;
    if (p.contains("expect_cosh_theta_one"))
        worst = std::max(worst, std::fabs(rep.cosh_theta_max - 1.0));
    finish(r, worst);
    return r;
}

const std::vector<std::pair<std::string, std::pair<std::string, Handler>>>& handlers() {
    static const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> table = {
        {"metric-signature", {"metric_at", metric_signature_check}},
        {"christoffel-metricity", {"christoffel_at", christoffel_metricity_check}},
        {"curvature-symmetries", {"curvature_at", curvature_symmetries_check}},
        {"sectional-curvature", {"curvature_at", sectional_curvature_check}},
        {"covariant-derivative", {"covariant_derivative", covariant_derivative_check}},
        {"divergence-trace", {"divergence_at", divergence_trace_check}},
        {"grw-assembly", {"make_grw", grw_assembly_check}},
        {"grw-curvature-ode", {"grw_curvature_residual", grw_curvature_ode_check}},
        {"hyperquadric-level", {"make_hyperquadric", hyperquadric_level_check}},
        {"slice-data", {"slice_data", slice_data_check}},
        {"conformal-certify", {"certify", conformal_certify_check}},
        {"gradient-identities", {"gradient_identities_check", gradient_identities_handler}},
        {"project-to-leaf", {"project_to_leaf", project_to_leaf_handler}},
        {"leaf-umbilicity", {"leaf_umbilicity_check", leaf_umbilicity_handler}},
        {"frame-orthonormality", {"frame_at", frame_orthonormality_check}},
        {"shape-operator", {"shape_operator_at", shape_operator_check}},
        {"newton-identities", {"newton_identities_check", newton_identities_handler}},
        {"lr-two-forms", {"lr_apply", lr_two_forms_check}},
        {"support-identities", {"support_identities_check", support_identities_handler}},
        {"bernstein-audit", {"bernstein_audit", bernstein_audit_handler}},
        {"flow-property", {"flow_conformal_field", flow_property_check}},
        {"mean-curvature-flow", {"mean_curvature_vector", mean_curvature_flow_check}},
        {"decay-law", {"decay_law_check", decay_law_handler}},
        {"simons-equivalence", {"simons_equivalence_probe", simons_equivalence_handler}},
        {"volume-first-variation", {"volume_balance", volume_variation_handler}},
        {"r-area-first-variation", {"first_variation_r_area", r_area_variation_handler}},
        {"jacobi-critical", {"jacobi_functional", jacobi_handler}},
        {"second-variation", {"second_variation", second_variation_handler}},
        {"lr-support-identity", {"lr_support_identity_check", lr_support_handler}},
        {"stability-probe", {"stability_probe", stability_probe_handler}},
    };
    return table;
}

const Handler& find_handler(const std::string& op) {
    for (const auto& [name, entry] : handlers())
        if (name == op) return entry.second;
    fail(ErrorCode::UnknownCheck, "unknown check operation '" + op + "'");
}

double default_tolerance(const std::string& op) {
    static const std::map<std::string, double> defaults = {
        {"metric-signature", 1e-12},      {"christoffel-metricity", 1e-9},
        {"curvature-symmetries", 1e-8},   {"sectional-curvature", 1e-7},
        {"covariant-derivative", 1e-10},  {"divergence-trace", 1e-10},
        {"grw-assembly", 1e-12},          {"grw-curvature-ode", 1e-10},
        {"hyperquadric-level", 1e-10},    {"slice-data", 1e-8},
        {"conformal-certify", 1e-8},      {"gradient-identities", 1e-8},
        {"project-to-leaf", 1e-7},        {"leaf-umbilicity", 1e-8},
        {"frame-orthonormality", 1e-10},  {"shape-operator", 1e-9},
        {"newton-identities", 1e-9},      {"lr-two-forms", 1e-6},
        {"support-identities", 1e-5},     {"bernstein-audit", 1e-7},
        {"flow-property", 1e-9},          {"mean-curvature-flow", 1e-6},
        {"decay-law", 1e-5},              {"simons-equivalence", 1e-6},
        {"volume-first-variation", 1e-6}, {"r-area-first-variation", 1e-4},
        {"jacobi-critical", 1e-6},        {"second-variation", 1e-3},
        {"lr-support-identity", 1e-5},    {"stability-probe", 1e-8},
    };
    auto it = defaults.find(op);
    return it == defaults.end() ? 1e-8 : it->second;
}

} // namespace

Report run_scenario_json(const json& config) {
    if (!config.contains("id")) fail(ErrorCode::ConfigParse, "scenario needs an 'id'");
    ScenarioContext ctx;
    ctx.id = config["id"].get<std::string>();
    ctx.seed = config.value("seed", 1ULL);
    ctx.tol_scale = config.value("tolerance_scale", 1.0);
    if (!(ctx.tol_scale > 0.0)) fail(ErrorCode::ConfigParse, "tolerance_scale must be positive");
    if (config.value("schema_version", 1) != 1)
        fail(ErrorCode::ConfigParse, "unsupported schema_version");

    if (config.contains("ambient")) resolve_ambient(ctx, config["ambient"]);
    for (const json& f : config.value("fields", json::array())) {
        std::string name = f.value("name", f.value("kind", "field"));
        ctx.fields.emplace(name, resolve_field(ctx, f));
    }
    for (const json& f : config.value("immersions", json::array())) {
        std::string name = f.value("name", f.value("kind", "imm"));
        ctx.immersions.emplace(name, resolve_immersion(ctx, f));
    }
    for (const json& f : config.value("bases", json::array())) {
        std::string name = f.value("name", f.value("kind", "base"));
        ctx.bases.emplace(name, resolve_base(ctx, f));
    }
    ctx.checks = config.value("checks", json::array());

    Report rep;
    rep.scenario_id = ctx.id;
    rep.seed = ctx.seed;
    json checks_out = json::array();
    bool any = false;
    for (const json& chk : ctx.checks) {
        any = true;
        std::string op = chk.value("op", "");
        std::string name = chk.value("name", op);
        const Handler& h = find_handler(op);
        double tol = chk.contains("tol") ? chk["tol"].get<double>()
                                         : default_tolerance(op) * ctx.tol_scale;
        json entry;
        entry["name"] = name;
        entry["op"] = op;
        auto start = std::chrono::steady_clock::now();
        CheckResult res;
        try {
            res = h(ctx, chk, tol);
        } catch (const Error& e) {
            res.status = chk.value("expect_error", "") == error_code_name(e.code()) ? "pass" : "fail";
            res.detail = e.what();
            res.tolerance = tol;
        }
        auto stop = std::chrono::steady_clock::now();
        entry["status"] = res.status;
        json residuals = json::object();
        for (const auto& [k, v] : res.residuals) residuals[k] = format_residual(v);
        entry["residuals"] = residuals;
        entry["tolerance"] = format_residual(res.tolerance);
        if (!res.detail.empty()) entry["detail"] = res.detail;
        entry["runtime_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        checks_out.push_back(entry);
        if (res.status == "fail") rep.all_pass = false;
    }

    json doc;
    doc["schema_version"] = 1;
    doc["scenario"] = ctx.id;
    doc["seed"] = ctx.seed;
    doc["checks"] = checks_out;
    if (!any) doc["warning"] = "no checks declared";
    json env;
    env["engine"] = "lorentz-verify 0.1.0";
#if defined(__clang__)
    env["compiler"] = "clang";
#elif defined(__GNUC__)
    env["compiler"] = "gcc";
#else
    env["compiler"] = "unknown";
#endif
    doc["environment"] = env;
    doc["verdict"] = rep.all_pass ? "pass" : "fail";
    rep.document = doc;
    return rep;
}

Report run_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigParse, "cannot open scenario file '" + path + "'");
    json config;
    try {
        in >> config;
    } catch (const std::exception& e) {
        fail(ErrorCode::ConfigParse, std::string("invalid JSON: ") + e.what());
    }
    return run_scenario_json(config);
}

std::string emit_report(const Report& report, const std::string& format) {
    if (format == "json") return report.document.dump(2) + "\n";
    if (format == "text") {
        std::string out;
        out += "scenario: " + report.scenario_id + " (seed " + std::to_string(report.seed) + ")\n";
        for (const json& c : report.document["checks"]) {
            out += "  [" + c["status"].get<std::string>() + "] " + c["name"].get<std::string>() +
                   " (" + c["op"].get<std::string>() + ")";
            if (c.contains("detail")) out += " - " + c["detail"].get<std::string>();
            out += "\n";
            for (auto& [k, v] : c["residuals"].items())
                out += "        " + k + " = " + v.get<std::string>() + "\n";
        }
        out += "verdict: " + report.document["verdict"].get<std::string>() + "\n";
        return out;
    }
    fail(ErrorCode::UnsupportedFormat, "format must be json or text, got '" + format + "'");
}

json scrub_volatile(json report) {
    report.erase("environment");
    if (report.contains("checks"))
        for (json& c : report["checks"]) c.erase("runtime_ms");
    return report;
}

} // namespace lorentz
