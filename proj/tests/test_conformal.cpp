#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/conformal.hpp"
#include "lorentz/fixtures.hpp"

using namespace lorentz;

TEST_CASE("classification ladder on the standard examples") {
    auto l3 = make_flat(3, 1);
    auto samples = sample_points(*l3, 5, 20);

    auto cst = constant_field(l3, {0.0, 0.3, 1.0});
    CHECK(certify(cst, samples).is(FieldClass::Parallel));

    auto pos = position_field(l3);
    auto cp = certify(pos, samples);
    CHECK(cp.is(FieldClass::Homothetic));
    for (double psi : cp.psi_samples) CHECK(psi == doctest::Approx(1.0).epsilon(1e-12));

    auto ads = make_anti_de_sitter_grw(2);
    auto V = ads.canonical_field();
    auto sa = sample_points(*ads.assembled, 5, 20);
    auto cv = certify(V, sa);
    CHECK(cv.is(FieldClass::ClosedConformal));
    CHECK_FALSE(cv.is(FieldClass::Homothetic));
    for (std::size_t i = 0; i < sa.size(); ++i)
        CHECK(cv.psi_samples[i] == doctest::Approx(std::cos(sa[i][0])).epsilon(1e-10));

    // the sinh-warped presentation carries (sinh t) d_t with factor cosh t
    auto dsh = make_de_sitter_hyperbolic_grw(2);
    auto Vh = dsh.canonical_field();
    auto sh = sample_points(*dsh.assembled, 5, 20);
    auto ch = certify(Vh, sh);
    CHECK(ch.is(FieldClass::ClosedConformal));
    for (std::size_t i = 0; i < sh.size(); ++i)
        CHECK(ch.psi_samples[i] == doctest::Approx(std::cosh(sh[i][0])).epsilon(1e-8));

    // a non-conformal field is refused a label
    auto bad = warp_dt_field(make_de_sitter_grw(2), named_warp("sinh"), "sinh-dt");
    auto cb = certify(bad, sample_points(*bad.space, 5, 20));
    CHECK_FALSE(cb.classification.has_value());

    CHECK_THROWS_AS(certify(pos, {}), Error);
}

TEST_CASE("certify is scale-equivariant") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    AmbientVectorField scaled = V;
    SmoothMap base = V.eval;
    scaled.eval = SmoothMap::make(3, 3, [base](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return vec_scale(base(x), T(2.5));
    });
    auto samples = sample_points(*ds.assembled, 5, 10);
    auto c1 = certify(V, samples);
    auto c2 = certify(scaled, samples);
    for (std::size_t i = 0; i < samples.size(); ++i)
        CHECK(c2.psi_samples[i] == doctest::Approx(2.5 * c1.psi_samples[i]).epsilon(1e-12));
    CHECK(c2.is(FieldClass::ClosedConformal));
}

TEST_CASE("psi-hat matches the factor extracted from nabla V on random directions") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    SplitMix64 rng(13);
    for (int s = 0; s < 25; ++s) {
        Vec p = sample_point(*ds.assembled, rng);
        Mat g = ds.assembled->metric_mat(p);
        Vec X(3);
        for (int i = 0; i < 3; ++i) X[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
        double xx = metric_dot(g, X, X);
        if (std::fabs(xx) < 0.1) continue;
        Vec dv = covariant_derivative(*ds.assembled, V.eval, p, X);
        double factor = metric_dot(g, dv, X) / xx;
        CHECK(factor == doctest::Approx(psi_hat_impl<double>(V, p)).epsilon(1e-8));
    }
}

TEST_CASE("gradient identities") {
    auto l3 = make_flat(3, 1);
    // parallel field: both sides vanish
    auto cstspace = std::make_shared<ChartedSpace>(*l3);
    cstspace->sample_box = {{-0.2, -0.2, 1.0}, {0.2, 0.2, 2.0}}; // timelike region for constant dt
    auto cst = constant_field(cstspace, {0.0, 0.0, 1.0});
    auto res0 = gradient_identities_check(cst, sample_points(*cstspace, 5, 10));
    CHECK(res0.grad_vv == doctest::Approx(0.0));
    CHECK(res0.grad_psi == doctest::Approx(0.0));

    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto res = gradient_identities_check(V, sample_points(*ds.assembled, 5, 15));
    CHECK(res.grad_vv < 1e-8);
    CHECK(res.grad_psi < 1e-8);

    // position field on R^4_2, restricted to the timelike cone
    auto r42 = make_flat(4, 2);
    auto cone = std::make_shared<ChartedSpace>(*r42);
    cone->sample_box = {{-0.2, -0.2, -0.2, 1.0}, {0.2, 0.2, 0.2, 2.0}};
    auto pos = position_field(cone);
    auto res2 = gradient_identities_check(pos, sample_points(*cone, 5, 15));
    CHECK(res2.grad_vv < 1e-8);
    CHECK(res2.grad_psi < 1e-8);

    // not timelike on the sampled set -> error
    auto posl3 = position_field(l3); // default box straddles the cone
    CHECK_THROWS_AS(gradient_identities_check(posl3, sample_points(*l3, 5, 15)), Error);
}

TEST_CASE("lemma projection onto a hyperquadric leaf") {
    auto l3 = make_flat(3, 1);
    auto pos = position_field(l3);
    auto eta = constant_field(l3, {0.3, -0.2, 0.15}, "eta");

    SplitMix64 rng(3);
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) {
        double a = rng.uniform(-0.7, 0.7), b = rng.uniform(-0.7, 0.7);
        pts.push_back({a, b, std::sqrt(1 + a * a + b * b)});
    }
    auto proj = project_to_leaf(eta, pos, pts[0]);
    Mat g = l3->metric_mat(pts[0]);
    double expect = metric_dot(g, Vec{0.3, -0.2, 0.15}, pts[0]); // <eta, nu> with nu = x
    CHECK(proj.psi_U_literal == doctest::Approx(expect).epsilon(1e-12));
    CHECK(proj.psi_U_leafwise == doctest::Approx(expect).epsilon(1e-12));
    CHECK(proj.tangency < 1e-12);
    CHECK_FALSE(proj.degenerate);
    CHECK(leaf_conformal_certificate(eta, pos, pts) < 1e-7);

    // eta parallel to nu projects to zero and is flagged
    auto self = project_to_leaf(pos, pos, pts[0]);
    CHECK(self.degenerate);
    CHECK(std::fabs(self.psi_U_leafwise) < 1e-12);

    // singular V
    auto ds = make_de_sitter_grw(2);
    auto sinhdt = warp_dt_field(ds, named_warp("sinh"), "sinh-dt");
    CHECK_THROWS_AS(project_to_leaf(sinhdt, sinhdt, Vec{0.0, 1.2, 1.0}), Error);
}

TEST_CASE("projection of the canonical field onto its own slice vanishes") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto proj = project_to_leaf(V, V, Vec{1.0, 1.2, 2.0});
    CHECK(proj.degenerate);
    // leafwise factor collapses to zero for the self-projection
    CHECK(std::fabs(proj.psi_U_leafwise) < 1e-12);
}

TEST_CASE("leaf umbilicity on slices, hyperplanes and hyperquadrics") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto sl = fixtures::grw_slice(ds, 1.0);
    auto res = leaf_umbilicity_check(V, sl, {{0.8, 1.0}, {1.7, 4.0}, {2.2, 0.4}});
    CHECK(res.psi_identity_residual < 1e-8); // S = psi Id with psi = sinh(1)
    CHECK(res.normalized_shape_residual < 1e-8);
    CHECK(res.umbilicity_factor == doctest::Approx(-std::tanh(1.0)).epsilon(1e-12));

    auto l3 = make_flat(3, 1);
    auto cst = constant_field(l3, {0.0, 0.0, 1.0});
    auto hp = fixtures::hyperplane(l3, 0.4);
    auto res2 = leaf_umbilicity_check(cst, hp, {{0.1, 0.2}, {-0.4, 0.3}});
    CHECK(res2.psi_identity_residual < 1e-12); // S = 0 = psi
    CHECK(res2.umbilicity_factor == doctest::Approx(0.0));

    auto pos = position_field(l3);
    auto hb = fixtures::hyperboloid_graph(l3);
    auto res3 = leaf_umbilicity_check(pos, hb, {{0.2, -0.3}, {0.5, 0.1}});
    CHECK(res3.psi_identity_residual < 1e-12); // nabla_X x = X = psi X
    CHECK(res3.umbilicity_factor == doctest::Approx(-1.0).epsilon(1e-12));

    // a non-leaf immersion is rejected
    auto graph = fixtures::grw_graph(ds, 1.0, 0.15);
    CHECK_THROWS_AS(leaf_umbilicity_check(V, graph, {{1.0, 2.0}}), Error);
}

TEST_CASE("scaled parallel fields stay parallel only when nonzero") {
    auto l3 = make_flat(3, 1);
    auto samples = sample_points(*l3, 5, 10);
    auto cst = constant_field(l3, {0.0, 0.3, 1.0});
    AmbientVectorField doubled = cst;
    SmoothMap base = cst.eval;
    doubled.eval = SmoothMap::make(3, 3, [base](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return vec_scale(base(x), T(-2.0));
    });
    CHECK(certify(doubled, samples).is(FieldClass::Parallel));
    AmbientVectorField zeroed = cst;
    zeroed.eval = SmoothMap::make(3, 3, [](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return VecT<T>(x.size(), T(0.0));
    });
    // the zero field degenerates: still parallel by residuals, psi = 0
    auto cz = certify(zeroed, samples);
    CHECK(cz.is(FieldClass::Parallel));
    CHECK(cz.psi_sup == 0.0);
}

TEST_CASE("cosh theta >= 1 on every built-in spacelike fixture") {
    auto check_fixture = [](const SpacelikeImmersion& imm, const AmbientVectorField& V,
                            std::vector<Vec> params) {
        for (const Vec& u : params) {
            auto fr = frame_core(imm, u);
            Vec vx = V.eval(fr.x);
            double vv = metric_dot(fr.G, vx, vx);
            REQUIRE(vv < 0.0);
            double ct = -metric_dot(fr.G, vx, fr.N) / std::sqrt(-vv);
            CHECK(ct >= 1.0 - 1e-10);
        }
    };
    auto l3 = make_flat(3, 1);
    check_fixture(fixtures::hyperboloid_graph(l3), position_field(l3),
                  {{0.2, -0.3}, {0.6, 0.6}});
    check_fixture(fixtures::hyperplane(l3, 0.4), constant_field(l3, {0, 0, 1}),
                  {{0.5, -0.5}});
    auto ds = make_de_sitter_grw(2);
    check_fixture(fixtures::grw_slice(ds, 1.0), ds.canonical_field(), {{1.1, 2.0}});
    check_fixture(fixtures::grw_graph(ds, 1.0, 0.15), ds.canonical_field(),
                  {{1.1, 2.0}, {0.9, 4.2}});
}
