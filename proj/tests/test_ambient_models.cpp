#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/curvature_invariants.hpp"
#include "lorentz/fixtures.hpp"

using namespace lorentz;

TEST_CASE("grw assembly equals -dt^2 + warp^2 g_F") {
    auto ads = make_anti_de_sitter_grw(2);
    SplitMix64 rng(3);
    for (int s = 0; s < 16; ++s) {
        Vec p = sample_point(*ads.assembled, rng);
        Mat g = metric_at(*ads.assembled, p);
        Vec y(p.begin() + 1, p.end());
        Mat gf = ads.fiber->metric_mat(y);
        double w2 = std::pow(std::sin(p[0]), 2);
        CHECK(g(0, 0) == -1.0);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(g(a + 1, b + 1) == doctest::Approx(w2 * gf(a, b)).epsilon(1e-13));
    }
}

TEST_CASE("nonpositive warp is rejected") {
    CHECK_THROWS_AS(make_grw(-1.0, 1.0, named_warp("sin"), "sin", make_sphere_fiber(2), 1.0,
                             -0.5, 0.5),
                    Error); // sin changes sign on (-0.5, 0.5)
}

TEST_CASE("warp ODE residuals select the constant-curvature models") {
    auto ds = make_de_sitter_grw(2);
    auto r1 = grw_curvature_residual(ds, 1.0);
    CHECK(r1.res1 < 1e-10);
    CHECK(r1.res2 < 1e-10);

    auto ads = make_anti_de_sitter_grw(2);
    auto r2 = grw_curvature_residual(ads, -1.0);
    CHECK(r2.res1 < 1e-10);
    CHECK(r2.res2 < 1e-10);

    // cone model: first form vanishes, second equals 1/t^2 -> flags non-constant
    auto cone = make_grw_cone(2);
    auto r3 = grw_curvature_residual(cone, 0.0);
    CHECK(r3.res1 < 1e-12);
    double t_first = cone.sample_lo + (cone.sample_hi - cone.sample_lo) * 0.5 / 64.0;
    CHECK(r3.res2 == doctest::Approx(1.0 / (t_first * t_first)).epsilon(1e-12));

    GRWModel no_k = cone;
    no_k.fiber_curvature.reset();
    CHECK_THROWS_AS(grw_curvature_residual(no_k, 0.0), Error);
}

TEST_CASE("two routes to the same constant curvature") {
    // models passing the warp ODE at c also sample sectional curvature c
    for (auto [mk, c] : std::initializer_list<std::pair<GRWModel, double>>{
             {make_de_sitter_grw(2), 1.0},
             {make_anti_de_sitter_grw(2), -1.0},
             {make_de_sitter_hyperbolic_grw(2), 1.0}}) {
        auto res = grw_curvature_residual(mk, c);
        REQUIRE(std::max(res.res1, res.res2) < 1e-10);
        auto certified = certify_constant_curvature(*mk.assembled, 5, 30, 1e-7);
        REQUIRE(certified.has_value());
        CHECK(*certified == doctest::Approx(c).epsilon(1e-7));
    }
}

TEST_CASE("slice data umbilicity factors") {
    auto ds = make_de_sitter_grw(2);
    CHECK(slice_data(ds, 1.0).umbilicity_factor == doctest::Approx(-std::tanh(1.0)).epsilon(1e-14));
    auto ads = make_anti_de_sitter_grw(2);
    CHECK(slice_data(ads, M_PI / 2).umbilicity_factor == doctest::Approx(0.0).epsilon(1e-14));
    auto cone = make_grw_cone(2);
    CHECK(slice_data(cone, 2.0).umbilicity_factor == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(slice_data(ads, 3.5), Error);
}

TEST_CASE("slice umbilicity factor agrees with the shape operator") {
    auto ds = make_de_sitter_grw(2);
    for (double t0 : {0.5, 1.0, 1.5}) {
        auto sd = slice_data(ds, t0);
        auto sl = fixtures::grw_slice(ds, t0);
        auto inv = shape_operator_at(sl, {1.2, 2.0});
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(inv.A(a, b) ==
                      doctest::Approx(a == b ? sd.umbilicity_factor : 0.0).epsilon(1e-9));
    }
}

TEST_CASE("hyperquadric charts satisfy the level constraint") {
    auto s12 = make_hyperquadric(HyperquadricKind::DeSitter, 2);
    CHECK(s12.level_residual(7) < 1e-10);
    auto sig = metric_signature(metric_at(*s12.induced, {0.1, -0.2}));
    CHECK(std::count(sig.begin(), sig.end(), -1) == 1);
    auto c = certify_constant_curvature(*s12.induced, 9, 20, 1e-6);
    REQUIRE(c.has_value());
    CHECK(*c == doctest::Approx(1.0).epsilon(1e-7));

    auto h12 = make_hyperquadric(HyperquadricKind::AntiDeSitter, 2);
    CHECK(h12.level_residual(7) < 1e-10);
    auto c2 = certify_constant_curvature(*h12.induced, 9, 20, 1e-6);
    REQUIRE(c2.has_value());
    CHECK(*c2 == doctest::Approx(-1.0).epsilon(1e-7));

    auto s13 = make_hyperquadric(HyperquadricKind::DeSitter, 3);
    auto c3 = certify_constant_curvature(*s13.induced, 9, 10, 1e-6);
    REQUIRE(c3.has_value());
    CHECK(*c3 == doctest::Approx(1.0).epsilon(1e-7));

    CHECK_THROWS_AS(make_hyperquadric(HyperquadricKind::DeSitter, 1), Error);
}
