#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/ambient_models.hpp"

using namespace lorentz;

TEST_CASE("flat metric values and flatness") {
    auto l3 = make_flat(3, 1);
    Mat g = metric_at(*l3, {0.2, -0.1, 0.4});
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 1) == 1.0);
    CHECK(g(2, 2) == -1.0);
    CHECK(g(0, 1) == 0.0);

    auto r42 = make_flat(4, 2);
    Mat g2 = metric_at(*r42, {0, 0, 0, 0.5});
    CHECK(g2(1, 1) == 1.0);
    CHECK(g2(2, 2) == -1.0);
    CHECK(g2(3, 3) == -1.0);

    auto gam = christoffel_at(*l3, {0.3, 0.3, 0.3});
    for (const double& v : gam.gamma) CHECK(v == 0.0);
    auto R = curvature_at(*l3, {0.3, 0.3, 0.3});
    CHECK(R.constant_curvature_residual(0.0) == doctest::Approx(0.0).epsilon(1e-14));

    CHECK_THROWS_AS(make_flat(4, 3), Error);
}

TEST_CASE("grw metric, christoffel and metricity") {
    auto ds = make_de_sitter_grw(2);
    Vec p{0.7, 1.1, 2.0};
    Mat g = metric_at(*ds.assembled, p);
    CHECK(g(0, 0) == -1.0);
    CHECK(g(1, 1) == doctest::Approx(std::pow(std::cosh(0.7), 2)).epsilon(1e-14));

    // hand value: Gamma^t_{theta theta} = cosh t sinh t
    auto gam = christoffel_at(*ds.assembled, p);
    CHECK(gam.G(0, 1, 1) ==
          doctest::Approx(std::cosh(0.7) * std::sinh(0.7)).epsilon(1e-12));
    CHECK(gam.G(0, 1, 1) == gam.G(0, 1, 1));
    // symmetry in the lower pair
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(gam.G(k, i, j) == gam.G(k, j, i));

    CHECK(metricity_residual(*ds.assembled, p) < 1e-9);
}

TEST_CASE("constant curvature of both GRW models") {
    auto ds = make_de_sitter_grw(2);
    auto ads = make_anti_de_sitter_grw(2);
    SplitMix64 rng(7);
    for (int s = 0; s < 20; ++s) {
        Vec p = sample_point(*ds.assembled, rng);
        auto R = curvature_at(*ds.assembled, p);
        CHECK(R.symmetry_residual() < 1e-8);
        CHECK(R.constant_curvature_residual(1.0) < 1e-7);
        Vec q = sample_point(*ads.assembled, rng);
        auto R2 = curvature_at(*ads.assembled, q);
        CHECK(R2.constant_curvature_residual(-1.0) < 1e-7);
    }
    // sectional curvature on a fixed nondegenerate plane
    auto R = curvature_at(*ds.assembled, {0.5, 1.3, 2.2});
    CHECK(R.sectional({1, 0.2, 0.1}, {0, 1, 0.4}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degenerate planes are refused") {
    auto ds = make_de_sitter_grw(2);
    auto R = curvature_at(*ds.assembled, {0.4, 1.2, 1.0});
    Vec X{1.0, 0.3, 0.0};
    CHECK_THROWS_AS(R.sectional(X, X), Error); // zero discriminant
}

TEST_CASE("exact and finite-difference backends agree") {
    auto ds = make_de_sitter_grw(2);
    auto fd = std::make_shared<ChartedSpace>(ds.assembled->with_fd_backend());
    SplitMix64 rng(11);
    for (int s = 0; s < 100; ++s) {
        Vec p = sample_point(*ds.assembled, rng);
        auto ge = christoffel_at(*ds.assembled, p);
        auto gf = christoffel_at(*fd, p);
        for (std::size_t i = 0; i < ge.gamma.size(); ++i)
            CHECK(std::fabs(ge.gamma[i] - gf.gamma[i]) < 1e-5);
    }
    auto Re = curvature_at(*ds.assembled, {0.6, 1.0, 2.5});
    auto Rf = curvature_at(*fd, {0.6, 1.0, 2.5});
    for (std::size_t i = 0; i < Re.riemann_low.size(); ++i)
        CHECK(std::fabs(Re.riemann_low[i] - Rf.riemann_low[i]) < 1e-5);
}

TEST_CASE("covariant derivative and divergence examples") {
    auto l3 = make_flat(3, 1);
    auto cst = constant_field(l3, {0.2, 0.0, 1.0});
    Vec p{0.1, 0.2, 0.3};
    Vec d = covariant_derivative(*l3, cst.eval, p, {1.0, -0.5, 0.25});
    for (double c : d) CHECK(c == 0.0);

    // position field: nabla_X x = X, div = dim
    auto pos = position_field(l3);
    Vec X{0.4, -1.0, 0.7};
    Vec dp = covariant_derivative(*l3, pos.eval, p, X);
    for (int i = 0; i < 3; ++i) CHECK(dp[static_cast<std::size_t>(i)] == doctest::Approx(X[static_cast<std::size_t>(i)]));
    CHECK(divergence_at(*l3, pos.eval, p) == doctest::Approx(3.0));

    // canonical field of the sinh-warped presentation: nabla_X V = cosh(t) X,
    // divergence (n+1) cosh(t); cross-checked against the fd backend
    auto dsh = make_de_sitter_hyperbolic_grw(2);
    auto V = dsh.canonical_field();
    Vec q{0.9, 0.7, 1.0};
    Vec dtheta{0.0, 1.0, 0.0};
    Vec cd = covariant_derivative(*dsh.assembled, V.eval, q, dtheta);
    CHECK(cd[1] == doctest::Approx(std::cosh(0.9)).epsilon(1e-12));
    CHECK(divergence_at(*dsh.assembled, V.eval, q) ==
          doctest::Approx(3.0 * std::cosh(0.9)).epsilon(1e-12));
    auto fd = std::make_shared<ChartedSpace>(dsh.assembled->with_fd_backend());
    Vec cdf = covariant_derivative(*fd, V.eval, q, dtheta);
    CHECK(std::fabs(cdf[1] - cd[1]) < 1e-6);
}

TEST_CASE("out-of-domain points are rejected") {
    auto ads = make_anti_de_sitter_grw(2);
    CHECK_THROWS_AS(metric_at(*ads.assembled, {4.0, 1.0, 1.0}), Error); // t beyond (0, pi)
}

TEST_CASE("fd oracle agrees on every built-in model") {
    std::vector<SpacePtr> models = {
        make_flat(3, 1),
        make_flat(4, 1),
        make_flat(4, 2),
        make_de_sitter_grw(2).assembled,
        make_anti_de_sitter_grw(2).assembled,
        make_de_sitter_hyperbolic_grw(2).assembled,
        make_grw_cone(2).assembled,
        make_hyperquadric(HyperquadricKind::DeSitter, 2).induced,
        make_hyperquadric(HyperquadricKind::AntiDeSitter, 2).induced,
    };
    for (const SpacePtr& sp : models) {
        auto fd = std::make_shared<ChartedSpace>(sp->with_fd_backend());
        SplitMix64 rng(21);
        double worst = 0.0;
        for (int s = 0; s < 100; ++s) {
            Vec p = sample_point(*sp, rng);
            auto ge = christoffel_impl(*sp, p);
            auto gf = christoffel_impl(*fd, p);
            for (std::size_t i = 0; i < ge.gamma.size(); ++i)
                worst = std::max(worst, std::fabs(ge.gamma[i] - gf.gamma[i]));
        }
        INFO(sp->name);
        CHECK(worst < 1e-5);
    }
}
