#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/fixtures.hpp"
#include "lorentz/variational.hpp"

using namespace lorentz;

namespace {

SmoothScalar const_speed(int n, double c = 1.0) {
    return SmoothScalar::make(n, [c](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        return T(c) + 0.0 * u[0];
    });
}

VariationScenario slice_scenario(const GRWModel& ds, SmoothScalar f) {
    auto sl = fixtures::grw_slice(ds, 1.0);
    return make_variation_scenario(sl, f, 0.08, {16, 32});
}

} // namespace

TEST_CASE("c_r constants and the F_r recurrence") {
    CHECK(c_r_constant(2, 1.0, 0) == 0.0);
    CHECK(c_r_constant(2, 1.0, 1) == doctest::Approx(2.0)); // c_1 = n c
    CHECK(c_r_constant(3, -1.0, 1) == doctest::Approx(-3.0));
    CHECK(c_r_constant(3, 1.0, 3) == doctest::Approx(-1.5)); // -n(n-2)/2 (-c)^2

    // n = 3 expansion: F_2 = S_2 - c (n-1) F_0
    Vec S{1.0, 0.7, 0.3, 0.1};
    double c = 0.5;
    Vec F = f_r_values(S, c, 2, 3);
    CHECK(F[0] == 1.0);
    CHECK(F[1] == doctest::Approx(-0.7));
    CHECK(F[2] == doctest::Approx(S[2] - c * 2.0));
}

TEST_CASE("area and volume of the round slice") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, const_speed(2));
    double area = 4.0 * M_PI * std::pow(std::cosh(1.0), 2);
    CHECK(r_area(scn, 0, 0.0) == doctest::Approx(area).epsilon(1e-10));
    // A_1 = int 2 H dM = 4 pi sinh(2)
    CHECK(r_area(scn, 1, 0.0) == doctest::Approx(4.0 * M_PI * std::sinh(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(r_area(scn, 2, 0.0), Error); // r > n-1

    CHECK(volume_balance(scn, 0.0) == 0.0);
    // f = 1 pushes the slice to {1 + t}: V(t) = int_1^{1+t} 4 pi cosh^2 s ds
    auto volexact = [](double t) {
        auto F = [](double s) { return 4.0 * M_PI * (s / 2 + std::sinh(2 * s) / 4); };
        return F(1.0 + t) - F(1.0);
    };
    CHECK(volume_balance(scn, 0.06) == doctest::Approx(volexact(0.06)).epsilon(1e-9));
    CHECK(volume_balance(scn, -0.05) == doctest::Approx(volexact(-0.05)).epsilon(1e-9));
}

TEST_CASE("first variation of volume") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, const_speed(2));
    auto rep = first_variation_volume(scn, {-0.04, 0.0, 0.04});
    CHECK(rep.residual < 1e-6);
    CHECK_FALSE(rep.volume_preserving);
    CHECK(rep.flux[1] == doctest::Approx(4.0 * M_PI * std::pow(std::cosh(1.0), 2)).epsilon(1e-10));

    // zero speed: V identically zero
    auto scn0 = slice_scenario(ds, const_speed(2, 0.0));
    CHECK(volume_balance(scn0, 0.05) == doctest::Approx(0.0).epsilon(1e-14));

    // first spherical-harmonic mode: flux vanishes at t = 0
    auto scn1 = slice_scenario(ds, sphere_test_basis()[2]);
    auto rep1 = first_variation_volume(scn1, {0.0});
    CHECK(std::fabs(rep1.flux[0]) < 1e-10);
    CHECK(rep1.residual < 1e-6);
}

TEST_CASE("first variation of the r-area functionals") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, const_speed(2));

    // closed forms on the slice family {1 + t} x S^2:
    // A_0'(0) = d/dt 4 pi cosh^2(1+t) = 4 pi sinh(2), A_1'(0) = 8 pi cosh(2)
    auto rep0 = first_variation_r_area(scn, 0);
    CHECK(rep0.residual_functional < 1e-4);
    CHECK(rep0.residual_pointwise0 < 1e-4);
    CHECK(rep0.residual_pointwise_t < 1e-4);
    auto rep1 = first_variation_r_area(scn, 1);
    CHECK(rep1.residual_functional < 1e-4);
    CHECK(rep1.residual_pointwise0 < 1e-4);
    CHECK(rep1.residual_pointwise_t < 1e-4);

    // formula value for r = 1 against the hand-computed derivative
    double formula = (2.0 * std::pow(std::tanh(1.0), 2) + 2.0) * 4.0 * M_PI *
                     std::pow(std::cosh(1.0), 2);
    CHECK(formula == doctest::Approx(8.0 * M_PI * std::cosh(2.0)).epsilon(1e-12));

    // totally geodesic base: A_0'(0) = 0 for any speed
    auto l3 = make_flat(3, 1);
    auto tor = fixtures::flat_torus_patch(l3);
    auto f = SmoothScalar::make(2, [](const auto& u) {
        using std::cos; using std::sin; using lorentz::cos; using lorentz::sin;
        return cos(u[0]) * sin(u[1]) + 0.3;
    });
    auto scn_t = make_variation_scenario(tor, f, 0.08, {12, 12});
    auto rept = first_variation_r_area(scn_t, 0);
    CHECK(std::fabs(r_area(scn_t, 0, 0.0) - 4.0 * M_PI * M_PI) < 1e-10);
    CHECK(rept.residual_functional < 1e-6);
}

TEST_CASE("jacobi functional") {
    auto ds = make_de_sitter_grw(2);
    // umbilical slice: J_r'(0) = 0 for every speed (constant H_{r+1})
    for (std::size_t mode : {0u, 2u, 4u}) {
        auto scn = slice_scenario(ds, sphere_test_basis()[mode]);
        auto rep = jacobi_functional(scn, 1, {});
        CHECK(std::fabs(rep.jprime0) < 1e-6);
        CHECK(rep.jprime_residual < 1e-6);
    }
    // lambda shifts leave J'(0) unchanged for volume-preserving speeds
    auto scn = slice_scenario(ds, sphere_test_basis()[2]);
    auto rep = jacobi_functional(scn, 1, {});
    double formula_with_shift = rep.jprime0; // flux(0) = 0, so lambda is irrelevant
    CHECK(std::fabs(formula_with_shift) < 1e-6);

    // non-constant H_2 base: J_1'(0) detects it through a non-constant speed
    // (for f = const the mean subtraction cancels the defect identically)
    auto graph = fixtures::grw_graph(ds, 1.0, 0.15);
    auto scn2 = make_variation_scenario(graph, sphere_test_basis()[3], 0.05, {16, 32});
    auto rep2 = jacobi_functional(scn2, 1, {});
    CHECK(std::fabs(rep2.jprime0) > 1e-4);
}

TEST_CASE("second variation") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, const_speed(2));

    // r = 0, f = 1: J_0''(0) = int [c n - |A|^2] f^2 dM
    auto rep0 = second_variation(scn, 0);
    double area = 4.0 * M_PI * std::pow(std::cosh(1.0), 2);
    double expect = (2.0 - 2.0 * std::pow(std::tanh(1.0), 2)) * area;
    CHECK(rep0.analytic == doctest::Approx(expect).epsilon(1e-8));
    CHECK(rep0.rel_error < 1e-3);

    auto rep1 = second_variation(scn, 1);
    CHECK(rep1.rel_error < 1e-3);

    // flat ambient, totally geodesic base, r = 0: J'' = -int |grad f|^2 <= 0
    auto l3 = make_flat(3, 1);
    auto tor = fixtures::flat_torus_patch(l3);
    auto f = SmoothScalar::make(2, [](const auto& u) {
        using std::cos; using lorentz::cos;
        return cos(u[0]);
    });
    auto scn_t = make_variation_scenario(tor, f, 0.08, {12, 12});
    auto rept = second_variation(scn_t, 0);
    // int (Delta f) f = -int |grad f|^2 = -2 pi^2 for cos(u0) on the 2-torus
    CHECK(rept.analytic == doctest::Approx(-2.0 * M_PI * M_PI).epsilon(1e-10));
    CHECK(rept.analytic <= 0.0);
    CHECK(rept.fd == doctest::Approx(rept.analytic).epsilon(1e-3));

    // quadratic form: f and -f give the same value
    auto fneg = SmoothScalar::make(2, [](const auto& u) {
        using std::cos; using lorentz::cos;
        return -cos(u[0]);
    });
    auto scn_n = make_variation_scenario(tor, fneg, 0.08, {12, 12});
    auto repn = second_variation(scn_n, 0);
    CHECK(repn.analytic == doctest::Approx(rept.analytic).epsilon(1e-12));

    // non-constant H_{r+1} is refused
    auto graph = fixtures::grw_graph(ds, 1.0, 0.15);
    auto scn_g = make_variation_scenario(graph, const_speed(2), 0.05, {16, 32});
    CHECK_THROWS_AS(second_variation(scn_g, 1), Error);
}

TEST_CASE("L_r support identity (the eta = <V,N> formula)") {
    auto l3 = make_flat(3, 1);
    auto hp = fixtures::hyperplane(l3, 0.4);
    auto Vp = constant_field(l3, {0.0, 0.0, 1.0});
    CHECK(lr_support_identity_check(hp, Vp, 1, {{0.2, -0.3}}) < 1e-14);

    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto sl = fixtures::grw_slice(ds, 1.0);
    CHECK(lr_support_identity_check(sl, V, 1, {{0.9, 1.0}, {1.6, 4.0}, {2.1, 2.5}}) < 1e-5);

    // r = 0 reduces to the Laplacian support identity (cross-module check)
    auto hb = fixtures::hyperboloid_graph(l3);
    auto pos = position_field(l3);
    CHECK(lr_support_identity_check(hb, pos, 0, {{0.2, -0.3}, {0.5, 0.1}}) < 1e-6);
}

TEST_CASE("stability probe on the slice fixture") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto sl = fixtures::grw_slice(ds, 1.0);
    auto rep = stability_probe(sl, V, 1, sphere_test_basis());
    CHECK(rep.cosh_theta_min == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.cosh_theta_max == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.h_r_value == doctest::Approx(std::tanh(1.0)).epsilon(1e-10));
    CHECK(rep.h_r1_value == doctest::Approx(std::pow(std::tanh(1.0), 2)).epsilon(1e-10));
    CHECK(rep.classifier == "leaf");
    CHECK(rep.psi_zero_fraction == 0.0);
    // slope condition margin: tanh(1) - sinh(1) tanh(1)^2
    double margin = std::tanh(1.0) - std::sinh(1.0) * std::pow(std::tanh(1.0), 2);
    CHECK(rep.hyp_margin_min == doctest::Approx(margin).epsilon(1e-9));
    CHECK(rep.hypothesis_holds);
    // the leaf is not strongly 1-stable: the constant mode has J'' > 0
    CHECK(rep.jpp_max > 1.0);
    CHECK_FALSE(rep.strongly_r_stable);
    REQUIRE(rep.jpp_values.size() == 9);
    // the l = 1 modes are flat directions of the quadratic form
    for (std::size_t i : {1u, 2u, 3u}) CHECK(std::fabs(rep.jpp_values[i]) < 1e-9);
}

TEST_CASE("stability probe edge cases") {
    auto ds = make_de_sitter_grw(2);
    // equator with the literal (sinh t) d_t profile: V = 0 there
    auto sinhdt = warp_dt_field(ds, named_warp("sinh"), "sinh-dt");
    auto eq = fixtures::grw_slice(ds, 1e-12);
    CHECK_THROWS_AS(stability_probe(eq, sinhdt, 1, sphere_test_basis()), Error);

    // totally geodesic fixture classifies r-maximal
    auto l3 = make_flat(3, 1);
    auto tor = fixtures::flat_torus_patch(l3);
    auto Vp = constant_field(l3, {0.0, 0.0, 1.0});
    auto rep = stability_probe(tor, Vp, 1, fourier_test_basis(tor.domain));
    CHECK(rep.classifier == "r-maximal");
    CHECK(rep.h_r1_value == doctest::Approx(0.0));
}

TEST_CASE("lambda shifts leave J'(0) unchanged for volume-preserving speeds") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, sphere_test_basis()[2]); // flux(0) = 0
    auto rep = jacobi_functional(scn, 1, {});
    // shifting lambda changes J' by (shift) * flux; flux vanishes here
    double h = scn.eps / 16.0;
    double shift = 10.0;
    auto J = [&](double t, double lam) {
        return r_area(scn, 1, t) - lam * volume_balance(scn, t);
    };
    auto jp = [&](double lam) {
        return (-J(2 * h, lam) + 8 * J(h, lam) - 8 * J(-h, lam) + J(-2 * h, lam)) / (12 * h);
    };
    CHECK(std::fabs(jp(rep.lambda + shift) - jp(rep.lambda)) < 1e-10);
}

TEST_CASE("volume first-variation residual converges at order >= 2") {
    auto ds = make_de_sitter_grw(2);
    auto scn = slice_scenario(ds, const_speed(2));
    double flux = 4.0 * M_PI * std::pow(std::cosh(1.0), 2);
    auto resid = [&](double h) {
        double fd = (volume_balance(scn, h) - volume_balance(scn, -h)) / (2.0 * h);
        return std::fabs(fd - flux);
    };
    double r1 = resid(0.04);
    double r2 = resid(0.02);
    CHECK(r1 / r2 > 3.0); // central differences: ratio ~ 4
}
