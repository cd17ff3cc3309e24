#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/fixtures.hpp"
#include "lorentz/support_identities.hpp"

using namespace lorentz;

namespace {
std::vector<Vec> patch_samples(const SpacelikeImmersion& imm, std::uint64_t seed, int n,
                               double margin = 0.25) {
    SplitMix64 rng(seed);
    std::vector<Vec> out;
    for (int s = 0; s < n; ++s) {
        Vec u(static_cast<std::size_t>(imm.n()));
        for (int i = 0; i < imm.n(); ++i)
            u[static_cast<std::size_t>(i)] = rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + margin,
                                                         imm.domain.hi[static_cast<std::size_t>(i)] - margin);
        out.push_back(u);
    }
    return out;
}
} // namespace

TEST_CASE("hyperplane with a parallel field: everything vanishes") {
    auto l3 = make_flat(3, 1);
    auto hp = fixtures::hyperplane(l3, 0.4);
    auto V = constant_field(l3, {0.0, 0.0, 1.0});
    auto rep = support_identities_check(hp, V, nullptr, patch_samples(hp, 2, 5));
    CHECK(rep.max_residual() < 1e-14);
    CHECK(rep.fv_max == doctest::Approx(-1.0));
}

TEST_CASE("hyperboloid with the position field, plus a second parallel field") {
    auto l3 = make_flat(3, 1);
    auto hb = fixtures::hyperboloid_graph(l3);
    auto pos = position_field(l3);
    auto W = constant_field(l3, {0.1, -0.2, 1.0}, "W");
    auto rep = support_identities_check(hb, pos, &W, patch_samples(hb, 3, 6));
    CHECK(rep.res_grad_fv < 1e-6);
    CHECK(rep.res_lap_fv < 1e-6);
    CHECK(rep.res_grad_g < 1e-6);
    CHECK(rep.res_lap_g < 1e-6);
    CHECK(rep.res_div_vtop < 1e-6);
    CHECK(rep.fv_max == doctest::Approx(-1.0).epsilon(1e-12)); // f_V = <x, N> = -1
}

TEST_CASE("de Sitter slice and a non-umbilic graph with the canonical field") {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto sl = fixtures::grw_slice(ds, 1.0);
    auto rep = support_identities_check(sl, V, nullptr, patch_samples(sl, 4, 5));
    CHECK(rep.max_residual() < 1e-5);
    CHECK(rep.fv_max < 0.0);

    auto graph = fixtures::grw_graph(ds, 1.0, 0.15);
    auto rep2 = support_identities_check(graph, V, nullptr, patch_samples(graph, 5, 5));
    CHECK(rep2.max_residual() < 1e-5);
}

TEST_CASE("finite-difference oracle agrees within 1e-3") {
    auto l3 = make_flat(3, 1);
    auto hb = fixtures::hyperboloid_graph(l3).with_fd_backend();
    auto pos = position_field(hb.ambient);
    SupportIdentityOptions opt;
    opt.certify_tol = {1e-5, 1e-5, 1e-5, 1e-4};
    auto rep = support_identities_check(hb, pos, nullptr, patch_samples(hb, 3, 4), opt);
    CHECK(rep.max_residual() < 1e-3);
}

TEST_CASE("time-orientation clash is detected") {
    auto l3 = make_flat(3, 1);
    auto hp = fixtures::hyperplane(l3, 0.4);
    auto Vpast = constant_field(l3, {0.0, 0.0, -1.0}, "past");
    CHECK_THROWS_AS(support_identities_check(hp, Vpast, nullptr, patch_samples(hp, 2, 3)),
                    Error);
}

TEST_CASE("non-conformal fields are refused") {
    auto ds = make_de_sitter_grw(2);
    auto bad = warp_dt_field(ds, named_warp("sinh"), "sinh-dt");
    auto sl = fixtures::grw_slice(ds, 1.0);
    CHECK_THROWS_AS(support_identities_check(sl, bad, nullptr, patch_samples(sl, 2, 3)),
                    Error);
}

TEST_CASE("bernstein audits on the three fixtures") {
    auto l3 = make_flat(3, 1);
    BernsteinOptions opt;
    opt.mesh = {10, 10};

    auto hp = fixtures::hyperplane(l3, 0.4);
    auto Vpar = constant_field(l3, {0.0, 0.0, 1.0});
    auto a1 = bernstein_audit(hp, Vpar, opt);
    CHECK(a1.sup_A < 1e-12);
    CHECK(a1.sup_ric_nn < 1e-12);
    CHECK(a1.verdict.find("totally geodesic") != std::string::npos);
    CHECK(a1.concl_leaf_contained); // V-perp leaves are the hyperplanes

    auto hb = fixtures::hyperboloid_graph(l3);
    auto pos = position_field(l3);
    auto a2 = bernstein_audit(hb, pos, opt);
    CHECK(a2.sup_umbilicity < 1e-12);
    CHECK(a2.h_constant_sign);
    CHECK(a2.h_min == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(a2.verdict.find("totally umbilical") != std::string::npos);

    auto bump = fixtures::perturbed_hyperboloid(l3, 0.8, 0.05);
    auto a3 = bernstein_audit(bump, pos, opt);
    CHECK(a3.sup_umbilicity > 1e-2);         // hypothesis consequences fail
    CHECK(a3.h_max - a3.h_min > 1e-2);       // H is not constant
    CHECK(a3.verdict.find("conclusions not met") != std::string::npos);
}

TEST_CASE("quadrature coarseness check trips on demand") {
    auto l3 = make_flat(3, 1);
    auto bump = fixtures::perturbed_hyperboloid(l3, 0.8, 0.05);
    auto pos = position_field(l3);
    BernsteinOptions opt;
    opt.mesh = {4, 4};
    opt.quad_tol = 1e-12;
    CHECK_THROWS_AS(bernstein_audit(bump, pos, opt), Error);
}

TEST_CASE("expanding-patch trend for a field with growing tangential part") {
    auto l3 = make_flat(3, 1);
    auto hp = fixtures::hyperplane(l3, 0.4, 1.2);
    // E + x has tangential part x on the hyperplane: integral grows with the patch
    AmbientVectorField mixed;
    mixed.space = l3;
    mixed.name = "shifted-position";
    mixed.eval = SmoothMap::make(3, 3, [](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> v = x;
        v[2] = v[2] + 3.0;
        return v;
    });
    BernsteinOptions opt;
    opt.mesh = {10, 10};
    // keep the conic point of |V^top| (u = 0) outside the patch
    opt.patch_lo = {0.1, 0.1};
    opt.patch_hi = {1.1, 1.1};
    auto rep = bernstein_audit(hp, mixed, opt);
    CHECK(rep.vtop_trend == "increasing");
    REQUIRE(rep.vtop_integrals.size() == 3);
    CHECK(rep.vtop_integrals[2] > rep.vtop_integrals[1]);
    CHECK(rep.vtop_integrals[1] > rep.vtop_integrals[0]);
}
