#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lorentz/curvature_invariants.hpp"
#include "lorentz/rng.hpp"

using namespace lorentz;

// worked example n = 2, eigenvalues (1, 2); expected values from the
// eigenvalue-subset oracle: sigma = (1, 3, 2), H_1 = -3/2, H_2 = 2,
// P_1 = -3 Id + A with eigenvalues (-2, -1), tr P_1 = -3 = b_1 H_1 (b_1 = 2),
// P_2 = 0 by Cayley-Hamilton.
TEST_CASE("worked example lambda = (1, 2)") {
    Mat A(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 2.0;
    auto inv = invariants_from_matrix(A);
    CHECK(inv.S[0] == 1.0);
    CHECK(inv.S[1] == doctest::Approx(3.0));
    CHECK(inv.S[2] == doctest::Approx(2.0));
    CHECK(inv.H[1] == doctest::Approx(-1.5));
    CHECK(inv.H[2] == doctest::Approx(2.0)); // sigma_2(-1, -2) = 2
    CHECK(inv.P[1](0, 0) == doctest::Approx(-2.0));
    CHECK(inv.P[1](1, 1) == doctest::Approx(-1.0));
    CHECK(trace(inv.P[1]) == doctest::Approx(-3.0));
    long long b1 = (2 - 1) * binomial(2, 1);
    CHECK(static_cast<double>(b1) * inv.H[1] == doctest::Approx(-3.0));
    for (const double& v : inv.P[2].a) CHECK(v == doctest::Approx(0.0));

    auto rep = newton_identities_check(inv);
    CHECK(rep.max_residual() < 1e-12);
}

TEST_CASE("b_r double definition holds in integer arithmetic") {
    for (int n = 1; n <= 6; ++n)
        for (int r = 0; r <= n; ++r)
            CHECK((static_cast<long long>(n) - r) * binomial(n, r) ==
                  (static_cast<long long>(r) + 1) * binomial(n, r + 1));
}

TEST_CASE("identities on random symmetric matrices, n in {2,3}") {
    SplitMix64 rng(99);
    for (int s = 0; s < 200; ++s) {
        int n = (s % 2 == 0) ? 2 : 3;
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                A(i, j) = rng.uniform(-2.0, 2.0);
                A(j, i) = A(i, j);
            }
        auto inv = invariants_from_matrix(A);
        auto rep = newton_identities_check(inv);
        CHECK(rep.p_n < 1e-9);
        CHECK(rep.tr_pr < 1e-9);
        CHECK(rep.tr_apr < 1e-9);
        CHECK(rep.tr_a2pr < 1e-9);
        CHECK(rep.eigenvector_form < 1e-9);
        CHECK(rep.sr_two_routes < 1e-9);
        CHECK(rep.b_r_integer_ok);
    }
}

TEST_CASE("shape-derived invariants keep the metric self-adjointness") {
    // self-adjoint with respect to a non-Euclidean induced metric
    Mat g(2, 2);
    g(0, 0) = 2.0; g(0, 1) = 0.3; g(1, 0) = 0.3; g(1, 1) = 1.5;
    Mat B(2, 2);
    B(0, 0) = 0.7; B(0, 1) = -0.4; B(1, 0) = -0.4; B(1, 1) = 1.1; // symmetric = g A
    Mat A = solve(g, B);
    auto inv = invariants_from_matrix(A, g);
    CHECK(inv.self_adjoint_residual() < 1e-12);
    auto rep = newton_identities_check(inv);
    CHECK(rep.max_residual() < 1e-12);
    // eigenvalues real and metric-orthonormal eigenvectors
    for (int i = 0; i < 2; ++i) {
        Vec vi{inv.eigenvectors(0, i), inv.eigenvectors(1, i)};
        CHECK(metric_dot(g, vi, vi) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("umbilic eigenvalue bound |A|^2 >= n H^2") {
    SplitMix64 rng(4);
    for (int s = 0; s < 100; ++s) {
        int n = 2 + static_cast<int>(rng.next_u64() % 2);
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                A(i, j) = rng.uniform(-1.5, 1.5);
                A(j, i) = A(i, j);
            }
        double a2 = trace(matmul(A, A));
        double h = -trace(A) / n;
        CHECK(a2 - n * h * h >= -1e-12);
    }
    // equality exactly for umbilic matrices
    Mat U = mat_scale(Mat::identity(3), 0.7);
    CHECK(trace(matmul(U, U)) - 3.0 * std::pow(-trace(U) / 3.0, 2) ==
          doctest::Approx(0.0).epsilon(1e-14));
}
