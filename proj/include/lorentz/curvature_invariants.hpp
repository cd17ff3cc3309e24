#pragma once
#include "lorentz/immersion.hpp"

namespace lorentz {

/// Elementary symmetric functions, normalized mean curvatures and Newton
/// transformations of a shape matrix, templated over the scalar. S_r comes
/// from power-sum traces via Newton's identities so the whole bundle
/// differentiates through duals; eigenvalues are a double-only extra.
template <class T>
struct NewtonDataT {
    int n = 0;
    MatT<T> A;
    VecT<T> S; // S_0..S_n
    VecT<T> H; // H_0..H_n, C(n,r) H_r = (-1)^r S_r
    std::vector<MatT<T>> P; // P_0..P_n

    T tr_AP(int r) const { return trace(matmul(A, P[static_cast<std::size_t>(r)])); }
    T tr_A2P(int r) const { return trace(matmul(A, matmul(A, P[static_cast<std::size_t>(r)]))); }
};

long long binomial(int n, int k);

template <class T>
NewtonDataT<T> newton_from_shape(const MatT<T>& A) {
    const int n = A.rows;
    NewtonDataT<T> out;
    out.n = n;
    out.A = A;
    // power sums
    VecT<T> p(static_cast<std::size_t>(n + 1), T(0.0));
    MatT<T> Ak = A;
    for (int k = 1; k <= n; ++k) {
        p[static_cast<std::size_t>(k)] = trace(Ak);
        if (k < n) Ak = matmul(Ak, A);
    }
    out.S.assign(static_cast<std::size_t>(n + 1), T(0.0));
    out.S[0] = T(1.0);
    for (int k = 1; k <= n; ++k) {
        T acc(0.0);
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * out.S[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
            sign = -sign;
        }
        out.S[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
    }
    out.H.assign(static_cast<std::size_t>(n + 1), T(0.0));
    for (int r = 0; r <= n; ++r) {
        double c = static_cast<double>(binomial(n, r));
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        out.H[static_cast<std::size_t>(r)] = sgn * out.S[static_cast<std::size_t>(r)] / c;
    }
    out.P.resize(static_cast<std::size_t>(n + 1));
    out.P[0] = MatT<T>::identity(n);
    for (int r = 1; r <= n; ++r) {
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        MatT<T> term = mat_scale(MatT<T>::identity(n), out.S[static_cast<std::size_t>(r)] * sgn);
        out.P[static_cast<std::size_t>(r)] = mat_add(term, matmul(A, out.P[static_cast<std::size_t>(r - 1)]));
    }
    return out;
}

/// Shape matrix A^k_i of A(d_i) = -nabla_{dx(d_i)} N expressed in the
/// coordinate tangent basis, with the frame it was computed in.
template <class T>
struct ShapeT {
    FrameT<T> frame;
    MatT<T> A;
};

template <class T>
ShapeT<T> shape_core(const SpacelikeImmersion& imm, const VecT<T>& u) {
    const int n = imm.n();
    const int d = imm.ambient->dim;
    ShapeT<T> out;
    out.frame = frame_core(imm, u);
    auto gam = christoffel_impl(*imm.ambient, out.frame.x);
    MatT<T> W(d, n); // columns: -(dN/du_i + Gamma[J_i, N])
    for (int i = 0; i < n; ++i) {
        auto us = seed_coord(u, i);
        FrameT<Dual<T>> fr_i = frame_core(imm, us);
        VecT<T> dN(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) dN[static_cast<std::size_t>(a)] = fr_i.N[static_cast<std::size_t>(a)].d;
        VecT<T> corr = gam.apply(out.frame.tangent(i), out.frame.N);
        for (int a = 0; a < d; ++a) W(a, i) = -(dN[static_cast<std::size_t>(a)] + corr[static_cast<std::size_t>(a)]);
    }
    // (g A)_{ji} = <J_j, A(d_i)>  =>  A = g^{-1} J^T G W
    MatT<T> B = matmul(transpose(out.frame.J), matmul(out.frame.G, W));
    out.A = matmul(out.frame.ginv, B);
    return out;
}

/// Per-point curvature bundle (double precision), either from an immersion or
/// directly from a self-adjoint matrix.
struct CurvatureInvariants {
    int n = 0;
    Mat A;
    Mat metric;        // inner product making A self-adjoint
    Vec eigenvalues;   // ascending
    Mat eigenvectors;  // columns, metric-orthonormal
    Vec S;             // S_0..S_n
    Vec H;             // H_0..H_n
    std::vector<Mat> P;

    double self_adjoint_residual() const;
};

CurvatureInvariants invariants_from_matrix(const Mat& A, const Mat& metric);
CurvatureInvariants invariants_from_matrix(const Mat& A);
CurvatureInvariants shape_operator_at(const SpacelikeImmersion& imm, const Vec& u);

/// Residuals of the trace identities, the Cayley-Hamilton terminator, the
/// per-eigenvector form of P_r, and the two routes to S_r, all against the
/// eigenvalue-subset oracle.
struct NewtonIdentityReport {
    double tr_pr;          // (i)  tr P_r vs (-1)^r (n-r) S_r and b_r H_r
    double tr_apr;         // (ii) tr(A P_r) vs (-1)^r (r+1) S_{r+1} and -b_r H_{r+1}
    double tr_a2pr;        // (iii) tr(A^2 P_r) vs (-1)^r (S_1 S_{r+1} - (r+2) S_{r+2})
    double p_n;            // |P_n|
    double eigenvector_form; // P_r e_i vs (-1)^r S_r(A_i) e_i
    double sr_two_routes;  // char-poly route vs sigma_r(eigenvalues)
    bool b_r_integer_ok;   // (n-r) C(n,r) == (r+1) C(n,r+1) exactly
    double max_residual() const;
};

NewtonIdentityReport newton_identities_check(const CurvatureInvariants& inv);

/// sigma_r of an eigenvalue list (oracle route).
Vec elementary_symmetric(const Vec& lambda);

/// L_r f = tr(P_r Hess f) at u; in constant-curvature ambients the divergence
/// form div(P_r grad f) is evaluated as a cross-check.
struct LrResult {
    double trace_form;
    std::optional<double> divergence_form;
    double agreement() const {
        return divergence_form ? std::fabs(trace_form - *divergence_form) : 0.0;
    }
};

/// f is a scalar function of the parameters, evaluable at dual depth >= 2.
LrResult lr_apply(const SpacelikeImmersion& imm, const SmoothScalar& f, int r, const Vec& u,
                  bool with_divergence_form = false);

} // namespace lorentz
