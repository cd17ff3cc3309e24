#include "lorentz/curvature_invariants.hpp"

#include <algorithm>

namespace lorentz {

FrameData frame_at(const SpacelikeImmersion& imm, const Vec& u) {
    if (!imm.domain.contains(u))
        fail(ErrorCode::OutOfDomain, "parameter outside domain of " + imm.name);
    auto fr = frame_core(imm, u);
    FrameData out;
    out.x = fr.x;
    out.tangent_basis = fr.J;
    out.induced_metric = fr.g;
    out.normal = fr.N;
    out.ambient_metric = fr.G;
    // contract checks
    double ortho = 0.0;
    for (int i = 0; i < imm.n(); ++i)
        ortho = std::max(ortho, std::fabs(metric_dot(fr.G, fr.N, fr.tangent(i))));
    double unit = std::fabs(metric_dot(fr.G, fr.N, fr.N) + 1.0);
    if (ortho > 1e-10 || unit > 1e-10)
        fail(ErrorCode::DegenerateJacobian, "normal solve failed on " + imm.name);
    return out;
}

ChartedSpace induced_space(const SpacelikeImmersion& imm) {
    ChartedSpace sp;
    sp.dim = imm.n();
    sp.signature.assign(static_cast<std::size_t>(sp.dim), 1);
    sp.metric = pullback_metric_map(imm.map, imm.ambient);
    sp.domain = ChartBox::unbounded(sp.dim);
    for (int i = 0; i < sp.dim; ++i) {
        if (!imm.domain.periodic[static_cast<std::size_t>(i)]) {
            sp.domain.lo[static_cast<std::size_t>(i)] = imm.domain.lo[static_cast<std::size_t>(i)];
            sp.domain.hi[static_cast<std::size_t>(i)] = imm.domain.hi[static_cast<std::size_t>(i)];
        }
    }
    sp.sample_box = {imm.domain.lo, imm.domain.hi};
    sp.max_order = 3;
    sp.name = imm.name + "/induced";
    return sp;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

double CurvatureInvariants::self_adjoint_residual() const {
    Mat B = matmul(metric, A);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) worst = std::max(worst, std::fabs(B(i, j) - B(j, i)));
    return worst;
}

namespace {

CurvatureInvariants build_invariants(const Mat& A, const Mat& g) {
    CurvatureInvariants inv;
    inv.n = A.rows;
    inv.A = A;
    inv.metric = g;
    auto [lam, vecs] = metric_selfadjoint_eigen(A, g);
    inv.eigenvalues = lam;
    inv.eigenvectors = vecs;
    auto nd = newton_from_shape(A);
    inv.S = nd.S;
    inv.H = nd.H;
    inv.P = nd.P;
    return inv;
}

} // namespace

CurvatureInvariants invariants_from_matrix(const Mat& A, const Mat& metric) {
    return build_invariants(A, metric);
}

CurvatureInvariants invariants_from_matrix(const Mat& A) {
    return build_invariants(A, Mat::identity(A.rows));
}

CurvatureInvariants shape_operator_at(const SpacelikeImmersion& imm, const Vec& u) {
    if (!imm.domain.contains(u))
        fail(ErrorCode::OutOfDomain, "parameter outside domain of " + imm.name);
    auto sh = shape_core(imm, u);
    return build_invariants(sh.A, sh.frame.g);
}

Vec elementary_symmetric(const Vec& lambda) {
    // expand prod (x + lambda_i); coefficient of x^{n-k} is sigma_k
    Vec e(lambda.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        for (std::size_t k = i + 1; k-- > 0;) e[k + 1] += lambda[i] * e[k];
    return e;
}

double NewtonIdentityReport::max_residual() const {
    double m = std::max({tr_pr, tr_apr, tr_a2pr, p_n, eigenvector_form, sr_two_routes});
    return b_r_integer_ok ? m : std::numeric_limits<double>::infinity();
}

NewtonIdentityReport newton_identities_check(const CurvatureInvariants& inv) {
    const int n = inv.n;
    NewtonIdentityReport rep{};
    rep.b_r_integer_ok = true;

    Vec sigma = elementary_symmetric(inv.eigenvalues);
    auto S = [&](int r) { return (r >= 0 && r <= n) ? inv.S[static_cast<std::size_t>(r)] : 0.0; };

    for (int r = 0; r <= n; ++r) {
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        long long b_r = (static_cast<long long>(n) - r) * binomial(n, r);
        long long b_r_alt = (static_cast<long long>(r) + 1) * binomial(n, r + 1);
        if (b_r != b_r_alt) rep.b_r_integer_ok = false;

        const Mat& P = inv.P[static_cast<std::size_t>(r)];
        double trP = trace(P);
        double trAP = trace(matmul(inv.A, P));
        double trA2P = trace(matmul(inv.A, matmul(inv.A, P)));

        rep.tr_pr = std::max(rep.tr_pr, std::fabs(trP - sgn * (n - r) * S(r)));
        rep.tr_pr = std::max(rep.tr_pr, std::fabs(trP - static_cast<double>(b_r) * inv.H[static_cast<std::size_t>(r)]));
        rep.tr_apr = std::max(rep.tr_apr, std::fabs(trAP - sgn * (r + 1) * S(r + 1)));
        if (r < n)
            rep.tr_apr = std::max(rep.tr_apr,
                                  std::fabs(trAP + static_cast<double>(b_r) * inv.H[static_cast<std::size_t>(r + 1)]));
        rep.tr_a2pr = std::max(rep.tr_a2pr,
                               std::fabs(trA2P - sgn * (S(1) * S(r + 1) - (r + 2) * S(r + 2))));

        rep.sr_two_routes = std::max(rep.sr_two_routes, std::fabs(S(r) - sigma[static_cast<std::size_t>(r)]));

        // P_r e_i = (-1)^r S_r(A_i) e_i against the eigenvalue-subset oracle
        for (int i = 0; i < n; ++i) {
            Vec rest;
            for (int j = 0; j < n; ++j)
                if (j != i) rest.push_back(inv.eigenvalues[static_cast<std::size_t>(j)]);
            Vec sig_i = elementary_symmetric(rest);
            double coeff = (r <= n - 1) ? sgn * sig_i[static_cast<std::size_t>(r)] : 0.0;
            Vec ei(static_cast<std::size_t>(n));
            for (int a = 0; a < n; ++a) ei[static_cast<std::size_t>(a)] = inv.eigenvectors(a, i);
            Vec lhs = matvec(P, ei);
            for (int a = 0; a < n; ++a)
                rep.eigenvector_form =
                    std::max(rep.eigenvector_form, std::fabs(lhs[static_cast<std::size_t>(a)] - coeff * ei[static_cast<std::size_t>(a)]));
        }
    }
    for (const double& v : inv.P[static_cast<std::size_t>(n)].a)
        rep.p_n = std::max(rep.p_n, std::fabs(v));
    return rep;
}

LrResult lr_apply(const SpacelikeImmersion& imm, const SmoothScalar& f, int r, const Vec& u,
                  bool with_divergence_form) {
    if (!imm.domain.contains(u))
        fail(ErrorCode::OutOfDomain, "parameter outside domain of " + imm.name);
    ChartedSpace ind = induced_space(imm);
    auto sh = shape_core(imm, u);
    auto nd = newton_from_shape(sh.A);
    if (r < 0 || r > imm.n()) fail(ErrorCode::InvalidArgument, "L_r order out of range");

    Mat Hess = param_hessian(ind, [&](const auto& uu) { return f(uu); }, u);
    // (1,1) Hessian, then trace against P_r
    Mat H11 = matmul(sh.frame.ginv, Hess);
    double Lr = trace(matmul(nd.P[static_cast<std::size_t>(r)], H11));

    LrResult res{Lr, std::nullopt};
    if (with_divergence_form) {
        // W = P_r grad f as a parameter field; div via the induced connection
        SpacelikeImmersion base = imm;
        SmoothScalar fc = f;
        int rr = r;
        SmoothMap W = SmoothMap::make_capped<1>(imm.n(), imm.n(), [base, fc, rr](const auto& uu) {
            using T = typename std::decay_t<decltype(uu)>::value_type;
            auto shp = shape_core(base, uu);
            auto ndt = newton_from_shape(shp.A);
            VecT<T> df = param_gradient_lower([&](const auto& us) { return fc(us); }, uu);
            VecT<T> grad = matvec(shp.frame.ginv, df);
            return matvec(ndt.P[static_cast<std::size_t>(rr)], grad);
        });
        res.divergence_form = divergence_impl(ind, W, u);
    }
    return res;
}

} // namespace lorentz
