#include "lorentz/support_identities.hpp"

#include <algorithm>
#include <sstream>

namespace lorentz {

namespace {

// f_V(u) = <V(x(u)), N(u)> as a templated parameter function
template <class T>
T support_fn(const SpacelikeImmersion& imm, const AmbientVectorField& V, const VecT<T>& u) {
    FrameT<T> fr = frame_core(imm, u);
    VecT<T> vx = V.eval(fr.x);
    return metric_dot(fr.G, vx, fr.N);
}

// <V, W>(x(u))
template <class T>
T pair_fn(const SpacelikeImmersion& imm, const AmbientVectorField& V,
          const AmbientVectorField& W, const VecT<T>& u) {
    FrameT<T> fr = frame_core(imm, u);
    return metric_dot(fr.G, V.eval(fr.x), W.eval(fr.x));
}

// tangential part of an ambient field in parameter components
Vec tangential_components(const FrameT<double>& fr, const Vec& ambient_vec) {
    const int n = fr.J.cols;
    Vec rhs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = metric_dot(fr.G, fr.tangent(j), ambient_vec);
    return solve_vec(fr.g, rhs);
}

double gnorm(const Mat& g, const Vec& w) { return std::sqrt(std::max(0.0, metric_dot(g, w, w))); }

void require_closed_conformal(const AmbientVectorField& F, const SupportIdentityOptions& opt) {
    auto pts = sample_points(*F.space, opt.seed, opt.ambient_samples);
    auto cert = certify(F, pts, opt.certify_tol);
    if (!(cert.is(FieldClass::ClosedConformal) || cert.is(FieldClass::Homothetic) ||
          cert.is(FieldClass::Parallel)))
        fail(ErrorCode::NotClosedConformal, F.name + " failed the closed-conformal certificate");
}

} // namespace

SupportIdentityReport support_identities_check(const SpacelikeImmersion& imm,
                                               const AmbientVectorField& V,
                                               const AmbientVectorField* W,
                                               const std::vector<Vec>& params,
                                               const SupportIdentityOptions& opt) {
    if (params.empty()) fail(ErrorCode::SampleSetEmpty, "no parameter samples");
    require_closed_conformal(V, opt);
    if (W) require_closed_conformal(*W, opt);

    const int n = imm.n();
    ChartedSpace ind = induced_space(imm);
    SupportIdentityReport rep;

    for (const Vec& u : params) {
        auto sh = shape_core(imm, u);
        const auto& fr = sh.frame;
        Vec vx = V.eval(fr.x);
        double vv = metric_dot(fr.G, vx, vx);
        if (!(vv < 0.0)) fail(ErrorCode::NotTimelike, V.name + " not timelike along " + imm.name);
        double fV = metric_dot(fr.G, vx, fr.N);
        rep.fv_max = std::max(rep.fv_max, fV);
        if (fV >= 0.0)
            fail(ErrorCode::TimeOrientationClash, "f_V >= 0 on " + imm.name + " (orientation clash)");

        auto nd = newton_from_shape(sh.A);
        double H1 = nd.H[1];
        double A2 = trace(matmul(sh.A, sh.A));
        double psiV = psi_hat_impl<double>(V, fr.x);
        Vec vtop = tangential_components(fr, vx);

        // (4.1) grad f_V = -A(V^top)
        auto fV_fn = [&](const auto& uu) {
            using T = typename std::decay_t<decltype(uu)>::value_type;
            return support_fn<T>(imm, V, uu);
        };
        Vec dfV = param_gradient_lower(fV_fn, u);
        Vec gradfV = solve_vec(fr.g, dfV);
        Vec rhs1 = vec_scale(matvec(sh.A, vtop), -1.0);
        rep.res_grad_fv = std::max(rep.res_grad_fv, gnorm(fr.g, vec_sub(gradfV, rhs1)));

        // (4.2) lap f_V
        Mat Hess = param_hessian(ind, fV_fn, u);
        double lapfV = trace(matmul(fr.ginv, Hess));
        auto H1_fn = [&](const auto& uu) {
            using T = typename std::decay_t<decltype(uu)>::value_type;
            auto s = shape_core(imm, uu);
            return newton_from_shape(s.A).H[1];
        };
        double vtopH = dot(param_gradient_lower(H1_fn, u), vtop);
        auto R = curvature_at(*imm.ambient, fr.x);
        double ricNN = R.ricci_quadratic(fr.N, fr.N);
        double Npsi = psi_hat_impl<D1>(V, seed_dir(fr.x, fr.N)).d;
        double rhs2 = n * vtopH + (ricNN + A2) * fV + n * (H1 * psiV - Npsi);
        rep.res_lap_fv = std::max(rep.res_lap_fv, std::fabs(lapfV - rhs2));

        // (4.7) div V^top = n psi_V + n H f_V
        {
            SpacelikeImmersion base = imm;
            AmbientVectorField Vc = V;
            SmoothMap vtop_field = SmoothMap::make_capped<1>(n, n, [base, Vc](const auto& uu) {
                using T = typename std::decay_t<decltype(uu)>::value_type;
                FrameT<T> f2 = frame_core(base, uu);
                VecT<T> vamb = Vc.eval(f2.x);
                VecT<T> rhs(static_cast<std::size_t>(f2.J.cols));
                for (int j = 0; j < f2.J.cols; ++j)
                    rhs[static_cast<std::size_t>(j)] = metric_dot(f2.G, f2.tangent(j), vamb);
                return solve_vec(f2.g, rhs);
            });
            double divv = divergence_impl(ind, vtop_field, u);
            rep.res_div_vtop =
                std::max(rep.res_div_vtop, std::fabs(divv - (n * psiV + n * H1 * fV)));
        }

        if (W) {
            Vec wx = W->eval(fr.x);
            double psiW = psi_hat_impl<double>(*W, fr.x);
            double fW = metric_dot(fr.G, wx, fr.N);
            Vec wtop = tangential_components(fr, wx);

            // (4.3) grad g = psi_V W^top + psi_W V^top
            auto g_fn = [&](const auto& uu) {
                using T = typename std::decay_t<decltype(uu)>::value_type;
                return pair_fn<T>(imm, V, *W, uu);
            };
            Vec gradg = solve_vec(fr.g, param_gradient_lower(g_fn, u));
            Vec rhs3 = vec_add(vec_scale(wtop, psiV), vec_scale(vtop, psiW));
            rep.res_grad_g = std::max(rep.res_grad_g, gnorm(fr.g, vec_sub(gradg, rhs3)));

            // (4.4) lap g
            Mat Hg = param_hessian(ind, g_fn, u);
            double lapg = trace(matmul(fr.ginv, Hg));
            Vec Jw = matvec(fr.J, wtop); // ambient components of W^top
            Vec Jv = matvec(fr.J, vtop);
            double WtopPsiV = psi_hat_impl<D1>(V, seed_dir(fr.x, Jw)).d;
            double VtopPsiW = psi_hat_impl<D1>(*W, seed_dir(fr.x, Jv)).d;
            double rhs4 = WtopPsiV + VtopPsiW + n * H1 * (psiV * fW + psiW * fV) +
                          2.0 * n * psiV * psiW;
            rep.res_lap_g = std::max(rep.res_lap_g, std::fabs(lapg - rhs4));
        }
    }
    return rep;
}

BernsteinReport bernstein_audit(const SpacelikeImmersion& imm, const AmbientVectorField& V,
                                const BernsteinOptions& opt) {
    const int n = imm.n();
    Vec lo = opt.patch_lo.empty() ? imm.domain.lo : opt.patch_lo;
    Vec hi = opt.patch_hi.empty() ? imm.domain.hi : opt.patch_hi;
    std::vector<int> mesh = opt.mesh;
    if (mesh.empty()) mesh.assign(static_cast<std::size_t>(n), 12);

    BernsteinReport rep;
    bool first = true;

    auto density_vtop = [&](const Vec& u) {
        auto fr = frame_core(imm, u);
        Vec vx = V.eval(fr.x);
        Vec rhs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = metric_dot(fr.G, fr.tangent(j), vx);
        Vec vtop = solve_vec(fr.g, rhs);
        double vol = std::sqrt(std::max(0.0, value(determinant(fr.g))));
        double nrm = std::sqrt(std::max(0.0, metric_dot(fr.g, vtop, vtop)));
        return nrm * vol;
    };

    // pointwise sweep on the full patch
    GridQuadrature grid = tensor_grid(lo, hi, mesh, imm.domain.periodic);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec& u = grid.points[i];
        auto sh = shape_core(imm, u);
        auto nd = newton_from_shape(sh.A);
        double H1 = nd.H[1];
        double frob = std::sqrt(std::max(0.0, trace(matmul(sh.A, sh.A))));
        rep.sup_A = std::max(rep.sup_A, frob);
        Mat dev = sh.A;
        double mean = trace(sh.A) / n;
        for (int k = 0; k < n; ++k) dev(k, k) -= mean;
        rep.sup_umbilicity =
            std::max(rep.sup_umbilicity, std::sqrt(std::max(0.0, trace(matmul(dev, dev)))));
        auto R = curvature_at(*imm.ambient, sh.frame.x);
        rep.sup_ric_nn = std::max(rep.sup_ric_nn, std::fabs(R.ricci_quadratic(sh.frame.N, sh.frame.N)));
        if (first) { rep.h_min = rep.h_max = H1; first = false; }
        rep.h_min = std::min(rep.h_min, H1);
        rep.h_max = std::max(rep.h_max, H1);
    }
    rep.h_constant_sign = (rep.h_min >= -opt.tol) || (rep.h_max <= opt.tol);

    // sup |V^top| on the patch
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec& u = grid.points[i];
        auto fr = frame_core(imm, u);
        Vec vx = V.eval(fr.x);
        Vec rhs(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = metric_dot(fr.G, fr.tangent(j), vx);
        Vec vtop = solve_vec(fr.g, rhs);
        rep.sup_vtop = std::max(rep.sup_vtop, std::sqrt(std::max(0.0, metric_dot(fr.g, vtop, vtop))));
    }

    // integral of |V^top| over expanding patches, with a Richardson check on
    // the largest one
    Vec mid(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) mid[static_cast<std::size_t>(a)] = 0.5 * (lo[static_cast<std::size_t>(a)] + hi[static_cast<std::size_t>(a)]);
    for (double scale : opt.expansion) {
        Vec plo(static_cast<std::size_t>(n)), phi(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
            plo[static_cast<std::size_t>(a)] = mid[static_cast<std::size_t>(a)] + scale * (lo[static_cast<std::size_t>(a)] - mid[static_cast<std::size_t>(a)]);
            phi[static_cast<std::size_t>(a)] = mid[static_cast<std::size_t>(a)] + scale * (hi[static_cast<std::size_t>(a)] - mid[static_cast<std::size_t>(a)]);
        }
        double I = integrate_checked(plo, phi, mesh, imm.domain.periodic, density_vtop, opt.quad_tol);
        rep.vtop_integrals.push_back(I);
    }
    std::size_t m = rep.vtop_integrals.size();
    if (m >= 2) {
        double last = rep.vtop_integrals[m - 1], prev = rep.vtop_integrals[m - 2];
        rep.vtop_trend = (last - prev > 0.05 * std::max(1e-12, std::fabs(last))) ? "increasing"
                                                                                 : "converging";
    }

    // ambient Ricci nonnegativity probe over random directions
    SplitMix64 rng(opt.seed);
    rep.ric_min_quadratic = 0.0;
    bool firstric = true;
    for (int s = 0; s < 32; ++s) {
        Vec u(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) u[static_cast<std::size_t>(a)] = rng.uniform(lo[static_cast<std::size_t>(a)], hi[static_cast<std::size_t>(a)]);
        auto fr = frame_core(imm, u);
        auto R = curvature_at(*imm.ambient, fr.x);
        Vec X(static_cast<std::size_t>(imm.ambient->dim));
        for (int a = 0; a < imm.ambient->dim; ++a) X[static_cast<std::size_t>(a)] = rng.uniform(-1.0, 1.0);
        double q = R.ricci_quadratic(X, X);
        if (firstric) { rep.ric_min_quadratic = q; firstric = false; }
        rep.ric_min_quadratic = std::min(rep.ric_min_quadratic, q);
    }

    rep.hyp_h_sign = rep.h_constant_sign;
    rep.hyp_ric_nonneg = rep.ric_min_quadratic >= -opt.tol;
    rep.concl_totally_geodesic = rep.sup_A < opt.tol;
    rep.concl_totally_umbilical = rep.sup_umbilicity < opt.tol;
    rep.concl_ric_nn_zero = rep.sup_ric_nn < opt.tol;
    rep.concl_leaf_contained = rep.sup_vtop < opt.tol;

    std::ostringstream v;
    if (!rep.hyp_h_sign || !rep.hyp_ric_nonneg) {
        v << "hypotheses fail (";
        if (!rep.hyp_h_sign) v << "H changes sign";
        if (!rep.hyp_h_sign && !rep.hyp_ric_nonneg) v << ", ";
        if (!rep.hyp_ric_nonneg) v << "ambient Ricci negative";
        v << "); audit inapplicable";
    } else if (rep.concl_totally_geodesic && rep.concl_ric_nn_zero) {
        v << "hypotheses hold; totally geodesic with Ric(N,N)=0";
    } else if (rep.concl_totally_umbilical && rep.concl_ric_nn_zero) {
        v << "hypotheses hold; totally umbilical with Ric(N,N)=0";
    } else {
        v << "hypotheses hold; conclusions not met on this patch";
    }
    rep.verdict = v.str();
    return rep;
}

} // namespace lorentz
