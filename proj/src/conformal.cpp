#include "lorentz/conformal.hpp"

#include <algorithm>

#include "lorentz/parallel.hpp"

namespace lorentz {

std::vector<Vec> sample_points(const ChartedSpace& sp, std::uint64_t seed, int n) {
    SplitMix64 rng(seed);
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(sample_point(sp, rng));
    return pts;
}

namespace {

struct PointResiduals {
    double conformal = 0.0;
    double closed = 0.0;
    double psi_abs = 0.0;
    double grad_psi = 0.0;
    double psi = 0.0;
};

PointResiduals certify_point(const AmbientVectorField& f, const Vec& p) {
    const ChartedSpace& sp = *f.space;
    const int d = sp.dim;
    PointResiduals out;

    Mat G = sp.metric_mat(p);
    out.psi = psi_hat_impl<double>(f, p);
    out.psi_abs = std::fabs(out.psi);

    // coordinate-frame covariant derivatives nab_{e_i} V
    Mat DV(d, d); // column i = nab_{e_i} V
    for (int i = 0; i < d; ++i) {
        Vec ei(static_cast<std::size_t>(d), 0.0);
        ei[static_cast<std::size_t>(i)] = 1.0;
        Vec cv = covariant_derivative_impl(sp, f.eval, p, ei);
        for (int a = 0; a < d; ++a) DV(a, i) = cv[static_cast<std::size_t>(a)];
        // closed residual: |nab_{e_i} V - psi e_i| (coordinate norm)
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
            double diff = cv[static_cast<std::size_t>(a)] - (a == i ? out.psi : 0.0);
            r2 += diff * diff;
        }
        out.closed = std::max(out.closed, std::sqrt(r2));
    }
    // conformal residual: <nab_i V, e_j> + <e_i, nab_j V> - 2 psi g_ij
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double lhs = 0.0;
            for (int a = 0; a < d; ++a) lhs += G(a, j) * DV(a, i) + G(i, a) * DV(a, j);
            out.conformal = std::max(out.conformal, std::fabs(lhs - 2.0 * out.psi * G(i, j)));
        }
    // coordinate partials of psi-hat
    for (int k = 0; k < d; ++k) {
        auto ps = psi_hat_impl<D1>(f, seed_coord(p, k));
        out.grad_psi = std::max(out.grad_psi, std::fabs(ps.d));
    }
    return out;
}

} // namespace

ConformalCertificate certify(const AmbientVectorField& field, const std::vector<Vec>& samples,
                             const ConformalTolerances& tol) {
    if (samples.empty()) fail(ErrorCode::SampleSetEmpty, "certify needs sample points");
    ConformalCertificate cert;
    cert.psi_samples.resize(samples.size());
    std::vector<PointResiduals> per(samples.size());
    parallel_for(static_cast<int>(samples.size()), [&](int i) {
        per[static_cast<std::size_t>(i)] = certify_point(field, samples[static_cast<std::size_t>(i)]);
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
        cert.conformal_residual = std::max(cert.conformal_residual, per[i].conformal);
        cert.closed_residual = std::max(cert.closed_residual, per[i].closed);
        cert.psi_sup = std::max(cert.psi_sup, per[i].psi_abs);
        cert.grad_psi_sup = std::max(cert.grad_psi_sup, per[i].grad_psi);
        cert.psi_samples[i] = per[i].psi;
    }
    if (cert.conformal_residual < tol.conformal) {
        cert.classification = FieldClass::Conformal;
        if (cert.closed_residual < tol.closed) {
            cert.classification = FieldClass::ClosedConformal;
            if (cert.grad_psi_sup < tol.homothetic_grad) {
                cert.classification = FieldClass::Homothetic;
                if (cert.psi_sup < tol.parallel_psi) cert.classification = FieldClass::Parallel;
            }
        }
    }
    return cert;
}

namespace {

// grad of a scalar ambient function s (given by templated evaluator) at p
template <class F>
Vec ambient_gradient(const ChartedSpace& sp, const F& s, const Vec& p) {
    const int d = sp.dim;
    Vec ds(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) ds[static_cast<std::size_t>(k)] = s(seed_coord(p, k)).d;
    Mat G = sp.metric_mat(p);
    return solve_vec(G, ds);
}

} // namespace

GradientIdentityResiduals gradient_identities_check(const AmbientVectorField& field,
                                                    const std::vector<Vec>& samples,
                                                    const ConformalTolerances& tol) {
    if (samples.empty()) fail(ErrorCode::SampleSetEmpty, "no samples");
    ConformalCertificate cert = certify(field, samples, tol);
    if (!(cert.is(FieldClass::ClosedConformal) || cert.is(FieldClass::Homothetic) ||
          cert.is(FieldClass::Parallel)))
        fail(ErrorCode::NotClosedConformal, field.name + " failed the closed-conformal certificate");

    const ChartedSpace& sp = *field.space;
    GradientIdentityResiduals res{0.0, 0.0};
    for (const Vec& p : samples) {
        Mat G = sp.metric_mat(p);
        Vec V = field.eval(p);
        double vv = metric_dot(G, V, V);
        if (!(vv < 0.0)) fail(ErrorCode::NotTimelike, field.name + " not timelike at a sample");
        double rho = std::sqrt(-vv);
        double psi = psi_hat_impl<double>(field, p);

        // grad <V,V> vs 2 psi V
        auto vv_fn = [&](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            VecT<T> vx = field.eval(x);
            MatT<T> g = sp.metric_mat(x);
            return metric_dot(g, vx, vx);
        };
        Vec gradvv = ambient_gradient(sp, vv_fn, p);
        for (int a = 0; a < sp.dim; ++a)
            res.grad_vv = std::max(res.grad_vv,
                                   std::fabs(gradvv[static_cast<std::size_t>(a)] - 2.0 * psi * V[static_cast<std::size_t>(a)]));

        // grad psi vs -nu(psi) nu
        auto psi_fn = [&](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            return psi_hat_impl<T>(field, x);
        };
        Vec gradpsi = ambient_gradient(sp, psi_fn, p);
        Vec nu = vec_scale(V, 1.0 / rho);
        double nupsi = psi_hat_impl<D1>(field, seed_dir(p, nu)).d;
        for (int a = 0; a < sp.dim; ++a)
            res.grad_psi = std::max(res.grad_psi,
                                    std::fabs(gradpsi[static_cast<std::size_t>(a)] + nupsi * nu[static_cast<std::size_t>(a)]));
    }
    return res;
}

namespace {

/// U(x) = eta(x) + <eta,nu> nu as a templated ambient evaluator.
template <class T>
VecT<T> projected_field_eval(const AmbientVectorField& eta, const AmbientVectorField& V,
                             const VecT<T>& x) {
    using std::sqrt; using lorentz::sqrt;
    const ChartedSpace& sp = *V.space;
    VecT<T> vx = V.eval(x);
    MatT<T> g = sp.metric_mat(x);
    T vv = metric_dot(g, vx, vx);
    T rho = sqrt(-vv);
    VecT<T> nu = vec_scale(vx, T(1.0) / rho);
    VecT<T> e = eta.eval(x);
    T en = metric_dot(g, e, nu);
    return vec_add(e, vec_scale(nu, en));
}

} // namespace

LeafProjection project_to_leaf(const AmbientVectorField& eta, const AmbientVectorField& V,
                               const Vec& p, const ConformalTolerances& tol) {
    const ChartedSpace& sp = *V.space;
    Mat G = sp.metric_mat(p);
    Vec v = V.eval(p);
    double vv = metric_dot(G, v, v);
    double vnorm = std::sqrt(std::fabs(vv));
    if (vnorm < 1e-10) fail(ErrorCode::SingularV, V.name + " vanishes at p, leaf undefined");
    if (!(vv < 0.0)) fail(ErrorCode::NotTimelike, V.name + " not timelike at p");
    double rho = std::sqrt(-vv);
    Vec nu = vec_scale(v, 1.0 / rho);

    LeafProjection out;
    out.U = projected_field_eval(eta, V, p);
    double psi_eta = psi_hat_impl<double>(eta, p);
    double psi_V = psi_hat_impl<double>(V, p);
    double en = metric_dot(G, eta.eval(p), nu);
    out.psi_U_literal = psi_eta + psi_V * en;
    out.psi_U_leafwise = psi_eta + (psi_V / rho) * en;
    double unorm = 0.0;
    for (double c : out.U) unorm += c * c;
    unorm = std::sqrt(unorm);
    out.degenerate = unorm < 1e-10;
    out.tangency = std::fabs(metric_dot(G, out.U, nu));

    // intrinsic check D_Z U = psi_U Z over a leaf-tangent frame at p
    out.intrinsic_residual = 0.0;
    if (!out.degenerate) {
        SmoothMap Ufield = SmoothMap::make_capped<2>(sp.dim, sp.dim, [eta, V](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            return projected_field_eval<T>(eta, V, x);
        });
        int dropped = 0;
        double best = 0.0;
        for (int i = 0; i < sp.dim; ++i) {
            double c = std::fabs(nu[static_cast<std::size_t>(i)]);
            if (c > best) { best = c; dropped = i; }
        }
        for (int i = 0; i < sp.dim; ++i) {
            if (i == dropped) continue;
            Vec ei(static_cast<std::size_t>(sp.dim), 0.0);
            ei[static_cast<std::size_t>(i)] = 1.0;
            double comp = metric_dot(G, ei, nu);
            Vec Z = vec_add(ei, vec_scale(nu, comp)); // tangential projection
            Vec DU = covariant_derivative_impl(sp, Ufield, p, Z);
            double dn = metric_dot(G, DU, nu);
            Vec DZU = vec_add(DU, vec_scale(nu, dn)); // (nab_Z U)^top
            double zn = norm2(Z);
            double r2 = 0.0;
            for (int a = 0; a < sp.dim; ++a) {
                double diff = DZU[static_cast<std::size_t>(a)] - out.psi_U_leafwise * Z[static_cast<std::size_t>(a)];
                r2 += diff * diff;
            }
            out.intrinsic_residual = std::max(out.intrinsic_residual, std::sqrt(r2) / std::max(zn, 1e-12));
        }
    }
    (void)tol;
    return out;
}

double leaf_conformal_certificate(const AmbientVectorField& eta, const AmbientVectorField& V,
                                  const std::vector<Vec>& leaf_points) {
    if (leaf_points.empty()) fail(ErrorCode::SampleSetEmpty, "no leaf points");
    double worst = 0.0;
    for (const Vec& p : leaf_points) {
        auto proj = project_to_leaf(eta, V, p);
        worst = std::max(worst, proj.intrinsic_residual);
    }
    return worst;
}

LeafUmbilicityResult leaf_umbilicity_check(const AmbientVectorField& V,
                                           const SpacelikeImmersion& leaf,
                                           const std::vector<Vec>& params, double ortho_tol) {
    if (params.empty()) fail(ErrorCode::SampleSetEmpty, "no leaf parameters");
    LeafUmbilicityResult out{0.0, 0.0, 0.0, 0.0};
    bool first = true;
    for (const Vec& u : params) {
        auto fr = frame_core(leaf, u);
        Vec v = V.eval(fr.x);
        double vv = metric_dot(fr.G, v, v);
        if (!(vv < 0.0)) fail(ErrorCode::NotTimelike, V.name + " not timelike on leaf");
        double rho = std::sqrt(-vv);
        double psi = psi_hat_impl<double>(V, fr.x);
        if (first) {
            out.umbilicity_factor = -psi / rho;
            first = false;
        }
        // leaf validity: tangents orthogonal to V
        for (int i = 0; i < leaf.n(); ++i) {
            double t = std::fabs(metric_dot(fr.G, fr.tangent(i), v)) / std::max(rho, 1e-12);
            out.orthogonality = std::max(out.orthogonality, t);
        }
        if (out.orthogonality > ortho_tol)
            fail(ErrorCode::NotOrthogonalLeaf,
                 leaf.name + " tangent not orthogonal to " + V.name);

        // S(X) = nab_X V in the tangent basis, against psi Id; and the
        // normalized -nab_X nu against -psi/rho Id.
        const int n = leaf.n();
        MatT<double> SV(n, n), Snu(n, n);
        for (int i = 0; i < n; ++i) {
            Vec ti = fr.tangent(i);
            Vec DV = covariant_derivative_impl(*leaf.ambient, V.eval, fr.x, ti);
            // express in tangent basis: g^{-1} J^T G DV
            Vec rhs(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) rhs[static_cast<std::size_t>(j)] = metric_dot(fr.G, fr.tangent(j), DV);
            Vec col = solve_vec(fr.g, rhs);
            for (int j = 0; j < n; ++j) SV(j, i) = col[static_cast<std::size_t>(j)];

            // nu-field derivative via the normalized evaluator
            AmbientVectorField Vc = V;
            SmoothMap nufield = SmoothMap::make_capped<2>(fr.J.rows, fr.J.rows, [Vc](const auto& x) {
                using T = typename std::decay_t<decltype(x)>::value_type;
                using std::sqrt; using lorentz::sqrt;
                VecT<T> vx = Vc.eval(x);
                MatT<T> g = Vc.space->metric_mat(x);
                T vv2 = metric_dot(g, vx, vx);
                return vec_scale(vx, T(1.0) / sqrt(-vv2));
            });
            Vec Dnu = covariant_derivative_impl(*leaf.ambient, nufield, fr.x, ti);
            Vec rhs2(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) rhs2[static_cast<std::size_t>(j)] = metric_dot(fr.G, fr.tangent(j), Dnu);
            Vec col2 = solve_vec(fr.g, rhs2);
            for (int j = 0; j < n; ++j) Snu(j, i) = -col2[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double id = (i == j) ? 1.0 : 0.0;
                out.psi_identity_residual =
                    std::max(out.psi_identity_residual, std::fabs(SV(i, j) - psi * id));
                out.normalized_shape_residual =
                    std::max(out.normalized_shape_residual, std::fabs(Snu(i, j) - (-psi / rho) * id));
            }
    }
    return out;
}

} // namespace lorentz
