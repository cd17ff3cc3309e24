#include "lorentz/charted_space.hpp"

#include <algorithm>

namespace lorentz {

Mat metric_at(const ChartedSpace& sp, const Vec& p) {
    sp.require_in_domain(p);
    Mat g = sp.metric_mat(p);
    double sym = 0.0;
    for (int i = 0; i < sp.dim; ++i)
        for (int j = 0; j < i; ++j) sym = std::max(sym, std::fabs(g(i, j) - g(j, i)));
    if (sym > 1e-12)
        fail(ErrorCode::SignatureMismatch, "metric not symmetric at sample of " + sp.name);
    auto signs = metric_signature(g);
    int neg = static_cast<int>(std::count(signs.begin(), signs.end(), -1));
    if (neg != sp.index())
        fail(ErrorCode::SignatureMismatch,
             "metric index " + std::to_string(neg) + " != declared " + std::to_string(sp.index()) +
                 " on " + sp.name);
    return g;
}

ChristoffelData<double> christoffel_at(const ChartedSpace& sp, const Vec& p) {
    sp.require_in_domain(p);
    sp.require_order(1, "christoffel_at");
    return christoffel_impl(sp, p);
}

double metricity_residual(const ChartedSpace& sp, const Vec& p) {
    sp.require_in_domain(p);
    sp.require_order(1, "metricity_residual");
    const int d = sp.dim;
    auto gam = christoffel_impl(sp, p);
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
        auto xs = seed_coord(p, k);
        MatT<D1> gk = sp.metric_mat(xs);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double r = gk(i, j).d;
                for (int l = 0; l < d; ++l)
                    r -= gam.G(l, k, i) * gam.g(l, j) + gam.G(l, k, j) * gam.g(i, l);
                worst = std::max(worst, std::fabs(r));
            }
    }
    return worst;
}

Vec CurvatureAt::apply(const Vec& X, const Vec& Y, const Vec& Z) const {
    Vec out(static_cast<std::size_t>(dim), 0.0);
    for (int l = 0; l < dim; ++l) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k) s += up(i, j, k, l) * X[i] * Y[j] * Z[k];
        out[static_cast<std::size_t>(l)] = s;
    }
    return out;
}

double CurvatureAt::sectional(const Vec& X, const Vec& Y, double degenerate_tol) const {
    double xx = metric_dot(g, X, X), yy = metric_dot(g, Y, Y), xy = metric_dot(g, X, Y);
    double disc = xx * yy - xy * xy;
    if (std::fabs(disc) < degenerate_tol)
        fail(ErrorCode::DegeneratePlane, "plane discriminant " + std::to_string(disc));
    double rxyyx = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l)
                    rxyyx += low(i, j, k, l) * X[i] * Y[j] * Y[k] * X[l];
    return rxyyx / disc;
}

double CurvatureAt::constant_curvature_residual(double c) const {
    // residual of R(e_i,e_j)e_k = c(<e_j,e_k> e_i - <e_i,e_k> e_j) in the
    // lowered form R_ijkl = c(g_jk g_il - g_ik g_jl)
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    double model = c * (g(j, k) * g(i, l) - g(i, k) * g(j, l));
                    worst = std::max(worst, std::fabs(low(i, j, k, l) - model));
                }
    return worst;
}

double CurvatureAt::symmetry_residual() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    double r = low(i, j, k, l);
                    worst = std::max(worst, std::fabs(r + low(j, i, k, l)));
                    worst = std::max(worst, std::fabs(r + low(i, j, l, k)));
                    worst = std::max(worst, std::fabs(r - low(k, l, i, j)));
                    double bianchi = low(i, j, k, l) + low(j, k, i, l) + low(k, i, j, l);
                    worst = std::max(worst, std::fabs(bianchi));
                }
    return worst;
}

Vec CurvatureAt::ricci_operator(const Vec& X) const {
    Mat ginv = inverse(g);
    Vec lowered(static_cast<std::size_t>(dim), 0.0);
    for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) s += ricci(j, k) * X[k];
        lowered[static_cast<std::size_t>(j)] = s;
    }
    return matvec(ginv, lowered);
}

double CurvatureAt::ricci_quadratic(const Vec& X, const Vec& Y) const {
    double s = 0.0;
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) s += ricci(j, k) * X[j] * Y[k];
    return s;
}

CurvatureAt curvature_at(const ChartedSpace& sp, const Vec& p) {
    sp.require_in_domain(p);
    sp.require_order(2, "curvature_at");
    const int d = sp.dim;

    // dGamma[m](l; i, j) = d_m Gamma^l_{ij}
    auto base = christoffel_impl(sp, p);
    std::vector<ChristoffelData<D1>> dgam(static_cast<std::size_t>(d));
    for (int m = 0; m < d; ++m) dgam[static_cast<std::size_t>(m)] = christoffel_impl(sp, seed_coord(p, m));

    CurvatureAt out;
    out.dim = d;
    out.g = base.g;
    out.riemann_up.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
    out.riemann_low.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
    out.ricci = Mat(d, d);

    // Convention fixed project-wide: R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z
    // - nab_[X,Y] Z, so R^l_{ijk} = d_i G^l_{jk} - d_j G^l_{ik}
    //                             + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}.
    auto idx = [d](int i, int j, int k, int l) {
        return static_cast<std::size_t>(((i * d + j) * d + k) * d + l);
    };
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double r = dgam[static_cast<std::size_t>(i)].G(l, j, k).d -
                               dgam[static_cast<std::size_t>(j)].G(l, i, k).d;
                    for (int m = 0; m < d; ++m)
                        r += base.G(l, i, m) * base.G(m, j, k) - base.G(l, j, m) * base.G(m, i, k);
                    out.riemann_up[idx(i, j, k, l)] = r;
                }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < d; ++m) s += base.g(l, m) * out.riemann_up[idx(i, j, k, m)];
                    out.riemann_low[idx(i, j, k, l)] = s;
                }
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += out.riemann_up[idx(i, j, k, i)];
            out.ricci(j, k) = s;
        }
    return out;
}

Vec covariant_derivative(const ChartedSpace& sp, const SmoothMap& field, const Vec& p,
                         const Vec& direction) {
    sp.require_in_domain(p);
    sp.require_order(1, "covariant_derivative");
    return covariant_derivative_impl(sp, field, p, direction);
}

double divergence_at(const ChartedSpace& sp, const SmoothMap& field, const Vec& p) {
    sp.require_in_domain(p);
    sp.require_order(1, "divergence_at");
    return divergence_impl(sp, field, p);
}

Vec sample_point(const ChartedSpace& sp, SplitMix64& rng) {
    Vec p(static_cast<std::size_t>(sp.dim));
    for (int i = 0; i < sp.dim; ++i)
        p[static_cast<std::size_t>(i)] = rng.uniform(sp.sample_box.lo[static_cast<std::size_t>(i)],
                                                     sp.sample_box.hi[static_cast<std::size_t>(i)]);
    return p;
}

std::optional<double> certify_constant_curvature(const ChartedSpace& sp, std::uint64_t seed,
                                                 int nsamples, double tol) {
    SplitMix64 rng(seed);
    double cmin = 0.0, cmax = 0.0;
    bool first = true;
    for (int s = 0; s < nsamples; ++s) {
        Vec p = sample_point(sp, rng);
        auto R = curvature_at(sp, p);
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vec X(static_cast<std::size_t>(sp.dim)), Y(static_cast<std::size_t>(sp.dim));
            for (int i = 0; i < sp.dim; ++i) {
                X[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
                Y[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
            }
            double xx = metric_dot(R.g, X, X), yy = metric_dot(R.g, Y, Y),
                   xy = metric_dot(R.g, X, Y);
            if (std::fabs(xx * yy - xy * xy) < 0.05) continue; // conditioning guard
            double k = R.sectional(X, Y);
            if (first) { cmin = cmax = k; first = false; }
            cmin = std::min(cmin, k);
            cmax = std::max(cmax, k);
            break;
        }
    }
    if (first) fail(ErrorCode::SampleSetEmpty, "no nondegenerate planes sampled");
    if (cmax - cmin > tol) return std::nullopt;
    return 0.5 * (cmin + cmax);
}

} // namespace lorentz
