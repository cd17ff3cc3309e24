#pragma once
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "lorentz/linalg.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/smooth.hpp"

namespace lorentz {

struct ChartBox {
    Vec lo, hi; // open box; +-inf allowed

    bool contains(const Vec& p, double margin = 0.0) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            double m = margin * (std::isfinite(hi[i] - lo[i]) ? (hi[i] - lo[i]) : 1.0);
            if (!(p[i] > lo[i] + m && p[i] < hi[i] - m)) return false;
        }
        return true;
    }

    static ChartBox unbounded(int dim) {
        const double inf = std::numeric_limits<double>::infinity();
        return {Vec(static_cast<std::size_t>(dim), -inf), Vec(static_cast<std::size_t>(dim), inf)};
    }
};

/// A semi-Riemannian manifold presented in a single chart: a metric evaluator
/// plus signature and domain data. All curvature ops differentiate the metric
/// with nested dual numbers (exact) or central differences (oracle backend).
struct ChartedSpace {
    int dim = 0;
    std::vector<int> signature;   // entries +-1; index = count of -1
    SmoothMap metric;             // R^dim -> R^{dim*dim}, row-major symmetric
    ChartBox domain;              // chart validity
    ChartBox sample_box;          // bounded region for randomized sweeps
    SmoothMap future_anchor;      // future-pointing timelike reference field (may be absent)
    DiffBackend backend = DiffBackend::ExactForward;
    int max_order = 4;            // derivative layers available
    std::string name;
    std::optional<double> declared_curvature; // model hint; consumers re-verify

    int index() const {
        int k = 0;
        for (int s : signature) k += (s < 0) ? 1 : 0;
        return k;
    }

    template <class T>
    MatT<T> metric_mat(const VecT<T>& x) const {
        VecT<T> flat = metric(x);
        MatT<T> g(dim, dim);
        g.a = std::move(flat);
        return g;
    }

    void require_order(int k, const char* op) const {
        if (k > max_order)
            fail(ErrorCode::BackendOrderTooLow,
                 std::string(op) + " needs derivative order " + std::to_string(k));
    }

    void require_in_domain(const Vec& p) const {
        if (static_cast<int>(p.size()) != dim)
            fail(ErrorCode::InvalidArgument, "point dimension mismatch on " + name);
        if (!domain.contains(p))
            fail(ErrorCode::OutOfDomain, "point outside chart of " + name);
    }

    ChartedSpace with_fd_backend(FdConfig cfg = {}) const {
        ChartedSpace sp = *this;
        sp.metric = metric.with_fd_derivatives(cfg);
        sp.backend = DiffBackend::CentralFd;
        sp.max_order = 3;
        sp.name = name + "/fd";
        return sp;
    }
};

using SpacePtr = std::shared_ptr<const ChartedSpace>;

// ---------------------------------------------------------------------------
// Templated kernels
// ---------------------------------------------------------------------------

template <class T>
struct ChristoffelData {
    int dim = 0;
    VecT<T> gamma; // Gamma^k_{ij}, k major
    MatT<T> g, ginv;

    const T& G(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>((k * dim + i) * dim + j)];
    }
    T& G(int k, int i, int j) {
        return gamma[static_cast<std::size_t>((k * dim + i) * dim + j)];
    }

    /// (Gamma [u, w])^k = Gamma^k_{ij} u^i w^j
    VecT<T> apply(const VecT<T>& u, const VecT<T>& w) const {
        VecT<T> out(static_cast<std::size_t>(dim), T(0.0));
        for (int k = 0; k < dim; ++k) {
            T s(0.0);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) s += G(k, i, j) * u[i] * w[j];
            out[static_cast<std::size_t>(k)] = s;
        }
        return out;
    }
};

/// Levi-Civita connection coefficients from first metric derivatives.
template <class T>
ChristoffelData<T> christoffel_impl(const ChartedSpace& sp, const VecT<T>& x) {
    const int d = sp.dim;
    ChristoffelData<T> out;
    out.dim = d;
    out.gamma.assign(static_cast<std::size_t>(d) * d * d, T(0.0));

    // dg[k](i,j) = d_k g_ij
    std::vector<MatT<T>> dg(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        auto xs = seed_coord(x, k);
        MatT<Dual<T>> gk = sp.metric_mat(xs);
        if (k == 0) {
            out.g = MatT<T>(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) out.g(i, j) = gk(i, j).v;
        }
        dg[static_cast<std::size_t>(k)] = MatT<T>(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) dg[static_cast<std::size_t>(k)](i, j) = gk(i, j).d;
    }
    out.ginv = inverse(out.g);
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) {
                T s(0.0);
                for (int m = 0; m < d; ++m)
                    s += out.ginv(l, m) *
                         (dg[static_cast<std::size_t>(i)](m, j) +
                          dg[static_cast<std::size_t>(j)](m, i) -
                          dg[static_cast<std::size_t>(m)](i, j));
                out.G(l, i, j) = 0.5 * s;
                out.G(l, j, i) = out.G(l, i, j);
            }
    return out;
}

/// Covariant derivative of a vector field along a direction at x.
template <class T>
VecT<T> covariant_derivative_impl(const ChartedSpace& sp, const SmoothMap& field,
                                  const VecT<T>& x, const VecT<T>& dir) {
    auto xs = seed_dir(x, dir);
    VecT<Dual<T>> F = field(xs);
    auto gam = christoffel_impl(sp, x);
    VecT<T> fv(static_cast<std::size_t>(sp.dim)), df(static_cast<std::size_t>(sp.dim));
    for (int i = 0; i < sp.dim; ++i) {
        fv[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i)].v;
        df[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i)].d;
    }
    VecT<T> corr = gam.apply(dir, fv);
    return vec_add(df, corr);
}

/// div F = trace of the covariant derivative.
template <class T>
T divergence_impl(const ChartedSpace& sp, const SmoothMap& field, const VecT<T>& x) {
    const int d = sp.dim;
    T div(0.0);
    VecT<T> fv;
    for (int k = 0; k < d; ++k) {
        auto xs = seed_coord(x, k);
        VecT<Dual<T>> F = field(xs);
        if (k == 0) {
            fv.resize(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) fv[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i)].v;
        }
        div += F[static_cast<std::size_t>(k)].d;
    }
    auto gam = christoffel_impl(sp, x);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) div += gam.G(i, i, j) * fv[static_cast<std::size_t>(j)];
    return div;
}

// ---------------------------------------------------------------------------
// Double-precision public surface
// ---------------------------------------------------------------------------

Mat metric_at(const ChartedSpace& sp, const Vec& p);
ChristoffelData<double> christoffel_at(const ChartedSpace& sp, const Vec& p);

/// max_k,i,j |nabla_k g_ij| (Levi-Civita metricity residual).
double metricity_residual(const ChartedSpace& sp, const Vec& p);

struct CurvatureAt {
    int dim = 0;
    Mat g;
    std::vector<double> riemann_up;  // R^l_{ijk}: R(d_i,d_j)d_k = R^l_{ijk} d_l
    std::vector<double> riemann_low; // R_{ijkl} = <R(d_i,d_j)d_k, d_l>
    Mat ricci;                       // Ric_{jk} = R^i_{ijk}

    double up(int i, int j, int k, int l) const {
        return riemann_up[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
    }
    double low(int i, int j, int k, int l) const {
        return riemann_low[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
    }

    /// R(X,Y)Z in coordinates.
    Vec apply(const Vec& X, const Vec& Y, const Vec& Z) const;

    /// Sectional curvature of span(X, Y); throws DegeneratePlane when the
    /// restricted metric discriminant is below tol.
    double sectional(const Vec& X, const Vec& Y, double degenerate_tol = 1e-10) const;

    /// sup residual of R(X,Y)Z = c(<Y,Z>X - <X,Z>Y) over the coordinate frame.
    double constant_curvature_residual(double c) const;

    /// Antisymmetry / pair-symmetry / first-Bianchi residual (max abs).
    double symmetry_residual() const;

    /// Ricci operator applied to a vector: (g^{-1} Ric) X.
    Vec ricci_operator(const Vec& X) const;
    double ricci_quadratic(const Vec& X, const Vec& Y) const;
};

CurvatureAt curvature_at(const ChartedSpace& sp, const Vec& p);

Vec covariant_derivative(const ChartedSpace& sp, const SmoothMap& field, const Vec& p,
                         const Vec& direction);
double divergence_at(const ChartedSpace& sp, const SmoothMap& field, const Vec& p);

/// Random point in the sample box.
Vec sample_point(const ChartedSpace& sp, SplitMix64& rng);

/// Sample sectional curvatures on random planes; returns the declared-constant
/// value when the spread is below tol, otherwise nullopt.
std::optional<double> certify_constant_curvature(const ChartedSpace& sp, std::uint64_t seed,
                                                 int nsamples, double tol);

} // namespace lorentz
