#pragma once
#include "lorentz/ambient_models.hpp"

namespace lorentz {

struct ParamDomain {
    Vec lo, hi;
    std::vector<uint8_t> periodic;

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Vec& u) const {
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (periodic[i]) continue;
            if (!(u[i] >= lo[i] && u[i] <= hi[i])) return false;
        }
        return true;
    }
};

/// Parametric spacelike immersion into a charted ambient space. The induced
/// metric must be positive definite wherever the immersion is evaluated.
struct SpacelikeImmersion {
    ParamDomain domain;
    SmoothMap map; // n params -> ambient dim
    SpacePtr ambient;
    std::string name;

    int n() const { return domain.dim(); }

    SpacelikeImmersion with_fd_backend(FdConfig cfg = {}) const {
        SpacelikeImmersion im = *this;
        im.map = map.with_fd_derivatives(cfg);
        auto amb = std::make_shared<ChartedSpace>(ambient->with_fd_backend(cfg));
        im.ambient = amb;
        im.name = name + "/fd";
        return im;
    }
};

template <class T>
struct FrameT {
    VecT<T> x;   // ambient point
    MatT<T> J;   // d x n tangent basis dx(d_i), columns
    MatT<T> g;   // induced metric
    MatT<T> ginv;
    MatT<T> G;   // ambient metric at x
    VecT<T> N;   // future-pointing unit timelike normal

    VecT<T> tangent(int i) const {
        VecT<T> c(static_cast<std::size_t>(J.rows));
        for (int a = 0; a < J.rows; ++a) c[static_cast<std::size_t>(a)] = J(a, i);
        return c;
    }
};

namespace detail {
inline void check_spacelike(const Mat& g_val, const std::string& name) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g_val));
    if (es.eigenvalues().minCoeff() <= 1e-12)
        fail(ErrorCode::NotSpacelike, "induced metric not positive definite on " + name);
}
} // namespace detail

/// Frame assembly, templated so the normal differentiates through duals. The
/// normal solves <N, dx(d_i)> = 0, <N,N> = -1, future-pointing against the
/// ambient anchor; it is computed as G^{-1} applied to the generalized cross
/// product of the Jacobian columns (hypersurfaces only).
template <class T>
FrameT<T> frame_core(const SpacelikeImmersion& imm, const VecT<T>& u) {
    const int n = imm.n();
    const int d = imm.ambient->dim;
    if (d != n + 1) fail(ErrorCode::InvalidArgument, "frame_core needs codimension 1");
    FrameT<T> fr;
    fr.J = MatT<T>(d, n);
    for (int i = 0; i < n; ++i) {
        auto us = seed_coord(u, i);
        VecT<Dual<T>> xi = imm.map(us);
        if (i == 0) {
            fr.x.resize(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) fr.x[static_cast<std::size_t>(a)] = xi[static_cast<std::size_t>(a)].v;
        }
        for (int a = 0; a < d; ++a) fr.J(a, i) = xi[static_cast<std::size_t>(a)].d;
    }
    fr.G = imm.ambient->metric_mat(fr.x);
    fr.g = matmul(transpose(fr.J), matmul(fr.G, fr.J));

    Mat g_val(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g_val(i, j) = value(fr.g(i, j));
    detail::check_spacelike(g_val, imm.name);
    fr.ginv = inverse(fr.g);

    VecT<T> e = generalized_cross(fr.J);
    VecT<T> w = solve_vec(fr.G, e);
    T s = metric_dot(fr.G, w, w);
    if (!(value(s) < -1e-14))
        fail(ErrorCode::DegenerateJacobian, "normal direction not timelike on " + imm.name);
    using std::sqrt; using lorentz::sqrt;
    T inv_norm = T(1.0) / sqrt(-s);
    fr.N = vec_scale(w, inv_norm);

    if (!imm.ambient->future_anchor.valid())
        fail(ErrorCode::TimeOrientationClash, "ambient " + imm.ambient->name + " has no future anchor");
    VecT<T> anchor = imm.ambient->future_anchor(fr.x);
    double orient = value(metric_dot(fr.G, fr.N, anchor));
    if (orient > 0.0) fr.N = vec_scale(fr.N, T(-1.0));
    return fr;
}

/// Double-precision frame bundle with validity checks.
struct FrameData {
    Vec x;
    Mat tangent_basis;  // d x n
    Mat induced_metric; // n x n
    Vec normal;
    Mat ambient_metric;
};

FrameData frame_at(const SpacelikeImmersion& imm, const Vec& u);

/// The immersion's parameter space endowed with the pullback metric.
/// Supports the intrinsic operators (Hessian, Laplacian, L_r) through the
/// same kernel used for ambient charts.
ChartedSpace induced_space(const SpacelikeImmersion& imm);

// ---------------------------------------------------------------------------
// Intrinsic calculus on parameter functions
// ---------------------------------------------------------------------------

/// Coordinate partials of a scalar parameter-function at u.
template <class T, class F>
VecT<T> param_gradient_lower(const F& f, const VecT<T>& u) {
    VecT<T> df(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        auto us = seed_coord(u, static_cast<int>(i));
        df[i] = f(us).d;
    }
    return df;
}

/// Covariant Hessian of a parameter-function with respect to the induced
/// metric: Hess_ij = d_i d_j f - Gamma^k_ij d_k f.
template <class T, class F>
MatT<T> param_hessian(const ChartedSpace& induced, const F& f, const VecT<T>& u) {
    const int n = induced.dim;
    MatT<T> H(n, n);
    VecT<T> df(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto ui = seed_coord(u, i);
        for (int j = 0; j <= i; ++j) {
            auto uij = seed_coord(ui, j);
            Dual<Dual<T>> val = f(uij);
            H(i, j) = val.d.d;
            H(j, i) = H(i, j);
            if (j == 0) df[static_cast<std::size_t>(i)] = val.v.d; // inner seed = direction i
        }
    }
    auto gam = christoffel_impl(induced, u);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T corr(0.0);
            for (int k = 0; k < n; ++k) corr += gam.G(k, i, j) * df[static_cast<std::size_t>(k)];
            H(i, j) = H(i, j) - corr;
        }
    return H;
}

} // namespace lorentz
