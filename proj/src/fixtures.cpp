#include "lorentz/fixtures.hpp"

namespace lorentz {
namespace fixtures {

SpacelikeImmersion hyperplane(SpacePtr flat, double height, double halfwidth) {
    const int n = flat->dim - 1;
    SpacelikeImmersion im;
    im.domain = {Vec(static_cast<std::size_t>(n), -halfwidth),
                 Vec(static_cast<std::size_t>(n), halfwidth),
                 std::vector<uint8_t>(static_cast<std::size_t>(n), 0)};
    im.ambient = flat;
    im.name = "hyperplane";
    im.map = SmoothMap::make(n, n + 1, [n, height](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(static_cast<std::size_t>(n + 1));
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
        x[static_cast<std::size_t>(n)] = T(height);
        return x;
    });
    return im;
}

SpacelikeImmersion hyperboloid_graph(SpacePtr l3, double halfwidth) {
    return perturbed_hyperboloid(l3, halfwidth, 0.0);
}

SpacelikeImmersion perturbed_hyperboloid(SpacePtr l3, double halfwidth, double amplitude) {
    SpacelikeImmersion im;
    im.domain = {{-halfwidth, -halfwidth}, {halfwidth, halfwidth}, {0, 0}};
    im.ambient = l3;
    im.name = amplitude == 0.0 ? "hyperboloid-graph" : "perturbed-hyperboloid";
    im.map = SmoothMap::make(2, 3, [amplitude](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        using std::sqrt; using std::exp; using lorentz::sqrt; using lorentz::exp;
        VecT<T> x(3);
        T r2 = u[0] * u[0] + u[1] * u[1];
        x[0] = u[0];
        x[1] = u[1];
        x[2] = sqrt(1.0 + r2) + amplitude * exp(-2.0 * r2);
        return x;
    });
    return im;
}

SpacelikeImmersion flat_torus_patch(SpacePtr l3, double height) {
    SpacelikeImmersion im;
    im.domain = {{0.0, 0.0}, {2.0 * M_PI, 2.0 * M_PI}, {1, 1}};
    im.ambient = l3;
    im.name = "flat-torus-patch";
    im.map = SmoothMap::make(2, 3, [height](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(3);
        x[0] = u[0];
        x[1] = u[1];
        x[2] = T(height);
        return x;
    });
    return im;
}

SpacelikeImmersion grw_slice(const GRWModel& m, double t0) {
    if (!(t0 > m.t_lo && t0 < m.t_hi))
        fail(ErrorCode::OutOfInterval, "slice t0 outside the interval");
    const int n = m.fiber->dim;
    SpacelikeImmersion im;
    im.domain.lo = m.fiber->domain.lo;
    im.domain.hi = m.fiber->domain.hi;
    im.domain.periodic.assign(static_cast<std::size_t>(n), 0);
    // last polar angle is periodic; clamp open axes to the fiber sample box
    im.domain.periodic[static_cast<std::size_t>(n - 1)] = 1;
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(im.domain.lo[static_cast<std::size_t>(i)]))
            im.domain.lo[static_cast<std::size_t>(i)] = m.fiber->sample_box.lo[static_cast<std::size_t>(i)];
        if (!std::isfinite(im.domain.hi[static_cast<std::size_t>(i)]))
            im.domain.hi[static_cast<std::size_t>(i)] = m.fiber->sample_box.hi[static_cast<std::size_t>(i)];
    }
    im.domain.lo[static_cast<std::size_t>(n - 1)] = 0.0;
    im.domain.hi[static_cast<std::size_t>(n - 1)] = 2.0 * M_PI;
    im.ambient = m.assembled;
    im.name = "slice@" + std::to_string(t0);
    im.map = SmoothMap::make(n, n + 1, [n, t0](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(static_cast<std::size_t>(n + 1));
        x[0] = T(t0);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i + 1)] = u[static_cast<std::size_t>(i)];
        return x;
    });
    return im;
}

SpacelikeImmersion grw_graph(const GRWModel& m, double t0, double amp) {
    SpacelikeImmersion im = grw_slice(m, t0);
    im.name = "grw-graph@" + std::to_string(t0);
    const int n = m.fiber->dim;
    im.map = SmoothMap::make(n, n + 1, [n, t0, amp](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        using std::sin; using lorentz::sin;
        VecT<T> x(static_cast<std::size_t>(n + 1));
        x[0] = t0 + amp * sin(u[0]) * sin(u[static_cast<std::size_t>(n - 1)]);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i + 1)] = u[static_cast<std::size_t>(i)];
        return x;
    });
    return im;
}

LeafSubmanifoldImmersion slice_circle(const GRWModel& m, double t0, double theta0) {
    LeafSubmanifoldImmersion b;
    b.domain = {{0.0}, {2.0 * M_PI}, {1}};
    b.ambient = m.assembled;
    b.name = (std::fabs(theta0 - M_PI / 2) < 1e-12 ? "great-circle@" : "small-circle@") +
             std::to_string(t0);
    b.map = SmoothMap::make(1, 3, [t0, theta0](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(3);
        x[0] = T(t0);
        x[1] = T(theta0);
        x[2] = u[0];
        return x;
    });
    const double w = m.warp(t0);
    b.leaf_normals.push_back(SmoothMap::make(1, 3, [w](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        (void)u;
        VecT<T> e(3, T(0.0));
        e[1] = T(1.0 / w);
        return e;
    }));
    return b;
}

LeafSubmanifoldImmersion slice_geodesic_h2(const GRWModel& m, double t0, double r_lo,
                                           double r_hi) {
    // radial ray in polar coordinates (r, phi) of H^2 at fixed phi; a geodesic
    // of the hyperbolic fiber. In-leaf unit normal: d_phi / (w sinh r).
    LeafSubmanifoldImmersion b;
    b.domain = {{r_lo}, {r_hi}, {0}};
    b.ambient = m.assembled;
    b.name = "h2-geodesic@" + std::to_string(t0);
    const double phi0 = 1.0;
    b.map = SmoothMap::make(1, 3, [t0, phi0](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(3);
        x[0] = T(t0);
        x[1] = u[0];
        x[2] = T(phi0);
        return x;
    });
    const double w = m.warp(t0);
    b.leaf_normals.push_back(SmoothMap::make(1, 3, [w](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        using std::sinh; using lorentz::sinh;
        VecT<T> e(3, T(0.0));
        e[2] = T(1.0) / (w * sinh(u[0]));
        return e;
    }));
    return b;
}

LeafSubmanifoldImmersion cone_line(const GRWModel& m, double t0, double halfwidth) {
    LeafSubmanifoldImmersion b;
    b.domain = {{-halfwidth}, {halfwidth}, {0}};
    b.ambient = m.assembled;
    b.name = "cone-line@" + std::to_string(t0);
    b.map = SmoothMap::make(1, 3, [t0](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> x(3);
        x[0] = T(t0);
        x[1] = u[0];
        x[2] = T(0.0);
        return x;
    });
    const double w = m.warp(t0);
    b.leaf_normals.push_back(SmoothMap::make(1, 3, [w](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        VecT<T> e(3, T(0.0));
        e[2] = T(1.0 / w);
        return e;
    }));
    return b;
}

} // namespace fixtures
} // namespace lorentz
