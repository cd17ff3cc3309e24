#include "lorentz/ambient_models.hpp"

#include <cmath>

namespace lorentz {

const char* field_class_name(FieldClass c) {
    switch (c) {
    case FieldClass::Conformal: return "conformal";
    case FieldClass::ClosedConformal: return "closed_conformal";
    case FieldClass::Homothetic: return "homothetic";
    case FieldClass::Parallel: return "parallel";
    case FieldClass::Killing: return "killing";
    }
    return "?";
}

SmoothScalar psi_hat_field(const AmbientVectorField& f) {
    AmbientVectorField cap = f;
    return SmoothScalar::make_capped<3>(f.space->dim, [cap](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        return psi_hat_impl<T>(cap, x);
    });
}

SmoothMap pullback_metric_map(const SmoothMap& chart, SpacePtr ambient) {
    const int n = chart.in_dim();
    const int d = chart.out_dim();
    SmoothMap ch = chart;
    return SmoothMap::make_capped<3>(n, n * n, [ch, ambient, n, d](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        MatT<T> J(d, n);
        VecT<T> x;
        for (int i = 0; i < n; ++i) {
            auto us = seed_coord(u, i);
            VecT<Dual<T>> xi = ch(us);
            if (i == 0) {
                x.resize(static_cast<std::size_t>(d));
                for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = xi[static_cast<std::size_t>(a)].v;
            }
            for (int a = 0; a < d; ++a) J(a, i) = xi[static_cast<std::size_t>(a)].d;
        }
        MatT<T> G = ambient->metric_mat(x);
        MatT<T> gind = matmul(transpose(J), matmul(G, J));
        return gind.a;
    });
}

SpacePtr make_flat(int dim, int index) {
    if (index != 1 && index != 2)
        fail(ErrorCode::UnsupportedIndex, "flat index must be 1 or 2, got " + std::to_string(index));
    if (dim < index + 1) fail(ErrorCode::InvalidArgument, "flat dim too small");
    auto sp = std::make_shared<ChartedSpace>();
    sp->dim = dim;
    sp->signature.assign(static_cast<std::size_t>(dim), 1);
    for (int k = 0; k < index; ++k) sp->signature[static_cast<std::size_t>(dim - 1 - k)] = -1;
    std::vector<double> diag(static_cast<std::size_t>(dim), 1.0);
    for (int k = 0; k < index; ++k) diag[static_cast<std::size_t>(dim - 1 - k)] = -1.0;
    sp->metric = SmoothMap::make(dim, dim * dim, [dim, diag](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> g(static_cast<std::size_t>(dim) * dim, T(0.0));
        for (int i = 0; i < dim; ++i) g[static_cast<std::size_t>(i) * dim + i] = T(diag[static_cast<std::size_t>(i)]);
        return g;
    });
    sp->domain = ChartBox::unbounded(dim);
    sp->sample_box = {Vec(static_cast<std::size_t>(dim), -1.5), Vec(static_cast<std::size_t>(dim), 1.5)};
    if (index == 1) {
        // future = increasing last coordinate
        sp->future_anchor = SmoothMap::make(dim, dim, [dim](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            VecT<T> a(static_cast<std::size_t>(dim), T(0.0));
            a[static_cast<std::size_t>(dim - 1)] = T(1.0);
            return a;
        });
    }
    sp->declared_curvature = 0.0;
    sp->name = (index == 1) ? ("lorentz" + std::to_string(dim)) : ("r" + std::to_string(dim) + "_2");
    return sp;
}

namespace {

// hyperspherical-type diagonal metric: diag(1, f(x0)^2, f(x0)^2 s(x1)^2, ...)
// with s = sin for spheres, sinh for hyperbolic space.
template <bool Spherical>
SpacePtr make_polar_fiber(int n, const char* base_name) {
    auto sp = std::make_shared<ChartedSpace>();
    sp->dim = n;
    sp->signature.assign(static_cast<std::size_t>(n), 1);
    sp->metric = SmoothMap::make(n, n * n, [n](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        using std::sin; using lorentz::sin;
        using std::sinh; using lorentz::sinh;
        VecT<T> g(static_cast<std::size_t>(n) * n, T(0.0));
        T acc(1.0);
        for (int i = 0; i < n; ++i) {
            g[static_cast<std::size_t>(i) * n + i] = acc * acc;
            if (i + 1 < n) {
                T s = Spherical ? sin(x[static_cast<std::size_t>(i)]) : sinh(x[static_cast<std::size_t>(i)]);
                acc = acc * s;
            }
        }
        return g;
    });
    sp->domain = ChartBox::unbounded(n);
    sp->sample_box.lo.assign(static_cast<std::size_t>(n), 0.0);
    sp->sample_box.hi.assign(static_cast<std::size_t>(n), 2.0 * M_PI);
    for (int i = 0; i + 1 < n; ++i) {
        if (Spherical) {
            sp->domain.lo[static_cast<std::size_t>(i)] = 0.0;
            sp->domain.hi[static_cast<std::size_t>(i)] = M_PI;
            sp->sample_box.lo[static_cast<std::size_t>(i)] = 0.4;
            sp->sample_box.hi[static_cast<std::size_t>(i)] = M_PI - 0.4;
        } else {
            sp->domain.lo[static_cast<std::size_t>(i)] = 0.0;
            sp->sample_box.lo[static_cast<std::size_t>(i)] = 0.3;
            sp->sample_box.hi[static_cast<std::size_t>(i)] = 1.6;
        }
    }
    // 1-dimensional fiber: flat line/circle coordinate
    if (n == 1) {
        sp->sample_box = {{0.0}, {2.0 * M_PI}};
    }
    sp->declared_curvature = (n >= 2) ? std::optional<double>(Spherical ? 1.0 : -1.0)
                                      : std::optional<double>(0.0);
    sp->name = base_name + std::to_string(n);
    return sp;
}

} // namespace

SpacePtr make_sphere_fiber(int n) { return make_polar_fiber<true>(n, "sphere"); }
SpacePtr make_hyperbolic_fiber(int n) { return make_polar_fiber<false>(n, "hyperbolic"); }

SpacePtr make_flat_fiber(int n) {
    auto sp = std::make_shared<ChartedSpace>();
    sp->dim = n;
    sp->signature.assign(static_cast<std::size_t>(n), 1);
    sp->metric = SmoothMap::make(n, n * n, [n](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> g(static_cast<std::size_t>(n) * n, T(0.0));
        for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i) * n + i] = T(1.0);
        return g;
    });
    sp->domain = ChartBox::unbounded(n);
    sp->sample_box = {Vec(static_cast<std::size_t>(n), -1.5), Vec(static_cast<std::size_t>(n), 1.5)};
    sp->declared_curvature = 0.0;
    sp->name = "flat" + std::to_string(n);
    return sp;
}

AmbientVectorField GRWModel::canonical_field() const {
    AmbientVectorField f;
    f.space = assembled;
    f.name = warp_name + "(t)*dt";
    f.declared_class = FieldClass::ClosedConformal;
    SmoothFn1 w = warp;
    const int dim = assembled->dim;
    f.eval = SmoothMap::make(dim, dim, [w, dim](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> v(static_cast<std::size_t>(dim), T(0.0));
        v[0] = w(x[0]);
        return v;
    });
    return f;
}

GRWModel make_grw(double t_lo, double t_hi, SmoothFn1 warp, const std::string& warp_name,
                  SpacePtr fiber, std::optional<double> fiber_curvature,
                  double sample_lo, double sample_hi) {
    GRWModel m;
    m.t_lo = t_lo;
    m.t_hi = t_hi;
    m.sample_lo = sample_lo;
    m.sample_hi = sample_hi;
    m.warp = warp;
    m.warp_name = warp_name;
    m.fiber = fiber;
    m.fiber_curvature = fiber_curvature;

    for (int i = 0; i <= 32; ++i) {
        double t = sample_lo + (sample_hi - sample_lo) * i / 32.0;
        if (!(warp(t) > 0.0))
            fail(ErrorCode::NonpositiveWarp,
                 warp_name + "(t) <= 0 at t = " + std::to_string(t));
    }

    auto sp = std::make_shared<ChartedSpace>();
    const int n = fiber->dim;
    sp->dim = n + 1;
    sp->signature.assign(static_cast<std::size_t>(n + 1), 1);
    sp->signature[0] = -1;
    SmoothMap fm = fiber->metric;
    sp->metric = SmoothMap::make(n + 1, (n + 1) * (n + 1), [fm, warp, n](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        const int d = n + 1;
        VecT<T> y(x.begin() + 1, x.end());
        VecT<T> gf = fm(y);
        T w = warp(x[0]);
        T w2 = w * w;
        VecT<T> g(static_cast<std::size_t>(d) * d, T(0.0));
        g[0] = T(-1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g[static_cast<std::size_t>(i + 1) * d + (j + 1)] = w2 * gf[static_cast<std::size_t>(i) * n + j];
        return g;
    });
    sp->domain.lo = Vec{t_lo};
    sp->domain.hi = Vec{t_hi};
    sp->domain.lo.insert(sp->domain.lo.end(), fiber->domain.lo.begin(), fiber->domain.lo.end());
    sp->domain.hi.insert(sp->domain.hi.end(), fiber->domain.hi.begin(), fiber->domain.hi.end());
    sp->sample_box.lo = Vec{sample_lo};
    sp->sample_box.hi = Vec{sample_hi};
    sp->sample_box.lo.insert(sp->sample_box.lo.end(), fiber->sample_box.lo.begin(), fiber->sample_box.lo.end());
    sp->sample_box.hi.insert(sp->sample_box.hi.end(), fiber->sample_box.hi.begin(), fiber->sample_box.hi.end());
    sp->future_anchor = SmoothMap::make(n + 1, n + 1, [n](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> a(static_cast<std::size_t>(n + 1), T(0.0));
        a[0] = T(1.0);
        return a;
    });
    sp->name = "-I x_" + warp_name + " " + fiber->name;
    m.assembled = sp;
    return m;
}

GRWModel make_de_sitter_grw(int n) {
    auto m = make_grw(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                      named_warp("cosh"), "cosh", make_sphere_fiber(n), 1.0, -1.3, 1.3);
    const_cast<ChartedSpace*>(m.assembled.get())->declared_curvature = 1.0;
    const_cast<ChartedSpace*>(m.assembled.get())->name = "de-sitter-grw(" + std::to_string(n) + ")";
    return m;
}

GRWModel make_anti_de_sitter_grw(int n) {
    auto m = make_grw(0.0, M_PI, named_warp("sin"), "sin", make_hyperbolic_fiber(n), -1.0, 0.4,
                      M_PI - 0.4);
    const_cast<ChartedSpace*>(m.assembled.get())->declared_curvature = -1.0;
    const_cast<ChartedSpace*>(m.assembled.get())->name = "anti-de-sitter-grw(" + std::to_string(n) + ")";
    return m;
}

GRWModel make_de_sitter_hyperbolic_grw(int n) {
    auto m = make_grw(0.0, std::numeric_limits<double>::infinity(), named_warp("sinh"), "sinh",
                      make_hyperbolic_fiber(n), -1.0, 0.4, 1.8);
    const_cast<ChartedSpace*>(m.assembled.get())->declared_curvature = 1.0;
    const_cast<ChartedSpace*>(m.assembled.get())->name =
        "de-sitter-hyperbolic-grw(" + std::to_string(n) + ")";
    return m;
}

GRWModel make_grw_cone(int n) {
    auto m = make_grw(0.0, std::numeric_limits<double>::infinity(), named_warp("identity"), "t",
                      make_flat_fiber(n), 0.0, 0.6, 2.4);
    const_cast<ChartedSpace*>(m.assembled.get())->name = "grw-cone(" + std::to_string(n) + ")";
    return m;
}

GrwCurvatureResidual grw_curvature_residual(const GRWModel& m, double c_target, int nsamples) {
    if (!m.fiber_curvature)
        fail(ErrorCode::FiberCurvatureUnknown, "fiber curvature not declared for " + m.assembled->name);
    double k = *m.fiber_curvature;
    GrwCurvatureResidual r{0.0, 0.0};
    for (int i = 0; i < nsamples; ++i) {
        double t = m.sample_lo + (m.sample_hi - m.sample_lo) * (i + 0.5) / nsamples;
        double w = m.warp(t);
        double w1 = m.warp.deriv(t, 1);
        double w2 = m.warp.deriv(t, 2);
        r.res1 = std::max(r.res1, std::fabs(w2 / w - c_target));
        r.res2 = std::max(r.res2, std::fabs((w1 * w1 + k) / (w * w) - c_target));
    }
    return r;
}

SliceData slice_data(const GRWModel& m, double t0) {
    if (!(t0 > m.t_lo && t0 < m.t_hi))
        fail(ErrorCode::OutOfInterval, "t0 = " + std::to_string(t0) + " outside I");
    double w = m.warp(t0), w1 = m.warp.deriv(t0, 1);
    return {-w1 / w, w, w1};
}

double HyperquadricModel::level_residual(std::uint64_t seed, int nsamples) const {
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < nsamples; ++s) {
        Vec u = sample_point(*induced, rng);
        Vec x = chart(u);
        Mat G = ambient_flat->metric_mat(x);
        worst = std::max(worst, std::fabs(metric_dot(G, x, x) - static_cast<double>(level)));
    }
    return worst;
}

HyperquadricModel make_hyperquadric(HyperquadricKind kind, int n) {
    if (n < 2) fail(ErrorCode::InvalidArgument, "hyperquadric needs n >= 2");
    HyperquadricModel m;
    m.kind = kind;
    m.n = n;
    const int d = n + 1;
    if (kind == HyperquadricKind::DeSitter) {
        // S_1^n in L^{n+1}: sum x_i^2 - x_{n+1}^2 = 1; graph for x_1 over
        // params (x_2..x_n, x_{n+1}).
        m.ambient_flat = make_flat(d, 1);
        m.level = 1;
        m.chart = SmoothMap::make(n, d, [n, d](const auto& u) {
            using T = typename std::decay_t<decltype(u)>::value_type;
            using std::sqrt; using lorentz::sqrt;
            VecT<T> x(static_cast<std::size_t>(d), T(0.0));
            T q(1.0);
            for (int i = 0; i + 1 < n; ++i) q = q - u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            q = q + u[static_cast<std::size_t>(n - 1)] * u[static_cast<std::size_t>(n - 1)];
            x[0] = sqrt(q);
            for (int i = 0; i + 1 < n; ++i) x[static_cast<std::size_t>(i + 1)] = u[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(d - 1)] = u[static_cast<std::size_t>(n - 1)];
            return x;
        });
    } else {
        // H_1^n in R^{n+1}_2: sum_{i<=n-1} x_i^2 - x_n^2 - x_{n+1}^2 = -1;
        // graph for x_{n+1} over params (x_1..x_n).
        m.ambient_flat = make_flat(d, 2);
        m.level = -1;
        m.chart = SmoothMap::make(n, d, [n, d](const auto& u) {
            using T = typename std::decay_t<decltype(u)>::value_type;
            using std::sqrt; using lorentz::sqrt;
            VecT<T> x(static_cast<std::size_t>(d), T(0.0));
            T q(1.0);
            for (int i = 0; i + 1 < n; ++i) q = q + u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
            q = q - u[static_cast<std::size_t>(n - 1)] * u[static_cast<std::size_t>(n - 1)];
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(d - 1)] = sqrt(q);
            return x;
        });
    }
    auto ind = std::make_shared<ChartedSpace>();
    ind->dim = n;
    ind->signature.assign(static_cast<std::size_t>(n), 1);
    if (kind == HyperquadricKind::DeSitter)
        ind->signature[static_cast<std::size_t>(n - 1)] = -1; // x_{n+1} direction is timelike
    else
        ind->signature[static_cast<std::size_t>(n - 1)] = -1; // x_n direction is timelike
    ind->metric = pullback_metric_map(m.chart, m.ambient_flat);
    ind->max_order = 3;
    // stay clear of the branch locus of the graph chart
    ind->domain = {Vec(static_cast<std::size_t>(n), -0.55), Vec(static_cast<std::size_t>(n), 0.55)};
    ind->sample_box = {Vec(static_cast<std::size_t>(n), -0.45), Vec(static_cast<std::size_t>(n), 0.45)};
    ind->declared_curvature = (kind == HyperquadricKind::DeSitter) ? 1.0 : -1.0;
    ind->name = (kind == HyperquadricKind::DeSitter ? "S_1^" : "H_1^") + std::to_string(n);
    m.induced = ind;
    return m;
}

AmbientVectorField position_field(SpacePtr flat) {
    AmbientVectorField f;
    f.space = flat;
    f.name = "position";
    f.declared_class = FieldClass::Homothetic;
    f.eval = SmoothMap::make(flat->dim, flat->dim, [](const auto& x) { return x; });
    return f;
}

AmbientVectorField constant_field(SpacePtr space, Vec components, const std::string& name) {
    if (static_cast<int>(components.size()) != space->dim)
        fail(ErrorCode::InvalidArgument, "constant field component count");
    AmbientVectorField f;
    f.space = space;
    f.name = name;
    f.declared_class = FieldClass::Parallel;
    const int dim = space->dim;
    f.eval = SmoothMap::make(dim, dim, [components, dim](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> v(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = T(components[static_cast<std::size_t>(i)]);
        return v;
    });
    return f;
}

AmbientVectorField warp_dt_field(const GRWModel& m, SmoothFn1 profile, const std::string& name) {
    AmbientVectorField f;
    f.space = m.assembled;
    f.name = name;
    const int dim = m.assembled->dim;
    f.eval = SmoothMap::make(dim, dim, [profile, dim](const auto& x) {
        using T = typename std::decay_t<decltype(x)>::value_type;
        VecT<T> v(static_cast<std::size_t>(dim), T(0.0));
        v[0] = profile(x[0]);
        return v;
    });
    return f;
}

SmoothFn1 named_warp(const std::string& name) {
    if (name == "cosh")
        return SmoothFn1::make([](const auto& t) { using std::cosh; using lorentz::cosh; return cosh(t); });
    if (name == "sinh")
        return SmoothFn1::make([](const auto& t) { using std::sinh; using lorentz::sinh; return sinh(t); });
    if (name == "sin")
        return SmoothFn1::make([](const auto& t) { using std::sin; using lorentz::sin; return sin(t); });
    if (name == "cos")
        return SmoothFn1::make([](const auto& t) { using std::cos; using lorentz::cos; return cos(t); });
    if (name == "exp")
        return SmoothFn1::make([](const auto& t) { using std::exp; using lorentz::exp; return exp(t); });
    if (name == "identity" || name == "t")
        return SmoothFn1::make([](const auto& t) { return t; });
    if (name == "one")
        return SmoothFn1::make([](const auto& t) { return t * 0.0 + 1.0; });
    fail(ErrorCode::UnresolvedReference, "unknown warp function '" + name + "'");
}

} // namespace lorentz
