#pragma once
#include <functional>
#include <memory>
#include <utility>

#include "lorentz/dual.hpp"
#include "lorentz/error.hpp"

namespace lorentz {

/// Differentiation backend: exact nested forward-mode duals, or central
/// finite differences of the order-0 evaluation (cross-check oracle).
enum class DiffBackend { ExactForward, CentralFd };

struct FdConfig {
    // step per dual level, innermost first
    std::vector<double> steps{1e-4, 1e-4, 2e-3, 5e-3};
    double step(int level) const {
        if (level < static_cast<int>(steps.size())) return steps[static_cast<std::size_t>(level)];
        return steps.back();
    }
};

/// Type-erased smooth map R^m -> R^k, evaluable at nested dual inputs up to
/// depth 4. Construct from any functor templated on the scalar type.
class SmoothMap {
public:
    SmoothMap() = default;

    template <class F>
    static SmoothMap make(int in_dim, int out_dim, F f) {
        SmoothMap m;
        m.in_ = in_dim;
        m.out_ = out_dim;
        m.f0_ = [f](const VecT<D0>& x) { return f(x); };
        m.f1_ = [f](const VecT<D1>& x) { return f(x); };
        m.f2_ = [f](const VecT<D2>& x) { return f(x); };
        m.f3_ = [f](const VecT<D3>& x) { return f(x); };
        m.f4_ = [f](const VecT<D4>& x) { return f(x); };
        return m;
    }

    /// A map whose body itself consumes derivative depth (it differentiates a
    /// metric or integrates an ODE internally) cannot be compiled at every
    /// dual level. Cap it: levels above MaxDepth throw BackendOrderTooLow.
    template <int MaxDepth, class F>
    static SmoothMap make_capped(int in_dim, int out_dim, F f) {
        static_assert(MaxDepth >= 0 && MaxDepth <= 4);
        SmoothMap m;
        m.in_ = in_dim;
        m.out_ = out_dim;
        m.f0_ = [f](const VecT<D0>& x) { return f(x); };
        if constexpr (MaxDepth >= 1) m.f1_ = [f](const VecT<D1>& x) { return f(x); };
        else m.f1_ = [](const VecT<D1>&) -> VecT<D1> { fail(ErrorCode::BackendOrderTooLow, "capped map"); };
        if constexpr (MaxDepth >= 2) m.f2_ = [f](const VecT<D2>& x) { return f(x); };
        else m.f2_ = [](const VecT<D2>&) -> VecT<D2> { fail(ErrorCode::BackendOrderTooLow, "capped map"); };
        if constexpr (MaxDepth >= 3) m.f3_ = [f](const VecT<D3>& x) { return f(x); };
        else m.f3_ = [](const VecT<D3>&) -> VecT<D3> { fail(ErrorCode::BackendOrderTooLow, "capped map"); };
        if constexpr (MaxDepth >= 4) m.f4_ = [f](const VecT<D4>& x) { return f(x); };
        else m.f4_ = [](const VecT<D4>&) -> VecT<D4> { fail(ErrorCode::BackendOrderTooLow, "capped map"); };
        return m;
    }

    int in_dim() const { return in_; }
    int out_dim() const { return out_; }
    bool valid() const { return static_cast<bool>(f0_); }

    template <class T>
    VecT<T> operator()(const VecT<T>& x) const {
        if constexpr (std::is_same_v<T, D0>) return f0_(x);
        else if constexpr (std::is_same_v<T, D1>) return f1_(x);
        else if constexpr (std::is_same_v<T, D2>) return f2_(x);
        else if constexpr (std::is_same_v<T, D3>) return f3_(x);
        else if constexpr (std::is_same_v<T, D4>) return f4_(x);
        else static_assert(sizeof(T) == 0, "dual depth not supported");
    }

    /// A map whose derivative levels are directional central differences of
    /// the order-0 evaluation. Used as the finite-difference oracle backend.
    SmoothMap with_fd_derivatives(FdConfig cfg = {}) const {
        SmoothMap m;
        m.in_ = in_;
        m.out_ = out_;
        auto base = f0_;
        m.f0_ = base;
        m.f1_ = [base, cfg](const VecT<D1>& x) { return fd_eval<D0>(base, cfg, x); };
        m.f2_ = [base, cfg](const VecT<D2>& x) { return fd_eval<D1>(base, cfg, x); };
        m.f3_ = [base, cfg](const VecT<D3>& x) { return fd_eval<D2>(base, cfg, x); };
        m.f4_ = [base, cfg](const VecT<D4>& x) { return fd_eval<D3>(base, cfg, x); };
        return m;
    }

private:
    template <class S>
    static VecT<Dual<S>> fd_eval(const std::function<VecT<D0>(const VecT<D0>&)>& base,
                                 const FdConfig& cfg, const VecT<Dual<S>>& x) {
        const double h = cfg.step(scalar_depth<S>::value);
        VecT<S> a = val_part(x), b = der_part(x);
        VecT<S> xp = vec_add(a, vec_scale(b, S(h)));
        VecT<S> xm = vec_sub(a, vec_scale(b, S(h)));
        VecT<S> fa, fp, fm;
        if constexpr (std::is_same_v<S, D0>) {
            fa = base(a); fp = base(xp); fm = base(xm);
        } else {
            fa = fd_eval<typename inner<S>::type>(base, cfg, a);
            fp = fd_eval<typename inner<S>::type>(base, cfg, xp);
            fm = fd_eval<typename inner<S>::type>(base, cfg, xm);
        }
        VecT<Dual<S>> out(fa.size());
        for (std::size_t i = 0; i < fa.size(); ++i)
            out[i] = Dual<S>(fa[i], (fp[i] - fm[i]) / (2.0 * h));
        return out;
    }

    template <class S> struct inner { using type = void; };
    template <class S> struct inner<Dual<S>> { using type = S; };

    int in_ = 0, out_ = 0;
    std::function<VecT<D0>(const VecT<D0>&)> f0_;
    std::function<VecT<D1>(const VecT<D1>&)> f1_;
    std::function<VecT<D2>(const VecT<D2>&)> f2_;
    std::function<VecT<D3>(const VecT<D3>&)> f3_;
    std::function<VecT<D4>(const VecT<D4>&)> f4_;
};

/// Scalar-valued convenience wrapper (R^m -> R).
class SmoothScalar {
public:
    SmoothScalar() = default;

    template <class F>
    static SmoothScalar make(int in_dim, F f) {
        SmoothScalar s;
        s.map_ = SmoothMap::make(in_dim, 1, [f](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            return VecT<T>{f(x)};
        });
        return s;
    }

    template <int MaxDepth, class F>
    static SmoothScalar make_capped(int in_dim, F f) {
        SmoothScalar s;
        s.map_ = SmoothMap::make_capped<MaxDepth>(in_dim, 1, [f](const auto& x) {
            using T = typename std::decay_t<decltype(x)>::value_type;
            return VecT<T>{f(x)};
        });
        return s;
    }

    int in_dim() const { return map_.in_dim(); }
    bool valid() const { return map_.valid(); }
    const SmoothMap& map() const { return map_; }

    template <class T>
    T operator()(const VecT<T>& x) const { return map_(x)[0]; }

private:
    SmoothMap map_;
};

/// One-variable smooth function (warp functions and the like).
class SmoothFn1 {
public:
    SmoothFn1() = default;

    template <class F>
    static SmoothFn1 make(F f) {
        SmoothFn1 g;
        g.s_ = SmoothScalar::make(1, [f](const auto& x) { return f(x[0]); });
        return g;
    }

    template <class T>
    T operator()(const T& t) const { return s_(VecT<T>{t}); }

    /// k-th derivative at a double point, via nested duals (k <= 3).
    double deriv(double t, int k) const;

    bool valid() const { return s_.valid(); }

private:
    SmoothScalar s_;
};

inline double SmoothFn1::deriv(double t, int k) const {
    switch (k) {
    case 0: return (*this)(t);
    case 1: return (*this)(D1{t, 1.0}).d;
    case 2: return (*this)(D2{D1{t, 1.0}, D1{1.0, 0.0}}).d.d;
    case 3: {
        D3 x{D2{D1{t, 1.0}, D1{1.0, 0.0}}, D2{D1{1.0, 0.0}, D1{0.0, 0.0}}};
        return (*this)(x).d.d.d;
    }
    default:
        fail(ErrorCode::BackendOrderTooLow, "derivative order beyond 3");
    }
}

} // namespace lorentz
