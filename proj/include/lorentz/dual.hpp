#pragma once
#include <cmath>
#include <type_traits>
#include <vector>

namespace lorentz {

/// Forward-mode dual number. Nesting Dual<Dual<...>> yields exact mixed
/// partial derivatives up to the nesting depth.
template <class T>
struct Dual {
    T v{}; // value
    T d{}; // derivative along the seeded direction

    Dual() = default;
    Dual(const T& value) : v(value), d() {}
    Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

    template <class U, class = std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>>>
    Dual(U c) : v(static_cast<T>(c)), d() {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v = v * o.v; return *this; }
};

using D0 = double;
using D1 = Dual<D0>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

template <class T>
using VecT = std::vector<T>;

// ---- value extraction (recursive) ----
inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) { return value(x.v); }

template <class T>
VecT<double> values(const VecT<T>& x) {
    VecT<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = value(x[i]);
    return out;
}

// depth of nesting: scalar_depth<double> = 0, scalar_depth<D1> = 1, ...
template <class T>
struct scalar_depth : std::integral_constant<int, 0> {};
template <class T>
struct scalar_depth<Dual<T>> : std::integral_constant<int, scalar_depth<T>::value + 1> {};

// ---- arithmetic ----
template <class T> Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }

template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator+(const Dual<T>& a, U c) { return {a.v + T(c), a.d}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator+(U c, const Dual<T>& a) { return {T(c) + a.v, a.d}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator-(const Dual<T>& a, U c) { return {a.v - T(c), a.d}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator-(U c, const Dual<T>& a) { return {T(c) - a.v, -a.d}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator*(const Dual<T>& a, U c) { return {a.v * T(c), a.d * T(c)}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator*(U c, const Dual<T>& a) { return {T(c) * a.v, T(c) * a.d}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator/(const Dual<T>& a, U c) { return {a.v / T(c), a.d / T(c)}; }
template <class T, class U, class = std::enable_if_t<std::is_arithmetic_v<U>>>
Dual<T> operator/(U c, const Dual<T>& a) { return Dual<T>(T(c)) / a; }

// value-based comparisons (used for pivoting, clamping, branch choices)
template <class T, class U> bool operator<(const Dual<T>& a, const U& b) { return value(a) < value(Dual<T>(b)); }
template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value(a) < value(b); }
template <class T, class U> bool operator>(const Dual<T>& a, const U& b) { return value(a) > value(Dual<T>(b)); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value(a) > value(b); }

// ---- elementary functions ----
using std::cos; using std::cosh; using std::exp; using std::fabs; using std::log;
using std::pow; using std::sin; using std::sinh; using std::sqrt; using std::tan;
using std::tanh; using std::atan; using std::atan2;

template <class T> Dual<T> sqrt(const Dual<T>& a) {
    T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
template <class T> Dual<T> exp(const Dual<T>& a) {
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T> Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <class T> Dual<T> sin(const Dual<T>& a) { return {sin(a.v), a.d * cos(a.v)}; }
template <class T> Dual<T> cos(const Dual<T>& a) { return {cos(a.v), -a.d * sin(a.v)}; }
template <class T> Dual<T> tan(const Dual<T>& a) {
    T c = cos(a.v);
    return {tan(a.v), a.d / (c * c)};
}
template <class T> Dual<T> sinh(const Dual<T>& a) { return {sinh(a.v), a.d * cosh(a.v)}; }
template <class T> Dual<T> cosh(const Dual<T>& a) { return {cosh(a.v), a.d * sinh(a.v)}; }
template <class T> Dual<T> tanh(const Dual<T>& a) {
    T t = tanh(a.v);
    return {t, a.d * (1.0 - t * t)};
}
template <class T> Dual<T> atan(const Dual<T>& a) { return {atan(a.v), a.d / (1.0 + a.v * a.v)}; }
template <class T> Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
    T den = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / den};
}
template <class T> Dual<T> pow(const Dual<T>& a, double p) {
    T w = pow(a.v, p);
    return {w, a.d * (p * pow(a.v, p - 1.0))};
}
template <class T> Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
    return exp(b * log(a)); // positive base only
}
template <class T> Dual<T> fabs(const Dual<T>& a) {
    return value(a) >= 0.0 ? a : -a;
}

// ---- seeding helpers ----

/// Lift a vector one dual level with zero derivative parts.
template <class T>
VecT<Dual<T>> lift(const VecT<T>& x) {
    VecT<Dual<T>> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = Dual<T>(x[i]);
    return out;
}

/// Lift and seed coordinate direction k with unit derivative.
template <class T>
VecT<Dual<T>> seed_coord(const VecT<T>& x, int k) {
    auto out = lift(x);
    out[static_cast<std::size_t>(k)].d = T(1.0);
    return out;
}

/// Lift and seed an arbitrary direction.
template <class T>
VecT<Dual<T>> seed_dir(const VecT<T>& x, const VecT<T>& dir) {
    auto out = lift(x);
    for (std::size_t i = 0; i < x.size(); ++i) out[i].d = dir[i];
    return out;
}

template <class T>
VecT<T> val_part(const VecT<Dual<T>>& x) {
    VecT<T> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].v;
    return out;
}
template <class T>
VecT<T> der_part(const VecT<Dual<T>>& x) {
    VecT<T> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].d;
    return out;
}

} // namespace lorentz
