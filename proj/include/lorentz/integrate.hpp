#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "lorentz/dual.hpp"
#include "lorentz/error.hpp"
#include "lorentz/linalg.hpp"

namespace lorentz {

// ---------------------------------------------------------------------------
// Fixed-step classical RK4, templated over the state scalar so that dual
// numbers propagate exactly through the integration (derivatives of the flow
// map with respect to initial data and endpoint come out of the same solve).
// ---------------------------------------------------------------------------

/// Integrate y' = rhs(s, y) from s = 0 to s = 1 in `steps` equal steps.
/// Endpoint scaling is the caller's job (fold the duration into rhs).
template <class T, class RHS>
VecT<T> rk4_unit(const RHS& rhs, VecT<T> y, int steps) {
    const double h = 1.0 / steps;
    VecT<T> k1, k2, k3, k4, tmp(y.size());
    for (int n = 0; n < steps; ++n) {
        double s = n * h;
        k1 = rhs(s, y);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + (0.5 * h) * k1[i];
        k2 = rhs(s + 0.5 * h, tmp);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + (0.5 * h) * k2[i];
        k3 = rhs(s + 0.5 * h, tmp);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * k3[i];
        k4 = rhs(s + h, tmp);
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
}

/// Step count for a requested tolerance: RK4 global error ~ h^4, so
/// n ~ tol^(-1/4) makes the error scale linearly with tol.
inline int rk4_steps_for_tolerance(double tol, double horizon = 1.0) {
    tol = std::max(tol, 1e-14);
    double n = 4.0 * std::max(1.0, std::fabs(horizon)) / std::pow(tol, 0.25);
    return std::clamp(static_cast<int>(std::ceil(n)), 16, 4096);
}

// ---------------------------------------------------------------------------
// Quadrature: Gauss-Legendre on open intervals, uniform (trapezoid) weights
// on periodic axes, tensor products, Richardson coarseness estimate.
// ---------------------------------------------------------------------------

struct QuadratureRule {
    Vec nodes;
    Vec weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
QuadratureRule gauss_legendre(int n);

/// Rule for one axis of a parameter box.
QuadratureRule axis_rule(double lo, double hi, int n, bool periodic);

struct GridQuadrature {
    std::vector<Vec> points;  // flattened tensor grid, one parameter point each
    Vec weights;              // matching weights

    std::size_t size() const { return points.size(); }

    double integrate(const std::function<double(const Vec&, std::size_t)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i], i);
        return s;
    }
};

GridQuadrature tensor_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                           const std::vector<int>& n, const std::vector<uint8_t>& periodic);

/// Integrate with an automatic half-resolution cross check. Throws
/// QuadratureTooCoarse when the two estimates disagree beyond tol.
double integrate_checked(const std::vector<double>& lo, const std::vector<double>& hi,
                         const std::vector<int>& n, const std::vector<uint8_t>& periodic,
                         const std::function<double(const Vec&)>& f, double tol);

} // namespace lorentz
