#include "lorentz/integrate.hpp"

namespace lorentz {

QuadratureRule gauss_legendre(int n) {
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

QuadratureRule axis_rule(double lo, double hi, int n, bool periodic) {
    QuadratureRule r;
    if (n < 1) fail(ErrorCode::InvalidArgument, "axis rule needs n >= 1");
    if (periodic) {
        // uniform rule; spectrally accurate for smooth periodic integrands
        double h = (hi - lo) / n;
        for (int i = 0; i < n; ++i) {
            r.nodes.push_back(lo + i * h);
            r.weights.push_back(h);
        }
    } else {
        QuadratureRule gl = gauss_legendre(n);
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (int i = 0; i < n; ++i) {
            r.nodes.push_back(mid + half * gl.nodes[static_cast<std::size_t>(i)]);
            r.weights.push_back(half * gl.weights[static_cast<std::size_t>(i)]);
        }
    }
    return r;
}

GridQuadrature tensor_grid(const std::vector<double>& lo, const std::vector<double>& hi,
                           const std::vector<int>& n, const std::vector<uint8_t>& periodic) {
    const std::size_t dim = lo.size();
    std::vector<QuadratureRule> axes(dim);
    std::size_t total = 1;
    for (std::size_t a = 0; a < dim; ++a) {
        axes[a] = axis_rule(lo[a], hi[a], n[a], periodic[a] != 0);
        total *= static_cast<std::size_t>(n[a]);
    }
    GridQuadrature q;
    q.points.reserve(total);
    q.weights.reserve(total);
    std::vector<int> idx(dim, 0);
    for (std::size_t c = 0; c < total; ++c) {
        Vec p(dim);
        double w = 1.0;
        for (std::size_t a = 0; a < dim; ++a) {
            p[a] = axes[a].nodes[static_cast<std::size_t>(idx[a])];
            w *= axes[a].weights[static_cast<std::size_t>(idx[a])];
        }
        q.points.push_back(std::move(p));
        q.weights.push_back(w);
        for (std::size_t a = dim; a-- > 0;) {
            if (++idx[a] < n[a]) break;
            idx[a] = 0;
        }
    }
    return q;
}

double integrate_checked(const std::vector<double>& lo, const std::vector<double>& hi,
                         const std::vector<int>& n, const std::vector<uint8_t>& periodic,
                         const std::function<double(const Vec&)>& f, double tol) {
    GridQuadrature fine = tensor_grid(lo, hi, n, periodic);
    std::vector<int> half(n.size());
    for (std::size_t a = 0; a < n.size(); ++a) half[a] = std::max(2, n[a] / 2);
    GridQuadrature coarse = tensor_grid(lo, hi, half, periodic);
    double If = fine.integrate([&](const Vec& p, std::size_t) { return f(p); });
    double Ic = coarse.integrate([&](const Vec& p, std::size_t) { return f(p); });
    if (std::fabs(If - Ic) > tol * std::max(1.0, std::fabs(If)))
        fail(ErrorCode::QuadratureTooCoarse,
             "half-resolution disagreement " + std::to_string(std::fabs(If - Ic)));
    return If;
}

const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::BackendOrderTooLow: return "BackendOrderTooLow";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::UnsupportedIndex: return "UnsupportedIndex";
    case ErrorCode::NonpositiveWarp: return "NonpositiveWarp";
    case ErrorCode::FiberCurvatureUnknown: return "FiberCurvatureUnknown";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::SampleSetEmpty: return "SampleSetEmpty";
    case ErrorCode::NotTimelike: return "NotTimelike";
    case ErrorCode::NotClosedConformal: return "NotClosedConformal";
    case ErrorCode::SingularV: return "SingularV";
    case ErrorCode::NotOrthogonalLeaf: return "NotOrthogonalLeaf";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::QuadratureTooCoarse: return "QuadratureTooCoarse";
    case ErrorCode::TimeOrientationClash: return "TimeOrientationClash";
    case ErrorCode::LeftChart: return "LeftChart";
    case ErrorCode::IntegratorDivergence: return "IntegratorDivergence";
    case ErrorCode::ConformalFactorVanishes: return "ConformalFactorVanishes";
    case ErrorCode::HypothesisUnverified: return "HypothesisUnverified";
    case ErrorCode::AmbientNotConstantCurvature: return "AmbientNotConstantCurvature";
    case ErrorCode::NotConstantHr1: return "NotConstantHr1";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    }
    return "UnknownError";
}

} // namespace lorentz
