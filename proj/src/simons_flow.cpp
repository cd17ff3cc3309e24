#include "lorentz/simons_flow.hpp"

#include <algorithm>

namespace lorentz {

namespace {

// joint flow + parallel transport + psi line integral state:
// [x(d) | F_1..F_m (m*d) | ipsi]
template <class T>
struct TransportResult {
    VecT<T> x;
    std::vector<VecT<T>> frames;
    T ipsi;
};

template <class T>
TransportResult<T> flow_with_transport(const ChartedSpace& sp, const AmbientVectorField& V,
                                       const VecT<T>& x0, const std::vector<VecT<T>>& frames0,
                                       const T& t, int steps) {
    const int d = sp.dim;
    const int m = static_cast<int>(frames0.size());
    VecT<T> y(static_cast<std::size_t>(d * (1 + m) + 1), T(0.0));
    for (int a = 0; a < d; ++a) y[static_cast<std::size_t>(a)] = x0[static_cast<std::size_t>(a)];
    for (int f = 0; f < m; ++f)
        for (int a = 0; a < d; ++a)
            y[static_cast<std::size_t>(d * (1 + f) + a)] = frames0[static_cast<std::size_t>(f)][static_cast<std::size_t>(a)];

    auto rhs = [&](double, const VecT<T>& s) {
        VecT<T> x(s.begin(), s.begin() + d);
        VecT<T> vx = V.eval(x);
        auto gam = christoffel_impl(sp, x);
        VecT<T> out(s.size(), T(0.0));
        for (int a = 0; a < d; ++a) out[static_cast<std::size_t>(a)] = t * vx[static_cast<std::size_t>(a)];
        for (int f = 0; f < m; ++f) {
            VecT<T> Ff(s.begin() + d * (1 + f), s.begin() + d * (2 + f));
            VecT<T> corr = gam.apply(vx, Ff);
            for (int a = 0; a < d; ++a)
                out[static_cast<std::size_t>(d * (1 + f) + a)] = -t * corr[static_cast<std::size_t>(a)];
        }
        out[static_cast<std::size_t>(d * (1 + m))] = t * psi_hat_impl<T>(V, x);
        return out;
    };
    VecT<T> yf = rk4_unit(rhs, y, steps);
    TransportResult<T> res;
    res.x.assign(yf.begin(), yf.begin() + d);
    res.frames.resize(static_cast<std::size_t>(m));
    for (int f = 0; f < m; ++f)
        res.frames[static_cast<std::size_t>(f)].assign(yf.begin() + d * (1 + f), yf.begin() + d * (2 + f));
    res.ipsi = yf[static_cast<std::size_t>(d * (1 + m))];
    return res;
}

// Gram-Schmidt orthonormal tangent frame of the base at q (templated).
template <class T>
std::vector<VecT<T>> base_tangent_frame(const LeafSubmanifoldImmersion& phi, const VecT<T>& q) {
    const int n = phi.n();
    const int d = phi.ambient->dim;
    MatT<T> J(d, n);
    VecT<T> x;
    for (int i = 0; i < n; ++i) {
        auto qs = seed_coord(q, i);
        VecT<Dual<T>> xi = phi.map(qs);
        if (i == 0) {
            x.resize(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = xi[static_cast<std::size_t>(a)].v;
        }
        for (int a = 0; a < d; ++a) J(a, i) = xi[static_cast<std::size_t>(a)].d;
    }
    MatT<T> G = phi.ambient->metric_mat(x);
    std::vector<VecT<T>> e;
    for (int i = 0; i < n; ++i) {
        VecT<T> v(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) v[static_cast<std::size_t>(a)] = J(a, i);
        for (const auto& prev : e) {
            T c = metric_dot(G, v, prev);
            v = vec_sub(v, vec_scale(prev, c));
        }
        using std::sqrt; using lorentz::sqrt;
        T nn = metric_dot(G, v, v);
        e.push_back(vec_scale(v, T(1.0) / sqrt(nn)));
    }
    return e;
}

int steps_for(double tol, double horizon) { return rk4_steps_for_tolerance(tol, horizon); }

} // namespace

Vec flow_conformal_field(const AmbientVectorField& V, const Vec& p, double t,
                         double integrator_tol) {
    const ChartedSpace& sp = *V.space;
    sp.require_in_domain(p);
    int steps = steps_for(integrator_tol, t);
    auto rhs_for = [&](double tt) {
        return [&V, tt](double, const Vec& x) { return vec_scale(V.eval(x), tt); };
    };
    // chart checks at intermediate fractions of the trajectory
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        Vec y = rk4_unit(rhs_for(t * frac), p, steps);
        for (double c : y)
            if (!std::isfinite(c))
                fail(ErrorCode::IntegratorDivergence, "flow diverged along " + V.name);
        if (!sp.domain.contains(y))
            fail(ErrorCode::LeftChart, "flow left the chart of " + sp.name);
    }
    Vec direct = rk4_unit(rhs_for(t), p, steps);
    Vec half = rk4_unit(rhs_for(t), p, std::max(8, steps / 2));
    double err = 0.0;
    for (std::size_t a = 0; a < direct.size(); ++a)
        err = std::max(err, std::fabs(direct[a] - half[a]));
    if (!std::isfinite(err) || err > std::max(1e3 * integrator_tol, 1e-4))
        fail(ErrorCode::IntegratorDivergence, "step-doubling estimate " + std::to_string(err));
    return direct;
}

FlowedImmersion build_flowed_immersion(const LeafSubmanifoldImmersion& phi,
                                       const AmbientVectorField& V, double eps,
                                       const FlowOptions& opt) {
    FlowedImmersion fl;
    fl.base = phi;
    fl.V = V;
    fl.eps_requested = eps;
    fl.integrator_tol = opt.integrator_tol;

    const ChartedSpace& sp = *V.space;
    const int n = phi.n();

    // validation samples along the base
    std::vector<Vec> qs;
    for (int s = 0; s < opt.base_samples; ++s) {
        Vec q(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double frac = (s + 0.5) / opt.base_samples;
            q[static_cast<std::size_t>(i)] =
                phi.domain.lo[static_cast<std::size_t>(i)] +
                frac * (phi.domain.hi[static_cast<std::size_t>(i)] - phi.domain.lo[static_cast<std::size_t>(i)]);
        }
        qs.push_back(q);
    }

    for (const Vec& q : qs) {
        Vec x = phi.map(q);
        Mat G = sp.metric_mat(x);
        Vec vx = V.eval(x);
        double vnorm = std::sqrt(std::fabs(metric_dot(G, vx, vx)));
        if (vnorm < opt.v_floor) fail(ErrorCode::SingularV, V.name + " vanishes on the base");
        double psi = psi_hat_impl<double>(V, x);
        if (std::fabs(psi) < opt.psi_floor)
            fail(ErrorCode::ConformalFactorVanishes,
                 "conformal factor vanishes on the base of " + phi.name);
        // base must sit in a leaf of V-perp
        for (int i = 0; i < n; ++i) {
            auto qsd = seed_coord(q, i);
            VecT<D1> xd = phi.map(qsd);
            Vec tang(static_cast<std::size_t>(sp.dim));
            for (int a = 0; a < sp.dim; ++a) tang[static_cast<std::size_t>(a)] = xd[static_cast<std::size_t>(a)].d;
            if (std::fabs(metric_dot(G, tang, vx)) > 1e-8 * std::max(1.0, vnorm))
                fail(ErrorCode::NotOrthogonalLeaf, phi.name + " is not tangent to a leaf of V-perp");
        }
    }

    // clip eps so trajectories stay in-chart with a 10% margin
    double eps_ok = eps;
    for (const Vec& q : qs) {
        Vec x0 = phi.map(q);
        for (double sgn : {1.0, -1.0}) {
            double lo = 0.0, hi = eps;
            auto stays = [&](double tt) {
                int steps = steps_for(opt.integrator_tol, tt);
                for (double frac : {0.5, 1.0}) {
                    auto rhs = [&](double, const Vec& xx) {
                        return vec_scale(V.eval(xx), sgn * tt * frac);
                    };
                    Vec y = rk4_unit(rhs, x0, steps);
                    if (!sp.domain.contains(y, 0.05)) return false;
                }
                return true;
            };
            if (stays(eps)) continue;
            for (int it = 0; it < 30; ++it) {
                double m = 0.5 * (lo + hi);
                if (stays(m)) lo = m; else hi = m;
            }
            eps_ok = std::min(eps_ok, 0.9 * lo);
        }
    }
    fl.eps = eps_ok;
    fl.steps = steps_for(opt.integrator_tol, std::max(1e-3, fl.eps));

    // Lorentz signature + full rank of the strip at sampled (t, q)
    for (const Vec& q : qs) {
        for (double t : {-fl.eps * 0.9, 0.0, fl.eps * 0.9}) {
            Vec w(static_cast<std::size_t>(n + 1));
            w[0] = t;
            for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i + 1)] = q[static_cast<std::size_t>(i)];
            const int d = sp.dim;
            Mat Jm(d, n + 1);
            Vec x;
            for (int a = 0; a <= n; ++a) {
                auto ws = seed_coord(w, a);
                VecT<D1> xa = strip_point(fl, ws);
                if (a == 0) {
                    x.resize(static_cast<std::size_t>(d));
                    for (int b = 0; b < d; ++b) x[static_cast<std::size_t>(b)] = xa[static_cast<std::size_t>(b)].v;
                }
                for (int b = 0; b < d; ++b) Jm(b, a) = xa[static_cast<std::size_t>(b)].d;
            }
            Mat G = sp.metric_mat(x);
            Mat gi = matmul(transpose(Jm), matmul(G, Jm));
            auto signs = metric_signature(gi, 1e-12);
            int neg = static_cast<int>(std::count(signs.begin(), signs.end(), -1));
            if (neg != 1)
                fail(ErrorCode::SignatureMismatch, "flowed strip metric is not Lorentz");
        }
    }
    return fl;
}

template <class T>
VecT<T> mean_curvature_impl(const FlowedImmersion& fl, const VecT<T>& w) {
    const ChartedSpace& sp = *fl.V.space;
    const int d = sp.dim;
    const int m = fl.strip_dim();

    MatT<T> Jm(d, m);
    VecT<T> x;
    for (int a = 0; a < m; ++a) {
        auto ws = seed_coord(w, a);
        VecT<Dual<T>> xa = strip_point(fl, ws);
        if (a == 0) {
            x.resize(static_cast<std::size_t>(d));
            for (int b = 0; b < d; ++b) x[static_cast<std::size_t>(b)] = xa[static_cast<std::size_t>(b)].v;
        }
        for (int b = 0; b < d; ++b) Jm(b, a) = xa[static_cast<std::size_t>(b)].d;
    }
    MatT<T> G = sp.metric_mat(x);
    MatT<T> gi = matmul(transpose(Jm), matmul(G, Jm));
    MatT<T> gi_inv = inverse(gi);
    auto gam = christoffel_impl(sp, x);

    // Sab = dd_ab Phi + Gamma[J_a, J_b]; trace with gi^{-1}; project normal
    VecT<T> traceS(static_cast<std::size_t>(d), T(0.0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b <= a; ++b) {
            auto wa = seed_coord(w, a);
            auto wab = seed_coord(wa, b);
            VecT<Dual<Dual<T>>> xx = strip_point(fl, wab);
            VecT<T> sec(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) sec[static_cast<std::size_t>(c)] = xx[static_cast<std::size_t>(c)].d.d;
            VecT<T> Ja(static_cast<std::size_t>(d)), Jb(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) { Ja[static_cast<std::size_t>(c)] = Jm(c, a); Jb[static_cast<std::size_t>(c)] = Jm(c, b); }
            VecT<T> Sab = vec_add(sec, gam.apply(Ja, Jb));
            T weight = gi_inv(a, b) * ((a == b) ? 1.0 : 2.0);
            traceS = vec_add(traceS, vec_scale(Sab, weight));
        }
    // tangential projection: P(v) = Jm gi^{-1} Jm^T G v
    VecT<T> Gv = matvec(G, traceS);
    VecT<T> JtGv = matvec(transpose(Jm), Gv);
    VecT<T> coef = matvec(gi_inv, JtGv);
    VecT<T> tang = matvec(Jm, coef);
    VecT<T> normal = vec_sub(traceS, tang);
    return vec_scale(normal, T(1.0 / m));
}

template VecT<double> mean_curvature_impl<double>(const FlowedImmersion&, const VecT<double>&);
template VecT<D1> mean_curvature_impl<D1>(const FlowedImmersion&, const VecT<D1>&);

Vec mean_curvature_vector(const FlowedImmersion& fl, double t, const Vec& q) {
    if (std::fabs(t) > fl.eps)
        fail(ErrorCode::OutOfDomain, "t beyond the flowed strip half-width");
    Vec w(static_cast<std::size_t>(fl.strip_dim()));
    w[0] = t;
    for (int i = 0; i < fl.n(); ++i) w[static_cast<std::size_t>(i + 1)] = q[static_cast<std::size_t>(i)];
    return mean_curvature_impl<double>(fl, w);
}

Vec base_normal_traces(const LeafSubmanifoldImmersion& phi, const Vec& q) {
    const ChartedSpace& sp = *phi.ambient;
    const int d = sp.dim;
    const int n = phi.n();
    MatT<double> J(d, n);
    Vec x;
    for (int i = 0; i < n; ++i) {
        auto qs = seed_coord(q, i);
        VecT<D1> xi = phi.map(qs);
        if (i == 0) {
            x.resize(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = xi[static_cast<std::size_t>(a)].v;
        }
        for (int a = 0; a < d; ++a) J(a, i) = xi[static_cast<std::size_t>(a)].d;
    }
    Mat G = sp.metric_mat(x);
    Mat g = matmul(transpose(J), matmul(G, J));
    Mat ginv = inverse(g);
    auto gam = christoffel_impl(sp, x);

    Vec traces;
    for (const SmoothMap& eta : phi.leaf_normals) {
        Vec ev = eta(q);
        double tr = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto qi = seed_coord(q, i);
                auto qij = seed_coord(qi, j);
                VecT<D2> xx = phi.map(qij);
                Vec sec(static_cast<std::size_t>(d));
                for (int a = 0; a < d; ++a) sec[static_cast<std::size_t>(a)] = xx[static_cast<std::size_t>(a)].d.d;
                Vec Ji(static_cast<std::size_t>(d)), Jj(static_cast<std::size_t>(d));
                for (int a = 0; a < d; ++a) { Ji[static_cast<std::size_t>(a)] = J(a, i); Jj[static_cast<std::size_t>(a)] = J(a, j); }
                Vec Sij = vec_add(sec, gam.apply(Ji, Jj));
                tr += ginv(i, j) * metric_dot(G, Sij, ev);
            }
        traces.push_back(tr);
    }
    return traces;
}

DecayLawReport decay_law_check(const FlowedImmersion& fl, const Vec& t_grid, int q_samples,
                               std::uint64_t seed, double hypothesis_tol) {
    const ChartedSpace& sp = *fl.V.space;
    const int d = sp.dim;
    const int n = fl.n();
    const int k = fl.base.codim();
    DecayLawReport rep;

    // hypothesis: constant curvature or Ric(V) = 0 at sampled points
    auto cc = certify_constant_curvature(sp, seed, 12, hypothesis_tol * 10.0);
    if (cc) {
        rep.hypothesis = "constant-curvature";
    } else {
        SplitMix64 rng(seed);
        double worst = 0.0;
        for (int s = 0; s < 12; ++s) {
            Vec p = sample_point(sp, rng);
            auto R = curvature_at(sp, p);
            Vec rv = R.ricci_operator(fl.V.eval(p));
            worst = std::max(worst, norm2(rv));
        }
        if (worst > hypothesis_tol)
            fail(ErrorCode::HypothesisUnverified,
                 "neither constant curvature nor Ric(V)=0 (residual " + std::to_string(worst) + ")");
        rep.hypothesis = "ric-v-zero";
    }

    SplitMix64 rng(seed ^ 0x9e3779b9ULL);
    for (int s = 0; s < q_samples; ++s) {
        Vec q(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            q[static_cast<std::size_t>(i)] = rng.uniform(fl.base.domain.lo[static_cast<std::size_t>(i)],
                                                         fl.base.domain.hi[static_cast<std::size_t>(i)]);
        Vec x0 = fl.base.map(q);
        Mat G0 = sp.metric_mat(x0);
        Vec h_traces = base_normal_traces(fl.base, q);

        // initial frames: tangent ON frame + leaf normals
        auto e0 = base_tangent_frame<double>(fl.base, q);
        std::vector<Vec> frames0 = e0;
        for (const SmoothMap& eta : fl.base.leaf_normals) frames0.push_back(eta(q));

        for (double t : t_grid) {
            if (std::fabs(t) > fl.eps) continue;
            auto tr = flow_with_transport<double>(sp, fl.V, x0, frames0, t, fl.steps);
            Mat G = sp.metric_mat(tr.x);

            // transported-frame orthonormality drift
            for (std::size_t a = 0; a < tr.frames.size(); ++a)
                for (std::size_t b = 0; b <= a; ++b) {
                    double now = metric_dot(G, tr.frames[a], tr.frames[b]);
                    double then = metric_dot(G0, frames0[a], frames0[b]);
                    rep.transport_orthonormality =
                        std::max(rep.transport_orthonormality, std::fabs(now - then));
                }

            // predicted mean curvature
            double decay = std::exp(-tr.ipsi);
            Vec predicted(static_cast<std::size_t>(d), 0.0);
            for (int b = 0; b < k; ++b)
                predicted = vec_add(predicted,
                                    vec_scale(tr.frames[static_cast<std::size_t>(n + b)],
                                              decay * h_traces[static_cast<std::size_t>(b)]));
            predicted = vec_scale(predicted, 1.0 / (n + 1));

            Vec w(static_cast<std::size_t>(n + 1));
            w[0] = t;
            for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i + 1)] = q[static_cast<std::size_t>(i)];
            Vec actual = mean_curvature_impl<double>(fl, w);
            for (int a = 0; a < d; ++a)
                rep.decay_residual = std::max(
                    rep.decay_residual, std::fabs(actual[static_cast<std::size_t>(a)] - predicted[static_cast<std::size_t>(a)]));

            // supporting identities: nab_{E_i} E_i paired with V and E_k
            Vec vx = fl.V.eval(tr.x);
            double psi = psi_hat_impl<double>(fl.V, tr.x);
            auto gam = christoffel_impl(sp, tr.x);

            // E-field on the strip as a function of w (transported frame i)
            Vec sumDE_V(static_cast<std::size_t>(1), 0.0);
            for (int i = 0; i < n; ++i) {
                auto Efield = [&](const auto& ww) {
                    using TT = typename std::decay_t<decltype(ww)>::value_type;
                    VecT<TT> qq(ww.begin() + 1, ww.end());
                    VecT<TT> xx0 = fl.base.map(qq);
                    auto ee = base_tangent_frame<TT>(fl.base, qq);
                    std::vector<VecT<TT>> fr0{ee[static_cast<std::size_t>(i)]};
                    auto trt = flow_with_transport<TT>(sp, fl.V, xx0, fr0, ww[0], fl.steps);
                    return trt.frames[0];
                };
                Vec Ei = Efield(w);
                // strip-coordinate components of E_i: solve (Jm^T G Jm) c = Jm^T G E_i
                Mat Jm(d, n + 1);
                for (int a = 0; a <= n; ++a) {
                    auto ws = seed_coord(w, a);
                    VecT<D1> xa = strip_point(fl, ws);
                    for (int bb = 0; bb < d; ++bb) Jm(bb, a) = xa[static_cast<std::size_t>(bb)].d;
                }
                Mat gi = matmul(transpose(Jm), matmul(G, Jm));
                Vec rhsv(static_cast<std::size_t>(n + 1));
                for (int a = 0; a <= n; ++a) {
                    Vec Ja(static_cast<std::size_t>(d));
                    for (int bb = 0; bb < d; ++bb) Ja[static_cast<std::size_t>(bb)] = Jm(bb, a);
                    rhsv[static_cast<std::size_t>(a)] = metric_dot(G, Ja, Ei);
                }
                Vec c = solve_vec(gi, rhsv);
                // directional derivative of the E_i field along E_i
                Vec dE(static_cast<std::size_t>(d), 0.0);
                auto ws = seed_dir(w, c);
                VecT<D1> Ed = Efield(ws);
                for (int a = 0; a < d; ++a) dE[static_cast<std::size_t>(a)] = Ed[static_cast<std::size_t>(a)].d;
                Vec nabEE = vec_add(dE, gam.apply(Ei, Ei));

                rep.v_pairing_residual = std::max(
                    rep.v_pairing_residual, std::fabs(metric_dot(G, nabEE, vx) + n * psi) /
                                                static_cast<double>(n));
                for (int kk = 0; kk < n; ++kk) {
                    Vec Ek = tr.frames[static_cast<std::size_t>(kk)];
                    rep.tangent_e_residual =
                        std::max(rep.tangent_e_residual, std::fabs(metric_dot(G, nabEE, Ek)));
                }
                (void)sumDE_V;
            }

            // (nab_nu nu)^perp residual
            {
                AmbientVectorField Vc = fl.V;
                SmoothMap nufield = SmoothMap::make_capped<2>(d, d, [Vc](const auto& xx) {
                    using TT = typename std::decay_t<decltype(xx)>::value_type;
                    using std::sqrt; using lorentz::sqrt;
                    VecT<TT> vv = Vc.eval(xx);
                    MatT<TT> gg = Vc.space->metric_mat(xx);
                    TT n2 = metric_dot(gg, vv, vv);
                    return vec_scale(vv, TT(1.0) / sqrt(-n2));
                });
                double rho = std::sqrt(-metric_dot(G, vx, vx));
                Vec nu = vec_scale(vx, 1.0 / rho);
                Vec dnu = covariant_derivative_impl(sp, nufield, tr.x, nu);
                // project off the strip tangent space
                Mat Jm(d, n + 1);
                for (int a = 0; a <= n; ++a) {
                    auto ws = seed_coord(w, a);
                    VecT<D1> xa = strip_point(fl, ws);
                    for (int bb = 0; bb < d; ++bb) Jm(bb, a) = xa[static_cast<std::size_t>(bb)].d;
                }
                Mat gi = matmul(transpose(Jm), matmul(G, Jm));
                Vec rhsv = matvec(transpose(Jm), matvec(G, dnu));
                Vec coef = solve_vec(gi, rhsv);
                Vec tang = matvec(Jm, coef);
                rep.nu_geodesic_residual =
                    std::max(rep.nu_geodesic_residual, norm2(vec_sub(dnu, tang)));
            }
        }
    }
    return rep;
}

EquivalenceVerdict simons_equivalence_probe(const LeafSubmanifoldImmersion& phi,
                                            const AmbientVectorField& V, double eps,
                                            const FlowOptions& opt, double small_tol,
                                            double large_tol) {
    FlowedImmersion fl = build_flowed_immersion(phi, V, eps, opt);
    const int n = fl.n();
    EquivalenceVerdict out;

    SplitMix64 rng(17);
    for (int s = 0; s < 10; ++s) {
        Vec q(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            q[static_cast<std::size_t>(i)] = rng.uniform(phi.domain.lo[static_cast<std::size_t>(i)],
                                                         phi.domain.hi[static_cast<std::size_t>(i)]);
        Vec tr = base_normal_traces(phi, q);
        for (double h : tr) out.base_trace_sup = std::max(out.base_trace_sup, std::fabs(h));

        for (double frac : {-0.9, -0.45, 0.0, 0.45, 0.9}) {
            Vec w(static_cast<std::size_t>(n + 1));
            w[0] = frac * fl.eps;
            for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i + 1)] = q[static_cast<std::size_t>(i)];
            Vec H = mean_curvature_impl<double>(fl, w);
            Mat G = V.space->metric_mat(strip_point(fl, w));
            out.mean_curvature_sup =
                std::max(out.mean_curvature_sup, std::sqrt(std::fabs(metric_dot(G, H, H))));

            // normal covariant gradient of the Hbar field along strip directions
            const int d = V.space->dim;
            Mat Jm(d, n + 1);
            Vec x = strip_point(fl, w);
            auto gam = christoffel_impl(*V.space, x);
            for (int a = 0; a <= n; ++a) {
                auto ws = seed_coord(w, a);
                VecT<D1> xa = strip_point(fl, ws);
                for (int bb = 0; bb < d; ++bb) Jm(bb, a) = xa[static_cast<std::size_t>(bb)].d;
            }
            Mat gi = matmul(transpose(Jm), matmul(G, Jm));
            for (int a = 0; a <= n; ++a) {
                auto ws = seed_coord(w, a);
                VecT<D1> Hd = mean_curvature_impl<D1>(fl, ws);
                Vec dH(static_cast<std::size_t>(d));
                Vec Hv(static_cast<std::size_t>(d));
                for (int bb = 0; bb < d; ++bb) { dH[static_cast<std::size_t>(bb)] = Hd[static_cast<std::size_t>(bb)].d; Hv[static_cast<std::size_t>(bb)] = Hd[static_cast<std::size_t>(bb)].v; }
                Vec Ja(static_cast<std::size_t>(d));
                for (int bb = 0; bb < d; ++bb) Ja[static_cast<std::size_t>(bb)] = Jm(bb, a);
                Vec nab = vec_add(dH, gam.apply(Ja, Hv));
                Vec rhsv = matvec(transpose(Jm), matvec(G, nab));
                Vec coef = solve_vec(gi, rhsv);
                Vec tang = matvec(Jm, coef);
                Vec perp = vec_sub(nab, tang);
                out.normal_gradient_sup =
                    std::max(out.normal_gradient_sup, std::sqrt(std::fabs(metric_dot(G, perp, perp))));
            }
        }
    }
    out.all_small = out.base_trace_sup < small_tol && out.mean_curvature_sup < small_tol &&
                    out.normal_gradient_sup < small_tol;
    out.all_large = out.base_trace_sup > large_tol && out.mean_curvature_sup > large_tol &&
                    out.normal_gradient_sup > large_tol;
    out.consistent = out.all_small || out.all_large;
    return out;
}

} // namespace lorentz
