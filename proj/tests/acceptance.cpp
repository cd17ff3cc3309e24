// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each criterion.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lorentz/fixtures.hpp"
#include "lorentz/scenario.hpp"
#include "lorentz/support_identities.hpp"
#include "lorentz/variational.hpp"

using namespace lorentz;

namespace {

int g_failures = 0;

void report(int index, const std::string& label, bool ok, const std::string& info = "") {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", index, label.c_str(),
                info.empty() ? "" : " -- ", info.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) { return format_residual(v); }

// ---- 1. constant-curvature fixtures --------------------------------------
void criterion_1() {
    bool ok = true;
    std::ostringstream info;
    auto ds = make_de_sitter_grw(2);
    auto ads = make_anti_de_sitter_grw(2);
    for (auto& [model, c] : std::initializer_list<std::pair<const GRWModel*, double>>{
             {&ds, 1.0}, {&ads, -1.0}}) {
        SplitMix64 rng(42);
        double worst = 0.0;
        int accepted = 0;
        while (accepted < 100) {
            Vec p = sample_point(*model->assembled, rng);
            auto R = curvature_at(*model->assembled, p);
            Vec X(3), Y(3);
            for (int i = 0; i < 3; ++i) {
                X[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
                Y[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
            }
            double xx = metric_dot(R.g, X, X), yy = metric_dot(R.g, Y, Y),
                   xy = metric_dot(R.g, X, Y);
            if (std::fabs(xx * yy - xy * xy) < 0.05) continue;
            worst = std::max(worst, std::fabs(R.sectional(X, Y) - c));
            ++accepted;
        }
        ok = ok && worst < 1e-7;
        info << (c > 0 ? "dS " : "adS ") << fmt(worst) << " ";
        auto ode = grw_curvature_residual(*model, c);
        ok = ok && ode.res1 < 1e-10 && ode.res2 < 1e-10;
        info << "ode " << fmt(std::max(ode.res1, ode.res2)) << " ";
    }
    report(1, "constant-curvature fixtures (sectional +-1 at 1e-7, warp ODE at 1e-10)", ok,
           info.str());
}

// ---- 2. conformal certificates --------------------------------------------
void criterion_2() {
    bool ok = true;
    std::ostringstream info;

    auto l3 = make_flat(3, 1);
    auto pos = position_field(l3);
    auto cert = certify(pos, sample_points(*l3, 7, 25));
    double psi_err = 0.0;
    for (double psi : cert.psi_samples) psi_err = std::max(psi_err, std::fabs(psi - 1.0));
    ok = ok && cert.is(FieldClass::Homothetic) && psi_err < 1e-10;
    info << "position psi_err " << fmt(psi_err) << " ";

    auto dsh = make_de_sitter_hyperbolic_grw(2);
    auto Vh = dsh.canonical_field(); // (sinh t) d_t
    auto s1 = sample_points(*dsh.assembled, 7, 25);
    auto c1 = certify(Vh, s1);
    double e1 = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i)
        e1 = std::max(e1, std::fabs(c1.psi_samples[i] - std::cosh(s1[i][0])));
    ok = ok && c1.is(FieldClass::ClosedConformal) && e1 < 1e-8;
    info << "sinh-dt psi_err " << fmt(e1) << " ";

    auto ads = make_anti_de_sitter_grw(2);
    auto Va = ads.canonical_field(); // (sin t) d_t
    auto s2 = sample_points(*ads.assembled, 7, 25);
    auto c2 = certify(Va, s2);
    double e2 = 0.0;
    for (std::size_t i = 0; i < s2.size(); ++i)
        e2 = std::max(e2, std::fabs(c2.psi_samples[i] - std::cos(s2[i][0])));
    ok = ok && c2.is(FieldClass::ClosedConformal) && e2 < 1e-8;
    info << "sin-dt psi_err " << fmt(e2) << " ";

    // projected field passes the intrinsic leafwise certificate
    auto eta = constant_field(l3, {0.3, -0.2, 0.15}, "eta");
    SplitMix64 rng(3);
    std::vector<Vec> pts;
    for (int i = 0; i < 15; ++i) {
        double a = rng.uniform(-0.7, 0.7), b = rng.uniform(-0.7, 0.7);
        pts.push_back({a, b, std::sqrt(1 + a * a + b * b)});
    }
    double leaf_res = leaf_conformal_certificate(eta, pos, pts);
    ok = ok && leaf_res < 1e-7;
    info << "projection " << fmt(leaf_res);

    report(2, "conformal certificates (psi-hat matches at 1e-8/1e-10, projection at 1e-7)", ok,
           info.str());
}

// ---- 3. leaf/slice geometry ------------------------------------------------
void criterion_3() {
    bool ok = true;
    double worst = 0.0;
    auto run = [&](const GRWModel& m, std::initializer_list<double> ts) {
        for (double t0 : ts) {
            auto sd = slice_data(m, t0);
            auto sl = fixtures::grw_slice(m, t0);
            SplitMix64 rng(5);
            for (int s = 0; s < 5; ++s) {
                Vec u{rng.uniform(sl.domain.lo[0] + 0.3, sl.domain.hi[0] - 0.3),
                      rng.uniform(0.0, 2 * M_PI)};
                auto inv = shape_operator_at(sl, u);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        worst = std::max(worst, std::fabs(inv.A(a, b) -
                                                          (a == b ? sd.umbilicity_factor : 0.0)));
            }
        }
    };
    run(make_de_sitter_grw(2), {0.5, 1.0, 1.5});
    run(make_anti_de_sitter_grw(2), {0.8, M_PI / 2, 2.2});
    ok = worst < 1e-8;
    report(3, "GRW slice shape operator equals -(phi'/phi) Id at 1e-8, 3 slices per model", ok,
           "residual " + fmt(worst));
}

// ---- 4. newton suite -------------------------------------------------------
void criterion_4() {
    SplitMix64 rng(2718);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        int n = (s % 2 == 0) ? 2 : 3;
        Mat A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                A(i, j) = rng.uniform(-2.0, 2.0);
                A(j, i) = A(i, j);
            }
        auto rep = newton_identities_check(invariants_from_matrix(A));
        worst = std::max(worst, rep.max_residual());
    }
    report(4, "Newton suite on 1000 random symmetric matrices at 1e-9", worst < 1e-9,
           "max residual " + fmt(worst));
}

// ---- 5. support identity suite ----------------------------------------------
void criterion_5() {
    bool ok = true;
    std::ostringstream info;
    auto l3 = make_flat(3, 1);
    auto ds = make_de_sitter_grw(2);

    auto samples = [](const SpacelikeImmersion& imm, int n) {
        SplitMix64 rng(13);
        std::vector<Vec> out;
        for (int s = 0; s < n; ++s) {
            Vec u(static_cast<std::size_t>(imm.n()));
            for (int i = 0; i < imm.n(); ++i)
                u[static_cast<std::size_t>(i)] =
                    rng.uniform(imm.domain.lo[static_cast<std::size_t>(i)] + 0.3,
                                imm.domain.hi[static_cast<std::size_t>(i)] - 0.3);
            out.push_back(u);
        }
        return out;
    };

    {
        auto hp = fixtures::hyperplane(l3, 0.4);
        auto V = constant_field(l3, {0.0, 0.0, 1.0});
        auto rep = support_identities_check(hp, V, nullptr, samples(hp, 5));
        ok = ok && rep.max_residual() < 1e-5;
        info << "plane " << fmt(rep.max_residual()) << " ";
    }
    {
        auto hb = fixtures::hyperboloid_graph(l3);
        auto pos = position_field(l3);
        auto W = constant_field(l3, {0.1, -0.2, 1.0}, "W");
        auto rep = support_identities_check(hb, pos, &W, samples(hb, 6));
        ok = ok && rep.max_residual() < 1e-5;
        info << "hyperboloid " << fmt(rep.max_residual()) << " ";

        SupportIdentityOptions fdopt;
        fdopt.certify_tol = {1e-5, 1e-5, 1e-5, 1e-4};
        auto hbfd = fixtures::hyperboloid_graph(l3).with_fd_backend();
        auto posfd = position_field(hbfd.ambient);
        auto repfd = support_identities_check(hbfd, posfd, nullptr, samples(hbfd, 4), fdopt);
        ok = ok && repfd.max_residual() < 1e-3;
        info << "fd-oracle " << fmt(repfd.max_residual()) << " ";
    }
    {
        auto sl = fixtures::grw_slice(ds, 1.0);
        auto V = ds.canonical_field();
        auto rep = support_identities_check(sl, V, nullptr, samples(sl, 5));
        ok = ok && rep.max_residual() < 1e-5;
        info << "slice " << fmt(rep.max_residual());
    }
    report(5, "support identity suite at 1e-5 (exact) and 1e-3 (fd oracle)", ok, info.str());
}

// ---- 6. simons flow ---------------------------------------------------------
void criterion_6() {
    bool ok = true;
    std::ostringstream info;
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();

    auto great = fixtures::slice_circle(ds, 1.0, M_PI / 2);
    auto fl = build_flowed_immersion(great, V, 0.4);
    SplitMix64 rng(6);
    double supH = 0.0;
    for (int s = 0; s < 6; ++s) {
        double q = rng.uniform(0.0, 2 * M_PI);
        for (double t : {-0.4, -0.2, 0.0, 0.2, 0.4})
            supH = std::max(supH, norm2(mean_curvature_vector(fl, std::min(t, fl.eps), {q})));
    }
    ok = ok && supH < 1e-6;
    info << "great-circle supH " << fmt(supH) << " ";

    auto small = fixtures::slice_circle(ds, 1.0, M_PI / 2 - 0.5);
    auto fl2 = build_flowed_immersion(small, V, 0.4);
    auto decay = decay_law_check(fl2, {-0.4, -0.2, 0.0, 0.2, 0.4}, 4);
    ok = ok && decay.decay_residual < 1e-5;
    info << "decay " << fmt(decay.decay_residual) << " ";

    auto eq_small = simons_equivalence_probe(great, V, 0.4);
    auto eq_large = simons_equivalence_probe(small, V, 0.4);
    ok = ok && eq_small.all_small && eq_large.all_large;
    info << "equivalence " << (eq_small.all_small ? "small-ok" : "small-BAD") << "/"
         << (eq_large.all_large ? "large-ok" : "large-BAD");
    report(6, "Simons flow (sup|H| < 1e-6 maximal, decay law < 1e-5, joint verdicts)", ok,
           info.str());
}

// ---- 7. variational suite ----------------------------------------------------
void criterion_7() {
    bool ok = true;
    std::ostringstream info;
    auto ds = make_de_sitter_grw(2);
    auto sl = fixtures::grw_slice(ds, 1.0);
    auto one = SmoothScalar::make(2, [](const auto& u) {
        using T = typename std::decay_t<decltype(u)>::value_type;
        return T(1.0) + 0.0 * u[0];
    });
    auto scn = make_variation_scenario(sl, one, 0.08, {16, 32});

    auto vol = first_variation_volume(scn, {0.0});
    ok = ok && vol.residual < 1e-6;
    info << "volume " << fmt(vol.residual) << " ";

    for (int r : {0, 1}) {
        auto fv = first_variation_r_area(scn, r);
        ok = ok && fv.residual_functional < 1e-4;
        ok = ok && fv.residual_pointwise0 < 1e-4 && fv.residual_pointwise_t < 1e-4;
        info << "r" << r << "-first " << fmt(fv.residual_functional) << " pt "
             << fmt(std::max(fv.residual_pointwise0, fv.residual_pointwise_t)) << " ";
    }

    auto sv0 = second_variation(scn, 0);
    auto sv1 = second_variation(scn, 1);
    ok = ok && sv0.rel_error < 1e-3 && sv1.rel_error < 1e-3;
    info << "second " << fmt(std::max(sv0.rel_error, sv1.rel_error)) << " ";

    auto V = ds.canonical_field();
    double l56 = lr_support_identity_check(sl, V, 1, {{0.9, 1.0}, {1.6, 4.0}, {2.1, 2.5}});
    ok = ok && l56 < 1e-5;
    info << "lr-support " << fmt(l56);

    report(7,
           "variational suite (volume 1e-6, first variation 1e-4, pointwise 1e-4, "
           "second variation 1e-3, support identity 1e-5)",
           ok, info.str());
}

// ---- 8. stability probe --------------------------------------------------------
void criterion_8() {
    auto ds = make_de_sitter_grw(2);
    auto V = ds.canonical_field();
    auto sl = fixtures::grw_slice(ds, 1.0);
    auto rep = stability_probe(sl, V, 1, sphere_test_basis());
    double h1 = std::tanh(1.0), h2 = std::pow(std::tanh(1.0), 2);
    bool ok = std::fabs(rep.cosh_theta_max - 1.0) < 1e-8 &&
              std::fabs(rep.cosh_theta_min - 1.0) < 1e-8 && rep.classifier == "leaf" &&
              std::fabs(rep.h_r_value - h1) < 1e-9 && std::fabs(rep.h_r1_value - h2) < 1e-9 &&
              std::fabs(rep.hyp_margin_min - (h1 - std::sinh(1.0) * h2)) < 1e-8;
    report(8, "stability probe on {1} x S^2 (cosh theta = 1 at 1e-8, leaf, H_1 = tanh 1)", ok,
           "classifier " + rep.classifier + ", margin " + fmt(rep.hyp_margin_min));
}

// ---- 9. reproducibility ----------------------------------------------------------
void criterion_9(const std::string& cli_path) {
    json config = builtin_scenario("minkowski-flat-suite");
    Report a = run_scenario_json(config);
    Report b = run_scenario_json(config);
    std::string da = scrub_volatile(a.document).dump(2);
    std::string db = scrub_volatile(b.document).dump(2);
    bool ok = (da == db);

    std::string detail = "in-process " + std::string(ok ? "identical" : "DIFFER");
    if (!cli_path.empty()) {
        std::string cfg = "acceptance_scenario.json";
        {
            std::ofstream out(cfg);
            out << config.dump(2);
        }
        auto run_once = [&](const std::string& out_file) {
            std::string cmd = cli_path + " --format json --out " + out_file + " run " + cfg;
            return std::system(cmd.c_str());
        };
        int rc1 = run_once("acceptance_rep1.json");
        int rc2 = run_once("acceptance_rep2.json");
        auto load = [](const std::string& path) {
            std::ifstream in(path);
            json j;
            in >> j;
            return scrub_volatile(j).dump(2);
        };
        bool cli_ok = rc1 == 0 && rc2 == 0 && load("acceptance_rep1.json") == load("acceptance_rep2.json");
        ok = ok && cli_ok;
        detail += ", cli " + std::string(cli_ok ? "identical" : "DIFFER");
    }
    report(9, "byte-identical reports for identical scenario and seed", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9(cli_path);

    if (g_failures > 0) {
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
