#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lorentz/fixtures.hpp"
#include "lorentz/scenario.hpp"
#include "lorentz/variational.hpp"

namespace py = pybind11;
using namespace lorentz;

namespace {

struct ModelHandle {
    SpacePtr space;
    std::optional<GRWModel> grw;
};

ModelHandle resolve_model(const std::string& name) {
    ModelHandle h;
    if (name == "minkowski") h.space = make_flat(3, 1);
    else if (name == "minkowski4") h.space = make_flat(4, 1);
    else if (name == "r42") h.space = make_flat(4, 2);
    else if (name == "de-sitter-grw") { h.grw = make_de_sitter_grw(2); h.space = h.grw->assembled; }
    else if (name == "de-sitter-grw3") { h.grw = make_de_sitter_grw(3); h.space = h.grw->assembled; }
    else if (name == "anti-de-sitter-grw") { h.grw = make_anti_de_sitter_grw(2); h.space = h.grw->assembled; }
    else if (name == "de-sitter-hyperbolic-grw") { h.grw = make_de_sitter_hyperbolic_grw(2); h.space = h.grw->assembled; }
    else if (name == "grw-cone") { h.grw = make_grw_cone(2); h.space = h.grw->assembled; }
    else if (name == "de-sitter-hyperquadric") h.space = make_hyperquadric(HyperquadricKind::DeSitter, 2).induced;
    else if (name == "anti-de-sitter-hyperquadric") h.space = make_hyperquadric(HyperquadricKind::AntiDeSitter, 2).induced;
    else fail(ErrorCode::UnresolvedReference, "unknown model '" + name + "'");
    return h;
}

std::vector<std::vector<double>> mat_rows(const Mat& m) {
    std::vector<std::vector<double>> out;
    for (int i = 0; i < m.rows; ++i) {
        std::vector<double> row;
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        out.push_back(row);
    }
    return out;
}

Mat mat_from_rows(const std::vector<std::vector<double>>& rows) {
    int n = static_cast<int>(rows.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical verification engine for conformal vector fields and "
              "spacelike hypersurface curvature on Lorentz models";

    py::register_exception<Error>(m, "VerifyError");

    m.def("list_builtins", []() {
        Catalog cat = list_builtins();
        auto pack = [](const std::vector<CatalogEntry>& v) {
            py::list out;
            for (const auto& e : v) {
                py::dict d;
                d["name"] = e.name;
                d["description"] = e.description;
                out.append(d);
            }
            return out;
        };
        py::dict d;
        d["models"] = pack(cat.models);
        d["fields"] = pack(cat.fields);
        d["immersions"] = pack(cat.immersions);
        d["bases"] = pack(cat.bases);
        d["suites"] = pack(cat.suites);
        d["checks"] = pack(cat.checks);
        return d;
    });

    m.def("run_scenario", [](const std::string& config_json) {
        json config = json::parse(config_json);
        Report rep = run_scenario_json(config);
        py::dict out;
        out["verdict"] = rep.all_pass ? "pass" : "fail";
        out["report_json"] = emit_report(rep, "json");
        return out;
    }, py::arg("config_json"), "Run a scenario given as a JSON string.");

    m.def("run_builtin_suite", [](const std::string& name) {
        Report rep = run_scenario_json(builtin_scenario(name));
        py::dict out;
        out["verdict"] = rep.all_pass ? "pass" : "fail";
        out["report_json"] = emit_report(rep, "json");
        return out;
    }, py::arg("name"));

    m.def("metric_at", [](const std::string& model, const Vec& point) {
        auto h = resolve_model(model);
        return mat_rows(metric_at(*h.space, point));
    }, py::arg("model"), py::arg("point"));

    m.def("sectional_curvature", [](const std::string& model, const Vec& point, const Vec& X,
                                    const Vec& Y) {
        auto h = resolve_model(model);
        return curvature_at(*h.space, point).sectional(X, Y);
    }, py::arg("model"), py::arg("point"), py::arg("X"), py::arg("Y"));

    m.def("certify_canonical_field", [](const std::string& model, int samples) {
        auto h = resolve_model(model);
        if (!h.grw) fail(ErrorCode::UnresolvedReference, model + " has no canonical field");
        auto V = h.grw->canonical_field();
        auto cert = certify(V, sample_points(*h.space, 1, samples));
        py::dict out;
        out["classification"] =
            cert.classification ? field_class_name(*cert.classification) : "none";
        out["conformal_residual"] = cert.conformal_residual;
        out["closed_residual"] = cert.closed_residual;
        out["psi_samples"] = cert.psi_samples;
        return out;
    }, py::arg("model"), py::arg("samples") = 15);

    m.def("slice_shape_invariants", [](const std::string& model, double t0, const Vec& u) {
        auto h = resolve_model(model);
        if (!h.grw) fail(ErrorCode::UnresolvedReference, model + " is not a GRW model");
        auto sl = fixtures::grw_slice(*h.grw, t0);
        auto inv = shape_operator_at(sl, u);
        py::dict out;
        out["A"] = mat_rows(inv.A);
        out["eigenvalues"] = inv.eigenvalues;
        out["S"] = inv.S;
        out["H"] = inv.H;
        return out;
    }, py::arg("model"), py::arg("t0"), py::arg("u"));

    m.def("newton_check", [](const std::vector<std::vector<double>>& A) {
        auto inv = invariants_from_matrix(mat_from_rows(A));
        auto rep = newton_identities_check(inv);
        py::dict out;
        out["max_residual"] = rep.max_residual();
        out["S"] = inv.S;
        out["H"] = inv.H;
        out["eigenvalues"] = inv.eigenvalues;
        return out;
    }, py::arg("A"), "Newton-transformation identity residuals for a symmetric matrix.");

    m.def("stability_probe", [](const std::string& model, double t0, int r) {
        auto h = resolve_model(model);
        if (!h.grw) fail(ErrorCode::UnresolvedReference, model + " is not a GRW model");
        auto sl = fixtures::grw_slice(*h.grw, t0);
        auto V = h.grw->canonical_field();
        auto rep = stability_probe(sl, V, r, sphere_test_basis());
        py::dict out;
        out["classifier"] = rep.classifier;
        out["cosh_theta_max"] = rep.cosh_theta_max;
        out["h_r"] = rep.h_r_value;
        out["h_r1"] = rep.h_r1_value;
        out["hyp_margin_min"] = rep.hyp_margin_min;
        out["jpp_values"] = rep.jpp_values;
        out["strongly_r_stable"] = rep.strongly_r_stable;
        return out;
    }, py::arg("model"), py::arg("t0"), py::arg("r") = 1);

    m.attr("__version__") = "0.1.0";
}
