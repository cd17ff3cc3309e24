import math

import pytest

lorentzverify = pytest.importorskip("lorentzverify")


def test_catalog():
    cat = lorentzverify.list_builtins()
    models = [e["name"] for e in cat["models"]]
    assert "minkowski" in models
    assert "de-sitter-grw" in models
    assert "anti-de-sitter-grw" in models
    suites = [e["name"] for e in cat["suites"]]
    assert "simons-great-circle" in suites
    assert "desitter-slice-suite" in suites
    assert len(cat["checks"]) >= 28


def test_metric_and_curvature():
    g = lorentzverify.metric_at("minkowski", [0.1, 0.2, 0.3])
    assert g[0][0] == 1.0 and g[2][2] == -1.0
    k = lorentzverify.sectional_curvature(
        "de-sitter-grw", [0.5, 1.3, 2.2], [1, 0.2, 0.1], [0, 1, 0.4]
    )
    assert abs(k - 1.0) < 1e-8


def test_certify_canonical():
    out = lorentzverify.certify_canonical_field("anti-de-sitter-grw")
    assert out["classification"] == "closed_conformal"
    assert out["closed_residual"] < 1e-10


def test_slice_shape():
    inv = lorentzverify.slice_shape_invariants("de-sitter-grw", 1.0, [1.2, 2.0])
    t = math.tanh(1.0)
    assert abs(inv["A"][0][0] + t) < 1e-10
    assert abs(inv["H"][1] - t) < 1e-10


def test_newton_check():
    out = lorentzverify.newton_check([[1.0, 0.0], [0.0, 2.0]])
    assert out["max_residual"] < 1e-12
    assert abs(out["H"][2] - 2.0) < 1e-12


def test_stability_probe():
    rep = lorentzverify.stability_probe("de-sitter-grw", 1.0, 1)
    assert rep["classifier"] == "leaf"
    assert abs(rep["cosh_theta_max"] - 1.0) < 1e-8


def test_run_suite_and_determinism():
    rep1 = lorentzverify.run_suite("minkowski-flat-suite")
    rep2 = lorentzverify.run_suite("minkowski-flat-suite")
    assert rep1["verdict"] == "pass"
    checks1 = [(c["name"], c["status"], c["residuals"]) for c in rep1["checks"]]
    checks2 = [(c["name"], c["status"], c["residuals"]) for c in rep2["checks"]]
    assert checks1 == checks2


def test_run_dict_scenario():
    rep = lorentzverify.run(
        {
            "schema_version": 1,
            "id": "py-scenario",
            "seed": 5,
            "ambient": {"builtin": "minkowski"},
            "fields": [{"name": "P", "kind": "position"}],
            "checks": [
                {
                    "name": "position",
                    "op": "conformal-certify",
                    "field": "P",
                    "expect": "homothetic",
                    "psi_const": 1.0,
                }
            ],
        }
    )
    assert rep["verdict"] == "pass"


def test_error_surface():
    with pytest.raises(lorentzverify.VerifyError):
        lorentzverify.metric_at("no-such-model", [0, 0, 0])
