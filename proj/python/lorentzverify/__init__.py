"""Python interface to the lorentz-verify engine.

The heavy lifting lives in the compiled ``_core`` module; this package adds
small conveniences (JSON decoding, dict-based scenario input).
"""

import json as _json

from ._core import (  # noqa: F401
    VerifyError,
    __version__,
    certify_canonical_field,
    list_builtins,
    metric_at,
    newton_check,
    run_builtin_suite,
    run_scenario,
    sectional_curvature,
    slice_shape_invariants,
    stability_probe,
)


def run(config):
    """Run a scenario given as a dict (or JSON string); returns the decoded report."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    result = run_scenario(config)
    report = _json.loads(result["report_json"])
    report["verdict"] = result["verdict"]
    return report


def run_suite(name):
    """Run a named built-in suite; returns the decoded report."""
    result = run_builtin_suite(name)
    report = _json.loads(result["report_json"])
    report["verdict"] = result["verdict"]
    return report


__all__ = [
    "VerifyError",
    "__version__",
    "certify_canonical_field",
    "list_builtins",
    "metric_at",
    "newton_check",
    "run",
    "run_builtin_suite",
    "run_scenario",
    "run_suite",
    "sectional_curvature",
    "slice_shape_invariants",
    "stability_probe",
]
