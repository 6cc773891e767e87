"""Clifford algebras, spinor ideals and spacetime frame checks."""

import json

from ._spinor_forge import (
    SCHEMA_VERSION,
    ConfigError,
    DomainError,
    ParseError,
    __version__,
    builtin_spacetimes,
    eval_expression,
    geometric_product,
    print_expression,
    quaternion_orientation_sign,
    rep,
    sta_element,
)
from . import _spinor_forge as _core


def selftest(seed=1, inject_fault=False):
    """Run the algebra property suites. Returns (document, exit_code)."""
    text, code = _core.selftest_json(seed, inject_fault)
    return json.loads(text), code


def report(spacetime="minkowski", tetrad="default", mass=1.0, points=64, seed=1,
           tol_alg=1e-9, tol_geo=1e-5, config=""):
    """Identity checks and frame classification. Returns (document, exit_code)."""
    text, code = _core.report_json(spacetime, tetrad, mass, points, seed, tol_alg, tol_geo, config)
    return json.loads(text), code


def report_text(**kwargs):
    """The exact JSON bytes the command-line tool writes."""
    defaults = dict(spacetime="minkowski", tetrad="default", mass=1.0, points=64, seed=1,
                    tol_alg=1e-9, tol_geo=1e-5, config="")
    defaults.update(kwargs)
    return _core.report_json(**defaults)[0]
