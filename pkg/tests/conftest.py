"""Configuration file for pytest."""

import json
import logging
import math
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

# Add the project root directory to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from frenet4.models.curve import ExprCurve  # noqa: E402
from frenet4.utils.expr import ParamEnv, parse  # noqa: E402

SPECS_DIR = project_root / "specs"

W_COMPONENTS = ["a*cos(p*t)", "a*sin(p*t)", "b*cos(q*t)", "b*sin(q*t)"]

# (a, b, p, q) of a W-curve with 0 < p < q
w_parameters = st.tuples(
    st.floats(min_value=0.5, max_value=2.0),
    st.floats(min_value=0.5, max_value=2.0),
    st.floats(min_value=0.5, max_value=1.5),
    st.floats(min_value=0.5, max_value=1.5),
).map(lambda x: (x[0], x[1], x[2], x[2] + x[3]))


def w_curve_invariants(a: float, b: float, p: float, q: float) -> dict:
    """Closed-form apparatus of (a cos pt, a sin pt, b cos qt, b sin qt), 0 < p < q."""
    v2 = a**2 * p**2 + b**2 * q**2
    m4 = a**2 * p**4 + b**2 * q**4
    return {
        "speed": math.sqrt(v2),
        "kappa": math.sqrt(m4) / v2,
        "tau": a * b * p * q * abs(q**2 - p**2) / (v2 * math.sqrt(m4)),
        "sigma": p * q / math.sqrt(m4),
        "radius": math.hypot(a, b),
    }


def make_curve(components, params=None, t_min=0.0, t_max=2 * math.pi, name="curve"):
    return ExprCurve([parse(c) for c in components], ParamEnv(params or {}), t_min, t_max, name)


def make_w_curve(a=1.0, b=1.0, p=1.0, q=2.0, t_min=0.0, t_max=2 * math.pi):
    return make_curve(W_COMPONENTS, {"a": a, "b": b, "p": p, "q": q}, t_min, t_max, "w_curve")


@pytest.fixture
def w_curve():
    """The W-curve (cos t, sin t, cos 2t, sin 2t) on [0, 2π]."""
    return make_w_curve()


@pytest.fixture
def w_spec_data():
    return {
        "components": list(W_COMPONENTS),
        "params": {"a": 1.0, "b": 1.0, "p": 1.0, "q": 2.0},
        "domain": {"t_min": 0.0, "t_max": 2 * math.pi},
        "samples": 16,
    }


@pytest.fixture
def write_spec(tmp_path):
    """Write a curve-spec dict to a temporary JSON file and return its path."""

    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def w_spec(write_spec, w_spec_data):
    return write_spec(w_spec_data, "w_curve.json")


@pytest.fixture
def runner():
    """A click test runner that keeps stderr apart from stdout."""
    from click.testing import CliRunner

    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers installed by a command so they do not outlive the captured streams."""
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
