"""Bounds, search and verification for perfect powers F_n + F_m = y^a."""

from fractions import Fraction
import json

from . import _zeckpow
from ._zeckpow import (
    census_check,
    enumerate,
    enumerate_exhaustive,
    fib,
    finish,
    hamming_weight,
    lucas,
    perfect_power,
    run_cli,
    step_constant,
    verify,
    zeckendorf,
)

__all__ = [
    "basic_forms",
    "case2_closed_form",
    "census_check",
    "enumerate",
    "enumerate_exhaustive",
    "fib",
    "finish",
    "hamming_weight",
    "linear_forms",
    "lucas",
    "perfect_power",
    "run_cli",
    "step_a",
    "step_b",
    "step_constant",
    "verify",
    "walk_case2",
    "zeckendorf",
]


def _bound(pair):
    c, x = pair
    return Fraction(c), x


def _arg(pair):
    c, x = pair
    return (str(Fraction(c)), int(x))


def default_step_constant():
    return Fraction(_zeckpow.default_step_constant())


def step_a(ell, r, c=None):
    """A-column step: returns (C * ell * r.c, r.x + 1) as (Fraction, int)."""
    return _bound(_zeckpow.step_a(ell, _arg(r), None if c is None else str(Fraction(c))))


def step_b(ell, s, t, c=None):
    """B-column step: returns (C * ell * s.c * t.c, s.x + t.x + 1)."""
    return _bound(_zeckpow.step_b(ell, _arg(s), _arg(t), None if c is None else str(Fraction(c))))


def walk_case2(k, l0):
    final, steps = _zeckpow.walk_case2(k, l0)
    return _bound(final), [(step, name, _bound(value)) for step, name, value in steps]


def case2_closed_form(k, l0):
    return _bound(_zeckpow.case2_closed_form(k, l0))


def linear_forms(y=None, indices=None, a=None, n=None, m=None, precision=128):
    """Evaluate every linear form of one instance; returns a list of dicts."""
    inst = {}
    if y is not None:
        inst["y"] = str(y)
    if indices is not None:
        inst["indices"] = list(indices)
    for key, value in (("a", a), ("n", n), ("m", m)):
        if value is not None:
            inst[key] = value
    return _zeckpow.linear_forms(json.dumps(inst), precision)


def basic_forms(y, a=None, n=None, m=None, precision=128):
    """The unreduced forms A1..Ak (and B1, B2 with the power side)."""
    return [f for f in linear_forms(y=y, a=a, n=n, m=m, precision=precision) if "*" not in f["tag"]]
