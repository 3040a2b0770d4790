"""Exact-arithmetic harness: heights over the rationals, position tests,
staircase filtrations and inequality campaigns.

Rationals come back as fractions.Fraction; forms are strings such as
"x0^2 - 3*x1*x2" in variables x0..xn.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import _core
from ._core import ConfigError, ConsistencyError, DomainError, PositionError

__all__ = [
    "ConfigError",
    "ConsistencyError",
    "DomainError",
    "PositionError",
    "check_position",
    "choose_L",
    "filtration_stats",
    "first_main_identity",
    "form_height",
    "lemma33_count",
    "nondegeneracy_probe",
    "only_trivial_zero",
    "point_height",
    "product_formula_check",
    "quotient_dim_rank",
    "reduce_to_general",
    "run_campaign",
    "sylvester_resultant",
]


def _q(x) -> str:
    return str(Fraction(x)) if not isinstance(x, str) else x


def _config_text(config) -> str:
    """A path, a dict, or JSON text."""
    if isinstance(config, dict):
        return json.dumps(config)
    if isinstance(config, Path) or not str(config).lstrip().startswith("{"):
        return Path(config).read_text()
    return str(config)


def product_formula_check(q) -> Fraction:
    return Fraction(_core.product_formula_check(_q(q)))


def first_main_identity(form: str, n: int, point: Sequence) -> Fraction:
    return Fraction(_core.first_main_identity(form, n, [_q(c) for c in point]))


def point_height(point: Sequence) -> Fraction:
    """H(x) as an exact number; h(x) = log of it."""
    return Fraction(_core.point_height([_q(c) for c in point]))


def form_height(form: str, n: int) -> Fraction:
    return Fraction(_core.form_height(form, n))


def lemma33_count(n: int, d: int, M: int) -> int:
    return int(_core.lemma33_count(n, d, M))


def quotient_dim_rank(forms: Sequence[str], n: int, L: int) -> int:
    return _core.quotient_dim_rank(list(forms), n, L)


def filtration_stats(n: int, d: int, L: int) -> dict:
    return {k: int(v) for k, v in _core.filtration_stats(n, d, L).items()}


def choose_L(n: int, d: int, N: int, epsilon, epsilon_prime=1) -> tuple[int, Fraction, Fraction]:
    L, ratio, bound = _core.choose_L(n, d, N, _q(epsilon), _q(epsilon_prime))
    return L, Fraction(ratio), Fraction(bound)


def only_trivial_zero(forms: Sequence[str], n: int) -> bool:
    return _core.only_trivial_zero(list(forms), n)


def sylvester_resultant(f: str, g: str) -> Fraction:
    return Fraction(_core.sylvester_resultant(f, g))


def reduce_to_general(forms: Sequence[str], n: int, N: int) -> tuple[list[list[Fraction]], list[str]]:
    coeffs, P = _core.reduce_to_general(list(forms), n, N)
    return [[Fraction(c) for c in row] for row in coeffs], P


def run_campaign(config, format: str = "csv", hyperplane_mode: bool = False) -> tuple[str, dict]:
    """Rows as CSV or JSON text, and the summary as a dict."""
    rows, summary = _core.run_campaign(_config_text(config), format, hyperplane_mode)
    return rows, json.loads(summary)


def check_position(config) -> dict:
    return _core.check_position(_config_text(config))


def nondegeneracy_probe(config, degree: int = 0) -> dict:
    return _core.nondegeneracy_probe(_config_text(config), degree)
