"""Dual-mode numbers.

A scalar is either an exact :class:`fractions.Fraction` or a Python ``float``.
Integers are promoted to fractions. Arithmetic between two fractions stays
exact, so the rational recursions in this package keep their mode for free.
Float comparisons go through :func:`geq` / :func:`close` with an absolute
tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[Fraction, float]

#: Tolerance used for approx-mode comparisons unless a caller overrides it.
DEFAULT_TOL = 1e-12


def as_scalar(x) -> Scalar:
    """Coerce ``x`` to a scalar; ints and rationals become fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite scalar {x!r}")
    return x


def is_exact(*xs) -> bool:
    return all(isinstance(x, (Fraction, int)) and not isinstance(x, bool) for x in xs)


def geq(a: Scalar, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """``a >= b``; in approx mode ``a`` may fall short of ``b`` by ``tol``."""
    if is_exact(a, b):
        return a >= b
    return a >= b - tol


def close(a: Scalar, b: Scalar, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(a, b):
        return a == b
    return abs(a - b) <= tol


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"`` (or a bare integer) exactly; anything else as a float."""
    s = text.strip()
    if not s:
        raise ValueError("empty number")
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            value = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {text!r}") from exc
        return value
    try:
        return Fraction(int(s))
    except ValueError:
        pass
    value = float(s)
    if not math.isfinite(value):
        raise ValueError(f"non-finite number {text!r}")
    return value


def format_scalar(x: Scalar) -> str:
    """Exact values as ``p/q`` (or ``p``), floats as shortest round-trip repr."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def json_scalar(x: Scalar):
    """JSON-ready value: strings for exact fractions, numbers for floats."""
    if isinstance(x, Fraction):
        return format_scalar(x)
    return float(x)
