"""Exact dispersion of small point sets.

The dispersion of ``T`` is the supremum of the volumes of half-open boxes
missing ``T``. It is attained (up to boundary) by a maximal empty open box,
whose faces sit on point coordinates or on the cube boundary, so enumerating
those candidates is exact. Rational inputs are handled with fractions; float
inputs go to the kernels in :mod:`diagdisp._kernels`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .boxes import Box
from .errors import BudgetExceeded, ConvergenceError, DimensionMismatch, DomainError
from .scalar import Scalar, as_scalar, is_exact, json_scalar

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "DIAGDISP_BUDGET"


def budget_limit() -> float:
    raw = os.environ.get(BUDGET_ENV)
    return float(raw) if raw else DEFAULT_BUDGET


def candidate_estimate(n: int, d: int) -> int:
    return d * (n + 2) ** (2 * d)


@dataclass(frozen=True)
class PointSet:
    dimension: int
    points: tuple

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be >= 1")
        pts = []
        for p in self.points:
            if len(p) != self.dimension:
                raise DimensionMismatch(f"point {p} is not {self.dimension}-dimensional")
            q = tuple(as_scalar(c) for c in p)
            if not all(0 <= c <= 1 for c in q):
                raise DomainError(f"point {p} outside the unit cube")
            pts.append(q)
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, points, d: Optional[int] = None) -> "PointSet":
        if isinstance(points, PointSet):
            if d is not None and d != points.dimension:
                raise DimensionMismatch("dimension mismatch")
            return points
        if isinstance(points, np.ndarray):
            if points.ndim != 2:
                raise DimensionMismatch("point arrays must be 2-D")
            d = points.shape[1] if d is None else d
            return cls(d, tuple(tuple(float(c) for c in row) for row in points))
        points = [tuple(p) for p in points]
        if d is None:
            if not points:
                raise DimensionMismatch("dimension required for an empty point set")
            d = len(points[0])
        return cls(d, tuple(points))

    @property
    def exact(self) -> bool:
        return all(is_exact(*p) for p in self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DispersionResult:
    value: Scalar
    witness: Box

    def to_json(self) -> dict:
        return {"value": json_scalar(self.value), "witness": self.witness.to_json()}


def _key(lo, hi):
    return tuple(lo) + tuple(hi)


def _search_exact(points: Sequence[tuple], d: int):
    """Same enumeration as the float kernels, over fractions."""
    best = [Fraction(-1), None]
    lo = [None] * d
    hi = [None] * d

    def descend(axis, alive, prefix):
        vals = sorted({Fraction(0), Fraction(1), *(p[axis] for p in alive)})
        if axis == d - 1:
            for u, v in zip(vals, vals[1:]):
                vol = prefix * (v - u)
                if vol < best[0]:
                    continue
                lo[axis], hi[axis] = u, v
                key = _key(lo, hi)
                if vol > best[0] or key < best[1]:
                    best[0], best[1] = vol, key
            return
        for ia, a in enumerate(vals[:-1]):
            above = [p for p in alive if p[axis] > a]
            for b in vals[ia + 1:]:
                vol = prefix * (b - a)
                if vol < best[0]:
                    continue
                lo[axis], hi[axis] = a, b
                descend(axis + 1, [p for p in above if p[axis] < b], vol)

    descend(0, list(points), Fraction(1))
    key = best[1]
    return best[0], key[:d], key[d:]


def dispersion(points, d: Optional[int] = None, *, budget: Optional[float] = None) -> DispersionResult:
    """Largest volume of an axis-parallel box missing ``points``.

    Exact (fractions) when every coordinate is rational, float64 otherwise.
    The witness is reported as ``[lower, upper)``; its open interior is empty.
    """
    ps = PointSet.of(points, d)
    n, d = len(ps), ps.dimension
    limit = budget_limit() if budget is None else budget
    estimate = candidate_estimate(n, d)
    if estimate > limit:
        raise BudgetExceeded(estimate, limit)
    if n == 0:
        return DispersionResult(Fraction(1), Box.unit(d))
    if ps.exact:
        value, lo, hi = _search_exact(ps.points, d)
    else:
        arr = np.array([[float(c) for c in p] for p in ps.points], dtype=np.float64)
        value, lo, hi = _kernels.search(arr)
        value, lo, hi = float(value), [float(v) for v in lo], [float(v) for v in hi]
    return DispersionResult(value, Box(tuple(zip(lo, hi))))


def dispersion_many(point_sets: np.ndarray, *, budget: Optional[float] = None) -> np.ndarray:
    """Float dispersion for a stack of equally sized sets, shape (B, n, d).

    The budget applies per set.
    """
    xs = np.asarray(point_sets, dtype=np.float64)
    if xs.ndim != 3:
        raise DimensionMismatch("expected an array of shape (B, n, d)")
    limit = budget_limit() if budget is None else budget
    estimate = candidate_estimate(xs.shape[1], xs.shape[2])
    if estimate > limit:
        raise BudgetExceeded(estimate, limit)
    if xs.shape[1] == 0:
        return np.ones(xs.shape[0])
    return _kernels.search_batch(xs)


def is_maximal_empty(box_lo, box_hi, points: Sequence[tuple]) -> bool:
    """Whether the open box ``(lo, hi)`` is empty and cannot grow on any face."""
    d = len(box_lo)

    def inside_except(p, axis=None):
        return all(box_lo[j] < p[j] < box_hi[j] for j in range(d) if j != axis)

    if any(inside_except(p) for p in points):
        return False
    for axis in range(d):
        if box_lo[axis] != 0 and not any(
            p[axis] == box_lo[axis] and inside_except(p, axis) for p in points
        ):
            return False
        if box_hi[axis] != 1 and not any(
            p[axis] == box_hi[axis] and inside_except(p, axis) for p in points
        ):
            return False
    return True


def maximal_empty_boxes(points, d: Optional[int] = None, *, budget: Optional[float] = None) -> list[Box]:
    """Every maximal empty open box, reported as ``[lower, upper)``.

    Brute force over all candidate faces; meant for a handful of points.
    """
    ps = PointSet.of(points, d)
    n, d = len(ps), ps.dimension
    limit = budget_limit() if budget is None else budget
    estimate = candidate_estimate(n, d)
    if estimate > limit:
        raise BudgetExceeded(estimate, limit)
    pts = ps.points
    per_axis = []
    for axis in range(d):
        vals = sorted({Fraction(0), Fraction(1), *(as_scalar(p[axis]) for p in pts)})
        per_axis.append([(a, b) for i, a in enumerate(vals) for b in vals[i + 1:]])
    out = []
    for combo in itertools.product(*per_axis):
        lo = [a for a, _ in combo]
        hi = [b for _, b in combo]
        if is_maximal_empty(lo, hi, pts):
            out.append(Box(tuple(combo)))
    return out


def diagonal_dispersion(values: Sequence, d: int = 2) -> Scalar:
    """Closed form ``max_i e_{i+1} (1 - e_i)`` for the diagonal set ``{e_i * 1}``.

    ``e_0 = 0`` and ``e_{m+1} = 1`` pad the sorted values.
    """
    if d < 2:
        raise DomainError("diagonal closed form needs d >= 2")
    es = [as_scalar(e) for e in values]
    if any(not (0 < e < 1) for e in es):
        raise DomainError("diagonal values must lie in (0, 1)")
    if any(b <= a for a, b in zip(es, es[1:])):
        raise DomainError("diagonal values must be strictly increasing")
    padded = [Fraction(0), *es, Fraction(1)]
    return max(b * (1 - a) for a, b in zip(padded, padded[1:]))


def equal_product_chain(c, m: int) -> Optional[list]:
    """``e_1 = c``, ``e_{i+1} = c / (1 - e_i)``; ``None`` if the chain hits 1 early."""
    chain = [c]
    while len(chain) < m:
        if chain[-1] >= 1:
            return None
        chain.append(c / (1 - chain[-1]))
    return chain


def min_diagonal_dispersion(m: int, tol: float = 1e-10) -> float:
    """Smallest dispersion reachable by ``m`` diagonal points (``d >= 2``).

    Bisects on the common product ``c``: the chain with every product equal to
    ``c`` closes (``e_m >= 1 - c``) exactly when ``m`` points suffice for ``c``.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    if not tol > 0:
        raise DomainError("tol must be positive")

    def closes(c):
        chain = equal_product_chain(c, m)
        return chain is None or chain[-1] >= 1 - c

    lo, hi = 0.25, 0.5
    if not closes(hi) or closes(lo):
        raise ConvergenceError("equal-product bracket is invalid")
    for _ in range(200):
        if hi - lo <= tol:
            return hi
        mid = 0.5 * (lo + hi)
        if closes(mid):
            hi = mid
        else:
            lo = mid
    raise ConvergenceError("equal-product bisection did not converge")
