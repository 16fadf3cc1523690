"""Diagonal configurations, the extended diagonal, and the cross configuration."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .scalar import Scalar, as_scalar
from .sequence import alpha_iterative, endpoint_closed_form, f_trace


@dataclass(frozen=True)
class DiagonalConfig:
    """Points ``p_i * (1, ..., 1)`` with ``p_i = f_i(r)``, ``0 <= i <= n_r``.

    Only the one-dimensional values are stored; :meth:`points` materializes
    the ``d``-dimensional points.
    """

    r: Scalar
    values: tuple
    dimension: int

    @property
    def n_r(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def points(self) -> list[tuple]:
        return [(p,) * self.dimension for p in self.values]

    def as_array(self) -> np.ndarray:
        return np.repeat(np.asarray([float(p) for p in self.values])[:, None], self.dimension, axis=1)

    def cells(self) -> list[tuple[Scalar, Scalar, bool]]:
        """Cells of the extended diagonal as ``(lo, hi, lo_closed)`` per axis.

        ``C_0 = [0, p_0]^d``, ``C_i = (p_{i-1}, p_i]^d`` and
        ``C_{n_r+1} = (p_{n_r}, 1]^d``.
        """
        edges = [Fraction(0), *self.values, Fraction(1)]
        return [(edges[i], edges[i + 1], i == 0) for i in range(len(edges) - 1)]

    def cell_index(self, x: Sequence) -> Optional[int]:
        """Index of the extended-diagonal cell holding ``x``, or ``None``."""
        if len(x) != self.dimension:
            raise DomainError(f"expected a {self.dimension}-dimensional point")
        idx = None
        for c in x:
            if not (0 <= c <= 1):
                raise DomainError(f"coordinate {c} outside [0, 1]")
            # bisect_left puts c in (p_{i-1}, p_i] -> i, matching the cells.
            j = bisect_left(self.values, c)
            if idx is None:
                idx = j
            elif j != idx:
                return None
        return idx


def build_config(r, d: int = 2) -> DiagonalConfig:
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    res = alpha_iterative(r)
    return DiagonalConfig(r=res.r, values=res.trace, dimension=d)


def in_extended_diagonal(x: Sequence, r) -> Optional[int]:
    return build_config(r, len(x)).cell_index(x)


def symmetry_defect(n: int) -> Scalar:
    """Largest ``|1 - f_j(R_n) - f_{n-1-j}(R_n)|`` over ``0 <= j <= n - 1``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    vals = f_trace(endpoint_closed_form(n), n - 1)
    return max(abs(1 - vals[j] - vals[n - 1 - j]) for j in range(n))


@dataclass(frozen=True)
class CrossConfig:
    dimension: int
    points: tuple

    def __len__(self) -> int:
        return len(self.points)


def cross_config(d: int) -> CrossConfig:
    """The ``2d`` points with one coordinate in {1/4, 3/4} and the rest 1/2."""
    if d < 2:
        raise DomainError(f"cross configuration needs d >= 2, got {d}")
    half = Fraction(1, 2)
    pts = []
    for m in (Fraction(1, 4), Fraction(3, 4)):
        for i in range(d):
            p = [half] * d
            p[i] = m
            pts.append(tuple(p))
    return CrossConfig(dimension=d, points=tuple(pts))


def config_from_values(values: Sequence, d: int) -> list[tuple]:
    """Diagonal points ``e * 1`` for each ``e`` in ``values``."""
    return [(as_scalar(e),) * d for e in values]
