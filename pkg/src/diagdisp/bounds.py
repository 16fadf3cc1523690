"""Upper bounds on N(r, d) and verification suites for the sharp estimates."""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .boxes import Box
from .configuration import build_config, cross_config
from .errors import DomainError
from .oracle import dispersion, dispersion_many, maximal_empty_boxes
from .scalar import DEFAULT_TOL, Scalar, as_scalar, is_exact, json_scalar
from .sequence import QUARTER, alpha_iterative, endpoint_closed_form

SNAP_TOL = 1e-9


def _open_large_volume(r) -> Scalar:
    r = as_scalar(r)
    if not (QUARTER < r < Fraction(1, 2)):
        raise DomainError(f"r must lie in (1/4, 1/2), got {r}")
    return r


def bound_thm1(r) -> int:
    """``floor(pi / sqrt(r - 1/4)) - 3``."""
    r = _open_large_volume(r)
    return math.floor(math.pi / math.sqrt(float(r - QUARTER))) - 3


def bound_sosnovec(r) -> int:
    """Earlier dimension-free bound ``floor(1 / (r - 1/4)) + 1``."""
    r = as_scalar(r)
    if not (QUARTER < r < 1):
        raise DomainError(f"r must lie in (1/4, 1), got {r}")
    if is_exact(r):
        return math.floor(1 / (r - QUARTER)) + 1
    return math.floor(1.0 / (r - 0.25)) + 1


def _alpha_quotient(r) -> float:
    q = math.pi / math.acos(1.0 / (2.0 * math.sqrt(float(r))))
    nearest = round(q)
    return float(nearest) if abs(q - nearest) <= SNAP_TOL else q


def alpha_closed(r, variant: str = "ceiling") -> int:
    """Closed forms of alpha: ``floor`` or ``ceil`` of ``pi / arccos(1/(2 sqrt r))``, minus 3.

    ``paper_floor`` agrees with the iterative count only at the endpoints
    ``R_k`` and is one short inside each step; ``ceiling`` agrees everywhere.
    """
    r = as_scalar(r)
    if not (QUARTER < r <= Fraction(1, 2)):
        raise DomainError(f"r must lie in (1/4, 1/2], got {r}")
    q = _alpha_quotient(r)
    if variant == "paper_floor":
        return math.floor(q) - 3
    if variant == "ceiling":
        return math.ceil(q) - 3
    raise ValueError(f"unknown variant {variant!r}")


def alpha_closed_grid(rs, variant: str = "ceiling") -> np.ndarray:
    rs = np.asarray(rs, dtype=np.float64)
    q = np.pi / np.arccos(1.0 / (2.0 * np.sqrt(rs)))
    nearest = np.round(q)
    q = np.where(np.abs(q - nearest) <= SNAP_TOL, nearest, q)
    rounded = np.floor(q) if variant == "paper_floor" else np.ceil(q)
    return rounded.astype(np.int64) - 3


def alpha_grid(rs, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Vectorized :func:`alpha_iterative` for float volumes."""
    rs = np.asarray(rs, dtype=np.float64)
    if rs.size and not (np.all(rs > 0.25) and np.all(rs <= 0.5)):
        raise DomainError("all r must lie in (1/4, 1/2]")
    return _kernels.alpha_grid(rs, tol)


@dataclass(frozen=True)
class BoundsReport:
    r: Scalar
    alpha_iter: int
    alpha_ceiling: int
    alpha_paper_floor: int
    thm1: Optional[int]
    sosnovec: int

    def to_json(self) -> dict:
        out = asdict(self)
        out["r"] = json_scalar(self.r)
        return out


def bounds_report(r) -> BoundsReport:
    r = as_scalar(r)
    alpha = alpha_iterative(r).alpha
    return BoundsReport(
        r=r,
        alpha_iter=alpha,
        alpha_ceiling=alpha_closed(r, "ceiling"),
        alpha_paper_floor=alpha_closed(r, "paper_floor"),
        thm1=bound_thm1(r) if r < Fraction(1, 2) else None,
        sosnovec=bound_sosnovec(r),
    )


# ---------------------------------------------------------------------------
# verification suites


@dataclass
class UniquenessReport:
    n: int
    r_n: Scalar
    trials: int
    magnitude: float
    min_dispersion: Optional[Scalar] = None
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r_n": json_scalar(self.r_n),
            "trials": self.trials,
            "magnitude": self.magnitude,
            "min_dispersion": None if self.min_dispersion is None else json_scalar(self.min_dispersion),
            "violations": self.violations,
        }


def _perturb_in_cell(point, lo, hi, lo_closed, magnitude, rng, exact, steps=10**6):
    # Redraw until the point stays in its cell (lo, hi]^d and actually moves.
    while True:
        ks = rng.integers(-steps, steps + 1, size=len(point))
        if not ks.any():
            continue
        if exact:
            q = tuple(c + Fraction(int(k), steps) * magnitude for c, k in zip(point, ks))
        else:
            q = tuple(float(c) + float(k) / steps * magnitude for c, k in zip(point, ks))
        if all((lo <= c if lo_closed else lo < c) and c <= hi for c in q):
            return q


def verify_uniqueness(n: int, trials: int = 100, magnitude=0.01, seed: int = 0) -> UniquenessReport:
    """Perturb the optimal ``n``-point configuration at ``R_n`` inside its cells (d = 2).

    Every perturbation should raise the oracle dispersion above ``R_n``.
    """
    if not (1 <= n <= 4):
        raise DomainError("uniqueness check is limited to n <= 4")
    r_n = endpoint_closed_form(n)
    cfg = build_config(r_n, 2)
    exact = is_exact(r_n)
    mag = Fraction(magnitude).limit_denominator(10**6) if exact else float(magnitude)
    cells = cfg.cells()
    base = cfg.points()
    rng = np.random.default_rng(seed)
    report = UniquenessReport(n=n, r_n=r_n, trials=trials, magnitude=float(magnitude))
    for t in range(trials):
        moved = rng.random(len(base)) < 0.5
        if not moved.any():
            moved[rng.integers(len(base))] = True
        pts = []
        for i, p in enumerate(base):
            if moved[i]:
                lo, hi, closed = cells[i]
                p = _perturb_in_cell(p, lo, hi, closed, mag, rng, exact)
            pts.append(p)
        value = dispersion(pts).value
        if report.min_dispersion is None or value < report.min_dispersion:
            report.min_dispersion = value
        if not value > r_n:
            report.violations.append(
                {"trial": t, "points": [[json_scalar(c) for c in p] for p in pts], "dispersion": json_scalar(value)}
            )
    return report


# The boxes listed for the planar cross, by their closures.
_H, _Q, _T = Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)
_0, _1 = Fraction(0), Fraction(1)
CROSS_BOXES_2D = tuple(
    Box(ivs)
    for ivs in [
        ((_0, _H), (_0, _H)),
        ((_0, _H), (_H, _1)),
        ((_H, _1), (_0, _H)),
        ((_H, _1), (_H, _1)),
        ((_Q, _T), (_Q, _T)),
        ((_0, _Q), (_0, _1)),
        ((_T, _1), (_0, _1)),
        ((_0, _1), (_T, _1)),
        ((_0, _1), (_0, _Q)),
        ((_Q, _H), (_0, _1)),
        ((_0, _1), (_Q, _H)),
        ((_H, _T), (_0, _1)),
        ((_0, _1), (_H, _T)),
    ]
)


@dataclass
class CrossReport:
    d: int
    dispersion: Scalar
    witness: Box
    maximal_boxes: int = 0
    uncontained: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.dispersion == Fraction(1, 4) and not self.uncontained

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "dispersion": json_scalar(self.dispersion),
            "witness": self.witness.to_json(),
            "maximal_boxes": self.maximal_boxes,
            "uncontained": self.uncontained,
        }


def verify_cross(d: int) -> CrossReport:
    """Oracle dispersion of the ``2d``-point cross; for d = 2 also box containment.

    Raises :class:`BudgetExceeded` from the oracle when ``d`` is too large.
    """
    pts = cross_config(d).points
    res = dispersion(pts)
    report = CrossReport(d=d, dispersion=res.value, witness=res.witness)
    if d == 2:
        boxes = maximal_empty_boxes(pts)
        report.maximal_boxes = len(boxes)
        report.uncontained = [b.to_json() for b in boxes if not any(b.closure_within(c) for c in CROSS_BOXES_2D)]
    return report


@dataclass
class SinglePointReport:
    d: int
    grid: int
    min_dispersion: Scalar
    argmin: tuple

    @property
    def ok(self) -> bool:
        return self.min_dispersion >= Fraction(1, 2)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "grid": self.grid,
            "min_dispersion": json_scalar(self.min_dispersion),
            "argmin": [json_scalar(c) for c in self.argmin],
        }


def verify_single_point_floor(d: int, grid: int) -> SinglePointReport:
    """Minimum oracle dispersion of one point over the lattice ``{j / (grid - 1)}^d``."""
    if d not in (1, 2, 3):
        raise DomainError("single-point check supports d in {1, 2, 3}")
    if grid < 2:
        raise DomainError("grid must have at least 2 points per axis")
    axis = [Fraction(j, grid - 1) for j in range(grid)]
    best, arg = None, None
    for p in itertools.product(axis, repeat=d):
        v = dispersion([p]).value
        if best is None or v < best:
            best, arg = v, p
    return SinglePointReport(d=d, grid=grid, min_dispersion=best, argmin=arg)


@dataclass
class DiagonalSharpnessReport:
    r: Scalar
    size: int
    grid: int
    sets_checked: int
    min_dispersion: Optional[float]
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = asdict(self)
        out["r"] = json_scalar(self.r)
        return out


def verify_diagonal_sharpness(r, grid: int = 50, d: int = 2, chunk: int = 50_000) -> DiagonalSharpnessReport:
    """Every diagonal set of ``n_r`` values from ``{j / (grid + 1)}`` has dispersion > r."""
    r = as_scalar(r)
    size = alpha_iterative(r).n_r
    values = np.arange(1, grid + 1) / (grid + 1)
    combos = itertools.combinations(range(grid), size)
    checked, violations, lowest = 0, 0, None
    while True:
        block = list(itertools.islice(combos, chunk))
        if not block:
            break
        idx = np.asarray(block, dtype=np.int64).reshape(len(block), size)
        xs = np.repeat(values[idx][:, :, None], d, axis=2)
        disp = dispersion_many(xs)
        checked += len(block)
        violations += int(np.count_nonzero(~(disp > float(r))))
        m = float(disp.min())
        lowest = m if lowest is None else min(lowest, m)
    return DiagonalSharpnessReport(r=r, size=size, grid=grid, sets_checked=checked, min_dispersion=lowest, violations=violations)
