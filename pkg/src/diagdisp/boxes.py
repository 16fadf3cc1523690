"""Half-open axis-parallel boxes and their Type 1 / Type 2 classification.

A box is a product of intervals ``[a_i, b_i)`` inside the unit cube. Relative
to a diagonal configuration with values ``p_0 < ... < p_n``:

* Type 1: some side's closure lies in ``[0, r]``, in a gap
  ``[p_k, p_{k+1}]``, or in ``[p_n, 1]``;
* Type 2: one side's closure lies in ``[p_k, 1]`` and another's in
  ``[0, p_{k+1}]`` for some ``k < n``.

Either type has volume at most ``r``, and every box missing the
configuration is one of the two.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .configuration import DiagonalConfig, build_config
from .errors import DimensionMismatch, DomainError, PreconditionError
from .scalar import Scalar, as_scalar, format_scalar, json_scalar, parse_scalar


@dataclass(frozen=True)
class Box:
    intervals: tuple

    def __post_init__(self):
        ivs = tuple((as_scalar(a), as_scalar(b)) for a, b in self.intervals)
        if not ivs:
            raise DomainError("a box needs at least one axis")
        for a, b in ivs:
            if not (0 <= a < b <= 1):
                raise DomainError(f"invalid interval [{a}, {b})")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def unit(cls, d: int) -> "Box":
        return cls(((Fraction(0), Fraction(1)),) * d)

    @property
    def dimension(self) -> int:
        return len(self.intervals)

    @property
    def lower(self) -> tuple:
        return tuple(a for a, _ in self.intervals)

    @property
    def upper(self) -> tuple:
        return tuple(b for _, b in self.intervals)

    def volume(self) -> Scalar:
        return math.prod((b - a for a, b in self.intervals), start=Fraction(1))

    def contains(self, p: Sequence) -> bool:
        if len(p) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(p)} vs box of dimension {self.dimension}")
        return all(a <= x < b for (a, b), x in zip(self.intervals, p))

    def contains_in_interior(self, p: Sequence) -> bool:
        if len(p) != self.dimension:
            raise DimensionMismatch(f"point of dimension {len(p)} vs box of dimension {self.dimension}")
        return all(a < x < b for (a, b), x in zip(self.intervals, p))

    def closure_within(self, other: "Box") -> bool:
        """Whether ``[a, b]`` of this box lies in the closure of ``other``."""
        return all(c <= a and b <= e for (a, b), (c, e) in zip(self.intervals, other.intervals))

    def to_json(self) -> list:
        return [[json_scalar(a), json_scalar(b)] for a, b in self.intervals]

    @classmethod
    def from_json(cls, data) -> "Box":
        def scalar(v):
            return parse_scalar(v) if isinstance(v, str) else as_scalar(v)

        return cls(tuple((scalar(a), scalar(b)) for a, b in data))

    def __str__(self) -> str:
        return " x ".join(f"[{format_scalar(a)}, {format_scalar(b)})" for a, b in self.intervals)


def volume(box: Box) -> Scalar:
    return box.volume()


def avoids(box: Box, points) -> bool:
    """True iff no point lies in the half-open box."""
    return not any(box.contains(p) for p in points)


class BoxKind(enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    NEITHER = "Neither"


@dataclass(frozen=True)
class BoxClassification:
    """Classification plus certificate.

    For Type 1, ``axis`` and the covering interval ``cover``. For Type 2,
    ``axis`` (the side in ``[p_k, 1]``), ``partner`` (the side in
    ``[0, p_{k+1}]``) and ``k``. Axes are 0-based.
    """

    kind: BoxKind
    axis: Optional[int] = None
    partner: Optional[int] = None
    k: Optional[int] = None
    cover: Optional[tuple] = None


NEITHER = BoxClassification(BoxKind.NEITHER)


@lru_cache(maxsize=256)
def _values_for(r) -> tuple:
    return build_config(r, 1).values


def _type1_covers(values: Sequence) -> list[tuple]:
    covers = [(Fraction(0), values[0])]
    covers += [(values[k], values[k + 1]) for k in range(len(values) - 1)]
    covers.append((values[-1], Fraction(1)))
    return covers


def _type1(box: Box, values: Sequence) -> Optional[BoxClassification]:
    covers = _type1_covers(values)
    for axis, (a, b) in enumerate(box.intervals):
        for lo, hi in covers:
            if lo <= a and b <= hi:
                return BoxClassification(BoxKind.TYPE1, axis=axis, cover=(lo, hi))
    return None


def _type2(box: Box, values: Sequence) -> Optional[BoxClassification]:
    for k in range(len(values) - 1):
        lo, hi = values[k], values[k + 1]
        for j, (a, _) in enumerate(box.intervals):
            if a < lo:
                continue
            for l, (_, b) in enumerate(box.intervals):
                if b <= hi:
                    return BoxClassification(BoxKind.TYPE2, axis=j, partner=l, k=k)
    return None


def classify(box: Box, r) -> BoxClassification:
    """Direct containment scan; Type 1 wins when both certificates exist."""
    values = r.values if isinstance(r, DiagonalConfig) else _values_for(as_scalar(r))
    return _type1(box, values) or _type2(box, values) or NEITHER


def check_certificate(box: Box, cls: BoxClassification, values: Sequence) -> bool:
    """Re-verify a certificate against the Type definitions."""
    n = len(values) - 1
    if cls.kind is BoxKind.TYPE1:
        lo, hi = cls.cover
        if (lo, hi) not in _type1_covers(values):
            return False
        a, b = box.intervals[cls.axis]
        return lo <= a and b <= hi
    if cls.kind is BoxKind.TYPE2:
        if not (0 <= cls.k < n):
            return False
        a = box.intervals[cls.axis][0]
        b = box.intervals[cls.partner][1]
        return values[cls.k] <= a and b <= values[cls.k + 1]
    return False


def _gap_cover(a, b, values: Sequence) -> tuple:
    # [a, b) holds no value; pick the gap of the partition whose closure holds [a, b].
    for lo, hi in _type1_covers(values):
        if lo <= a and b <= hi:
            return lo, hi
    raise AssertionError("interval without configuration values must fit a gap")


def classify_empty_box(box: Box, cfg: DiagonalConfig) -> BoxClassification:
    """Classify a box that misses the configuration by walking its sides.

    Start from a side that is not all of ``[0, 1)``. If it holds no
    configuration value it fits a gap (Type 1). Otherwise let ``p_m`` be the
    smallest value it holds, so the side lies above ``p_{m-1}``. The point
    ``p_m * 1`` is missed, so some other side excludes ``p_m``: either it ends
    at or below ``p_m`` (Type 2 with ``k = m - 1``, or Type 1 inside
    ``[0, r]`` when ``m = 0``) or it starts above ``p_m``, in which case the
    walk continues from that side with a strictly larger ``m``.
    """
    values = cfg.values
    if box.dimension != cfg.dimension:
        raise DimensionMismatch("box and configuration dimensions differ")
    if not avoids(box, cfg.points()):
        raise PreconditionError("box intersects the configuration")
    ivs = box.intervals
    current = next((i for i, (a, b) in enumerate(ivs) if not (a == 0 and b == 1)), None)
    if current is None:
        raise PreconditionError("the unit cube cannot miss a non-empty configuration")
    for _ in range(len(values) + 1):
        a, b = ivs[current]
        held = [i for i, p in enumerate(values) if a <= p < b]
        if not held:
            result = BoxClassification(BoxKind.TYPE1, axis=current, cover=_gap_cover(a, b, values))
            break
        m = held[0]
        pm = values[m]
        below = next((j for j, (_, bj) in enumerate(ivs) if bj <= pm), None)
        if below is not None:
            if m == 0:
                result = BoxClassification(BoxKind.TYPE1, axis=below, cover=(Fraction(0), pm))
            else:
                result = BoxClassification(BoxKind.TYPE2, axis=current, partner=below, k=m - 1)
            break
        # Some side must exclude p_m; none ends below it, so one starts above it.
        current = next(j for j, (aj, _) in enumerate(ivs) if aj > pm)
    else:
        raise AssertionError("side walk did not terminate")
    if not check_certificate(box, result, values):
        raise AssertionError(f"invalid certificate {result} for {box}")
    return result
