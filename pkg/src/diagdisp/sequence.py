"""The rational recursion behind the diagonal configurations.

``f_0(x) = x`` and ``f_k(x) = x / (1 - f_{k-1}(x))``. For a volume ``r`` in
``(1/4, 1/2]`` the step count ``alpha(r)`` is one more than the first index
``k`` with ``f_k(r) >= 1 - r``; it is constant on ``[R_k, R_{k-1})`` where
``R_n = 1 / (4 cos^2(pi / (n + 3)))``.

The same map drives the reduced geometric rational sequence
``y_{n+1} = -1 - r / y_n`` (with ``0 -> inf -> -1``), whose period at ``R_n``
is ``n + 3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from scipy.optimize import bisect

from .errors import ConvergenceError, DomainError
from .scalar import DEFAULT_TOL, Scalar, as_scalar, close, geq, is_exact

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


def _check_large_volume(r: Scalar) -> Scalar:
    r = as_scalar(r)
    if not (QUARTER < r <= HALF):
        raise DomainError(f"r must lie in (1/4, 1/2], got {r}")
    return r


def f_eval(r, k: int) -> Scalar:
    """Return ``f_k(r)``.

    Raises :class:`DomainError` if some ``f_j(r)``, ``j < k``, reaches 1, i.e.
    ``r`` is outside ``dom(f_k)``.
    """
    r = as_scalar(r)
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    if not (0 <= r <= 1):
        raise DomainError(f"r must lie in [0, 1], got {r}")
    value = r
    for j in range(k):
        if value >= 1:
            raise DomainError(f"r = {r} is outside dom(f_{k}): f_{j}(r) = {value} >= 1")
        value = r / (1 - value)
    return value


def f_trace(r, k: int) -> list[Scalar]:
    """``[f_0(r), ..., f_k(r)]``, with the same domain checks as :func:`f_eval`."""
    r = as_scalar(r)
    out = [r]
    for _ in range(k):
        if out[-1] >= 1:
            raise DomainError(f"r = {r} is outside dom(f_{k})")
        out.append(r / (1 - out[-1]))
    return out


@dataclass(frozen=True)
class AlphaResult:
    r: Scalar
    n_r: int
    alpha: int
    trace: tuple


def step_cap(r) -> int:
    """Iteration guard for :func:`alpha_iterative`, from the closed form of alpha."""
    q = math.pi / math.acos(1.0 / (2.0 * math.sqrt(float(r))))
    return math.ceil(q) + 1


def alpha_iterative(r, tol: float = DEFAULT_TOL) -> AlphaResult:
    """Cardinality of the diagonal configuration for volume ``r``.

    Exact when ``r`` is rational. For float ``r`` the stopping test
    ``f_k(r) >= 1 - r`` is relaxed by ``tol`` so that endpoint values
    such as ``R_k`` computed in floating point land on the right step.
    """
    r = _check_large_volume(r)
    target = 1 - r
    cap = step_cap(r)
    trace = [r]
    while not geq(trace[-1], target, tol):
        if len(trace) > cap:
            raise RuntimeError(f"alpha iteration exceeded its guard ({cap}) at r = {r}")
        trace.append(r / (1 - trace[-1]))
    n_r = len(trace) - 1
    return AlphaResult(r=r, n_r=n_r, alpha=n_r + 1, trace=tuple(trace))


def endpoint_closed_form(n: int) -> Scalar:
    """Left endpoint ``R_n`` of the step where alpha equals ``n``.

    Rational (and returned exactly) only for ``n`` in {1, 3}.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n == 1:
        return HALF
    if n == 3:
        return Fraction(1, 3)
    return 0.25 / math.cos(math.pi / (n + 3)) ** 2


def _endpoint_residual(k: int):
    def g(x: float) -> float:
        try:
            fx = f_eval(x, k - 1)
        except DomainError:
            return 1.0
        return fx - (1.0 - x)

    return g


def endpoint_bisection(n: int, tol: float = 1e-12) -> float:
    """Solve ``f_{n-1}(x) = 1 - x`` by bisection, walking down from ``r_0 = 1``.

    Each endpoint brackets the next one from above, so the closed form is never
    consulted.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not tol > 0:
        raise DomainError("tol must be positive")
    upper = 1.0
    root = upper
    for k in range(1, n + 1):
        g = _endpoint_residual(k)
        lo, hi = 0.25 + 1e-9, upper - 1e-15
        if not (g(lo) < 0 < g(hi)):
            raise ConvergenceError(f"no sign change for r_{k} on [{lo}, {hi}]")
        try:
            root = bisect(g, lo, hi, xtol=tol, maxiter=400)
        except RuntimeError as exc:
            raise ConvergenceError(str(exc)) from exc
        upper = root
    return root


def theta(r) -> float:
    """Rotation angle ``arccos(-1 / (2 sqrt r))`` of the reduced sequence."""
    r = as_scalar(r)
    if not r > QUARTER:
        raise DomainError(f"theta needs r > 1/4, got {r}")
    return math.acos(-1.0 / (2.0 * math.sqrt(float(r))))


class _Infinity:
    """Explicit point at infinity of the reduced sequence."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def reduced_seq_step(y, r):
    """One step of ``y -> -1 - r / y`` with the sentinel chain ``0 -> inf -> -1``."""
    if y is INFINITY:
        return Fraction(-1) if is_exact(r) else -1.0
    if y == 0:
        return INFINITY
    return -1 - r / y


def reduced_sequence(r, length: int) -> list:
    """First ``length`` terms starting from ``y_0 = -1 + r``."""
    r = as_scalar(r)
    ys = [-1 + r]
    while len(ys) < length:
        ys.append(reduced_seq_step(ys[-1], r))
    return ys


def _same(a, b, tol: float) -> bool:
    # Compare on the projective line: values beyond 1/tol count as the pole.
    a_inf = a is INFINITY or abs(a) >= 1.0 / tol
    b_inf = b is INFINITY or abs(b) >= 1.0 / tol
    if a_inf or b_inf:
        return a_inf and b_inf
    return abs(a - b) <= tol


def cycle_length(r, max_iter: int = 1000, tol: float = 1e-9) -> Optional[int]:
    """Period of the reduced sequence started at ``-1 + r``, or ``None``.

    Exact ``r`` uses exact equality. Float ``r`` needs ``y_m`` within ``tol``
    of ``y_0`` and the following three terms matching ``y_1..y_3``.
    """
    r = as_scalar(r)
    if not (QUARTER < r <= HALF):
        raise DomainError(f"r must lie in (1/4, 1/2], got {r}")
    if max_iter < 4:
        raise DomainError("max_iter must be >= 4")
    if is_exact(r):
        y0 = -1 + r
        y = y0
        for m in range(1, max_iter + 1):
            y = reduced_seq_step(y, r)
            if y is not INFINITY and y == y0:
                return m
        return None
    ys = reduced_sequence(r, max_iter + 4)
    for m in range(1, max_iter + 1):
        if all(_same(ys[m + j], ys[j], tol) for j in range(4)):
            return m
    return None


def endpoint_fixed_point_defects(k: int) -> tuple[Scalar, Scalar]:
    """``(f_{k-1}(R_k) - (1 - R_k), f_k(R_k) - 1)``; both vanish at an endpoint."""
    rk = endpoint_closed_form(k)
    vals = f_trace(rk, k)
    return vals[k - 1] - (1 - rk), vals[k] - 1


def is_endpoint(r, tol: float = DEFAULT_TOL) -> Optional[int]:
    """Index ``k`` with ``r == R_k`` (within ``tol`` for floats), else ``None``."""
    r = _check_large_volume(r)
    k = alpha_iterative(r, tol).alpha
    return k if close(r, endpoint_closed_form(k), tol) else None
