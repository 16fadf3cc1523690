"""Float64 kernels with two interchangeable backends.

``DIAGDISP_BACKEND=numba`` (default when numba imports) runs the ``@njit``
versions; ``DIAGDISP_BACKEND=numpy`` runs the pure-numpy twins. Both perform
the same floating-point operations in the same order, so results agree bit
for bit.

Empty-box search
----------------
Boxes are enumerated axis by axis. On every axis but the last, the lower face
runs over ``{0} u coords`` and the upper face over ``coords u {1}``, where
``coords`` are the coordinates of points still inside the box on the axes
already fixed. On the last axis the best interval is the widest gap between
consecutive surviving coordinates. A branch is dropped once its partial volume
is below the best volume found so far. Ties are broken towards the
lexicographically smallest ``(lower..., upper...)`` tuple.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

BACKEND_ENV = "DIAGDISP_BACKEND"


def backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "").strip().lower()
    if choice in ("", "auto"):
        return "numba" if HAVE_NUMBA else "numpy"
    if choice not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


# ---------------------------------------------------------------------------
# numpy backend


def _key_less(lo, hi, best_lo, best_hi):
    for a, b in zip(lo, best_lo):
        if a != b:
            return a < b
    for a, b in zip(hi, best_hi):
        if a != b:
            return a < b
    return False


def _axis_values(x, alive, axis):
    coords = x[alive, axis]
    return np.unique(np.concatenate((np.array([0.0, 1.0]), coords)))


def _descend_np(x, axis, alive, prefix, lo, hi, state):
    n, d = x.shape
    vals = _axis_values(x, alive, axis)
    if axis == d - 1:
        gaps = np.diff(vals)
        for i in range(gaps.shape[0]):
            vol = prefix * gaps[i]
            if vol < state["best"]:
                continue
            lo[axis] = vals[i]
            hi[axis] = vals[i + 1]
            if vol > state["best"] or _key_less(lo, hi, state["lo"], state["hi"]):
                state["best"] = vol
                state["lo"] = lo.copy()
                state["hi"] = hi.copy()
        return
    col = x[:, axis]
    m = vals.shape[0]
    for ia in range(m - 1):
        a = vals[ia]
        above = alive & (col > a)
        for ib in range(ia + 1, m):
            b = vals[ib]
            vol = prefix * (b - a)
            if vol < state["best"]:
                continue
            lo[axis] = a
            hi[axis] = b
            _descend_np(x, axis + 1, above & (col < b), vol, lo, hi, state)


def search_numpy(x: np.ndarray):
    x = np.ascontiguousarray(x, dtype=np.float64)
    n, d = x.shape
    state = {"best": -1.0, "lo": np.zeros(d), "hi": np.ones(d)}
    _descend_np(x, 0, np.ones(n, dtype=bool), 1.0, np.zeros(d), np.zeros(d), state)
    return state["best"], state["lo"], state["hi"]


def search_batch_numpy(xs: np.ndarray) -> np.ndarray:
    out = np.empty(xs.shape[0])
    for t in range(xs.shape[0]):
        out[t] = search_numpy(xs[t])[0]
    return out


def alpha_grid_numpy(rs: np.ndarray, tol: float) -> np.ndarray:
    rs = np.asarray(rs, dtype=np.float64)
    f = rs.copy()
    target = (1.0 - rs) - tol
    alpha = np.ones(rs.shape, dtype=np.int64)
    active = ~(f >= target)
    while active.any():
        f[active] = rs[active] / (1.0 - f[active])
        alpha[active] += 1
        active &= ~(f >= target)
    return alpha


# ---------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @njit(cache=True)
    def _sorted_unique_nb(x, alive, axis, out):
        n = x.shape[0]
        buf = np.empty(n + 2)
        buf[0] = 0.0
        buf[1] = 1.0
        c = 2
        for p in range(n):
            if alive[p]:
                buf[c] = x[p, axis]
                c += 1
        s = np.sort(buf[:c])
        m = 0
        for i in range(c):
            if m == 0 or s[i] != out[m - 1]:
                out[m] = s[i]
                m += 1
        return m

    @njit(cache=True)
    def _key_less_nb(lo, hi, best_lo, best_hi):
        d = lo.shape[0]
        for i in range(d):
            if lo[i] != best_lo[i]:
                return lo[i] < best_lo[i]
        for i in range(d):
            if hi[i] != best_hi[i]:
                return hi[i] < best_hi[i]
        return False

    @njit(cache=True)
    def _last_axis_nb(x, alive, prefix, lo, hi, best, best_lo, best_hi, vals):
        d = x.shape[1]
        axis = d - 1
        m = _sorted_unique_nb(x, alive, axis, vals)
        for i in range(m - 1):
            vol = prefix * (vals[i + 1] - vals[i])
            if vol < best[0]:
                continue
            lo[axis] = vals[i]
            hi[axis] = vals[i + 1]
            if vol > best[0] or _key_less_nb(lo, hi, best_lo, best_hi):
                best[0] = vol
                best_lo[:] = lo
                best_hi[:] = hi

    @njit(cache=True)
    def _search_nb(x):
        # Depth-first walk over (axis, lower index, upper index); an explicit
        # stack keeps the function non-recursive so numba can cache it.
        n, d = x.shape
        best = np.full(1, -1.0)
        best_lo = np.zeros(d)
        best_hi = np.ones(d)
        lo = np.zeros(d)
        hi = np.zeros(d)
        vals = np.empty((d, n + 2))
        nvals = np.zeros(d, dtype=np.int64)
        ia = np.zeros(d, dtype=np.int64)
        ib = np.zeros(d, dtype=np.int64)
        alive = np.ones((d, n), dtype=np.bool_)
        above = np.zeros((d, n), dtype=np.bool_)
        prefix = np.ones(d)
        scratch = np.empty(n + 2)
        if d == 1:
            _last_axis_nb(x, alive[0], 1.0, lo, hi, best, best_lo, best_hi, scratch)
            return best[0], best_lo, best_hi
        axis = 0
        nvals[0] = _sorted_unique_nb(x, alive[0], 0, vals[0])
        ia[0] = 0
        ib[0] = 1
        for p in range(n):
            above[0, p] = x[p, 0] > vals[0, 0]
        while axis >= 0:
            if ib[axis] >= nvals[axis]:
                ia[axis] += 1
                if ia[axis] >= nvals[axis] - 1:
                    axis -= 1
                    continue
                ib[axis] = ia[axis] + 1
                a0 = vals[axis, ia[axis]]
                for p in range(n):
                    above[axis, p] = alive[axis, p] and x[p, axis] > a0
            a = vals[axis, ia[axis]]
            b = vals[axis, ib[axis]]
            ib[axis] += 1
            vol = prefix[axis] * (b - a)
            if vol < best[0]:
                continue
            lo[axis] = a
            hi[axis] = b
            nxt = axis + 1
            for p in range(n):
                alive[nxt, p] = above[axis, p] and x[p, axis] < b
            if nxt == d - 1:
                _last_axis_nb(x, alive[nxt], vol, lo, hi, best, best_lo, best_hi, scratch)
                continue
            axis = nxt
            prefix[axis] = vol
            nvals[axis] = _sorted_unique_nb(x, alive[axis], axis, vals[axis])
            ia[axis] = 0
            ib[axis] = 1
            a0 = vals[axis, 0]
            for p in range(n):
                above[axis, p] = alive[axis, p] and x[p, axis] > a0
        return best[0], best_lo, best_hi

    @njit(cache=True)
    def _search_batch_nb(xs):
        out = np.empty(xs.shape[0])
        for t in range(xs.shape[0]):
            out[t] = _search_nb(xs[t])[0]
        return out

    @njit(cache=True)
    def _alpha_grid_nb(rs, tol):
        out = np.empty(rs.shape[0], dtype=np.int64)
        for i in range(rs.shape[0]):
            r = rs[i]
            f = r
            target = (1.0 - r) - tol
            k = 1
            while not (f >= target):
                f = r / (1.0 - f)
                k += 1
            out[i] = k
        return out


# ---------------------------------------------------------------------------
# dispatch


def search(x: np.ndarray):
    """Largest empty open box of the float point array ``x`` of shape (n, d).

    Returns ``(volume, lower, upper)``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if backend() == "numba":
        vol, lo, hi = _search_nb(x)
        return float(vol), lo, hi
    return search_numpy(x)


def search_batch(xs: np.ndarray) -> np.ndarray:
    """Dispersion values for a stack of point sets of shape (B, n, d)."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if backend() == "numba":
        return _search_batch_nb(xs)
    return search_batch_numpy(xs)


def alpha_grid(rs, tol: float) -> np.ndarray:
    """alpha(r) for every float r in ``rs`` (no domain checks)."""
    rs = np.ascontiguousarray(rs, dtype=np.float64).ravel()
    if backend() == "numba":
        return _alpha_grid_nb(rs, float(tol))
    return alpha_grid_numpy(rs, float(tol))
