"""Acceptance gate: one test per criterion, each timed against its budget.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion
is printed in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

import math
import time
from fractions import Fraction as F

import numpy as np
import pytest

from diagdisp import _kernels
from diagdisp.bounds import (
    CROSS_BOXES_2D,
    alpha_closed_grid,
    alpha_grid,
    bound_sosnovec,
    bound_thm1,
    verify_diagonal_sharpness,
    verify_uniqueness,
)
from diagdisp.boxes import BoxKind, classify, classify_empty_box
from diagdisp.configuration import build_config, cross_config
from diagdisp.oracle import dispersion, maximal_empty_boxes, min_diagonal_dispersion
from diagdisp.sequence import (
    alpha_iterative,
    cycle_length,
    endpoint_bisection,
    endpoint_closed_form,
)
from diagdisp.suites import CHECK_VOLUMES, random_avoiding_box, random_typed_box

RESULTS: dict[int, str] = {}


def warm_up():
    # Load (or compile) the numba kernels so no criterion pays for it.
    _kernels.search(np.array([[0.5, 0.5], [0.25, 0.75]]))
    _kernels.search(np.array([[0.5, 0.5, 0.5]]))
    _kernels.search_batch(np.full((2, 2, 2), 0.5))
    _kernels.alpha_grid(np.array([0.3]), 1e-12)


def criterion_1():
    fails = []
    if endpoint_closed_form(1) != F(1, 2):
        fails.append("R1 not exactly 1/2")
    if endpoint_closed_form(3) != F(1, 3):
        fails.append("R3 not exactly 1/3")
    if abs(endpoint_closed_form(2) - (3 - math.sqrt(5)) / 2) > 1e-12:
        fails.append("R2 off golden value")
    worst = max(abs(float(endpoint_closed_form(n)) - endpoint_bisection(n, 1e-12)) for n in range(1, 13))
    if worst > 1e-10:
        fails.append(f"bisection gap {worst:.3g}")
    return fails, f"max bisection gap {worst:.2e}"


def criterion_2():
    fails = []
    for k in range(1, 11):
        left = float(endpoint_closed_form(k))
        right = 1.0 if k == 1 else float(endpoint_closed_form(k - 1))
        # k = 1: the step meets (1/4, 1/2] only at 1/2.
        grid = [left] if k == 1 else [left + (right - left) * i / 50 for i in range(50)]
        for r in grid:
            a = alpha_iterative(r).alpha
            if a != k:
                fails.append(f"alpha({r!r}) = {a}, want {k}")
    if alpha_iterative(F(1, 3)).alpha != 3:
        fails.append("alpha(1/3) != 3")
    if build_config(F(1, 3), 2).values != (F(1, 3), F(1, 2), F(2, 3)):
        fails.append("q(1/3) != {1/3, 1/2, 2/3}")
    return fails, "k <= 10, 50 points per step"


def criterion_3():
    fails, worst = [], 0.0
    for r in np.linspace(0.26, 0.5, 101)[1:]:
        for d in (2, 3):
            err = abs(dispersion(build_config(float(r), d).points()).value - r)
            worst = max(worst, err)
            if err > 1e-9:
                fails.append(f"r={r!r} d={d} err={err:.3g}")
    return fails, f"200 configurations, max error {worst:.2e}"


def criterion_4():
    fails = []
    for d in (2, 3):
        v = dispersion(cross_config(d).points).value
        if not (isinstance(v, F) and v == F(1, 4)):
            fails.append(f"d={d}: dispersion {v}")
    boxes = maximal_empty_boxes(cross_config(2).points)
    loose = [b for b in boxes if not any(b.closure_within(c) for c in CROSS_BOXES_2D)]
    if loose:
        fails.append(f"{len(loose)} maximal boxes outside the list")
    return fails, f"{len(boxes)} maximal empty boxes at d=2"


def criterion_5():
    rng = np.random.default_rng(20240501)
    fails, typed, avoided = [], 0, 0
    # 10^4 typed boxes and 10^3 avoiding boxes, spread over r and d.
    plan = [(r, d) for r in CHECK_VOLUMES for d in (2, 3)]
    for i in range(10_000):
        r, d = plan[i % len(plan)]
        cfg = build_config(r, d)
        box = random_typed_box(rng, cfg.values, d)
        if classify(box, cfg).kind is BoxKind.NEITHER or box.volume() > r:
            fails.append(f"typed box {box} at r={r}")
        typed += 1
    for i in range(1_000):
        r, d = plan[i % len(plan)]
        cfg = build_config(r, d)
        box = random_avoiding_box(rng, cfg)
        if classify_empty_box(box, cfg).kind is BoxKind.NEITHER or classify(box, cfg).kind is BoxKind.NEITHER:
            fails.append(f"avoiding box {box} at r={r} is Neither")
        avoided += 1
    return fails, f"{typed} typed, {avoided} avoiding boxes"


def criterion_6():
    fails = []
    for m in range(1, 9):
        err = abs(min_diagonal_dispersion(m, 1e-10) - float(endpoint_closed_form(m)))
        if err > 1e-8:
            fails.append(f"min diagonal m={m} err={err:.3g}")
    checked = 0
    for r in (0.3, F(1, 3), 0.45):
        rep = verify_diagonal_sharpness(r)
        checked += rep.sets_checked
        if not rep.ok:
            fails.append(f"r={r}: {rep.violations} grid sets reach dispersion <= r")
    for n in (1, 2, 3):
        rep = verify_uniqueness(n, 100, 0.01)
        if not rep.ok:
            fails.append(f"uniqueness n={n}: {len(rep.violations)} violations")
    return fails, f"{checked} grid sets, 300 perturbations"


def criterion_7():
    fails = []
    for n in range(1, 13):
        m = cycle_length(endpoint_closed_form(n), 1000, 1e-9)
        if m != n + 3:
            fails.append(f"cycle_length(R_{n}) = {m}")
    for n in (1, 3):
        r = endpoint_closed_form(n)
        if not isinstance(r, F) or cycle_length(r, 1000, 0.0) != n + 3:
            fails.append(f"exact cycle at R_{n}")
    return fails, "n <= 12"


def criterion_8():
    fails = []
    rs = np.linspace(0.2501, 0.5, 10_002)[1:-1]
    alpha = alpha_grid(rs)
    thm1 = np.array([bound_thm1(float(r)) for r in rs])
    sos = np.array([bound_sosnovec(float(r)) for r in rs])
    if np.any(alpha > thm1):
        fails.append(f"{np.count_nonzero(alpha > thm1)} points above thm1 bound")
    if np.any(alpha > sos):
        fails.append(f"{np.count_nonzero(alpha > sos)} points above Sosnovec bound")
    if np.any(alpha_closed_grid(rs, "ceiling") != alpha):
        fails.append("ceiling form disagrees")
    endpoints = np.array([float(endpoint_closed_form(k)) for k in range(1, 13)])
    interior = ~np.isin(rs, endpoints)
    diff = alpha - alpha_closed_grid(rs, "paper_floor")
    if np.any(diff[interior] != 1):
        fails.append("floor form not exactly one short at interior points")
    if alpha_iterative(0.34).alpha - int(alpha_closed_grid([0.34], "paper_floor")[0]) != 1:
        fails.append("floor form at 0.34")
    if np.any(alpha_closed_grid(endpoints, "paper_floor") != np.arange(1, 13)):
        fails.append("floor form misses an endpoint")
    return fails, f"{rs.size} grid points"


CRITERIA = {
    1: ("endpoint identities", criterion_1, 1.0),
    2: ("step function", criterion_2, 1.0),
    3: ("construction optimality", criterion_3, 120.0),
    4: ("cross configuration", criterion_4, 10.0),
    5: ("box classification", criterion_5, 30.0),
    6: ("sharpness", criterion_6, 300.0),
    7: ("cycle lengths", criterion_7, 1.0),
    8: ("bound ordering", criterion_8, 5.0),
}


def evaluate(n: int):
    name, fn, limit = CRITERIA[n]
    t = time.perf_counter()
    fails, note = fn()
    elapsed = time.perf_counter() - t
    if elapsed > limit:
        fails.append(f"took {elapsed:.2f}s, limit {limit:g}s")
    status = "PASS" if not fails else "FAIL"
    line = f"criterion {n} {status}: {name} ({note}; {elapsed:.2f}s / {limit:g}s)"
    if fails:
        line += " -- " + "; ".join(fails[:5])
    return not fails, line


@pytest.fixture(scope="module", autouse=True)
def _warm():
    warm_up()


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = evaluate(n)
    RESULTS[n] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    warm_up()
    for n in sorted(CRITERIA):
        print(evaluate(n)[1], flush=True)
