"""Named property suites run by ``diagdisp verify``.

Each suite returns ``(ok, details)`` where ``details`` is JSON-serializable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .boxes import Box, BoxKind, avoids, check_certificate, classify, classify_empty_box
from .bounds import (
    alpha_closed_grid,
    alpha_grid,
    bound_sosnovec,
    bound_thm1,
    verify_cross,
    verify_diagonal_sharpness,
    verify_single_point_floor,
    verify_uniqueness,
)
from .configuration import DiagonalConfig, build_config, symmetry_defect
from .oracle import dispersion, min_diagonal_dispersion
from .scalar import json_scalar
from .sequence import (
    alpha_iterative,
    cycle_length,
    endpoint_bisection,
    endpoint_closed_form,
    endpoint_fixed_point_defects,
)

CHECK_VOLUMES = (Fraction(1, 3), Fraction(3, 10), Fraction(9, 20))
_DENOM = 10**6


def _rand_fraction(rng, lo, hi):
    return lo + (hi - lo) * Fraction(int(rng.integers(0, _DENOM + 1)), _DENOM)


def random_interval(rng, lo=Fraction(0), hi=Fraction(1)) -> tuple:
    """Random ``[a, b)`` with ``lo <= a < b <= hi`` on a 1e-6 rational grid."""
    while True:
        a, b = sorted((_rand_fraction(rng, lo, hi), _rand_fraction(rng, lo, hi)))
        if a < b:
            return a, b


def random_box(rng, d: int) -> Box:
    return Box(tuple(random_interval(rng) for _ in range(d)))


def random_typed_box(rng, values, d: int) -> Box:
    """A random box built to satisfy a Type 1 or Type 2 certificate."""
    ivs = [random_interval(rng) for _ in range(d)]
    n = len(values) - 1
    if n == 0 or rng.random() < 0.5:
        covers = [(Fraction(0), values[0])] + [(values[k], values[k + 1]) for k in range(n)]
        covers.append((values[-1], Fraction(1)))
        lo, hi = covers[rng.integers(len(covers))]
        ivs[rng.integers(d)] = random_interval(rng, lo, hi)
    else:
        k = int(rng.integers(n))
        j, l = rng.choice(d, size=2, replace=False) if d > 1 else (0, 0)
        ivs[j] = random_interval(rng, values[k], Fraction(1))
        ivs[l] = random_interval(rng, Fraction(0), values[k + 1])
    return Box(tuple(ivs))


def random_avoiding_box(rng, cfg: DiagonalConfig) -> Box:
    pts = cfg.points()
    while True:
        box = random_box(rng, cfg.dimension)
        if avoids(box, pts):
            return box


# ---------------------------------------------------------------------------


def suite_endpoints():
    details = {
        "R1": json_scalar(endpoint_closed_form(1)),
        "R3": json_scalar(endpoint_closed_form(3)),
        "R2_error": abs(endpoint_closed_form(2) - (3 - 5**0.5) / 2),
    }
    gaps = [abs(float(endpoint_closed_form(n)) - endpoint_bisection(n, 1e-12)) for n in range(1, 13)]
    defects = [max(abs(float(a)), abs(float(b))) for a, b in map(endpoint_fixed_point_defects, range(1, 13))]
    details["max_bisection_gap"] = max(gaps)
    details["max_fixed_point_defect"] = max(defects)
    ok = (
        endpoint_closed_form(1) == Fraction(1, 2)
        and endpoint_closed_form(3) == Fraction(1, 3)
        and details["R2_error"] <= 1e-12
        and max(gaps) <= 1e-10
        and max(defects) <= 1e-12
        and endpoint_fixed_point_defects(1) == (0, 0)
        and endpoint_fixed_point_defects(3) == (0, 0)
    )
    return ok, details


def suite_step_function():
    failures = []
    for k in range(1, 11):
        left = float(endpoint_closed_form(k))
        right = 1.0 if k == 1 else float(endpoint_closed_form(k - 1))
        grid = [left] if k == 1 else [left + (right - left) * i / 50 for i in range(50)]
        for r in grid:
            if r > 0.5:
                continue
            a = alpha_iterative(r).alpha
            if a != k:
                failures.append({"k": k, "r": r, "alpha": a})
    third = alpha_iterative(Fraction(1, 3))
    ok = not failures and third.alpha == 3 and third.trace == (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))
    return ok, {"failures": failures}


def suite_cycles():
    lengths = {n: cycle_length(endpoint_closed_form(n), 100, 1e-9) for n in range(1, 13)}
    ok = all(lengths[n] == n + 3 for n in lengths)
    return ok, {"lengths": lengths}


def suite_symmetry():
    defects = {n: float(symmetry_defect(n)) for n in range(1, 13)}
    ok = all(v <= 1e-10 for v in defects.values()) and symmetry_defect(3) == 0
    return ok, {"defects": defects}


def suite_construction(count: int = 100, dims=(2, 3)):
    failures, worst = [], 0.0
    for r in np.linspace(0.26, 0.5, count + 1)[1:]:
        r = float(r)
        for d in dims:
            value = dispersion(build_config(r, d).points()).value
            err = abs(value - r)
            worst = max(worst, err)
            if err > 1e-9:
                failures.append({"r": r, "d": d, "dispersion": value})
    return not failures, {"max_error": worst, "failures": failures}


def suite_cross():
    reports = [verify_cross(2), verify_cross(3)]
    return all(r.ok for r in reports), {"reports": [r.to_json() for r in reports]}


def suite_typed_box_volume(boxes: int = 10_000, seed: int = 1):
    rng = np.random.default_rng(seed)
    violations, counted = [], 0
    for r in CHECK_VOLUMES:
        for d in (2, 3):
            values = build_config(r, d).values
            for _ in range(boxes):
                box = random_typed_box(rng, values, d)
                cls = classify(box, r)
                if cls.kind is BoxKind.NEITHER:
                    violations.append({"r": json_scalar(r), "box": box.to_json(), "reason": "unclassified"})
                    continue
                counted += 1
                if box.volume() > r:
                    violations.append({"r": json_scalar(r), "box": box.to_json(), "reason": "volume"})
    return not violations, {"boxes": counted, "violations": violations[:20]}


def suite_avoiding_box_types(boxes: int = 1_000, seed: int = 2):
    rng = np.random.default_rng(seed)
    violations = []
    for r in CHECK_VOLUMES:
        for d in (2, 3):
            cfg = build_config(r, d)
            for _ in range(boxes):
                box = random_avoiding_box(rng, cfg)
                direct = classify(box, cfg)
                walked = classify_empty_box(box, cfg)
                if direct.kind is BoxKind.NEITHER or not check_certificate(box, walked, cfg.values):
                    violations.append({"r": json_scalar(r), "box": box.to_json()})
    return not violations, {"violations": violations[:20]}


def suite_sharpness():
    mins = {m: abs(min_diagonal_dispersion(m, 1e-10) - float(endpoint_closed_form(m))) for m in range(1, 9)}
    grids = [verify_diagonal_sharpness(r) for r in (0.3, Fraction(1, 3), 0.45)]
    ok = all(v <= 1e-8 for v in mins.values()) and all(g.ok for g in grids)
    return ok, {"min_diagonal_errors": mins, "grids": [g.to_json() for g in grids]}


def suite_uniqueness():
    reports = [verify_uniqueness(n, 100, 0.01) for n in (1, 2, 3)]
    return all(r.ok for r in reports), {"reports": [r.to_json() for r in reports]}


def suite_bounds(count: int = 10_000):
    rs = np.linspace(0.2501, 0.5, count + 2)[1:-1]
    alpha = alpha_grid(rs)
    thm1 = np.array([bound_thm1(float(r)) for r in rs])
    sos = np.array([bound_sosnovec(float(r)) for r in rs])
    ceil = alpha_closed_grid(rs, "ceiling")
    floor = alpha_closed_grid(rs, "paper_floor")
    diff = alpha - floor
    details = {
        "thm1_violations": int(np.count_nonzero(alpha > thm1)),
        "sosnovec_violations": int(np.count_nonzero(alpha > sos)),
        "ceiling_mismatches": int(np.count_nonzero(alpha != ceil)),
        "paper_floor_offsets": sorted(set(int(v) for v in diff)),
    }
    endpoints = np.array([float(endpoint_closed_form(k)) for k in range(1, 13)])
    details["paper_floor_endpoint_mismatches"] = int(
        np.count_nonzero(alpha_closed_grid(endpoints, "paper_floor") != np.arange(1, 13))
    )
    ok = (
        details["thm1_violations"] == 0
        and details["sosnovec_violations"] == 0
        and details["ceiling_mismatches"] == 0
        and set(details["paper_floor_offsets"]) <= {0, 1}
        and details["paper_floor_endpoint_mismatches"] == 0
    )
    return ok, details


def suite_single_point():
    reports = [verify_single_point_floor(d, g) for d, g in ((1, 101), (2, 21), (3, 11))]
    return all(r.ok for r in reports), {"reports": [r.to_json() for r in reports]}


SUITES: dict[str, Callable] = {
    "endpoints": suite_endpoints,
    "step-function": suite_step_function,
    "cycles": suite_cycles,
    "symmetry": suite_symmetry,
    "construction": suite_construction,
    "cross": suite_cross,
    "lemma-volume": suite_typed_box_volume,
    "lemma-types": suite_avoiding_box_types,
    "sharpness": suite_sharpness,
    "uniqueness": suite_uniqueness,
    "bounds": suite_bounds,
    "single-point": suite_single_point,
}


def run_suite(name: str):
    if name == "all":
        results = {n: SUITES[n]() for n in SUITES}
        return all(ok for ok, _ in results.values()), {n: d for n, (_, d) in results.items()}
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
