"""CSV point files and JSON reports.

Point CSV: a header ``x1,...,xd`` followed by one point per row. Tokens may
be decimals or exact ``p/q`` rationals. Output uses ``p/q`` for exact values
and the shortest round-trip repr for floats, so files are byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence, TextIO

from .errors import DimensionMismatch
from .scalar import format_scalar, parse_scalar


class FormatError(ValueError):
    """Malformed point file."""


def write_points_csv(points: Iterable[Sequence], d: int, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(d)])
    for p in points:
        if len(p) != d:
            raise DimensionMismatch(f"point {p} is not {d}-dimensional")
        writer.writerow([format_scalar(c) for c in p])


def points_csv(points: Iterable[Sequence], d: int) -> str:
    buf = io.StringIO()
    write_points_csv(points, d, buf)
    return buf.getvalue()


def read_points_csv(src: TextIO) -> tuple[int, list[tuple]]:
    """Return ``(d, points)``; the header fixes ``d`` even when there are no rows."""
    rows = [row for row in csv.reader(src) if any(cell.strip() for cell in row)]
    if not rows:
        raise FormatError("missing header line")
    header = [h.strip() for h in rows[0]]
    if header != [f"x{i + 1}" for i in range(len(header))]:
        raise FormatError(f"header must read x1,...,xd, got {','.join(header)}")
    d = len(header)
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != d:
            raise FormatError(f"line {lineno}: expected {d} values, got {len(row)}")
        try:
            p = tuple(parse_scalar(cell) for cell in row)
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        if not all(0 <= c <= 1 for c in p):
            raise FormatError(f"line {lineno}: coordinates must lie in [0, 1]")
        points.append(p)
    return d, points


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
