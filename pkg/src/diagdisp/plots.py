"""Plain SVG figures: configurations in the unit square and the alpha step plot."""

from __future__ import annotations

from typing import Sequence

from .configuration import DiagonalConfig
from .scalar import format_scalar
from .sequence import endpoint_closed_form

SIZE = 480
MARGIN = 48


def _num(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, xlim, ylim, width=SIZE, height=SIZE):
        self.xlim, self.ylim = xlim, ylim
        self.width, self.height = width, height
        self.parts: list[str] = []

    def x(self, v: float) -> float:
        lo, hi = self.xlim
        return MARGIN + (float(v) - lo) / (hi - lo) * (self.width - 2 * MARGIN)

    def y(self, v: float) -> float:
        lo, hi = self.ylim
        return self.height - MARGIN - (float(v) - lo) / (hi - lo) * (self.height - 2 * MARGIN)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def line(self, x0, y0, x1, y1, **style) -> None:
        self.add(
            f'<line x1="{_num(self.x(x0))}" y1="{_num(self.y(y0))}" '
            f'x2="{_num(self.x(x1))}" y2="{_num(self.y(y1))}"{_style(style)}/>'
        )

    def circle(self, cx, cy, radius=3.0, **style) -> None:
        self.add(f'<circle cx="{_num(self.x(cx))}" cy="{_num(self.y(cy))}" r="{_num(radius)}"{_style(style)}/>')

    def text(self, px, py, label, anchor="middle", size=10, rotate=None) -> None:
        transform = f' transform="rotate({rotate} {_num(px)} {_num(py)})"' if rotate is not None else ""
        self.add(
            f'<text x="{_num(px)}" y="{_num(py)}" font-size="{size}" '
            f'text-anchor="{anchor}" font-family="sans-serif"{transform}>{label}</text>'
        )

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
        )
        body = "\n".join(["  " + p for p in self.parts])
        return f'{head}\n  <rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'


def _style(style: dict) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in style.items())


def config_svg(cfg: DiagonalConfig, title: str | None = None) -> str:
    """Two-dimensional view of a diagonal configuration with ticks at its values."""
    c = _Canvas((0.0, 1.0), (0.0, 1.0))
    c.line(0, 0, 1, 0, stroke="black")
    c.line(1, 0, 1, 1, stroke="black")
    c.line(1, 1, 0, 1, stroke="black")
    c.line(0, 1, 0, 0, stroke="black")
    c.line(0, 0, 1, 1, stroke="#999999", stroke_dasharray="4 4")
    label_every = max(1, len(cfg.values) // 8)
    for i, p in enumerate(cfg.values):
        c.line(p, 0, p, -0.015, stroke="black")
        c.line(0, p, -0.015, p, stroke="black")
        if i % label_every == 0:
            c.text(c.x(p), c.y(0) + 22, _num(float(p)), size=9)
            c.text(c.x(0) - 14, c.y(p) + 3, _num(float(p)), anchor="end", size=9)
    for p in cfg.values:
        c.circle(p, p, 3.5, fill="#1f4e9c")
    r_label = _num(cfg.r) if isinstance(cfg.r, float) else format_scalar(cfg.r)
    heading = title or f"|q(r)| = {len(cfg.values)},  r = {r_label}"
    c.text(SIZE / 2, MARGIN / 2, heading, size=13)
    return c.render()


def step_svg(r_min: float, r_max: float, samples: Sequence[tuple] = ()) -> str:
    """Step plot of ``r -> alpha(r)`` on ``[r_min, r_max]``.

    Each step ``[R_k, R_{k-1})`` is drawn with a filled marker at its closed
    left end and a hollow marker at its open right end. Optional ``samples``
    ``(r, alpha)`` are drawn as small dots.
    """
    steps = []
    k = 1
    while True:
        left = float(endpoint_closed_form(k))
        right = 1.0 if k == 1 else float(endpoint_closed_form(k - 1))
        if right <= r_min:
            break
        if left <= r_max:
            steps.append((k, max(left, r_min), min(right, r_max), left >= r_min, right <= r_max))
        k += 1
    top = max(k for k, *_ in steps) if steps else 1
    c = _Canvas((r_min, r_max), (0.0, top + 1.0), width=640, height=420)
    c.line(r_min, 0, r_max, 0, stroke="black")
    c.line(r_min, 0, r_min, top + 1, stroke="black")
    y_every = max(1, top // 10)
    for a in range(0, top + 1, y_every):
        c.text(c.x(r_min) - 8, c.y(a) + 3, str(a), anchor="end", size=9)
    last_label = None
    for k, lo, hi, closed_left, open_right in steps:
        c.line(lo, k, hi, k, stroke="#1f4e9c", stroke_width="2")
        if closed_left:
            c.circle(lo, k, 3.5, fill="#1f4e9c")
            c.line(lo, 0, lo, k, stroke="#cccccc", stroke_dasharray="2 3")
            # Steps are walked right to left; skip labels that would overlap.
            if last_label is None or last_label - c.x(lo) >= 10:
                c.text(c.x(lo), c.y(0) + 14, f"R{k}={_num(lo)}", size=8, anchor="end", rotate=-45)
                last_label = c.x(lo)
        if open_right and hi < 1.0:
            c.circle(hi, k, 3.5, fill="white", stroke="#1f4e9c")
    for r, a in samples:
        c.circle(r, a, 1.0, fill="#d62728")
    c.text(640 / 2, MARGIN / 2, f"alpha(r) on [{_num(r_min)}, {_num(r_max)}]", size=13)
    c.text(640 / 2, 420 - 6, "r", size=11)
    c.text(14, 420 / 2, "alpha(r)", size=11, rotate=-90)
    return c.render()
