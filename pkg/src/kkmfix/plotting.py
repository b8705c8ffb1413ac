"""Deterministic plot renderings of a mapping spec.

CSV tabulates both class branches and the displacement at evenly spaced
sample points; SVG draws one polyline per class branch per piece, the
identity line, and the finite fixed points.  Byte-identical output for
identical inputs.
"""

from __future__ import annotations

import csv
import io

from .intervals import Interval, _intersect_iv
from .mapping import MappingSpec
from .scalars import ClassTag, QuadExt, as_scalar, class_of, dist, format_scalar

FORMATS = ("svg", "csv")

_CSV_HEADER = (
    "x",
    "f_rational_branch",
    "f_irrational_branch",
    "residual",
    "x_exact",
    "f_rational_branch_exact",
    "f_irrational_branch_exact",
    "residual_exact",
)

_SIZE = 520.0
_PAD = 20.0


def plot_window(spec: MappingSpec) -> tuple[QuadExt, QuadExt]:
    """Bounded x-window: the domain, clipped to 20 units when one end is
    infinite and to [-10, 10] when both are."""
    lo, hi = spec.domain.lo, spec.domain.hi
    if lo is None and hi is None:
        return as_scalar(-10), as_scalar(10)
    if lo is None:
        return hi - 20, hi
    if hi is None:
        return lo, lo + 20
    return lo, hi


def _branch_value(spec: MappingSpec, x: QuadExt, tag: ClassTag) -> QuadExt | None:
    for piece in spec.pieces:
        expr = piece.branch_for(tag)
        if expr is not None and piece.over.contains(x):
            return expr.at(x)
    return None


def _map_value(spec: MappingSpec, x: QuadExt) -> QuadExt | None:
    """f(x) when defined: override first, then the branch for x's class."""
    if not spec.domain.contains(x):
        return None
    for o in spec.overrides:
        if o.at == x:
            return o.value
    return _branch_value(spec, x, class_of(x))


def _dec(value: QuadExt | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".10g")


def _exact(value: QuadExt | None) -> str:
    if value is None:
        return ""
    return format_scalar(value)


def _samples(spec: MappingSpec, count: int) -> list[QuadExt]:
    lo, hi = plot_window(spec)
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + step * i for i in range(count)]


def _csv_content(spec: MappingSpec, samples: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(_CSV_HEADER)
    for x in _samples(spec, samples):
        rat = _branch_value(spec, x, ClassTag.RATIONAL)
        irr = _branch_value(spec, x, ClassTag.IRRATIONAL)
        fx = _map_value(spec, x)
        res = dist(fx, x) if fx is not None else None
        writer.writerow(
            (
                _dec(x),
                _dec(rat),
                _dec(irr),
                _dec(res),
                _exact(x),
                _exact(rat),
                _exact(irr),
                _exact(res),
            )
        )
    return out.getvalue()


def _px(v: float, lo: float, hi: float) -> float:
    return _PAD + (v - lo) / (hi - lo) * (_SIZE - 2 * _PAD)


def _py(v: float, lo: float, hi: float) -> float:
    return _SIZE - _PAD - (v - lo) / (hi - lo) * (_SIZE - 2 * _PAD)


def _clip_y(x1, y1, x2, y2, lo, hi):
    """Clip the segment to lo <= y <= hi; endpoints already have x in window."""
    if y1 == y2:
        return (x1, y1, x2, y2) if lo <= y1 <= hi else None
    t0, t1 = 0.0, 1.0
    dy = y2 - y1
    for bound, keep_low in ((lo, dy > 0), (hi, dy < 0)):
        t = (bound - y1) / dy
        if keep_low:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    if t0 > t1:
        return None
    return (
        x1 + t0 * (x2 - x1),
        y1 + t0 * dy,
        x1 + t1 * (x2 - x1),
        y1 + t1 * dy,
    )


def _svg_content(spec: MappingSpec) -> str:
    wlo, whi = plot_window(spec)
    lo, hi = float(wlo), float(whi)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE:g}" height="{_SIZE:g}" '
        f'viewBox="0 0 {_SIZE:g} {_SIZE:g}">',
        f'<rect x="{_PAD:.2f}" y="{_PAD:.2f}" '
        f'width="{_SIZE - 2 * _PAD:.2f}" height="{_SIZE - 2 * _PAD:.2f}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        f'<line class="identity" x1="{_px(lo, lo, hi):.2f}" '
        f'y1="{_py(lo, lo, hi):.2f}" x2="{_px(hi, lo, hi):.2f}" '
        f'y2="{_py(hi, lo, hi):.2f}" stroke="gray" stroke-dasharray="4 4"/>',
    ]
    window = Interval.closed(wlo, whi)
    colors = {ClassTag.RATIONAL: "steelblue", ClassTag.IRRATIONAL: "firebrick"}
    for piece in spec.pieces:
        span = _intersect_iv(piece.over, window)
        if span is None or span.lo == span.hi:
            continue
        a, b = float(span.lo), float(span.hi)
        for tag in (ClassTag.RATIONAL, ClassTag.IRRATIONAL):
            expr = piece.branch_for(tag)
            if expr is None:
                continue
            seg = _clip_y(
                a, float(expr.at(span.lo)), b, float(expr.at(span.hi)), lo, hi
            )
            if seg is None:
                continue
            x1, y1, x2, y2 = seg
            lines.append(
                f'<polyline class="{tag}-branch" points="'
                f'{_px(x1, lo, hi):.2f},{_py(y1, lo, hi):.2f} '
                f'{_px(x2, lo, hi):.2f},{_py(y2, lo, hi):.2f}" '
                f'fill="none" stroke="{colors[tag]}" stroke-width="2"/>'
            )
    fixed = spec.fixed_point_set().finite_points()
    for p in fixed or ():
        v = float(p)
        if lo <= v <= hi:
            lines.append(
                f'<circle class="fixed-point" cx="{_px(v, lo, hi):.2f}" '
                f'cy="{_py(v, lo, hi):.2f}" r="4" fill="black"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_plot(spec: MappingSpec, format: str = "svg", samples: int = 101) -> str:
    """Render the spec as file content; raises ValueError on a bad format
    or a non-positive sample count."""
    if format not in FORMATS:
        raise ValueError(f"unknown plot format: {format!r}")
    if samples < 1:
        raise ValueError("samples must be positive")
    if format == "csv":
        return _csv_content(spec, samples)
    return _svg_content(spec)
