"""Set-coverage machinery behind the fixed-point arguments.

Each theorem's proof assigns to every point x a witness set G(x) of
candidate common points; the hull-coverage (KKM) property and a finite
common intersection are what the proofs actually use.  This module
computes those sets exactly, verifies coverage on finite subsets, and
builds the shrinking displacement-sublevel chain whose tail is the
fixed-point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .conditions import check_c1, check_c2, sublevel
from .intervals import ClassSet, Interval
from .mapping import MappingSpec
from .scalars import QuadExt, as_scalar, format_scalar


class GForm(Enum):
    """How the witness set at x is carved out of C.

    anchor: points no farther from x than from f(x);
    displacement: points at least the displacement of x away from f(x);
    gap(delta): points at least delta/2 away from f(x)."""

    ANCHOR = "anchor"
    DISPLACEMENT = "displacement"
    GAP = "gap"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GKind:
    form: GForm
    delta: QuadExt | None = None

    def __post_init__(self):
        if self.form is GForm.GAP:
            if self.delta is None:
                raise ValueError("the gap form needs a delta")
            d = as_scalar(self.delta)
            if d <= 0:
                raise ValueError("delta must be positive")
            object.__setattr__(self, "delta", d)
        elif self.delta is not None:
            raise ValueError("delta only applies to the gap form")

    @classmethod
    def anchor(cls) -> "GKind":
        return cls(GForm.ANCHOR)

    @classmethod
    def displacement(cls) -> "GKind":
        return cls(GForm.DISPLACEMENT)

    @classmethod
    def gap(cls, delta) -> "GKind":
        return cls(GForm.GAP, as_scalar(delta))

    def __str__(self) -> str:
        if self.form is GForm.GAP:
            return f"gap({format_scalar(self.delta)})"
        return str(self.form)


@dataclass(frozen=True)
class EmChainReport:
    """Sublevel sets at thresholds 1/m for m = 1..m_max.

    ``tail_intersection`` cuts the last level down to the exact fixed-point
    set (the infinite chain's limit); ``tail_equals_fixed_points`` records
    whether the last level alone already reached it."""

    levels: tuple[tuple[int, ClassSet, bool, bool], ...]
    nested: bool
    tail_intersection: ClassSet
    tail_equals_fixed_points: bool


def g_set(kind: GKind, spec: MappingSpec, x) -> ClassSet:
    """The witness set at x, exactly."""
    if kind.form is GForm.ANCHOR:
        return check_c1(spec, x)[0]
    if kind.form is GForm.DISPLACEMENT:
        return check_c2(spec, x)[0]
    x = as_scalar(x)
    if not spec.domain.contains(x):
        raise ValueError(f"{format_scalar(x)} outside domain")
    fx = spec.evaluate(x)
    half = kind.delta / 2
    ball = ClassSet.from_interval(Interval(fx - half, fx + half, False, False))
    return ClassSet.from_interval(spec.domain).difference(ball)


def verify_kkm(
    kind: GKind, spec: MappingSpec, points
) -> tuple[bool, QuadExt | None]:
    """Exact coverage of the hull [min, max] by the union of witness sets;
    on failure, a concrete hull point left uncovered."""
    pts = [as_scalar(p) for p in points]
    if not pts:
        raise ValueError("empty subset")
    union = ClassSet.empty()
    for p in pts:
        union = union.union(g_set(kind, spec, p))
    hull = ClassSet.from_interval(Interval.closed(min(pts), max(pts)))
    uncovered = hull.difference(union)
    if uncovered.is_empty:
        return True, None
    return False, uncovered.pick()


def intersection_witness(kind: GKind, spec: MappingSpec, sample) -> ClassSet:
    """Exact intersection of the witness sets over a finite sample; an
    over-approximation of the common point set that shrinks as the sample
    grows."""
    pts = [as_scalar(p) for p in sample]
    if not pts:
        raise ValueError("empty sample")
    out = g_set(kind, spec, pts[0])
    for p in pts[1:]:
        out = out.intersect(g_set(kind, spec, p))
    return out


def default_gap_delta(spec: MappingSpec) -> QuadExt | None:
    """Twice the displacement infimum when positive; None when the infimum
    is zero (then no gap separates the map from the identity and a caller
    must pick delta explicitly)."""
    bound = spec.inf_residual().value
    if bound > 0:
        return 2 * bound
    return None


def em_chain(spec: MappingSpec, m_max: int) -> EmChainReport:
    """Displacement sublevels at 1/1 >= 1/2 >= ... >= 1/m_max."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    fixed = spec.fixed_point_set()
    levels = []
    nested = True
    previous: ClassSet | None = None
    for m in range(1, m_max + 1):
        level, closed = sublevel(spec, Fraction(1, m))
        levels.append((m, level, not level.is_empty, closed))
        if previous is not None and not level.difference(previous).is_empty:
            nested = False
        previous = level
    tail = levels[-1][1]
    return EmChainReport(
        levels=tuple(levels),
        nested=nested,
        tail_intersection=tail.intersect(fixed),
        tail_equals_fixed_points=tail == fixed,
    )
