"""Hypothesis checks for the fixed-point theorems.

Everything here is decided exactly over Q(sqrt2): surjectivity of the
mapping, the three hull-coverage inequalities (anchor, displacement,
residual forms), the compact-witness-set conditions, and lower
semicontinuity of the displacement x -> |f(x) - x|.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .intervals import ClassSet, Interval, _intersect_iv
from .mapping import MappingSpec, _restrict
from .scalars import (
    ClassTag,
    QuadExt,
    SQRT2,
    as_scalar,
    class_of,
    dist,
    format_scalar,
)

_TAGS = (ClassTag.RATIONAL, ClassTag.IRRATIONAL)


class Status(Enum):
    PROVEN = "Proven"
    FALSIFIED = "Falsified"
    NOT_FALSIFIED = "NotFalsified"

    def __str__(self) -> str:
        return self.value


class BKind(Enum):
    """The three hull-coverage inequality forms.

    At a hull point u with sample points x_j the required inequality is
    max_j |f(x_j) - u| >= g, with g = |x_j - u| (anchor), g = |f(x_j) - x_j|
    (displacement), or g = |f(u) - u| (residual)."""

    ANCHOR = "anchor"
    DISPLACEMENT = "displacement"
    RESIDUAL = "residual"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SearchStats:
    subsets_checked: int
    points_tried: int


@dataclass(frozen=True)
class SubsetWitness:
    """A subset, optional convex weights, and the hull point they cover."""

    points: tuple[QuadExt, ...]
    weights: tuple[QuadExt, ...] | None
    u: QuadExt

    def __post_init__(self):
        pts = tuple(as_scalar(p) for p in self.points)
        if not pts:
            raise ValueError("witness needs at least one point")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "u", as_scalar(self.u))
        if self.weights is not None:
            ws = tuple(as_scalar(w) for w in self.weights)
            if len(ws) != len(pts):
                raise ValueError("one weight per point required")
            if any(w <= 0 for w in ws):
                raise ValueError("weights must be positive")
            if sum(ws, QuadExt(0)) != 1:
                raise ValueError("weights must sum to 1")
            object.__setattr__(self, "weights", ws)
        if not (min(pts) <= self.u <= max(pts)):
            raise ValueError("u must lie in the hull of the points")


@dataclass(frozen=True)
class ConditionVerdict:
    status: Status
    witness: object | None
    detail: str
    search_stats: SearchStats | None = None

    def __str__(self) -> str:
        return f"{self.status}: {self.detail}"


@dataclass(frozen=True)
class SearchStrategy:
    """Budget for the subset falsifier.

    ``max_subsets`` caps how many candidate subsets are analyzed; sizes
    above 2 are skipped because any violating subset contains a violating
    pair (dropping points keeps every term of the max negative, and the
    covered point is never a subset member at a violation)."""

    max_subset_size: int = 4
    random_points: int = 200
    seed: int = 0
    max_subsets: int | None = 2000

    def __post_init__(self):
        if self.max_subset_size < 0 or self.random_points < 0:
            raise ValueError("budget fields must be nonnegative")
        if self.max_subsets is not None and self.max_subsets < 0:
            raise ValueError("max_subsets must be nonnegative")


def _require_in_domain(spec: MappingSpec, x: QuadExt) -> None:
    if not spec.domain.contains(x):
        raise ValueError(f"{format_scalar(x)} outside domain")


def _solve_affine(slope, intercept, rel: str, within: Interval) -> Interval | None:
    """Solution set of slope*x + intercept <rel> 0 inside ``within``."""
    slope = as_scalar(slope)
    intercept = as_scalar(intercept)
    if not slope:
        hold = {
            "<": intercept < 0,
            "<=": intercept <= 0,
            ">": intercept > 0,
            ">=": intercept >= 0,
        }[rel]
        return within if hold else None
    root = -intercept / slope
    if slope < 0:
        rel = {"<": ">", "<=": ">=", ">": "<", ">=": "<="}[rel]
    half = {
        "<": Interval.less_than(root),
        "<=": Interval.at_most(root),
        ">": Interval.greater_than(root),
        ">=": Interval.at_least(root),
    }[rel]
    return _intersect_iv(within, half)


def _region(tag: ClassTag | None, iv: Interval | None) -> ClassSet:
    if iv is None:
        return ClassSet.empty()
    if tag is None:
        return ClassSet.from_interval(iv)
    return _restrict(tag, iv)


# ---------------------------------------------------------------------------
# surjectivity


def check_onto(spec: MappingSpec) -> ConditionVerdict:
    """Exact range check: Proven iff f(C) = C, else a missed point."""
    missed = ClassSet.from_interval(spec.domain).difference(spec.image())
    if missed.is_empty:
        return ConditionVerdict(Status.PROVEN, None, "range covers the whole domain")
    w = missed.pick()
    return ConditionVerdict(
        Status.FALSIFIED, w, f"{format_scalar(w)} has no preimage"
    )


# ---------------------------------------------------------------------------
# hull-coverage inequalities


def b_value(kind: BKind, spec: MappingSpec, points, u) -> QuadExt:
    """Signed criterion value at hull point u: nonnegative iff the
    inequality holds there for this subset."""
    pts = [as_scalar(p) for p in points]
    if not pts:
        raise ValueError("empty subset")
    u = as_scalar(u)
    for p in pts:
        _require_in_domain(spec, p)
    if not (min(pts) <= u <= max(pts)):
        raise ValueError(f"{format_scalar(u)} outside the hull")
    _require_in_domain(spec, u)
    best = None
    for p in pts:
        fp = spec.evaluate(p)
        if kind is BKind.ANCHOR:
            g = dist(p, u)
        elif kind is BKind.DISPLACEMENT:
            g = dist(fp, p)
        else:
            g = spec.residual(u)
        term = dist(fp, u) - g
        if best is None or term > best:
            best = term
    return best


def _cell_for(spec: MappingSpec, tag: ClassTag, a: QuadExt, b: QuadExt):
    mid = (a + b) / 2
    for iv, expr in spec.class_cells(tag):
        if iv.contains(mid):
            return expr
    return None


def _abs_affine(slope, intercept, probe: QuadExt):
    """(slope', intercept') of |slope*x + intercept| near probe, where the
    inner affine does not change sign."""
    if as_scalar(slope) * probe + intercept < 0:
        return -as_scalar(slope), -as_scalar(intercept)
    return as_scalar(slope), as_scalar(intercept)


def check_b_subset(kind: BKind, spec: MappingSpec, points) -> ConditionVerdict:
    """Exact decision of the inequality over the whole hull of one subset.

    The hull is cut at the subset points, their images, and (residual form)
    cell bounds, override sources and displacement roots; between cuts every
    term is affine, so the criterion is a max of affines whose minimum sits
    at a cut or a pairwise term crossing."""
    pts = sorted({as_scalar(p) for p in points})
    if not pts:
        raise ValueError("empty subset")
    for p in pts:
        _require_in_domain(spec, p)
    lo, hi = pts[0], pts[-1]
    images = [spec.evaluate(p) for p in pts]

    cuts = {lo, hi}
    cuts.update(p for p in pts)
    cuts.update(v for v in images if lo <= v <= hi)
    per_class = kind is BKind.RESIDUAL
    if per_class:
        for o in spec.overrides:
            if lo <= o.at <= hi:
                cuts.add(o.at)
        for tag in _TAGS:
            for iv, expr in spec.class_cells(tag):
                for end in (iv.lo, iv.hi):
                    if end is not None and lo <= end <= hi:
                        cuts.add(end)
                if expr.slope != 1:
                    root = expr.intercept / (1 - expr.slope)
                    if lo <= root <= hi:
                        cuts.add(as_scalar(root))
    ordered = sorted(cuts)

    # attained values at every cut point, via the true mapping semantics
    disps = [dist(fp, p) for p, fp in zip(pts, images)]

    def attained(u: QuadExt) -> QuadExt:
        if kind is BKind.ANCHOR:
            return max(dist(fp, u) - dist(p, u) for p, fp in zip(pts, images))
        if kind is BKind.DISPLACEMENT:
            return max(dist(fp, u) - g for fp, g in zip(images, disps))
        return max(dist(fp, u) for fp in images) - spec.residual(u)

    tried: dict[QuadExt, QuadExt] = {}
    for c in ordered:
        tried[c] = attained(c)
    falsified = any(v < 0 for v in tried.values())

    for a, b in zip(ordered, ordered[1:]):
        open_ab = Interval(a, b, False, False)
        for tag in _TAGS if per_class else (None,):
            probe = (a + b) / 2
            terms = []
            if per_class:
                expr = _cell_for(spec, tag, a, b)
                if expr is None:
                    continue
                gs, gi = _abs_affine(expr.slope - 1, expr.intercept, probe)
            for p, fp in zip(pts, images):
                fs, fi = _abs_affine(-1, fp, probe)
                if kind is BKind.ANCHOR:
                    ms, mi = _abs_affine(-1, p, probe)
                elif kind is BKind.DISPLACEMENT:
                    ms, mi = QuadExt(0), dist(fp, p)
                else:
                    ms, mi = gs, gi
                terms.append((fs - ms, fi - mi))

            def peak(u):
                return max(s * u + i for s, i in terms)

            # one term staying nonnegative on the cell floors the max
            if max(min(s * a + i, s * b + i) for s, i in terms) >= 0:
                continue
            probes = [a, b]
            for (s1, i1), (s2, i2) in itertools.combinations(terms, 2):
                if s1 != s2:
                    cross = (i2 - i1) / (s1 - s2)
                    if a < cross < b:
                        probes.append(cross)
            floor_value = min(peak(u) for u in probes)
            if floor_value >= 0:
                continue
            falsified = True
            # an actual violating point of the right class, strictly inside
            region = open_ab
            for s, i in terms:
                region = _solve_affine(s, i, "<", region)
                if region is None:
                    break
            spot = _region(tag, region).pick()
            if spot is not None and spot not in tried:
                tried[spot] = attained(spot)

    stats = SearchStats(subsets_checked=1, points_tried=len(tried))
    if not falsified:
        return ConditionVerdict(
            Status.PROVEN,
            None,
            "inequality holds on the whole hull "
            f"[{format_scalar(lo)}, {format_scalar(hi)}]",
            stats,
        )
    u_best, v_best = min(tried.items(), key=lambda kv: (kv[1], kv[0]))
    witness = SubsetWitness(tuple(pts), None, u_best)
    return ConditionVerdict(
        Status.FALSIFIED,
        witness,
        f"violated by {format_scalar(-v_best)} at u = {format_scalar(u_best)}",
        stats,
    )


def _window(dom: Interval) -> tuple[QuadExt, QuadExt]:
    if dom.lo is not None:
        wl = dom.lo
        wr = dom.hi if dom.hi is not None else wl + 20
    elif dom.hi is not None:
        wr = dom.hi
        wl = wr - 20
    else:
        wl, wr = QuadExt(-10), QuadExt(10)
    return wl, wr


def _candidate_pool(spec: MappingSpec, strategy: SearchStrategy) -> list[QuadExt]:
    dom = spec.domain
    pool: list[QuadExt] = []
    seen: set[QuadExt] = set()

    def add(x) -> None:
        x = as_scalar(x)
        if dom.contains(x) and x not in seen:
            seen.add(x)
            pool.append(x)

    for piece in spec.pieces:
        for end in (piece.over.lo, piece.over.hi):
            if end is not None:
                add(end)
    for o in spec.overrides:
        add(o.at)
    for end in (dom.lo, dom.hi):
        if end is not None:
            add(end)
    structural = list(pool)
    for p in structural:
        add(spec.evaluate(p))
    for a, b in zip(structural, structural[1:]):
        add((a + b) / 2)
    off = SQRT2 / 10
    for p in structural:
        add(p + off)
        add(p - off)

    rng = random.Random(strategy.seed)
    wl, wr = _window(dom)
    for _ in range(strategy.random_points):
        den = rng.randint(1, 64)
        lo_n = (wl * den).__floor__() + 1
        hi_n = (wr * den).__floor__()
        if lo_n > hi_n:
            continue
        add(Fraction(rng.randint(lo_n, hi_n), den))
    return pool


def falsify_b(
    kind: BKind, spec: MappingSpec, strategy: SearchStrategy | None = None
) -> ConditionVerdict:
    """Search for a violating (subset, hull point); never returns Proven.

    Only pairs are tried: any violating subset contains a violating pair,
    so larger subsets add no power."""
    strategy = strategy or SearchStrategy()
    checked = 0
    tried = 0
    if strategy.max_subset_size >= 2 and (
        strategy.max_subsets is None or strategy.max_subsets > 0
    ):
        pool = _candidate_pool(spec, strategy)
        for x1, x2 in itertools.combinations(pool, 2):
            if strategy.max_subsets is not None and checked >= strategy.max_subsets:
                break
            checked += 1
            verdict = check_b_subset(kind, spec, (x1, x2))
            tried += verdict.search_stats.points_tried
            if verdict.status is Status.FALSIFIED:
                u = verdict.witness.u
                a, b = sorted((x1, x2))
                w_b = (u - a) / (b - a)
                witness = SubsetWitness((a, b), (1 - w_b, w_b), u)
                return ConditionVerdict(
                    Status.FALSIFIED,
                    witness,
                    verdict.detail
                    + f" with points {format_scalar(a)}, {format_scalar(b)}",
                    SearchStats(checked, tried),
                )
    return ConditionVerdict(
        Status.NOT_FALSIFIED,
        None,
        "no violating subset found within budget",
        SearchStats(checked, tried),
    )


def check_b3_strong(
    spec: MappingSpec, points, weights
) -> tuple[QuadExt, QuadExt, bool]:
    """Weighted form at u = sum w_j x_j: |f(u) - u| <= sum w_j |f(x_j) - u|.

    Returns (lhs, rhs, holds), both sides exact.  Holding implies the
    residual inequality at u, since the weighted mean never exceeds the
    max."""
    pts = tuple(as_scalar(p) for p in points)
    ws = tuple(as_scalar(w) for w in weights)
    if len(pts) != len(ws):
        raise ValueError("one weight per point required")
    u = sum((w * p for w, p in zip(ws, pts)), QuadExt(0))
    SubsetWitness(pts, ws, u)  # validates weights and hull membership
    for p in pts:
        _require_in_domain(spec, p)
    lhs = spec.residual(u)
    rhs = sum((w * dist(spec.evaluate(p), u) for w, p in zip(ws, pts)), QuadExt(0))
    return lhs, rhs, lhs <= rhs


# ---------------------------------------------------------------------------
# exact special-case provers for the hull inequalities


def _never_where(spec: MappingSpec, rel: str) -> bool:
    """True iff no x in C has f(x) <rel> x."""
    for tag in _TAGS:
        for iv, expr in spec.class_cells(tag):
            region = _solve_affine(expr.slope - 1, expr.intercept, rel, iv)
            if not _region(tag, region).is_empty:
                return False
    ops = {"<": lambda a, b: a < b, ">": lambda a, b: a > b}[rel]
    for o in spec.overrides:
        if ops(o.value, o.at):
            return False
    return True


def _pivot_proves_anchor(spec: MappingSpec, p: QuadExt) -> bool:
    """Anchor inequality holds whenever f(x) <= x below p (allowing upward
    jumps to at least 2p - x) and f(x) >= x above p (mirror): the subset
    point straddling u on p's side supplies a nonnegative term."""
    sides = (
        (Interval.less_than(p), ">", "<"),
        (Interval.greater_than(p), "<", ">"),
    )
    for side, wrong_rel, jump_rel in sides:
        for tag in _TAGS:
            for iv, expr in spec.class_cells(tag):
                part = _intersect_iv(iv, side)
                if part is None:
                    continue
                bad = _solve_affine(expr.slope - 1, expr.intercept, wrong_rel, part)
                if bad is None:
                    continue
                # wrong-side values are still fine when they jump past 2p - x
                bad = _solve_affine(
                    expr.slope + 1, expr.intercept - 2 * p, jump_rel, bad
                )
                if not _region(tag, bad).is_empty:
                    return False
    for o in spec.overrides:
        if o.at < p and not (o.value <= o.at or o.value >= 2 * p - o.at):
            return False
        if o.at > p and not (o.value >= o.at or o.value <= 2 * p - o.at):
            return False
    return True


def prove_b(kind: BKind, spec: MappingSpec) -> ConditionVerdict | None:
    """Exact provers for two structural special cases; None when neither
    applies (the search falsifier is the fallback)."""
    if kind is BKind.RESIDUAL:
        return None
    below = _never_where(spec, ">")  # f <= id everywhere
    above = _never_where(spec, "<")  # f >= id everywhere
    if below or above:
        side = "f(x) <= x" if below else "f(x) >= x"
        extreme = "smallest" if below else "largest"
        return ConditionVerdict(
            Status.PROVEN,
            None,
            f"{side} on all of C; the {extreme} subset point covers every "
            "hull point",
        )
    if kind is BKind.DISPLACEMENT:
        return None
    pivots: list[QuadExt] = []
    fixed = spec.fixed_point_set()
    finite = fixed.finite_points()
    if finite is not None:
        pivots.extend(finite)
    else:
        for iv in fixed.slice_of(ClassTag.RATIONAL) + fixed.slice_of(
            ClassTag.IRRATIONAL
        ):
            for end in (iv.lo, iv.hi):
                if end is not None:
                    pivots.append(end)
    dom = spec.domain
    if dom.lo is not None and dom.lo_closed:
        pivots.append(dom.lo)
        pivots.append((dom.lo + spec.evaluate(dom.lo)) / 2)
    if dom.hi is not None and dom.hi_closed:
        pivots.append(dom.hi)
        pivots.append((dom.hi + spec.evaluate(dom.hi)) / 2)
    seen: set[QuadExt] = set()
    for p in pivots:
        if p in seen:
            continue
        seen.add(p)
        if _pivot_proves_anchor(spec, p):
            return ConditionVerdict(
                Status.PROVEN,
                None,
                f"monotone displacement signs around {format_scalar(p)}: "
                "f(x) <= x below it and f(x) >= x above it, up to jumps "
                "past its mirror image",
            )
    return None


# ---------------------------------------------------------------------------
# compact-witness-set conditions


def check_c1(spec: MappingSpec, xstar) -> tuple[ClassSet, bool]:
    """{y in C: |x* - y| <= |f(x*) - y|} and its exact compactness."""
    x = as_scalar(xstar)
    _require_in_domain(spec, x)
    fx = spec.evaluate(x)
    C = ClassSet.from_interval(spec.domain)
    if fx == x:
        out = C
    elif fx > x:
        out = C.intersect(ClassSet.from_interval(Interval.at_most((x + fx) / 2)))
    else:
        out = C.intersect(ClassSet.from_interval(Interval.at_least((x + fx) / 2)))
    return out, out.is_compact


def check_c2(spec: MappingSpec, xstar) -> tuple[ClassSet, bool]:
    """{y in C: |f(x*) - x*| <= |f(x*) - y|} and its exact compactness."""
    x = as_scalar(xstar)
    _require_in_domain(spec, x)
    fx = spec.evaluate(x)
    r = dist(fx, x)
    C = ClassSet.from_interval(spec.domain)
    if not r:
        return C, C.is_compact
    ball = ClassSet.from_interval(Interval(fx - r, fx + r, False, False))
    out = C.difference(ball)
    return out, out.is_compact


def _point_where(spec: MappingSpec, slope_shift, intercept_shift, rel: str):
    """Some x in C with f(x)+shifts <rel> 0, branches first, overrides last."""
    for tag in _TAGS:
        for iv, expr in spec.class_cells(tag):
            region = _solve_affine(
                expr.slope + slope_shift, expr.intercept + intercept_shift, rel, iv
            )
            spot = _region(tag, region).pick()
            if spot is not None:
                return spot
    ops = {
        "<": lambda v: v < 0,
        "<=": lambda v: v <= 0,
        ">": lambda v: v > 0,
        ">=": lambda v: v >= 0,
    }[rel]
    for o in spec.overrides:
        if ops(o.value + slope_shift * o.at + intercept_shift):
            return o.at
    return None


def decide_c1(spec: MappingSpec) -> ConditionVerdict:
    """Does some x* make check_c1's set compact?  Decided exactly: yes iff
    C is compact, or C has a closed finite lower end and f climbs somewhere
    (the set is then a closed bounded initial segment), or the mirror."""
    dom = spec.domain
    C = ClassSet.from_interval(dom)
    if C.is_compact:
        x = dom.lo
        return ConditionVerdict(
            Status.PROVEN, x, f"C is compact; any x* works, e.g. {format_scalar(x)}"
        )
    if dom.lo is not None and dom.lo_closed:
        x = _point_where(spec, -1, 0, ">")  # f(x) > x
        if x is not None:
            return ConditionVerdict(
                Status.PROVEN,
                x,
                f"f({format_scalar(x)}) > {format_scalar(x)} caps a closed "
                "bounded initial segment of C",
            )
    if dom.hi is not None and dom.hi_closed:
        x = _point_where(spec, -1, 0, "<")  # f(x) < x
        if x is not None:
            return ConditionVerdict(
                Status.PROVEN,
                x,
                f"f({format_scalar(x)}) < {format_scalar(x)} caps a closed "
                "bounded final segment of C",
            )
    return ConditionVerdict(
        Status.FALSIFIED,
        None,
        "no x* gives a compact set: every candidate set keeps an unbounded "
        "or non-closed side of C",
    )


def decide_c2(spec: MappingSpec) -> ConditionVerdict:
    """Does some x* make check_c2's set compact?  Exactly: yes iff C is
    compact, or C is bounded with one open end that some x* clears
    (2 f(x*) - x* past the open end empties the non-closed part)."""
    dom = spec.domain
    C = ClassSet.from_interval(dom)
    if C.is_compact:
        x = dom.lo
        return ConditionVerdict(
            Status.PROVEN, x, f"C is compact; any x* works, e.g. {format_scalar(x)}"
        )
    if dom.lo is None or dom.hi is None:
        return ConditionVerdict(
            Status.FALSIFIED,
            None,
            "C is unbounded, so the set keeps an unbounded ray for every x*",
        )
    if dom.lo_closed != dom.hi_closed:
        if dom.hi_closed:
            # clear the open lower end: 2 f(x) - x <= lo
            x = _point_where(spec, Fraction(-1, 2), -dom.lo / 2, "<=")
        else:
            # clear the open upper end: 2 f(x) - x >= hi
            x = _point_where(spec, Fraction(-1, 2), -dom.hi / 2, ">=")
        if x is not None:
            set_, compact = check_c2(spec, x)
            if compact:
                return ConditionVerdict(
                    Status.PROVEN,
                    x,
                    f"x* = {format_scalar(x)} empties the part at the open end",
                )
    return ConditionVerdict(
        Status.FALSIFIED,
        None,
        "every x* keeps a nonempty part ending at an open end of C",
    )


# ---------------------------------------------------------------------------
# displacement sublevels and lower semicontinuity


def sublevel(spec: MappingSpec, beta) -> tuple[ClassSet, bool]:
    """{x in C: |f(x) - x| <= beta}; the flag is closedness within C."""
    b = as_scalar(beta)
    if b <= 0:
        raise ValueError("beta must be positive")
    out = ClassSet.empty()
    for tag in _TAGS:
        for iv, expr in spec.class_cells(tag):
            region = _solve_affine(expr.slope - 1, expr.intercept - b, "<=", iv)
            if region is None:
                continue
            region = _solve_affine(expr.slope - 1, expr.intercept + b, ">=", region)
            out = out.union(_region(tag, region))
    hits = [o.at for o in spec.overrides if dist(o.value, o.at) <= b]
    if hits:
        out = out.union(ClassSet.points(hits))
    C = ClassSet.from_interval(spec.domain)
    closed = out.closure().intersect(C) == out
    return out, closed


def _approach_limits(
    spec: MappingSpec, p: QuadExt, side: str
) -> list[QuadExt]:
    """One-sided limits of |f(x) - x| at p, one per class with cells there."""
    out = []
    for tag in _TAGS:
        for iv, expr in spec.class_cells(tag):
            if side == "left":
                tight = iv.lo is None or iv.lo < p
                reach = iv.hi is None or iv.hi >= p
            else:
                tight = iv.hi is None or iv.hi > p
                reach = iv.lo is None or iv.lo <= p
            if tight and reach:
                out.append(abs(expr.at(p) - p))
                break
    return out


def check_c3(spec: MappingSpec) -> ConditionVerdict:
    """Lower semicontinuity of x -> |f(x) - x| on C, decided exactly.

    Failures arise either on two-class stretches where the other class's
    displacement dips below one's own, or at cell ends and override points
    where an approach limit dips below the value."""
    failures = ClassSet.empty()

    # class-mismatch failures in cell interiors
    for ivr, er in spec.class_cells(ClassTag.RATIONAL):
        for ivi, ei in spec.class_cells(ClassTag.IRRATIONAL):
            overlap = _intersect_iv(ivr, ivi)
            if overlap is None or overlap.is_degenerate:
                continue
            inner = Interval(overlap.lo, overlap.hi, False, False)
            pairs = (
                (er, ei, ClassTag.RATIONAL),
                (ei, er, ClassTag.IRRATIONAL),
            )
            for own, other, tag in pairs:
                failures = failures.union(
                    _abs_below_region(other, own, inner, tag)
                )

    # pointwise failures at cell ends, overrides and domain ends
    spots: set[QuadExt] = set()
    for tag in _TAGS:
        for iv, _ in spec.class_cells(tag):
            for end in (iv.lo, iv.hi):
                if end is not None and spec.domain.contains(end):
                    spots.add(end)
    for o in spec.overrides:
        spots.add(o.at)
    for end in (spec.domain.lo, spec.domain.hi):
        if end is not None and spec.domain.contains(end):
            spots.add(end)
    for p in sorted(spots):
        limits = _approach_limits(spec, p, "left") + _approach_limits(
            spec, p, "right"
        )
        if limits and min(limits) < spec.residual(p):
            failures = failures.union(ClassSet.points([p]))

    if failures.is_empty:
        return ConditionVerdict(
            Status.PROVEN, None, "the displacement is lower semicontinuous on C"
        )
    return ConditionVerdict(
        Status.FALSIFIED,
        failures,
        f"lower semicontinuity fails on {failures}",
    )


def _abs_below_region(low, high, iv: Interval, tag: ClassTag) -> ClassSet:
    """Points of class ``tag`` in iv where |low(x)| < |high(x)| for the two
    displacement affines low(x) = s x + c - x."""
    cuts = []
    for expr in (low, high):
        s = expr.slope - 1
        if s:
            root = as_scalar(expr.intercept / (1 - expr.slope))
            if iv.contains(root):
                cuts.append(root)
    ends = [iv.lo, *sorted(set(cuts)), iv.hi]
    out = ClassSet.empty()
    for a, b in zip(ends, ends[1:]):
        if a is not None and b is not None and a == b:
            continue
        seg = Interval(a, b, False, False)
        probe = _probe_point(seg)
        ls, li = _abs_affine(low.slope - 1, low.intercept, probe)
        hs, hi_ = _abs_affine(high.slope - 1, high.intercept, probe)
        region = _solve_affine(ls - hs, li - hi_, "<", seg)
        out = out.union(_region(tag, region))
    for r in cuts:
        if abs(low.at(r) - r) < abs(high.at(r) - r):
            out = out.union(_region(tag, Interval.point(r)))
    return out


def _probe_point(iv: Interval) -> QuadExt:
    if iv.lo is None and iv.hi is None:
        return QuadExt(0)
    if iv.lo is None:
        return iv.hi - 1
    if iv.hi is None:
        return iv.lo + 1
    return (iv.lo + iv.hi) / 2
