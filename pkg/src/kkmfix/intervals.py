"""Exact subsets of the real line split into rational/irrational slices.

``Interval`` is a nonempty real interval with optional infinite ends.
``ClassSet`` holds two slices, one per membership class: the set it
denotes is (union of rat-slice intervals restricted to the rationals)
united with (irr-slice restricted to the irrationals).  Slices are kept
in a canonical form, so structural equality is set equality:

- degenerate intervals whose point has the wrong class are dropped,
- finite endpoints of the wrong class are forced open,
- intervals are merged when they overlap, or touch at a point that
  either side includes or that the class cannot contain.
"""

from __future__ import annotations

from dataclasses import dataclass

from kkmfix.scalars import (
    ClassTag,
    QuadExt,
    as_scalar,
    class_of,
    format_scalar,
    irrational_between,
    simplest_rational_between,
)

__all__ = ["ClassSet", "Interval"]

_ZERO = QuadExt(0)


@dataclass(frozen=True)
class Interval:
    """Nonempty real interval; a ``None`` bound is an infinite end."""

    lo: QuadExt | None
    hi: QuadExt | None
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", as_scalar(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", as_scalar(self.hi))
        if self.lo is None and self.lo_closed:
            raise ValueError("interval closed at -inf")
        if self.hi is None and self.hi_closed:
            raise ValueError("interval closed at +inf")
        if self.lo is not None and self.hi is not None:
            if self.lo > self.hi:
                raise ValueError("backwards interval")
            if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
                raise ValueError("empty interval")

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, True, True)

    @classmethod
    def at_least(cls, lo) -> "Interval":
        return cls(lo, None, True, False)

    @classmethod
    def greater_than(cls, lo) -> "Interval":
        return cls(lo, None, False, False)

    @classmethod
    def at_most(cls, hi) -> "Interval":
        return cls(None, hi, False, True)

    @classmethod
    def less_than(cls, hi) -> "Interval":
        return cls(None, hi, False, False)

    @classmethod
    def all(cls) -> "Interval":
        return cls(None, None, False, False)

    @property
    def is_degenerate(self) -> bool:
        return self.lo is not None and self.hi is not None and self.lo == self.hi

    @property
    def is_bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def contains(self, x) -> bool:
        x = as_scalar(x)
        if self.lo is not None:
            if x < self.lo or (x == self.lo and not self.lo_closed):
                return False
        if self.hi is not None:
            if x > self.hi or (x == self.hi and not self.hi_closed):
                return False
        return True

    def closure(self) -> "Interval":
        return Interval(self.lo, self.hi, self.lo is not None, self.hi is not None)

    def map_affine(self, slope, intercept) -> "Interval":
        """Image under x -> slope*x + intercept."""
        if not slope:
            return Interval.point(intercept)
        lo_v = None if self.lo is None else slope * self.lo + intercept
        hi_v = None if self.hi is None else slope * self.hi + intercept
        if slope > 0:
            return Interval(lo_v, hi_v, self.lo_closed, self.hi_closed)
        return Interval(hi_v, lo_v, self.hi_closed, self.lo_closed)

    def __str__(self) -> str:
        if self.is_degenerate:
            return "{" + format_scalar(self.lo) + "}"
        lo_s = "-inf" if self.lo is None else format_scalar(self.lo)
        hi_s = "inf" if self.hi is None else format_scalar(self.hi)
        lob = "[" if self.lo_closed else "("
        hib = "]" if self.hi_closed else ")"
        return f"{lob}{lo_s}, {hi_s}{hib}"


def _lo_key(iv: Interval):
    if iv.lo is None:
        return (-1, _ZERO, 0)
    return (0, iv.lo, 0 if iv.lo_closed else 1)


def _hi_key(iv: Interval):
    if iv.hi is None:
        return (1, _ZERO, 0)
    return (0, iv.hi, 1 if iv.hi_closed else 0)


def _touches(a: Interval, b: Interval) -> bool:
    # a sorted before b by lo key; True when the union is one interval
    if a.hi is None or b.lo is None:
        return True
    if b.lo < a.hi:
        return True
    return b.lo == a.hi and (a.hi_closed or b.lo_closed)


def _span(a: Interval, b: Interval) -> Interval:
    if _hi_key(a) >= _hi_key(b):
        return a
    return Interval(a.lo, b.hi, a.lo_closed, b.hi_closed)


def _plain_union(ivs) -> tuple[Interval, ...]:
    items = sorted(ivs, key=_lo_key)
    out: list[Interval] = []
    for iv in items:
        if out and _touches(out[-1], iv):
            out[-1] = _span(out[-1], iv)
        else:
            out.append(iv)
    return tuple(out)


def _intersect_iv(a: Interval, b: Interval) -> Interval | None:
    if a.lo is None:
        lo, loc = b.lo, b.lo_closed
    elif b.lo is None or a.lo > b.lo:
        lo, loc = a.lo, a.lo_closed
    elif b.lo > a.lo:
        lo, loc = b.lo, b.lo_closed
    else:
        lo, loc = a.lo, a.lo_closed and b.lo_closed
    if a.hi is None:
        hi, hic = b.hi, b.hi_closed
    elif b.hi is None or a.hi < b.hi:
        hi, hic = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hic = b.hi, b.hi_closed
    else:
        hi, hic = a.hi, a.hi_closed and b.hi_closed
    if lo is not None and hi is not None:
        if lo > hi or (lo == hi and not (loc and hic)):
            return None
    return Interval(lo, hi, loc, hic)


def _plain_intersect(A, B) -> tuple[Interval, ...]:
    out = []
    for a in A:
        for b in B:
            r = _intersect_iv(a, b)
            if r is not None:
                out.append(r)
    return tuple(out)


def _plain_complement(ivs) -> tuple[Interval, ...]:
    ivs = _plain_union(ivs)
    if not ivs:
        return (Interval.all(),)
    out = []
    cur: QuadExt | None = None
    cur_closed = False
    for iv in ivs:
        if iv.lo is not None:
            if cur is None or cur < iv.lo or (
                cur == iv.lo and cur_closed and not iv.lo_closed
            ):
                out.append(Interval(cur, iv.lo, cur_closed, not iv.lo_closed))
        if iv.hi is None:
            return tuple(out)
        cur, cur_closed = iv.hi, not iv.hi_closed
    out.append(Interval(cur, None, cur_closed, False))
    return tuple(out)


def _snap(iv: Interval, tag: ClassTag) -> Interval | None:
    # drop wrong-class points, open wrong-class closed endpoints
    if iv.is_degenerate:
        return iv if class_of(iv.lo) is tag else None
    lo_c = iv.lo_closed and class_of(iv.lo) is tag
    hi_c = iv.hi_closed and class_of(iv.hi) is tag
    return Interval(iv.lo, iv.hi, lo_c, hi_c)


def _canonical_slice(ivs, tag: ClassTag) -> tuple[Interval, ...]:
    cleaned = []
    for iv in _plain_union(ivs):
        snapped = _snap(iv, tag)
        if snapped is not None:
            cleaned.append(snapped)
    out: list[Interval] = []
    for iv in cleaned:
        if out:
            cur = out[-1]
            # touch at a point the class cannot contain joins the runs
            if cur.hi == iv.lo and class_of(cur.hi) is not tag:
                out[-1] = Interval(cur.lo, iv.hi, cur.lo_closed, iv.hi_closed)
                continue
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class ClassSet:
    """Canonical two-slice subset of the line; equality is set equality."""

    rat: tuple[Interval, ...] = ()
    irr: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "rat", _canonical_slice(tuple(self.rat), ClassTag.RATIONAL)
        )
        object.__setattr__(
            self, "irr", _canonical_slice(tuple(self.irr), ClassTag.IRRATIONAL)
        )

    @classmethod
    def empty(cls) -> "ClassSet":
        return cls((), ())

    @classmethod
    def from_interval(cls, iv: Interval) -> "ClassSet":
        return cls((iv,), (iv,))

    @classmethod
    def rationals(cls, iv: Interval) -> "ClassSet":
        return cls((iv,), ())

    @classmethod
    def irrationals(cls, iv: Interval) -> "ClassSet":
        return cls((), (iv,))

    @classmethod
    def points(cls, xs) -> "ClassSet":
        ivs = tuple(Interval.point(x) for x in xs)
        return cls(ivs, ivs)

    def slice_of(self, tag: ClassTag) -> tuple[Interval, ...]:
        return self.rat if tag is ClassTag.RATIONAL else self.irr

    @property
    def is_empty(self) -> bool:
        return not self.rat and not self.irr

    @property
    def is_bounded(self) -> bool:
        return all(iv.is_bounded for iv in self.rat + self.irr)

    def contains(self, x) -> bool:
        x = as_scalar(x)
        ivs = self.rat if x.is_rational else self.irr
        return any(iv.contains(x) for iv in ivs)

    def union(self, other: "ClassSet") -> "ClassSet":
        return ClassSet(self.rat + other.rat, self.irr + other.irr)

    def intersect(self, other: "ClassSet") -> "ClassSet":
        return ClassSet(
            _plain_intersect(self.rat, other.rat),
            _plain_intersect(self.irr, other.irr),
        )

    def difference(self, other: "ClassSet") -> "ClassSet":
        return ClassSet(
            _plain_intersect(self.rat, _plain_complement(other.rat)),
            _plain_intersect(self.irr, _plain_complement(other.irr)),
        )

    def closure(self) -> "ClassSet":
        # a class slice is dense in each nondegenerate interval
        ivs = tuple(
            iv if iv.is_degenerate else iv.closure() for iv in self.rat + self.irr
        )
        return ClassSet(ivs, ivs)

    @property
    def is_closed(self) -> bool:
        return self == self.closure()

    @property
    def is_compact(self) -> bool:
        return self.is_bounded and self.is_closed

    def finite_points(self) -> tuple[QuadExt, ...] | None:
        """The members when the set is finite, else None."""
        pts = []
        for iv in self.rat + self.irr:
            if not iv.is_degenerate:
                return None
            pts.append(iv.lo)
        pts.sort()
        return tuple(pts)

    def pick(self) -> QuadExt | None:
        """Deterministic member of a nonempty set: from the first rat-slice
        interval (else the first irr-slice one) take a closed finite endpoint
        when there is one, otherwise an interior point of matching class."""
        for tag, ivs in ((ClassTag.RATIONAL, self.rat), (ClassTag.IRRATIONAL, self.irr)):
            if not ivs:
                continue
            iv = ivs[0]
            if iv.is_degenerate:
                return iv.lo
            if iv.lo is not None and iv.lo_closed:
                return iv.lo
            if iv.hi is not None and iv.hi_closed:
                return iv.hi
            lo, hi = iv.lo, iv.hi
            if lo is None and hi is None:
                lo, hi = QuadExt(-1), QuadExt(1)
            elif lo is None:
                lo = hi - 1
            elif hi is None:
                hi = lo + 1
            if tag is ClassTag.RATIONAL:
                return QuadExt(simplest_rational_between(lo, hi))
            return irrational_between(lo, hi)
        return None

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        # rat/irr intervals spanning the same values render once, plainly,
        # when together they cover the whole real interval
        irr_by_span = {(iv.lo, iv.hi): iv for iv in self.irr}
        paired = set()
        entries = []
        pts = []
        for iv in self.rat:
            if iv.is_degenerate:
                pts.append(iv.lo)
                continue
            j = irr_by_span.get((iv.lo, iv.hi))
            if j is not None:
                joined = Interval(
                    iv.lo,
                    iv.hi,
                    iv.lo_closed or j.lo_closed,
                    iv.hi_closed or j.hi_closed,
                )
                if (
                    _snap(joined, ClassTag.RATIONAL) == iv
                    and _snap(joined, ClassTag.IRRATIONAL) == j
                ):
                    paired.add(j)
                    entries.append((_lo_key(joined), str(joined)))
                    continue
            entries.append((_lo_key(iv), f"rat{iv}"))
        for iv in self.irr:
            if iv in paired:
                continue
            if iv.is_degenerate:
                pts.append(iv.lo)
            else:
                entries.append((_lo_key(iv), f"irr{iv}"))
        if pts:
            pts.sort()
            body = ", ".join(format_scalar(p) for p in pts)
            entries.append((_lo_key(Interval.point(pts[0])), "{" + body + "}"))
        entries.sort(key=lambda e: e[0])
        return " U ".join(text for _, text in entries)
