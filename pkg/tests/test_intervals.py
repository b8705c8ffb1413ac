"""Interval and class-split set algebra: exact membership, Boolean ops,
closure, and compactness."""

import random
from fractions import Fraction

from kkmfix.intervals import ClassSet, Interval
from kkmfix.scalars import SQRT2, ClassTag, QuadExt, class_of

from conftest import rand_quad


def _rand_interval(rng) -> Interval:
    a, b = sorted((rand_quad(rng, span=12), rand_quad(rng, span=12)))
    if a == b:
        return Interval.point(a)
    return Interval(a, b, rng.random() < 0.5, rng.random() < 0.5)


def _rand_set(rng) -> ClassSet:
    out = ClassSet.empty()
    for _ in range(rng.randint(1, 3)):
        iv = _rand_interval(rng)
        pick = rng.random()
        if pick < 0.4:
            piece = ClassSet.from_interval(iv)
        elif pick < 0.7:
            piece = ClassSet.rationals(iv)
        else:
            piece = ClassSet.irrationals(iv)
        out = out.union(piece) if rng.random() < 0.7 else out.difference(piece)
    return out


def _probes(rng, count=24):
    return [rand_quad(rng, span=14) for _ in range(count)]


def test_interval_membership_pins():
    iv = Interval(QuadExt(0), QuadExt(10), True, False)
    assert iv.contains(0) and iv.contains(QuadExt(5, 1)) and not iv.contains(10)
    ray = Interval.at_least(3)
    assert ray.contains(10 ** 9) and not ray.contains(2)
    assert Interval.all().contains(SQRT2)
    assert str(Interval(QuadExt(0), None, False, False)) == "(0, inf)"


def test_interval_map_affine():
    iv = Interval(QuadExt(1), QuadExt(3), True, False)
    up = iv.map_affine(Fraction(2), Fraction(1))
    assert (up.lo, up.hi, up.lo_closed, up.hi_closed) == (3, 7, True, False)
    down = iv.map_affine(Fraction(-1), Fraction(0))
    assert (down.lo, down.hi, down.lo_closed, down.hi_closed) == (-3, -1, False, True)


def test_boolean_ops_agree_with_membership():
    rng = random.Random(41)
    for _ in range(300):
        a, b = _rand_set(rng), _rand_set(rng)
        union, inter, diff = a.union(b), a.intersect(b), a.difference(b)
        for x in _probes(rng):
            ina, inb = a.contains(x), b.contains(x)
            assert union.contains(x) == (ina or inb)
            assert inter.contains(x) == (ina and inb)
            assert diff.contains(x) == (ina and not inb)


def test_partition_identity():
    rng = random.Random(43)
    for _ in range(300):
        a, b = _rand_set(rng), _rand_set(rng)
        assert a.difference(b).union(a.intersect(b)) == a


def test_class_slices_are_disjoint():
    rng = random.Random(47)
    for _ in range(300):
        s = _rand_set(rng)
        for iv in s.slice_of(ClassTag.RATIONAL):
            assert not ClassSet.rationals(iv).is_empty
        x = s.pick()
        if x is not None:
            assert s.contains(x)
            tag = class_of(x)
            assert any(iv.contains(x) for iv in s.slice_of(tag))


def test_closure_and_compactness():
    rng = random.Random(53)
    for _ in range(200):
        s = _rand_set(rng)
        closed = s.closure()
        assert closed.closure() == closed
        assert s.difference(closed).is_empty  # s subset of closure
        assert closed.is_closed
        if s.is_compact:
            assert s.is_closed and s.is_bounded
    assert ClassSet.from_interval(Interval.closed(0, 1)).is_compact
    assert not ClassSet.from_interval(Interval.open(0, 1)).is_compact
    assert not ClassSet.from_interval(Interval.at_least(0)).is_compact
    assert not ClassSet.rationals(Interval.closed(0, 1)).is_closed


def test_rationals_need_irrational_closure():
    rats = ClassSet.rationals(Interval.closed(0, 2))
    closed = rats.closure()
    assert closed.contains(SQRT2) and not rats.contains(SQRT2)


def test_finite_points_and_points():
    s = ClassSet.points([QuadExt(1), QuadExt(0, 1), QuadExt(3)])
    assert s.finite_points() == (QuadExt(0, 1), QuadExt(1), QuadExt(3)) or set(
        s.finite_points()
    ) == {QuadExt(1), QuadExt(0, 1), QuadExt(3)}
    assert ClassSet.from_interval(Interval.open(0, 1)).finite_points() is None
    assert ClassSet.empty().finite_points() == ()
    assert ClassSet.empty().pick() is None


def test_pick_prefers_closed_finite_lo():
    s = ClassSet.from_interval(Interval.closed(2, 5))
    assert s.pick() == 2
    t = ClassSet.from_interval(Interval(QuadExt(2), QuadExt(5), False, True))
    assert t.pick() == 5
