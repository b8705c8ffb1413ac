"""Hypothesis checkers: combination conditions over finite subsets,
compactness conditions, lower-semicontinuity, and sublevel sets."""

import random
from fractions import Fraction

import pytest

from kkmfix.conditions import (
    BKind,
    SearchStrategy,
    Status,
    SubsetWitness,
    b_value,
    check_b3_strong,
    check_b_subset,
    check_c1,
    check_c2,
    check_c3,
    check_onto,
    decide_c1,
    decide_c2,
    falsify_b,
    prove_b,
    sublevel,
)
from kkmfix.intervals import ClassSet, Interval
from kkmfix.scalars import QuadExt, dist

from conftest import rand_point_in


def _hull_points(rng, pts, count):
    lo, hi = min(pts), max(pts)
    span = hi - lo
    return [lo + span * Fraction(rng.randint(0, 512), 512) for _ in range(count)]


def test_b_value_pins(corpus):
    ex4 = corpus[4].spec
    # anchor form at the swapped endpoints: both images approach u = 6
    points = (QuadExt(0), QuadExt(Fraction(15, 2)))
    assert b_value(BKind.ANCHOR, ex4, points, QuadExt(6)) < 0
    ex1 = corpus[1].spec
    assert b_value(BKind.ANCHOR, ex1, (QuadExt(0), QuadExt(8)), QuadExt(4)) >= 0
    ex9 = corpus[9].spec
    assert b_value(BKind.RESIDUAL, ex9, (QuadExt(4), QuadExt(6)), QuadExt(5)) == 0


def test_check_b_subset_falsified_pin(corpus):
    ex14 = corpus[14].spec
    verdict = check_b_subset(BKind.RESIDUAL, ex14, (3, 7))
    assert verdict.status is Status.FALSIFIED
    assert verdict.witness.u == 5
    margin = ex14.residual(verdict.witness.u) - max(
        dist(ex14.evaluate(p), verdict.witness.u) for p in verdict.witness.points
    )
    assert margin == 2


def test_check_b_subset_proven_implies_nonnegative_b_value(corpus):
    rng = random.Random(71)
    for n, kind in ((1, BKind.ANCHOR), (2, BKind.ANCHOR), (6, BKind.DISPLACEMENT)):
        spec = corpus[n].spec
        for _ in range(5):
            pts = sorted(
                {rand_point_in(rng, spec.domain) for _ in range(rng.randint(2, 4))}
            )
            if len(pts) < 2:
                continue
            verdict = check_b_subset(kind, spec, pts)
            if verdict.status is Status.PROVEN:
                for u in _hull_points(rng, pts, 200):
                    assert b_value(kind, spec, tuple(pts), u) >= 0
            else:
                w = verdict.witness
                assert b_value(kind, spec, w.points, w.u) < 0


def test_falsify_b_pin_endpoint_swap(corpus):
    verdict = falsify_b(BKind.ANCHOR, corpus[4].spec)
    assert verdict.status is Status.FALSIFIED
    w = verdict.witness
    assert len(w.points) == 2
    assert w.points[0] == 0 and 5 < w.points[1] < 10
    assert w.weights is not None and sum(w.weights, QuadExt(0)) == 1
    assert all(weight > 0 for weight in w.weights)
    assert w.u == sum(
        (p * weight for p, weight in zip(w.points, w.weights)), QuadExt(0)
    )
    assert verdict.search_stats.subsets_checked > 0


def test_falsify_b_never_proves(corpus):
    strategy = SearchStrategy(max_subsets=60, random_points=16)
    verdict = falsify_b(BKind.RESIDUAL, corpus[9].spec, strategy)
    assert verdict.status is Status.NOT_FALSIFIED
    assert verdict.search_stats.subsets_checked <= 60


def test_prove_b_pins(corpus):
    assert prove_b(BKind.ANCHOR, corpus[1].spec).status is Status.PROVEN
    assert prove_b(BKind.ANCHOR, corpus[2].spec).status is Status.PROVEN
    assert prove_b(BKind.ANCHOR, corpus[5].spec).status is Status.PROVEN
    assert prove_b(BKind.DISPLACEMENT, corpus[6].spec).status is Status.PROVEN
    assert prove_b(BKind.ANCHOR, corpus[4].spec) is None  # genuinely false
    assert prove_b(BKind.RESIDUAL, corpus[9].spec) is None  # no residual prover


def test_check_b3_strong_pins(corpus):
    lhs, rhs, holds = check_b3_strong(
        corpus[14].spec, (3, 7), (Fraction(1, 2), Fraction(1, 2))
    )
    assert (lhs, rhs, holds) == (2, 0, False)
    lhs, rhs, holds = check_b3_strong(
        corpus[9].spec, (4, 6), (Fraction(1, 2), Fraction(1, 2))
    )
    assert (lhs, rhs, holds) == (0, 0, True)
    with pytest.raises(ValueError):
        check_b3_strong(corpus[9].spec, (4, 6), (Fraction(1, 2), Fraction(1, 4)))


def test_strong_b3_implies_b3_on_random_draws(corpus):
    rng = random.Random(73)
    for n in (9, 10, 11, 14):
        spec = corpus[n].spec
        for _ in range(50):
            size = rng.randint(2, 4)
            pts = sorted({rand_point_in(rng, spec.domain) for _ in range(size)})
            if len(pts) < 2:
                continue
            raw = [Fraction(rng.randint(1, 8)) for _ in pts]
            total = sum(raw)
            weights = [w / total for w in raw]
            lhs, rhs, holds = check_b3_strong(spec, pts, weights)
            if holds:
                u = sum((p * w for p, w in zip(pts, weights)), QuadExt(0))
                assert max(dist(spec.evaluate(p), u) for p in pts) >= spec.residual(u)


def test_check_c1_pins(corpus):
    ex2 = corpus[2].spec
    result, compact = check_c1(ex2, 6)
    assert result == ClassSet.from_interval(Interval.closed(0, 7))
    assert compact
    ex5 = corpus[5].spec
    result, compact = check_c1(ex5, 3)
    assert result == ClassSet.from_interval(Interval.at_least(Fraction(5, 2)))
    assert not compact
    result, compact = check_c1(corpus[9].spec, 5)  # fixed point: whole domain
    assert result == ClassSet.from_interval(corpus[9].spec.domain)
    assert compact


def test_decide_c1_pins(corpus):
    assert decide_c1(corpus[1].spec).status is Status.PROVEN
    assert decide_c1(corpus[9].spec).status is Status.PROVEN
    assert decide_c1(corpus[5].spec).status is Status.FALSIFIED


def test_check_c2_and_decide_pins(corpus):
    ex9 = corpus[9].spec
    result, compact = check_c2(ex9, 5)
    assert result == ClassSet.from_interval(ex9.domain) and compact
    assert decide_c2(ex9).status is Status.PROVEN
    assert decide_c2(corpus[5].spec).status is Status.FALSIFIED


def test_check_c3_pins(corpus):
    verdict = check_c3(corpus[13].spec)
    assert verdict.status is Status.FALSIFIED
    assert verdict.witness.contains(0)
    assert corpus[13].spec.residual(0) == 10
    assert check_c3(corpus[9].spec).status is Status.PROVEN
    assert check_c3(corpus[11].spec).status is Status.PROVEN


def test_sublevel_pin_and_grid_oracle(corpus):
    ex13 = corpus[13].spec
    level, closed = sublevel(ex13, Fraction(1, 2))
    expected = ClassSet.from_interval(
        Interval(QuadExt(0), QuadExt(Fraction(5, 2)), False, True)
    ).union(
        ClassSet.from_interval(
            Interval(QuadExt(Fraction(15, 2)), QuadExt(10), True, False)
        )
    )
    assert level == expected
    assert not closed
    for k in range(0, 101):
        x = QuadExt(Fraction(k, 10))
        assert level.contains(x) == (ex13.residual(x) <= Fraction(1, 2))


def test_sublevel_monotone_and_closedness(corpus):
    rng = random.Random(79)
    for n in (9, 11, 13, 14):
        spec = corpus[n].spec
        c3 = check_c3(spec)
        betas = sorted(
            Fraction(rng.randint(1, 60), rng.randint(1, 12)) for _ in range(50)
        )
        previous = None
        for beta in betas:
            level, closed = sublevel(spec, beta)
            if c3.status is Status.PROVEN:
                assert closed
            if previous is not None:
                assert previous.difference(level).is_empty  # smaller beta inside
            previous = level


def test_sublevel_requires_positive_beta(corpus):
    with pytest.raises(ValueError):
        sublevel(corpus[9].spec, 0)
    with pytest.raises(ValueError):
        sublevel(corpus[9].spec, Fraction(-1, 2))


def test_check_onto_pins(corpus):
    assert check_onto(corpus[2].spec).status is Status.PROVEN
    assert check_onto(corpus[4].spec).status is Status.PROVEN
    v3 = check_onto(corpus[3].spec)
    assert v3.status is Status.FALSIFIED
    assert not corpus[3].spec.image().contains(v3.witness)
    assert check_onto(corpus[12].spec).status is Status.FALSIFIED


def test_subset_witness_validation():
    with pytest.raises(ValueError):
        SubsetWitness(points=(QuadExt(0),), weights=(Fraction(2),), u=QuadExt(0))
    witness = SubsetWitness(
        points=(QuadExt(0), QuadExt(2)),
        weights=(Fraction(1, 2), Fraction(1, 2)),
        u=QuadExt(1),
    )
    assert witness.u == 1
