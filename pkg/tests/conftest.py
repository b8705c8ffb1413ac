"""Shared draw helpers for the seeded property suites."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from kkmfix.intervals import Interval
from kkmfix.scalars import QuadExt
from kkmfix.verdict import corpus_entry


def rand_fraction(rng: random.Random, span: int = 40, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def rand_quad(rng: random.Random, span: int = 40) -> QuadExt:
    b = rand_fraction(rng, span) if rng.random() < 0.5 else Fraction(0)
    return QuadExt(rand_fraction(rng, span), b)


def rand_point_in(rng: random.Random, iv: Interval, reach: int = 20) -> QuadExt:
    """A point of the interval, rational or irrational, small coefficients."""
    lo = iv.lo if iv.lo is not None else (iv.hi if iv.hi is not None else QuadExt(0)) - reach
    hi = iv.hi if iv.hi is not None else lo + reach
    width = hi - lo
    x = lo + width * Fraction(rng.randint(0, 64), 64)
    if rng.random() < 0.4:
        nudge = QuadExt(0, Fraction(1, 2 ** rng.randint(4, 8)))
        for candidate in (x + nudge, x - nudge):
            if iv.contains(candidate):
                return candidate
    if iv.contains(x):
        return x
    return lo + width / 2


@pytest.fixture(scope="session")
def corpus():
    return {n: corpus_entry(n) for n in range(1, 15)}
