"""Exact-arithmetic foundation: field, order, and metric axioms with zero
tolerance, class bookkeeping, and kernel selection."""

import random
import subprocess
import sys
from fractions import Fraction

import pytest

from kkmfix.scalars import (
    KERNEL,
    ClassTag,
    QuadExt,
    as_scalar,
    class_of,
    dist,
    format_scalar,
    irrational_between,
    parse_scalar,
    simplest_rational_between,
)

from conftest import rand_quad

N_AXIOM = 10_000


def test_field_axioms_exact():
    rng = random.Random(11)
    zero, one = QuadExt(0), QuadExt(1)
    for _ in range(N_AXIOM):
        x, y, z = rand_quad(rng), rand_quad(rng), rand_quad(rng)
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + zero == x and x * one == x
        assert x + (-x) == zero
        if x != zero:
            assert x * (one / x) == one


def test_order_axioms_exact():
    rng = random.Random(13)
    for _ in range(N_AXIOM):
        x, y, z = rand_quad(rng), rand_quad(rng), rand_quad(rng)
        assert (x < y) + (x == y) + (y < x) == 1
        if x <= y and y <= x:
            assert x == y
        lo, mid, hi = sorted((x, y, z))
        assert lo <= mid <= hi and lo <= hi
        if x < y:
            assert x + z < y + z


def test_metric_axioms_exact():
    rng = random.Random(17)
    zero = QuadExt(0)
    for _ in range(N_AXIOM):
        x, y, z = rand_quad(rng), rand_quad(rng), rand_quad(rng)
        d = dist(x, y)
        assert d >= zero
        assert (d == zero) == (x == y)
        assert d == dist(y, x)
        assert dist(x, z) <= dist(x, y) + dist(y, z)


def test_affine_images_preserve_class():
    rng = random.Random(19)
    for _ in range(2000):
        x = rand_quad(rng)
        slope = Fraction(rng.randint(-8, 8), rng.randint(1, 6))
        intercept = Fraction(rng.randint(-40, 40), rng.randint(1, 6))
        y = slope * x + intercept
        if slope == 0:
            assert class_of(y) is ClassTag.RATIONAL
        else:
            assert class_of(y) is class_of(x)


def test_class_of_is_exact():
    assert class_of(QuadExt(3)) is ClassTag.RATIONAL
    assert class_of(QuadExt(0, Fraction(1, 10 ** 9))) is ClassTag.IRRATIONAL
    assert class_of(QuadExt(5, 2) - QuadExt(0, 2)) is ClassTag.RATIONAL


def test_scalar_text_roundtrip():
    rng = random.Random(23)
    for _ in range(500):
        x = rand_quad(rng)
        assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(QuadExt(0)) == "0"
    assert parse_scalar("3 + 1/2*sqrt2") == QuadExt(3, Fraction(1, 2))
    assert parse_scalar("-sqrt2") == QuadExt(0, -1)


def test_between_pickers():
    rng = random.Random(29)
    for _ in range(500):
        a, b = sorted((rand_quad(rng), rand_quad(rng)))
        if a == b:
            continue
        q = simplest_rational_between(a, b)
        assert a < q < b and isinstance(q, Fraction)
        w = irrational_between(a, b)
        assert a < w < b and class_of(w) is ClassTag.IRRATIONAL


def test_as_scalar_coercions():
    assert as_scalar(3) == QuadExt(3)
    assert as_scalar(Fraction(1, 2)) == QuadExt(Fraction(1, 2))
    x = QuadExt(1, 1)
    assert as_scalar(x) is x


def test_kernel_selected_and_overridable():
    assert KERNEL in ("pure", "compiled")
    out = subprocess.run(
        [sys.executable, "-c", "from kkmfix.scalars import KERNEL; print(KERNEL)"],
        capture_output=True,
        text=True,
        env={"PATH": "", "KKMFIX_KERNEL": "pure", "PYTHONPATH": ":".join(sys.path)},
    )
    assert out.stdout.strip() == "pure"


def test_kernels_agree():
    from kkmfix import _qcore_py

    compiled = pytest.importorskip("kkmfix._qcore")
    rng = random.Random(31)
    for _ in range(2000):
        parts = [Fraction(rng.randint(-60, 60), rng.randint(1, 10)) for _ in range(4)]
        xp = _qcore_py.QuadExt(parts[0], parts[1])
        yp = _qcore_py.QuadExt(parts[2], parts[3])
        xc = compiled.QuadExt(parts[0], parts[1])
        yc = compiled.QuadExt(parts[2], parts[3])
        for op in ("__add__", "__sub__", "__mul__"):
            rp, rc = getattr(xp, op)(yp), getattr(xc, op)(yc)
            assert (rp.a, rp.b) == (rc.a, rc.b)
        if (yp.a, yp.b) != (0, 0):
            rp, rc = xp / yp, xc / yc
            assert (rp.a, rp.b) == (rc.a, rc.b)
        assert (xp < yp) == (xc < yc)
        assert (xp == yp) == (xc == yc)
        assert xp.sign() == xc.sign()
        assert str(xp) == str(xc)
