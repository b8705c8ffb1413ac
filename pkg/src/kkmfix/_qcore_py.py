"""Exact arithmetic over the quadratic field Q(sqrt 2), pure-Python kernel.

A value is ``a + b*sqrt(2)`` with rational ``a``, ``b`` kept as reduced
integer pairs.  Every operation is exact; comparisons never round.  The
compiled twin ``kkmfix._qcore`` exposes the same interface.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

__all__ = ["QuadExt", "SQRT2"]

_SQRT2_FLOAT = 2.0 ** 0.5


def _norm2(n: int, d: int) -> tuple[int, int]:
    # reduced pair, d > 0
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def _f_add(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    return _norm2(n1 * d2 + n2 * d1, d1 * d2)


def _f_mul(n1: int, d1: int, n2: int, d2: int) -> tuple[int, int]:
    return _norm2(n1 * n2, d1 * d2)


def _sign_pq(p: int, q: int) -> int:
    # sign of p + q*sqrt(2) for integers p, q
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return 1 if q > 0 else -1
    if p > 0 and q > 0:
        return 1
    if p < 0 and q < 0:
        return -1
    # opposite signs: |p| vs |q|*sqrt2, squares never tie (sqrt2 irrational)
    lhs = p * p
    rhs = 2 * q * q
    assert lhs != rhs
    if lhs > rhs:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


def _ratpair(x) -> tuple[int, int]:
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    raise TypeError(f"rational component required, got {type(x).__name__}")


class QuadExt:
    """Element a + b*sqrt(2) of Q(sqrt 2); immutable, hashable, ordered."""

    __slots__ = ("_an", "_ad", "_bn", "_bd")

    def __init__(self, a=0, b=0):
        an, ad = _norm2(*_ratpair(a))
        bn, bd = _norm2(*_ratpair(b))
        object.__setattr__(self, "_an", an)
        object.__setattr__(self, "_ad", ad)
        object.__setattr__(self, "_bn", bn)
        object.__setattr__(self, "_bd", bd)

    @classmethod
    def _fast(cls, an: int, ad: int, bn: int, bd: int) -> "QuadExt":
        # trusted constructor: pairs already reduced, denominators > 0
        self = object.__new__(cls)
        object.__setattr__(self, "_an", an)
        object.__setattr__(self, "_ad", ad)
        object.__setattr__(self, "_bn", bn)
        object.__setattr__(self, "_bd", bd)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    # components

    @property
    def a(self) -> Fraction:
        return Fraction(self._an, self._ad)

    @property
    def b(self) -> Fraction:
        return Fraction(self._bn, self._bd)

    @property
    def is_rational(self) -> bool:
        return self._bn == 0

    def sign(self) -> int:
        return _sign_pq(self._an * self._bd, self._bn * self._ad)

    def conjugate(self) -> "QuadExt":
        return QuadExt._fast(self._an, self._ad, -self._bn, self._bd)

    def floor(self) -> int:
        p = self._an * self._bd
        q = self._bn * self._ad
        r = self._ad * self._bd
        if q >= 0:
            t = isqrt(2 * q * q)
        else:
            t = -isqrt(2 * q * q) - 1
        f = (p + t) // r
        while _sign_pq(p - (f + 1) * r, q) >= 0:
            f += 1
        while _sign_pq(p - f * r, q) < 0:
            f -= 1
        return f

    __floor__ = floor

    def __ceil__(self) -> int:
        return -(-self).floor()

    # arithmetic

    def __neg__(self) -> "QuadExt":
        return QuadExt._fast(-self._an, self._ad, -self._bn, self._bd)

    def __pos__(self) -> "QuadExt":
        return self

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    def _add(self, o: "QuadExt") -> "QuadExt":
        an, ad = _f_add(self._an, self._ad, o._an, o._ad)
        bn, bd = _f_add(self._bn, self._bd, o._bn, o._bd)
        return QuadExt._fast(an, ad, bn, bd)

    def _mul(self, o: "QuadExt") -> "QuadExt":
        # (a1 + b1 s)(a2 + b2 s) = a1 a2 + 2 b1 b2 + (a1 b2 + b1 a2) s
        n1, d1 = _f_mul(self._an, self._ad, o._an, o._ad)
        n2, d2 = _f_mul(2 * self._bn, self._bd, o._bn, o._bd)
        an, ad = _f_add(n1, d1, n2, d2)
        n3, d3 = _f_mul(self._an, self._ad, o._bn, o._bd)
        n4, d4 = _f_mul(self._bn, self._bd, o._an, o._ad)
        bn, bd = _f_add(n3, d3, n4, d4)
        return QuadExt._fast(an, ad, bn, bd)

    def _inverse(self) -> "QuadExt":
        # 1/(a + b s) = (a - b s)/(a^2 - 2 b^2)
        nn = self._an * self._an * self._bd * self._bd
        nn -= 2 * self._bn * self._bn * self._ad * self._ad
        if nn == 0:
            raise ZeroDivisionError("division by zero")
        nd = self._ad * self._ad * self._bd * self._bd
        an, ad = _f_mul(self._an, self._ad, nd, nn)
        bn, bd = _f_mul(-self._bn, self._bd, nd, nn)
        return QuadExt._fast(an, ad, bn, bd)

    def __add__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(-o)

    def __rsub__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else o._add(-self)

    def __mul__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._mul(o._inverse())

    def __rtruediv__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else o._mul(self._inverse())

    # order

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (
            self._an == o._an
            and self._ad == o._ad
            and self._bn == o._bn
            and self._bd == o._bd
        )

    def __lt__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(-o).sign() < 0

    def __le__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(-o).sign() <= 0

    def __gt__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(-o).sign() > 0

    def __ge__(self, other):
        o = _coerce(other)
        return NotImplemented if o is None else self._add(-o).sign() >= 0

    def __hash__(self):
        if self._bn == 0:
            return hash(Fraction(self._an, self._ad))
        return hash((self._an, self._ad, self._bn, self._bd))

    def __bool__(self):
        return self._an != 0 or self._bn != 0

    def __float__(self):
        return self._an / self._ad + _SQRT2_FLOAT * (self._bn / self._bd)

    def __reduce__(self):
        return (QuadExt, (self.a, self.b))

    def __str__(self):
        if self._bn == 0:
            return _fstr(self._an, self._ad)
        coef = "" if (self._bn, self._bd) in ((1, 1), (-1, 1)) else (
            _fstr(abs(self._bn), self._bd) + "*"
        )
        tail = coef + "sqrt2"
        if self._an == 0:
            return tail if self._bn > 0 else "-" + tail
        op = " + " if self._bn > 0 else " - "
        return _fstr(self._an, self._ad) + op + tail

    def __repr__(self):
        return f"QuadExt({_fstr(self._an, self._ad)}, {_fstr(self._bn, self._bd)})"


def _fstr(n: int, d: int) -> str:
    return str(n) if d == 1 else f"{n}/{d}"


def _coerce(x):
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, int):
        return QuadExt._fast(x, 1, 0, 1)
    if isinstance(x, Fraction):
        return QuadExt._fast(x.numerator, x.denominator, 0, 1)
    return None


SQRT2 = QuadExt(0, 1)
