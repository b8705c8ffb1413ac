# cython: language_level=3
"""Exact arithmetic over the quadratic field Q(sqrt 2), compiled kernel.

Same interface as the pure twin ``kkmfix._qcore_py``: values are
``a + b*sqrt(2)`` with rational components held as reduced integer
pairs, all operations exact.  Integers stay arbitrary-precision; the
compilation removes dispatch and attribute overhead on the hot paths
(arithmetic, sign, ordering).
"""

from fractions import Fraction
from math import gcd, isqrt

__all__ = ["QuadExt", "SQRT2"]

cdef double _SQRT2_FLOAT = 2.0 ** 0.5


cdef inline tuple _norm2(object n, object d):
    # reduced pair, d > 0
    if d < 0:
        n, d = -n, -d
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


cdef inline tuple _f_add(object n1, object d1, object n2, object d2):
    return _norm2(n1 * d2 + n2 * d1, d1 * d2)


cdef inline tuple _f_mul(object n1, object d1, object n2, object d2):
    return _norm2(n1 * n2, d1 * d2)


cdef int _sign_pq(object p, object q) except? -2:
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


cdef tuple _ratpair(object x):
    if isinstance(x, int):
        return x, 1
    if isinstance(x, Fraction):
        return x.numerator, x.denominator
    raise TypeError(f"rational component required, got {type(x).__name__}")


cdef str _fstr(object n, object d):
    return str(n) if d == 1 else f"{n}/{d}"


cdef class QuadExt:
    """Element a + b*sqrt(2) of Q(sqrt 2); immutable, hashable, ordered."""

    cdef object _an, _ad, _bn, _bd

    def __init__(self, a=0, b=0):
        an, ad = _ratpair(a)
        bn, bd = _ratpair(b)
        self._an, self._ad = _norm2(an, ad)
        self._bn, self._bd = _norm2(bn, bd)

    # components

    @property
    def a(self):
        return Fraction(self._an, self._ad)

    @property
    def b(self):
        return Fraction(self._bn, self._bd)

    @property
    def is_rational(self):
        return self._bn == 0

    def sign(self):
        return _sign_pq(self._an * self._bd, self._bn * self._ad)

    def conjugate(self):
        return _mk(self._an, self._ad, -self._bn, self._bd)

    def floor(self):
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

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return -(_neg(self).floor())

    # arithmetic

    def __neg__(self):
        return _mk(-self._an, self._ad, -self._bn, self._bd)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        cdef QuadExt a = _coerce(self)
        cdef QuadExt b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        return _add(a, b)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        cdef QuadExt a = _coerce(self)
        cdef QuadExt b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        return _add(a, _neg(b))

    def __rsub__(self, other):
        cdef QuadExt a = _coerce(other)
        if a is None:
            return NotImplemented
        return _add(a, _neg(self))

    def __mul__(self, other):
        cdef QuadExt a = _coerce(self)
        cdef QuadExt b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        return _mul(a, b)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        cdef QuadExt a = _coerce(self)
        cdef QuadExt b = _coerce(other)
        if a is None or b is None:
            return NotImplemented
        return _mul(a, _inverse(b))

    def __rtruediv__(self, other):
        cdef QuadExt a = _coerce(other)
        if a is None:
            return NotImplemented
        return _mul(a, _inverse(self))

    # order

    def __eq__(self, other):
        cdef QuadExt o = _coerce(other)
        if o is None:
            return NotImplemented
        return (
            self._an == o._an
            and self._ad == o._ad
            and self._bn == o._bn
            and self._bd == o._bd
        )

    def __lt__(self, other):
        cdef QuadExt o = _coerce(other)
        if o is None:
            return NotImplemented
        return _cmp(self, o) < 0

    def __le__(self, other):
        cdef QuadExt o = _coerce(other)
        if o is None:
            return NotImplemented
        return _cmp(self, o) <= 0

    def __gt__(self, other):
        cdef QuadExt o = _coerce(other)
        if o is None:
            return NotImplemented
        return _cmp(self, o) > 0

    def __ge__(self, other):
        cdef QuadExt o = _coerce(other)
        if o is None:
            return NotImplemented
        return _cmp(self, o) >= 0

    def __hash__(self):
        if self._bn == 0:
            return hash(Fraction(self._an, self._ad))
        return hash((self._an, self._ad, self._bn, self._bd))

    def __bool__(self):
        return self._an != 0 or self._bn != 0

    def __float__(self):
        return <double> (self._an / self._ad) + _SQRT2_FLOAT * <double> (self._bn / self._bd)

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


cdef inline QuadExt _mk(object an, object ad, object bn, object bd):
    # trusted constructor: pairs already reduced, denominators > 0
    cdef QuadExt self = QuadExt.__new__(QuadExt)
    self._an = an
    self._ad = ad
    self._bn = bn
    self._bd = bd
    return self


cdef QuadExt _coerce(object x):
    if isinstance(x, QuadExt):
        return <QuadExt> x
    if isinstance(x, int):
        return _mk(x, 1, 0, 1)
    if isinstance(x, Fraction):
        return _mk(x.numerator, x.denominator, 0, 1)
    return None


cdef inline QuadExt _neg(QuadExt x):
    return _mk(-x._an, x._ad, -x._bn, x._bd)


cdef QuadExt _add(QuadExt x, QuadExt y):
    an, ad = _f_add(x._an, x._ad, y._an, y._ad)
    bn, bd = _f_add(x._bn, x._bd, y._bn, y._bd)
    return _mk(an, ad, bn, bd)


cdef QuadExt _mul(QuadExt x, QuadExt y):
    # (a1 + b1 s)(a2 + b2 s) = a1 a2 + 2 b1 b2 + (a1 b2 + b1 a2) s
    n1, d1 = _f_mul(x._an, x._ad, y._an, y._ad)
    n2, d2 = _f_mul(2 * x._bn, x._bd, y._bn, y._bd)
    an, ad = _f_add(n1, d1, n2, d2)
    n3, d3 = _f_mul(x._an, x._ad, y._bn, y._bd)
    n4, d4 = _f_mul(x._bn, x._bd, y._an, y._ad)
    bn, bd = _f_add(n3, d3, n4, d4)
    return _mk(an, ad, bn, bd)


cdef QuadExt _inverse(QuadExt x):
    # 1/(a + b s) = (a - b s)/(a^2 - 2 b^2)
    nn = x._an * x._an * x._bd * x._bd
    nn -= 2 * x._bn * x._bn * x._ad * x._ad
    if nn == 0:
        raise ZeroDivisionError("division by zero")
    nd = x._ad * x._ad * x._bd * x._bd
    an, ad = _f_mul(x._an, x._ad, nd, nn)
    bn, bd = _f_mul(-x._bn, x._bd, nd, nn)
    return _mk(an, ad, bn, bd)


cdef int _cmp(QuadExt x, QuadExt y) except? -2:
    # sign of x - y without building the difference's reduced form
    n1, d1 = x._an * y._ad - y._an * x._ad, x._ad * y._ad
    n2, d2 = x._bn * y._bd - y._bn * x._bd, x._bd * y._bd
    return _sign_pq(n1 * d2, n2 * d1)


SQRT2 = QuadExt(0, 1)
