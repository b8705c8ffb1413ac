"""Scalar layer: exact Q(sqrt 2) numbers, class tags, text forms, pickers.

The arithmetic kernel is swappable: the compiled extension
``kkmfix._qcore`` when available, else the pure twin
``kkmfix._qcore_py``.  Set ``KKMFIX_KERNEL=pure`` or
``KKMFIX_KERNEL=compiled`` to force one.
"""

from __future__ import annotations

import os
import re
from enum import Enum
from fractions import Fraction

_forced = os.environ.get("KKMFIX_KERNEL")
if _forced == "pure":
    from kkmfix._qcore_py import SQRT2, QuadExt

    KERNEL = "pure"
elif _forced == "compiled":
    from kkmfix._qcore import SQRT2, QuadExt  # type: ignore[no-redef]

    KERNEL = "compiled"
elif _forced is not None:
    raise ImportError(f"KKMFIX_KERNEL must be 'pure' or 'compiled', got {_forced!r}")
else:
    try:
        from kkmfix._qcore import SQRT2, QuadExt  # type: ignore[no-redef]

        KERNEL = "compiled"
    except ImportError:
        from kkmfix._qcore_py import SQRT2, QuadExt  # type: ignore[no-redef]

        KERNEL = "pure"

__all__ = [
    "KERNEL",
    "QuadExt",
    "Rational",
    "SQRT2",
    "ClassTag",
    "Scalar",
    "ScalarLike",
    "as_scalar",
    "class_of",
    "dist",
    "format_scalar",
    "irrational_between",
    "parse_scalar",
    "simplest_rational_between",
]

Rational = Fraction
Scalar = QuadExt
ScalarLike = "int | Fraction | QuadExt"


class ClassTag(Enum):
    """Membership class of a scalar: rational or irrational."""

    RATIONAL = "rational"
    IRRATIONAL = "irrational"

    @property
    def flipped(self) -> "ClassTag":
        if self is ClassTag.RATIONAL:
            return ClassTag.IRRATIONAL
        return ClassTag.RATIONAL

    def __str__(self) -> str:
        return self.value


def as_scalar(x) -> QuadExt:
    """Coerce an int, Fraction, or QuadExt to QuadExt."""
    if isinstance(x, QuadExt):
        return x
    return QuadExt(x)


def class_of(x) -> ClassTag:
    return ClassTag.RATIONAL if as_scalar(x).is_rational else ClassTag.IRRATIONAL


def dist(x, y) -> QuadExt:
    """Absolute-value metric on the line."""
    return abs(as_scalar(x) - as_scalar(y))


_RAT = r"-?\d+(?:/\d+)?"
_URAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"(?:(?P<a>{_RAT})\s*(?P<op>[+-])\s*(?:(?P<bu>{_URAT})\s*\*\s*)?sqrt2"
    rf"|(?P<neg>-)?(?:(?P<bs>{_URAT})\s*\*\s*)?sqrt2"
    rf"|(?P<ra>{_RAT}))\s*$"
)


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse_scalar(text: str) -> QuadExt:
    """Parse the textual scalar form.

    Accepted: ``p/q``, ``sqrt2``, ``r/s*sqrt2``, and ``p/q +- [r/s*]sqrt2``
    (integer numerals allowed anywhere a fraction is).
    """
    m = _SCALAR_RE.match(text.strip())
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    if m.group("a") is not None:
        a = _rat(m.group("a"))
        b = _rat(m.group("bu")) if m.group("bu") else Fraction(1)
        if m.group("op") == "-":
            b = -b
        return QuadExt(a, b)
    if m.group("ra") is not None:
        return QuadExt(_rat(m.group("ra")))
    b = _rat(m.group("bs")) if m.group("bs") else Fraction(1)
    if m.group("neg"):
        b = -b
    return QuadExt(0, b)


def format_scalar(x) -> str:
    """Canonical text for a scalar; parse_scalar inverts it."""
    return str(as_scalar(x))


def simplest_rational_between(lo, hi) -> Fraction:
    """Simplest rational in the open interval (lo, hi).

    Simplest: least denominator, ties broken toward 0 then toward the
    negative (Stern-Brocot order).  Endpoints may be irrational.
    """
    lo = as_scalar(lo)
    hi = as_scalar(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo.sign() < 0 and hi.sign() > 0:
        return Fraction(0)
    if lo.sign() >= 0:
        return _simplest_nonneg(lo, hi)
    return -_simplest_nonneg(-hi, -lo)


def _simplest_nonneg(lo: QuadExt, hi: QuadExt) -> Fraction:
    # 0 <= lo < hi, open interval
    n = lo.floor() + 1
    if n < hi:
        return Fraction(n)
    f = lo.floor()
    frac_lo = lo - f
    frac_hi = hi - f
    # x = f + 1/y with y in the reciprocal interval
    if not frac_lo:
        y = Fraction((1 / frac_hi).floor() + 1)
    else:
        y = _simplest_nonneg(1 / frac_hi, 1 / frac_lo)
    return f + 1 / y


def irrational_between(lo, hi) -> QuadExt:
    """An irrational point of (lo, hi): simplest rational plus a small
    dyadic multiple of sqrt 2."""
    lo = as_scalar(lo)
    hi = as_scalar(hi)
    q = simplest_rational_between(lo, hi)
    step = SQRT2 / 2
    while not q + step < hi:
        step = step / 2
    return q + step
