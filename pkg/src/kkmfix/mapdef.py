"""Text format for mapping specs.

Line oriented, ``#`` starts a comment, blank lines ignored::

    label optional free text
    domain [0, inf)
    piece (0, 3] all: 0
    piece (3, inf) rational: 2 x - 6
    override 0 -> 12

Intervals use ``[``/``(`` brackets with ``-inf``/``inf`` for unbounded
ends; endpoint and override scalars use the textual Q(sqrt 2) form
(``5/2``, ``1 - 1/3*sqrt2``).  A piece's class is ``rational``,
``irrational``, or ``all`` (both classes, same expression).  The pieces
and override sources together must cover the domain, once per class;
``parse`` raises ParseError on malformed lines and, unless told not to,
on specs that fail ``MappingSpec.validate``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from kkmfix.intervals import Interval
from kkmfix.mapping import AffineExpr, MappingSpec, Piece, PointOverride
from kkmfix.scalars import format_scalar, parse_scalar

__all__ = ["ParseError", "parse", "serialize"]


class ParseError(ValueError):
    """A mapdef text rejection, located by 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


_RAT_TEXT = r"-?\d+(?:/\d+)?"
_PIECE_RE = re.compile(
    r"piece\s+(?P<interval>.+?)\s+(?P<cls>rational|irrational|all)\s*:\s*(?P<expr>.*)$"
)
_OVERRIDE_RE = re.compile(r"override\s+(?P<at>.+?)\s*->\s*(?P<value>.+?)\s*$")
_INTERVAL_RE = re.compile(
    r"(?P<lob>[\[\(])\s*(?P<lo>[^,]+?)\s*,\s*(?P<hi>[^,]+?)\s*(?P<hib>[\]\)])$"
)
_AFFINE_RE = re.compile(
    rf"(?:(?P<coef>{_RAT_TEXT}|-)\s*\*?\s*)?x(?:\s*(?P<op>[+-])\s*(?P<const>\d+(?:/\d+)?))?$"
    rf"|(?P<only>{_RAT_TEXT})$"
)


def _parse_endpoint(text: str, infinite_word: str, lineno: int, col: int):
    if text == infinite_word:
        return None
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None


def _parse_interval(text: str, lineno: int, col: int) -> Interval:
    m = _INTERVAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed interval {text!r}", lineno, col)
    lo = _parse_endpoint(m.group("lo"), "-inf", lineno, col + m.start("lo"))
    hi = _parse_endpoint(m.group("hi"), "inf", lineno, col + m.start("hi"))
    try:
        return Interval(lo, hi, m.group("lob") == "[", m.group("hib") == "]")
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None


def _frac(text: str, lineno: int, col: int) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", lineno, col) from None


def _parse_affine(text: str, lineno: int, col: int) -> AffineExpr:
    m = _AFFINE_RE.match(text)
    if m is None:
        raise ParseError(f"malformed affine expression {text!r}", lineno, col)
    if m.group("only") is not None:
        return AffineExpr(Fraction(0), _frac(m.group("only"), lineno, col))
    coef = m.group("coef")
    if coef is None:
        slope = Fraction(1)
    elif coef == "-":
        slope = Fraction(-1)
    else:
        slope = _frac(coef, lineno, col)
    const = Fraction(0)
    if m.group("op"):
        const = _frac(m.group("const"), lineno, col)
        if m.group("op") == "-":
            const = -const
    return AffineExpr(slope, const)


def _parse_scalar_at(text: str, lineno: int, col: int):
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise ParseError(str(exc), lineno, col) from None


def parse(text: str, validate: bool = True) -> MappingSpec:
    """Build a MappingSpec from mapdef text.

    With ``validate`` (the default), well-formedness violations raise
    ParseError pointing at the offending piece or override line."""
    domain: Interval | None = None
    domain_line = 0
    label = ""
    pieces: list[Piece] = []
    piece_lines: list[int] = []
    overrides: list[PointOverride] = []
    override_lines: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.strip()
        if not body:
            continue
        indent = len(line) - len(line.lstrip())
        word = body.split(None, 1)[0]
        if word == "label":
            label = body[len("label") :].strip()
        elif word == "domain":
            if domain is not None:
                raise ParseError("domain given twice", lineno, indent + 1)
            arg = body[len("domain") :].strip()
            col = indent + 1 + line.lstrip().find(arg) if arg else indent + 1
            if not arg:
                raise ParseError("domain needs an interval", lineno, indent + 1)
            domain = _parse_interval(arg, lineno, col)
            domain_line = lineno
        elif word == "piece":
            m = _PIECE_RE.match(body)
            if m is None:
                raise ParseError("malformed piece line", lineno, indent + 1)
            over = _parse_interval(
                m.group("interval"), lineno, indent + 1 + m.start("interval")
            )
            expr_text = m.group("expr").strip()
            if not expr_text:
                raise ParseError("piece needs an expression", lineno, indent + 1)
            expr = _parse_affine(expr_text, lineno, indent + 1 + m.start("expr"))
            cls = m.group("cls")
            pieces.append(
                Piece(
                    over,
                    expr if cls in ("rational", "all") else None,
                    expr if cls in ("irrational", "all") else None,
                )
            )
            piece_lines.append(lineno)
        elif word == "override":
            m = _OVERRIDE_RE.match(body)
            if m is None:
                raise ParseError("malformed override line", lineno, indent + 1)
            at = _parse_scalar_at(m.group("at"), lineno, indent + 1 + m.start("at"))
            value = _parse_scalar_at(
                m.group("value"), lineno, indent + 1 + m.start("value")
            )
            overrides.append(PointOverride(at, value))
            override_lines.append(lineno)
        else:
            raise ParseError(f"unknown directive {word!r}", lineno, indent + 1)

    if domain is None:
        raise ParseError("missing domain", max(1, len(text.splitlines())))
    if not pieces and not overrides:
        raise ParseError("no pieces given", domain_line)
    spec = MappingSpec(domain, tuple(pieces), tuple(overrides), label)
    if validate:
        problems = spec.validate()
        if problems:
            v = problems[0]
            if v.piece_index is not None:
                at_line = piece_lines[v.piece_index]
            elif v.override_index is not None:
                at_line = override_lines[v.override_index]
            else:
                at_line = domain_line
            raise ParseError(v.message, at_line)
    return spec


def _fmt_interval(iv: Interval) -> str:
    lo = "-inf" if iv.lo is None else format_scalar(iv.lo)
    hi = "inf" if iv.hi is None else format_scalar(iv.hi)
    lob = "[" if iv.lo_closed else "("
    hib = "]" if iv.hi_closed else ")"
    return f"{lob}{lo}, {hi}{hib}"


def serialize(spec: MappingSpec) -> str:
    """Mapdef text for a spec; parse inverts it for parser-producible
    specs (a piece holding two different branches becomes two lines)."""
    lines = []
    if spec.label:
        lines.append(f"label {spec.label}")
    lines.append(f"domain {_fmt_interval(spec.domain)}")
    for piece in spec.pieces:
        if (
            piece.rational_branch is not None
            and piece.rational_branch == piece.irrational_branch
        ):
            lines.append(f"piece {_fmt_interval(piece.over)} all: {piece.rational_branch}")
            continue
        if piece.rational_branch is not None:
            lines.append(
                f"piece {_fmt_interval(piece.over)} rational: {piece.rational_branch}"
            )
        if piece.irrational_branch is not None:
            lines.append(
                f"piece {_fmt_interval(piece.over)} irrational: {piece.irrational_branch}"
            )
    for o in spec.overrides:
        lines.append(f"override {format_scalar(o.at)} -> {format_scalar(o.value)}")
    return "\n".join(lines) + "\n"
