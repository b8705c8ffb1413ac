"""Per-theorem verdict assembly and the built-in worked-example corpus.

Five theorem shapes are supported; each one combines surjectivity, one
hull-coverage inequality, and either a compact-witness-set condition, a
lower-semicontinuity condition, or plain domain compactness.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .conditions import (
    BKind,
    ConditionVerdict,
    SearchStrategy,
    Status,
    check_c3,
    check_onto,
    decide_c1,
    decide_c2,
    falsify_b,
    prove_b,
)
from .intervals import ClassSet
from .mapdef import parse
from .mapping import MappingSpec
from .scalars import QuadExt


class TheoremId(Enum):
    T1 = "t1"
    COR3 = "cor3"
    T3 = "t3"
    COR4 = "cor4"
    T5 = "t5"

    def __str__(self) -> str:
        return self.value


# per theorem: domain must be compact (else closed suffices), the hull
# inequality kind and its condition key, and the extra side condition
_SHAPE: dict[TheoremId, tuple[bool, BKind, str, str | None]] = {
    TheoremId.T1: (False, BKind.ANCHOR, "kkm_anchor", "compact_anchor_set"),
    TheoremId.COR3: (True, BKind.ANCHOR, "kkm_anchor", None),
    TheoremId.T3: (False, BKind.DISPLACEMENT, "kkm_displacement",
                   "compact_displacement_set"),
    TheoremId.COR4: (True, BKind.DISPLACEMENT, "kkm_displacement", None),
    TheoremId.T5: (True, BKind.RESIDUAL, "kkm_residual", "residual_lsc"),
}

_EXTRA_CHECK = {
    "compact_anchor_set": decide_c1,
    "compact_displacement_set": decide_c2,
    "residual_lsc": check_c3,
}


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: TheoremId
    conditions: dict[str, ConditionVerdict]
    fixed_point_set: ClassSet
    fixed_points: tuple[QuadExt, ...] | None
    consistent: bool
    notes: str


def _check_domain(spec: MappingSpec, need_compact: bool) -> ConditionVerdict:
    C = ClassSet.from_interval(spec.domain)
    if need_compact:
        if C.is_compact:
            return ConditionVerdict(
                Status.PROVEN, None, "C is a compact convex interval"
            )
        why = "unbounded" if not C.is_bounded else "not closed"
        return ConditionVerdict(Status.FALSIFIED, None, f"C is {why}")
    if C.is_closed:
        return ConditionVerdict(Status.PROVEN, None, "C is a closed convex interval")
    return ConditionVerdict(Status.FALSIFIED, None, "C is not closed")


def run_theorem(
    spec: MappingSpec,
    theorem: TheoremId,
    strategy: SearchStrategy | None = None,
) -> TheoremVerdict:
    """Check every hypothesis of one theorem against the spec."""
    if not isinstance(theorem, TheoremId):
        raise ValueError(f"unknown theorem: {theorem!r}")
    strategy = strategy or SearchStrategy()
    need_compact, kind, b_key, extra_key = _SHAPE[theorem]

    conditions: dict[str, ConditionVerdict] = {}
    conditions["domain"] = _check_domain(spec, need_compact)
    conditions["onto"] = check_onto(spec)
    conditions[b_key] = prove_b(kind, spec) or falsify_b(kind, spec, strategy)
    if extra_key is not None:
        conditions[extra_key] = _EXTRA_CHECK[extra_key](spec)

    fset = spec.fixed_point_set()
    fpts = fset.finite_points()
    favorable = all(
        v.status is not Status.FALSIFIED for v in conditions.values()
    )
    consistent = (not favorable) or (not fset.is_empty)

    notes = []
    b_verdict = conditions[b_key]
    if b_verdict.status is Status.NOT_FALSIFIED:
        notes.append(
            f"{b_key} searched ({b_verdict.search_stats.subsets_checked} "
            f"subsets, seed {strategy.seed}), not proven"
        )
    if fpts is None:
        notes.append("fixed-point set is infinite")
    if theorem is TheoremId.T5 and not fset.is_empty:
        closed = "closed" if fset.is_closed else "NOT closed"
        notes.append(f"conclusion check: fixed-point set is {closed}")
    if not consistent:
        notes.append("CONTRADICTION: every hypothesis favorable, no fixed point")
    return TheoremVerdict(
        theorem=theorem,
        conditions=conditions,
        fixed_point_set=fset,
        fixed_points=fpts,
        consistent=consistent,
        notes="; ".join(notes),
    )


@dataclass(frozen=True)
class CorpusEntry:
    index: int
    spec: MappingSpec
    theorem: TheoremId
    expected: dict[str, bool]
    expected_fixed_points: tuple[QuadExt, ...]
    deviations: str


def _t1_expected(onto=True, hull=True, compact_set=True) -> dict[str, bool]:
    return {
        "domain": True,
        "onto": onto,
        "kkm_anchor": hull,
        "compact_anchor_set": compact_set,
    }


def _cor4_expected() -> dict[str, bool]:
    return {"domain": True, "onto": True, "kkm_displacement": True}


def _t5_expected(onto=True, hull=True, lsc=True) -> dict[str, bool]:
    return {
        "domain": True,
        "onto": onto,
        "kkm_residual": hull,
        "residual_lsc": lsc,
    }


_FAMILY_NOTE = (
    "one representative of a family: every self-map matching the stated "
    "sign and range constraints earns the same verdicts"
)

# index -> (theorem, expected, expected fixed points, deviations)
_EXPECTED: dict[int, tuple[TheoremId, dict[str, bool], tuple[int, ...], str]] = {
    1: (TheoremId.T1, _t1_expected(), (6,), _FAMILY_NOTE),
    2: (TheoremId.T1, _t1_expected(), (0, 5), ""),
    3: (TheoremId.T1, _t1_expected(onto=False), (), ""),
    4: (TheoremId.T1, _t1_expected(hull=False), (), ""),
    5: (TheoremId.T1, _t1_expected(compact_set=False), (), ""),
    6: (TheoremId.COR4, _cor4_expected(), (0, 10), _FAMILY_NOTE),
    7: (TheoremId.COR4, _cor4_expected(), (0, 10), _FAMILY_NOTE),
    8: (TheoremId.COR4, _cor4_expected(), (0, 10), ""),
    9: (TheoremId.T5, _t5_expected(), (5,), ""),
    10: (TheoremId.T5, _t5_expected(), (5,), ""),
    11: (TheoremId.T5, _t5_expected(), (5,), ""),
    12: (
        TheoremId.T5,
        _t5_expected(onto=False),
        (),
        "the two steps leave 10 unassigned; the entry completes the "
        "self-map with f(10) = 4",
    ),
    13: (TheoremId.T5, _t5_expected(lsc=False), (), ""),
    14: (TheoremId.T5, _t5_expected(hull=False), (), ""),
}


@lru_cache(maxsize=None)
def corpus_entry(n: int) -> CorpusEntry:
    """The built-in worked example n (1..14) with its expected verdicts."""
    if not 1 <= n <= 14:
        raise IndexError(f"corpus index out of range: {n}")
    text = (
        importlib.resources.files("kkmfix") / "data" / f"corpus{n:02d}.map"
    ).read_text(encoding="utf-8")
    theorem, expected, fixed, deviations = _EXPECTED[n]
    return CorpusEntry(
        index=n,
        spec=parse(text),
        theorem=theorem,
        expected=dict(expected),
        expected_fixed_points=tuple(QuadExt(p) for p in fixed),
        deviations=deviations,
    )


def _matches(entry: CorpusEntry, verdict: TheoremVerdict) -> bool:
    for key, want_holds in entry.expected.items():
        got = verdict.conditions[key].status
        if want_holds != (got is not Status.FALSIFIED):
            return False
    return verdict.fixed_points == entry.expected_fixed_points


def run_corpus(
    strategy: SearchStrategy | None = None,
    indices=None,
) -> list[tuple[CorpusEntry, TheoremVerdict, bool]]:
    """Run every corpus entry under its designated theorem."""
    out = []
    for n in indices if indices is not None else range(1, 15):
        entry = corpus_entry(n)
        verdict = run_theorem(entry.spec, entry.theorem, strategy)
        out.append((entry, verdict, _matches(entry, verdict)))
    return out
