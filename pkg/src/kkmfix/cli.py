"""Command-line front end: parse mapping files, run checks, emit plots.

Exit codes: 0 all checks favorable or matching, 1 a falsification or
mismatch, 2 usage or parse error.  Identical argv produce byte-identical
output; every scalar prints exactly (JSON mode round-trips through
parse_scalar).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .conditions import ConditionVerdict, SearchStrategy, Status, SubsetWitness
from .intervals import ClassSet
from .kkm import GForm, GKind, default_gap_delta, intersection_witness, verify_kkm
from .mapdef import ParseError, parse
from .mapping import MappingSpec
from .plotting import FORMATS, emit_plot
from .scalars import QuadExt, as_scalar, format_scalar, parse_scalar
from .verdict import TheoremId, TheoremVerdict, run_corpus, run_theorem


class UsageError(Exception):
    """Bad invocation; the message names the offending flag."""


@dataclass(frozen=True)
class Report:
    command: str
    inputs: str
    verdicts: dict
    exit_code: int
    rendered: str


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


_KINDS = {"g1": GForm.ANCHOR, "g2": GForm.DISPLACEMENT, "g3": GForm.GAP}


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument(
        "--json", action="store_true", help="structured report on stdout"
    )
    parser = _Parser(prog="kkmfix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", parents=[shared], help="run one theorem")
    check.add_argument("--map", required=True)
    check.add_argument(
        "--theorem", required=True, choices=[t.value for t in TheoremId]
    )
    check.add_argument("--budget", type=_nonneg, default=None)
    check.add_argument("--seed", type=_nonneg, default=0)

    fixed = sub.add_parser(
        "fixed-points", parents=[shared], help="exact fixed points"
    )
    fixed.add_argument("--map", required=True)

    kkm = sub.add_parser("kkm", parents=[shared], help="witness-set coverage")
    kkm.add_argument("--map", required=True)
    kkm.add_argument("--kind", required=True, choices=sorted(_KINDS))
    kkm.add_argument("--delta", default=None)
    kkm.add_argument("--points", required=True)

    corpus = sub.add_parser(
        "corpus", parents=[shared], help="run the built-in examples"
    )
    corpus.add_argument("--only", type=int, default=None)
    corpus.add_argument("--budget", type=_nonneg, default=None)
    corpus.add_argument("--seed", type=_nonneg, default=0)

    parsecmd = sub.add_parser(
        "parse", parents=[shared], help="validate a mapping file"
    )
    parsecmd.add_argument("--map", required=True)

    plot = sub.add_parser("plot", parents=[shared], help="render a mapping file")
    plot.add_argument("--map", required=True)
    plot.add_argument("--out", required=True)
    plot.add_argument("--format", choices=FORMATS, default="svg")
    plot.add_argument("--samples", type=_positive, default=101)
    return parser


def _load_spec(path: str, validate: bool = True) -> MappingSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"--map: {err}") from err
    try:
        return parse(text, validate=validate)
    except ParseError as err:
        raise UsageError(f"--map: {err}") from err


def _strategy(args) -> SearchStrategy:
    if getattr(args, "budget", None) is None:
        return SearchStrategy(seed=args.seed)
    return SearchStrategy(seed=args.seed, max_subsets=args.budget)


def _scalar(x) -> str:
    return format_scalar(as_scalar(x))


def _witness_payload(witness):
    if witness is None:
        return None
    if isinstance(witness, SubsetWitness):
        return {
            "points": [_scalar(p) for p in witness.points],
            "weights": (
                None
                if witness.weights is None
                else [_scalar(w) for w in witness.weights]
            ),
            "u": _scalar(witness.u),
        }
    if isinstance(witness, ClassSet):
        return str(witness)
    return _scalar(witness)


def _condition_payload(verdict: ConditionVerdict) -> dict:
    payload = {
        "status": verdict.status.value,
        "detail": verdict.detail,
        "witness": _witness_payload(verdict.witness),
    }
    if verdict.search_stats is not None:
        payload["search"] = {
            "subsets_checked": verdict.search_stats.subsets_checked,
            "points_tried": verdict.search_stats.points_tried,
        }
    return payload


def _theorem_payload(verdict: TheoremVerdict) -> dict:
    return {
        "theorem": verdict.theorem.value,
        "conditions": {
            key: _condition_payload(c) for key, c in verdict.conditions.items()
        },
        "fixed_point_set": str(verdict.fixed_point_set),
        "fixed_points": (
            None
            if verdict.fixed_points is None
            else [_scalar(p) for p in verdict.fixed_points]
        ),
        "consistent": verdict.consistent,
        "notes": verdict.notes,
    }


def _condition_lines(verdict: TheoremVerdict) -> list[str]:
    lines = []
    for key, cond in verdict.conditions.items():
        lines.append(f"  {key:<24}{cond.status.value:<14}{cond.detail}")
        witness = _witness_payload(cond.witness)
        if isinstance(witness, dict):
            weights = witness["weights"]
            parts = [f"u = {witness['u']}", f"points = {', '.join(witness['points'])}"]
            if weights is not None:
                parts.append(f"weights = {', '.join(weights)}")
            lines.append(f"  {'':<24}{'':<14}{'; '.join(parts)}")
        elif witness is not None and cond.status is Status.FALSIFIED:
            lines.append(f"  {'':<24}{'':<14}witness: {witness}")
    return lines


def _fixed_line(verdict: TheoremVerdict) -> str:
    if verdict.fixed_points is None:
        return f"fixed-point set (infinite): {verdict.fixed_point_set}"
    if not verdict.fixed_points:
        return "fixed points: (none)"
    return "fixed points: " + ", ".join(_scalar(p) for p in verdict.fixed_points)


def _cmd_check(args) -> Report:
    spec = _load_spec(args.map)
    theorem = TheoremId(args.theorem)
    strategy = _strategy(args)
    verdict = run_theorem(spec, theorem, strategy)
    exit_code = int(
        any(c.status is Status.FALSIFIED for c in verdict.conditions.values())
    )
    inputs = (
        f"map={args.map} theorem={theorem.value} "
        f"seed={strategy.seed} budget={strategy.max_subsets}"
    )
    payload = {"verdict": _theorem_payload(verdict)}
    lines = [
        f"check {theorem.value} on {args.map}"
        + (f" ({spec.label})" if spec.label else ""),
        f"seed {strategy.seed}, budget {strategy.max_subsets}",
        *_condition_lines(verdict),
        _fixed_line(verdict),
        f"consistent: {'yes' if verdict.consistent else 'NO'}",
    ]
    if verdict.notes:
        lines.append(f"notes: {verdict.notes}")
    return _report("check", inputs, payload, exit_code, args, lines)


def _cmd_fixed_points(args) -> Report:
    spec = _load_spec(args.map)
    fset = spec.fixed_point_set()
    points = fset.finite_points()
    payload = {
        "fixed_point_set": str(fset),
        "fixed_points": None if points is None else [_scalar(p) for p in points],
    }
    if points is None:
        lines = [f"fixed-point set (infinite): {fset}"]
    elif not points:
        lines = ["(none)"]
    else:
        lines = [", ".join(_scalar(p) for p in points)]
    return _report("fixed-points", f"map={args.map}", payload, 0, args, lines)


def _cmd_kkm(args) -> Report:
    spec = _load_spec(args.map)
    form = _KINDS[args.kind]
    delta = None
    if args.kind != "g3":
        if args.delta is not None:
            raise UsageError("--delta: only meaningful with --kind g3")
    else:
        if args.delta is not None:
            try:
                delta = parse_scalar(args.delta)
            except ValueError as err:
                raise UsageError(f"--delta: {err}") from err
        else:
            delta = default_gap_delta(spec)
            if delta is None:
                raise UsageError(
                    "--delta: required for --kind g3 (the map has no "
                    "displacement gap to default to)"
                )
        if delta <= 0:
            raise UsageError("--delta: must be positive")
    try:
        points = [
            parse_scalar(tok.strip())
            for tok in args.points.split(",")
            if tok.strip()
        ]
    except ValueError as err:
        raise UsageError(f"--points: {err}") from err
    if not points:
        raise UsageError("--points: expected at least one point")
    kind = GKind(form, delta)
    holds, uncovered = verify_kkm(kind, spec, points)
    witness = intersection_witness(kind, spec, points)
    payload = {
        "kind": args.kind,
        "delta": None if delta is None else _scalar(delta),
        "points": [_scalar(p) for p in points],
        "holds": holds,
        "uncovered": None if uncovered is None else _scalar(uncovered),
        "intersection": str(witness),
    }
    head = f"kkm {args.kind} on {args.map}: " + (
        "covers the hull" if holds else f"FAILS, uncovered {_scalar(uncovered)}"
    )
    lines = [
        head,
        f"points: {', '.join(_scalar(p) for p in points)}",
        f"intersection of witness sets: {witness}",
    ]
    if delta is not None:
        lines.insert(1, f"delta: {_scalar(delta)}")
    inputs = f"map={args.map} kind={args.kind} points={args.points}"
    return _report("kkm", inputs, payload, 0 if holds else 1, args, lines)


def _cmd_corpus(args) -> Report:
    indices = None
    if args.only is not None:
        if not 1 <= args.only <= 14:
            raise UsageError("--only: corpus index out of range 1..14")
        indices = [args.only]
    strategy = _strategy(args)
    results = run_corpus(strategy, indices)
    rows = []
    lines = [
        f"seed {strategy.seed}, budget {strategy.max_subsets}",
        f"{'#':>3}  {'theorem':<8}{'fixed points':<16}result",
    ]
    for entry, verdict, matched in results:
        fixed = (
            "(infinite)"
            if verdict.fixed_points is None
            else ", ".join(_scalar(p) for p in verdict.fixed_points) or "-"
        )
        rows.append(
            {
                "index": entry.index,
                "theorem": entry.theorem.value,
                "match": matched,
                "fixed_points": (
                    None
                    if verdict.fixed_points is None
                    else [_scalar(p) for p in verdict.fixed_points]
                ),
                "verdict": _theorem_payload(verdict),
            }
        )
        lines.append(
            f"{entry.index:>3}  {entry.theorem.value:<8}{fixed:<16}"
            + ("MATCH" if matched else "MISMATCH")
        )
    all_match = all(row["match"] for row in rows)
    lines.append(
        f"{sum(row['match'] for row in rows)}/{len(rows)} entries match"
    )
    payload = {"entries": rows, "all_match": all_match}
    inputs = (
        f"only={args.only} seed={strategy.seed} budget={strategy.max_subsets}"
    )
    return _report("corpus", inputs, payload, 0 if all_match else 1, args, lines)


def _cmd_parse(args) -> Report:
    spec = _load_spec(args.map, validate=False)
    problems = spec.validate()
    payload = {
        "label": spec.label,
        "domain": str(spec.domain),
        "pieces": len(spec.pieces),
        "overrides": len(spec.overrides),
        "violations": [
            {"kind": v.kind, "message": v.message} for v in problems
        ],
    }
    lines = [
        f"label: {spec.label or '(none)'}",
        f"domain: {spec.domain}",
        f"pieces: {len(spec.pieces)}, overrides: {len(spec.overrides)}",
    ]
    if problems:
        lines.append("violations:")
        lines.extend(f"  {v.kind}: {v.message}" for v in problems)
    else:
        lines.append("violations: none")
    exit_code = 1 if problems else 0
    return _report("parse", f"map={args.map}", payload, exit_code, args, lines)


def _cmd_plot(args) -> Report:
    spec = _load_spec(args.map)
    content = emit_plot(spec, args.format, args.samples)
    try:
        Path(args.out).write_text(content, encoding="utf-8")
    except OSError as err:
        raise UsageError(f"--out: {err}") from err
    payload = {
        "out": args.out,
        "format": args.format,
        "samples": args.samples,
        "bytes": len(content.encode()),
    }
    inputs = f"map={args.map} out={args.out} format={args.format} samples={args.samples}"
    lines = [f"wrote {args.out} ({args.format}, {payload['bytes']} bytes)"]
    return _report("plot", inputs, payload, 0, args, lines)


def _report(command, inputs, payload, exit_code, args, lines) -> Report:
    if args.json:
        body = {
            "command": command,
            "inputs": inputs,
            "verdicts": payload,
            "exit_code": exit_code,
        }
        rendered = json.dumps(body, indent=2)
    else:
        rendered = "\n".join(lines)
    return Report(command, inputs, payload, exit_code, rendered)


_COMMANDS = {
    "check": _cmd_check,
    "fixed-points": _cmd_fixed_points,
    "kkm": _cmd_kkm,
    "corpus": _cmd_corpus,
    "parse": _cmd_parse,
    "plot": _cmd_plot,
}


def run_command(argv) -> Report:
    """Parse argv and execute; raises UsageError on bad invocations."""
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


def main(argv=None) -> int:
    try:
        report = run_command(sys.argv[1:] if argv is None else argv)
    except UsageError as err:
        print(f"kkmfix: error: {err}", file=sys.stderr)
        return 2
    print(report.rendered)
    return report.exit_code
