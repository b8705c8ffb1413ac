"""kkmfix: exact verification toolkit for piecewise-affine interval self-maps."""

from .scalars import (
    KERNEL,
    SQRT2,
    ClassTag,
    QuadExt,
    Rational,
    as_scalar,
    class_of,
    dist,
    format_scalar,
    parse_scalar,
)
from .intervals import ClassSet, Interval
from .mapping import AffineExpr, MappingSpec, Piece, PointOverride, Violation
from .mapdef import ParseError, parse, serialize
from .conditions import (
    BKind,
    ConditionVerdict,
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
from .kkm import (
    EmChainReport,
    GForm,
    GKind,
    default_gap_delta,
    em_chain,
    g_set,
    intersection_witness,
    verify_kkm,
)
from .verdict import (
    CorpusEntry,
    TheoremId,
    TheoremVerdict,
    corpus_entry,
    run_corpus,
    run_theorem,
)
from .randmaps import FAMILIES, random_spec, random_specs
from .plotting import emit_plot, plot_window
from .cli import Report, main, run_command

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "SQRT2",
    "ClassTag",
    "QuadExt",
    "Rational",
    "as_scalar",
    "class_of",
    "dist",
    "format_scalar",
    "parse_scalar",
    "ClassSet",
    "Interval",
    "AffineExpr",
    "MappingSpec",
    "Piece",
    "PointOverride",
    "Violation",
    "ParseError",
    "parse",
    "serialize",
    "BKind",
    "ConditionVerdict",
    "SearchStrategy",
    "Status",
    "SubsetWitness",
    "b_value",
    "check_b3_strong",
    "check_b_subset",
    "check_c1",
    "check_c2",
    "check_c3",
    "check_onto",
    "decide_c1",
    "decide_c2",
    "falsify_b",
    "prove_b",
    "sublevel",
    "EmChainReport",
    "GForm",
    "GKind",
    "default_gap_delta",
    "em_chain",
    "g_set",
    "intersection_witness",
    "verify_kkm",
    "CorpusEntry",
    "TheoremId",
    "TheoremVerdict",
    "corpus_entry",
    "run_corpus",
    "run_theorem",
    "FAMILIES",
    "random_spec",
    "random_specs",
    "emit_plot",
    "plot_window",
    "Report",
    "main",
    "run_command",
    "__version__",
]
