"""meroshare: decide whether two meromorphic functions share a third
small function on a rectangle.

A symbolic-numeric pipeline: closed-form expressions are parsed into a
small AST, every point a sharing definition can inspect is located by
argument-principle contour counting, each point is classified by two
independent routes (exact Laurent expansion at snapped centers, circle
windings at numeric points), and per-point verdicts are aggregated
into a region-level report for any sense/weight combination.
"""

from .config import Config, current, set_precision
from .constants import QQi, SymConst, ZeroResult
from .corpus import CORPUS, CorpusEntry, run_corpus
from .errors import (
    BoundaryEvent, DivisorValuationUnresolved, IdenticallyVanishing,
    InvalidExpressionError, MeroshareError, ParseError, RefinementFailed,
    ResidualTooLarge, SubdivisionBudgetExceeded, TruncationExhausted,
)
from .expr import Expr, parse, to_string
from .laurent import LocalOrder, local_order
from .local import (
    SENSE_VALUE, SENSE_VANISHING, VERDICT_NOT_SHARED, VERDICT_SHARED,
    VERDICT_UNDECIDED, PointClassification, SharingMode, classify_point,
    local_verdict,
)
from .mobius import Mobius, apply_mobius
from .region import (
    CandidatePoint, Region, locate_candidates, net_zero_pole_count,
    snap_point,
)
from .verdict import (
    MOBIUS_CONSISTENT, MOBIUS_UNDECIDED, MOBIUS_VIOLATION, STATUS_FAILS,
    STATUS_SHARES, STATUS_UNDECIDED, TRANSFER_FAILS, TRANSFER_HOLDS,
    TRANSFER_PRECONDITION_FAILS, TRANSFER_UNDECIDED, AnalyzedPoint,
    Analyzer, MobiusReport, SharingReport, TransferReport, TripleAnalysis,
    analyze, check_sharing, verify_mobius_invariance,
    verify_quotient_transfer,
)

__version__ = "0.1.0"

__all__ = [
    "Analyzer", "AnalyzedPoint", "BoundaryEvent", "CORPUS",
    "CandidatePoint", "Config", "CorpusEntry",
    "DivisorValuationUnresolved", "Expr", "IdenticallyVanishing",
    "InvalidExpressionError", "LocalOrder", "MOBIUS_CONSISTENT",
    "MOBIUS_UNDECIDED", "MOBIUS_VIOLATION", "MeroshareError", "Mobius",
    "MobiusReport", "ParseError", "PointClassification", "QQi",
    "RefinementFailed", "Region", "ResidualTooLarge", "SENSE_VALUE",
    "SENSE_VANISHING", "STATUS_FAILS", "STATUS_SHARES",
    "STATUS_UNDECIDED", "SharingMode", "SharingReport",
    "SubdivisionBudgetExceeded", "SymConst", "TRANSFER_FAILS",
    "TRANSFER_HOLDS", "TRANSFER_PRECONDITION_FAILS", "TRANSFER_UNDECIDED",
    "TransferReport", "TripleAnalysis", "TruncationExhausted",
    "VERDICT_NOT_SHARED", "VERDICT_SHARED", "VERDICT_UNDECIDED",
    "ZeroResult", "analyze", "apply_mobius", "check_sharing",
    "classify_point", "current", "local_order", "local_verdict",
    "locate_candidates", "net_zero_pole_count", "parse", "run_corpus",
    "set_precision", "snap_point", "to_string",
    "verify_mobius_invariance", "verify_quotient_transfer",
]
