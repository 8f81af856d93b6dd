"""Global sharing verdicts over a region, plus the Mobius-invariance
and quotient-transfer checks.

A triple (f, g, alpha) is analyzed once per region: candidate points
are located, each is classified by two independent routes (series
expansion at the exact snapped center, circle windings around the
numeric point), and the routes are reconciled.  Verdicts for any
sense/weight are then derived from the cached classifications.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import mpmath

from .constants import SymConst
from .errors import MeroshareError
from .expr import Expr, div, to_string
from .laurent import LocalOrder
from .local import (
    SENSE_VALUE, VERDICT_NOT_SHARED, VERDICT_SHARED, VERDICT_UNDECIDED,
    PointClassification, SharingMode, classify_point, local_verdict,
)
from .mobius import Mobius, apply_mobius
from .region import CandidatePoint, Region, locate_candidates

STATUS_SHARES = "shares"
STATUS_FAILS = "fails"
STATUS_UNDECIDED = "undecided"

MOBIUS_CONSISTENT = "consistent"
MOBIUS_VIOLATION = "violation"
MOBIUS_UNDECIDED = "undecided"

TRANSFER_HOLDS = "transfer_holds"
TRANSFER_FAILS = "transfer_fails"
TRANSFER_PRECONDITION_FAILS = "precondition_fails"
TRANSFER_UNDECIDED = "undecided"


@dataclass
class AnalyzedPoint:
    """A candidate point with its reconciled classification."""

    candidate: CandidatePoint
    classification: PointClassification
    cross_checked: bool  # both routes were decisive somewhere and agreed

    @property
    def label(self) -> str:
        if self.candidate.snapped:
            return str(self.candidate.location)
        z = self.candidate.approx
        return mpmath.nstr(z, 17)


@dataclass
class TripleAnalysis:
    f: Expr
    g: Expr
    alpha: Expr
    region: Region
    points: List[AnalyzedPoint]


def _merge_order(lau: LocalOrder, win: LocalOrder) -> Tuple[LocalOrder, bool]:
    """Reconcile the series-based and winding-based orders.

    Returns (order, conflict).  Decisive disagreement means the snapped
    center is not actually the located point, so the caller falls back
    to the numeric route wholesale."""
    if lau.is_decisive and win.is_decisive:
        if lau.signed_order != win.signed_order:
            return win, True
        # prefer the series result: it carries an exact value
        return lau, False
    if lau.is_decisive:
        return lau, False
    return win, False


def _merge_classifications(lau: PointClassification,
                           win: PointClassification
                           ) -> Tuple[Optional[PointClassification], bool]:
    """(merged classification, any cross-check happened); None when the
    routes conflict."""
    fields = ["ord_alpha", "ord_f_minus_alpha", "ord_g_minus_alpha",
              "ord_f", "ord_g", "ord_recip_f", "ord_recip_g"]
    merged: Dict[str, Optional[LocalOrder]] = {}
    checked = False
    for name in fields:
        lo: Optional[LocalOrder] = getattr(lau, name)
        wo: Optional[LocalOrder] = getattr(win, name)
        if lo is None and wo is None:
            merged[name] = None
            continue
        if lo is None:
            merged[name] = wo
            continue
        if wo is None:
            merged[name] = lo
            continue
        if lo.is_decisive and wo.is_decisive:
            checked = True
        m, conflict = _merge_order(lo, wo)
        if conflict:
            return None, checked
        merged[name] = m
    return PointClassification(point=lau.point, snapped=True,
                               **merged), checked


def _analyze_point(f: Expr, g: Expr, alpha: Expr,
                   cand: CandidatePoint) -> AnalyzedPoint:
    win_fn = cand.winding_order_fn()
    win = classify_point(f, g, alpha, cand.location, snapped=cand.snapped,
                         order_fn=win_fn)
    if not cand.snapped:
        return AnalyzedPoint(cand, win, cross_checked=False)
    lau = classify_point(f, g, alpha, cand.location, snapped=True)
    merged, checked = _merge_classifications(lau, win)
    if merged is None:
        # snapped center contradicts the located point: trust the
        # numeric route and demote the point to unsnapped
        cand.snapped = False
        cand.location = SymConst.from_point(cand.approx)
        win.snapped = False
        win.point = cand.location
        return AnalyzedPoint(cand, win, cross_checked=False)
    return AnalyzedPoint(cand, merged, cross_checked=checked)


class Analyzer:
    """Computes and caches per-triple analyses."""

    def __init__(self):
        self._cache: Dict[Tuple[str, str, str, Region], TripleAnalysis] = {}

    def analyze(self, f: Expr, g: Expr, alpha: Expr,
                region: Region) -> TripleAnalysis:
        key = (to_string(f), to_string(g), to_string(alpha), region)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        cands = locate_candidates(f, g, alpha, region)
        points = [_analyze_point(f, g, alpha, c) for c in cands]
        analysis = TripleAnalysis(f, g, alpha, region, points)
        self._cache[key] = analysis
        return analysis


_default_analyzer = Analyzer()


def analyze(f: Expr, g: Expr, alpha: Expr, region: Region) -> TripleAnalysis:
    return _default_analyzer.analyze(f, g, alpha, region)


# ---------------------------------------------------------------------------
# Sharing reports

@dataclass
class PointVerdict:
    point: AnalyzedPoint
    verdict: str


@dataclass
class SharingReport:
    mode: SharingMode
    region: Region
    status: str
    points: List[PointVerdict]

    @property
    def failures(self) -> List[PointVerdict]:
        return [p for p in self.points if p.verdict == VERDICT_NOT_SHARED]

    @property
    def undecided_points(self) -> List[PointVerdict]:
        return [p for p in self.points if p.verdict == VERDICT_UNDECIDED]


def check_sharing(f: Expr, g: Expr, alpha: Expr, region: Region,
                  mode: SharingMode,
                  analysis: Optional[TripleAnalysis] = None) -> SharingReport:
    """Do f and g share alpha over the region, under the given mode?"""
    if analysis is None:
        analysis = analyze(f, g, alpha, region)
    verdicts = [PointVerdict(p, local_verdict(p.classification, mode))
                for p in analysis.points]
    if any(v.verdict == VERDICT_NOT_SHARED for v in verdicts):
        status = STATUS_FAILS
    elif any(v.verdict == VERDICT_UNDECIDED for v in verdicts):
        status = STATUS_UNDECIDED
    else:
        status = STATUS_SHARES
    return SharingReport(mode, region, status, verdicts)


# ---------------------------------------------------------------------------
# Mobius invariance (value-sense sharing is a projective notion)

@dataclass
class MobiusReport:
    mobius: Mobius
    mode: SharingMode
    status: str
    base: SharingReport
    mapped: SharingReport


def _witness_set(report: SharingReport) -> List[complex]:
    return sorted((complex(p.point.candidate.approx)
                   for p in report.failures),
                  key=lambda z: (z.real, z.imag))


def _same_witnesses(a: List[complex], b: List[complex]) -> bool:
    if len(a) != len(b):
        return False
    return all(abs(x - y) < 1e-9 for x, y in zip(a, b))


def verify_mobius_invariance(f: Expr, g: Expr, alpha: Expr, region: Region,
                             mode: SharingMode, mobius: Mobius,
                             analyzer: Optional[Analyzer] = None
                             ) -> MobiusReport:
    """Value-sense sharing must be unchanged when f, g, alpha are all
    composed with the same Mobius map of the value sphere: same status
    and, on failure, the same witness points."""
    if mode.sense != SENSE_VALUE:
        raise MeroshareError(
            "Mobius invariance is a statement about value-sense sharing")
    az = analyzer or _default_analyzer
    base = check_sharing(f, g, alpha, region, mode,
                         az.analyze(f, g, alpha, region))
    tf = apply_mobius(mobius, f)
    tg = apply_mobius(mobius, g)
    ta = apply_mobius(mobius, alpha)
    mapped = check_sharing(tf, tg, ta, region, mode,
                           az.analyze(tf, tg, ta, region))
    if STATUS_UNDECIDED in (base.status, mapped.status):
        status = MOBIUS_UNDECIDED
    elif base.status != mapped.status:
        status = MOBIUS_VIOLATION
    elif base.status == STATUS_FAILS and not _same_witnesses(
            _witness_set(base), _witness_set(mapped)):
        status = MOBIUS_VIOLATION
    else:
        status = MOBIUS_CONSISTENT
    return MobiusReport(mobius, mode, status, base, mapped)


# ---------------------------------------------------------------------------
# Quotient transfer (sharing alpha vs. the quotients sharing 1)

@dataclass
class TransferReport:
    mode: SharingMode
    status: str
    premise: SharingReport
    conclusion: Optional[SharingReport]

    @property
    def counterexample_points(self) -> List[PointVerdict]:
        if self.conclusion is None:
            return []
        return self.conclusion.failures


def verify_quotient_transfer(f: Expr, g: Expr, alpha: Expr, region: Region,
                             mode: SharingMode,
                             analyzer: Optional[Analyzer] = None
                             ) -> TransferReport:
    """When f and g share alpha under the mode, do the quotients
    f/alpha and g/alpha share the constant 1 under the same mode?

    The transfer is not a theorem in general; this check reports
    whether it holds on the region and lists the witnesses when it
    breaks down."""
    az = analyzer or _default_analyzer
    premise = check_sharing(f, g, alpha, region, mode,
                            az.analyze(f, g, alpha, region))
    if premise.status == STATUS_UNDECIDED:
        return TransferReport(mode, TRANSFER_UNDECIDED, premise, None)
    if premise.status == STATUS_FAILS:
        return TransferReport(mode, TRANSFER_PRECONDITION_FAILS, premise, None)
    qf = div(f, alpha)
    qg = div(g, alpha)
    one = SymConst.one().expr
    conclusion = check_sharing(qf, qg, one, region, mode,
                               az.analyze(qf, qg, one, region))
    if conclusion.status == STATUS_SHARES:
        status = TRANSFER_HOLDS
    elif conclusion.status == STATUS_FAILS:
        status = TRANSFER_FAILS
    else:
        status = TRANSFER_UNDECIDED
    return TransferReport(mode, status, premise, conclusion)
