"""Built-in corpus of eleven worked example triples with their expected
verdicts, and a runner that checks every expectation.

Each entry records a triple of expression strings, the sharing checks
to run (mode, expected status, expected witness points) and optionally
quotient-transfer checks.  Witness points are compared as approximate
complex numbers so that near-coincident zero clusters, which are
reported as a single numeric point, still match.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from .local import SharingMode
from .region import Region
from .verdict import (
    Analyzer, SharingReport, TransferReport, check_sharing,
    verify_quotient_transfer,
)

INF = math.inf

_PI = math.pi
_K5 = (-2 * _PI, -_PI, 0.0, _PI, 2 * _PI)  # the k*pi points in the strip

DEFAULT_CORPUS_REGION = "-7,7,-1,1"

_WITNESS_TOL = 1e-6


@dataclass(frozen=True)
class SharingCheck:
    mode: SharingMode
    expected_status: str          # "shares" / "fails" / "undecided"
    witnesses: Optional[Tuple[complex, ...]] = None  # None: don't check


@dataclass(frozen=True)
class TransferCheck:
    mode: SharingMode
    expected_status: str          # a TRANSFER_* constant
    witnesses: Optional[Tuple[complex, ...]] = None


@dataclass(frozen=True)
class CorpusEntry:
    identifier: str
    f: str
    g: str
    alpha: str
    region: str = DEFAULT_CORPUS_REGION
    checks: Tuple[SharingCheck, ...] = ()
    transfers: Tuple[TransferCheck, ...] = ()


def _v(w) -> SharingMode:
    return SharingMode("vanishing", w)


def _w(w) -> SharingMode:
    return SharingMode("value", w)


def _entry10(m: int) -> CorpusEntry:
    s = f"sin(z)^{m + 1}"
    return CorpusEntry(
        identifier=f"example-10 (m={m})",
        f=f"{s}+{s}*exp(z^2)",
        g=f"{s}+sin(z)^{m + 2}*exp(z^2)",
        alpha=s,
        checks=(
            SharingCheck(_v(m), "shares"),
            SharingCheck(_w(m), "shares"),
            SharingCheck(_v(m + 1), "fails", _K5),
        ),
        transfers=(
            TransferCheck(_v(m), "transfer_fails", _K5),
        ),
    )


CORPUS: Tuple[CorpusEntry, ...] = (
    CorpusEntry(
        identifier="example-1",
        f="1/z+exp(z)", g="1/z-exp(z)/z", alpha="1/z",
        checks=(
            SharingCheck(_v(INF), "shares"),
            SharingCheck(_w(0), "fails", (0,)),
        ),
    ),
    CorpusEntry(
        identifier="example-2",
        f="z+z^2*exp(z)", g="z+z^3*exp(z)", alpha="z",
        checks=(SharingCheck(_v(0), "shares"),),
    ),
    CorpusEntry(
        identifier="example-2 (inverted)",
        f="1/(z+z^2*exp(z))", g="1/(z+z^3*exp(z))", alpha="1/z",
        checks=(SharingCheck(_v(0), "fails", (0,)),),
    ),
    CorpusEntry(
        identifier="example-3",
        f="1/(1/z+exp(z))", g="1/(1/z-exp(z)/z)", alpha="z",
        checks=(
            SharingCheck(_v(0), "fails", (0,)),
            SharingCheck(_w(0), "fails", (0,)),
        ),
    ),
    CorpusEntry(
        identifier="example-4",
        f="1/z+exp(z)", g="1/z+exp(z)/z", alpha="1/z",
        checks=(SharingCheck(_v(INF), "shares"),),
    ),
    CorpusEntry(
        identifier="example-4 (inverted)",
        f="1/(1/z+exp(z))", g="1/(1/z+exp(z)/z)", alpha="z",
        checks=(
            SharingCheck(_v(INF), "fails", (0,)),
            SharingCheck(_v(0), "shares"),
        ),
    ),
    CorpusEntry(
        identifier="example-5",
        f="1/z+exp(z)", g="1/z+exp(z)/z", alpha="1/z",
        transfers=(
            TransferCheck(_v(INF), "transfer_fails", (0,)),
            TransferCheck(_w(INF), "precondition_fails"),
        ),
    ),
    CorpusEntry(
        identifier="example-6",
        f="1/sin(z)+exp(z^2)", g="(1+exp(z^2))/sin(z)", alpha="1/sin(z)",
        checks=(SharingCheck(_v(INF), "shares"),),
        transfers=(TransferCheck(_v(INF), "transfer_fails", _K5),),
    ),
    CorpusEntry(
        identifier="example-7",
        f="1/z+exp(z)", g="1/z+z*exp(z)", alpha="1/z",
        checks=(
            SharingCheck(_w(0), "shares"),
            SharingCheck(_w(1), "shares"),
            SharingCheck(_w(INF), "fails", (0,)),
            SharingCheck(_v(0), "fails", (0,)),
        ),
    ),
    CorpusEntry(
        identifier="example-8",
        f="1/z+exp(z)", g="1/z+exp(z)/z", alpha="1/z",
        checks=(
            SharingCheck(_w(INF), "fails", (0,)),
            SharingCheck(_w(0), "shares"),
        ),
    ),
    CorpusEntry(
        identifier="example-9",
        f="sin(z)+sin(z)*exp(z^2)", g="sin(z)+sin(z)^2*exp(z^2)",
        alpha="sin(z)",
        checks=(
            SharingCheck(_v(0), "shares"),
            SharingCheck(_w(0), "shares"),
        ),
        transfers=(TransferCheck(_w(0), "transfer_fails", _K5),),
    ),
    _entry10(0),
    _entry10(1),
    _entry10(2),
    _entry10(3),
    CorpusEntry(
        identifier="example-11",
        f="1+exp(z^2)", g="1+exp(z^2)/sin(z)", alpha="1",
        checks=(
            SharingCheck(_w(INF), "shares"),
            SharingCheck(_v(INF), "shares"),
        ),
    ),
    CorpusEntry(
        identifier="example-11 (alpha-multiples)",
        f="sin(z)+sin(z)*exp(z^2)", g="sin(z)+exp(z^2)", alpha="sin(z)",
        checks=(
            SharingCheck(_v(0), "fails", _K5),
            SharingCheck(_w(0), "fails", _K5),
        ),
    ),
)


# ---------------------------------------------------------------------------
# Runner

@dataclass
class RowResult:
    identifier: str
    description: str
    outcome: str                 # "PASS" / "FAIL" / "UNDECIDED"
    detail: str = ""


@dataclass
class CorpusResult:
    rows: List[RowResult] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(r.outcome == "PASS" for r in self.rows)

    @property
    def any_fail(self) -> bool:
        return any(r.outcome == "FAIL" for r in self.rows)


def _witnesses_of(report: SharingReport) -> List[complex]:
    return sorted((complex(p.point.candidate.approx) for p in report.failures),
                  key=lambda z: (z.real, z.imag))


def _match_witnesses(actual: List[complex],
                     expected: Sequence[complex]) -> bool:
    exp = sorted((complex(w) for w in expected),
                 key=lambda z: (z.real, z.imag))
    if len(actual) != len(exp):
        return False
    return all(abs(a - b) < _WITNESS_TOL for a, b in zip(actual, exp))


def _row_for_check(entry: CorpusEntry, check: SharingCheck,
                   report: SharingReport) -> RowResult:
    desc = f"sharing {check.mode.describe()}"
    if report.status != check.expected_status:
        out = "UNDECIDED" if report.status == "undecided" else "FAIL"
        return RowResult(entry.identifier, desc, out,
                         f"expected {check.expected_status}, "
                         f"got {report.status}")
    if check.witnesses is not None:
        actual = _witnesses_of(report)
        if not _match_witnesses(actual, check.witnesses):
            return RowResult(entry.identifier, desc, "FAIL",
                             f"witnesses {actual} != expected "
                             f"{list(check.witnesses)}")
    return RowResult(entry.identifier, desc, "PASS")


def _row_for_transfer(entry: CorpusEntry, check: TransferCheck,
                      report: TransferReport) -> RowResult:
    desc = f"quotient transfer {check.mode.describe()}"
    if report.status != check.expected_status:
        out = "UNDECIDED" if report.status == "undecided" else "FAIL"
        return RowResult(entry.identifier, desc, out,
                         f"expected {check.expected_status}, "
                         f"got {report.status}")
    if check.witnesses is not None and report.conclusion is not None:
        actual = _witnesses_of(report.conclusion)
        if not _match_witnesses(actual, check.witnesses):
            return RowResult(entry.identifier, desc, "FAIL",
                             f"witnesses {actual} != expected "
                             f"{list(check.witnesses)}")
    return RowResult(entry.identifier, desc, "PASS")


def run_corpus(entries: Sequence[CorpusEntry] = CORPUS,
               analyzer: Optional[Analyzer] = None,
               echo: Optional[Callable[[str], None]] = None) -> CorpusResult:
    """Check every expectation of every entry; one result row per check."""
    from .expr import parse

    az = analyzer or Analyzer()
    result = CorpusResult()
    for entry in entries:
        f, g, alpha = parse(entry.f), parse(entry.g), parse(entry.alpha)
        region = Region.from_string(entry.region)
        analysis = az.analyze(f, g, alpha, region)
        for check in entry.checks:
            report = check_sharing(f, g, alpha, region, check.mode, analysis)
            row = _row_for_check(entry, check, report)
            result.rows.append(row)
            if echo:
                echo(_format_row(row))
        for tcheck in entry.transfers:
            treport = verify_quotient_transfer(f, g, alpha, region,
                                               tcheck.mode, az)
            row = _row_for_transfer(entry, tcheck, treport)
            result.rows.append(row)
            if echo:
                echo(_format_row(row))
    return result


def _format_row(row: RowResult) -> str:
    base = f"{row.outcome:9s} {row.identifier:28s} {row.description}"
    if row.detail:
        base += f"  [{row.detail}]"
    return base
