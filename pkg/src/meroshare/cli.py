"""Command-line front end.

Two subcommands: `corpus` runs the built-in example corpus and reports
PASS/FAIL per expectation; `analyze` runs a sharing analysis for one
triple, optionally with a Mobius-invariance check and a quotient
transfer check.  Machine-readable output is a JSON report; the printed
table is derived from the same data.

Exit codes: 0 all checks pass, 1 a failing verdict or violation,
2 undecided, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath

from . import config
from .corpus import CORPUS, run_corpus
from .errors import MeroshareError
from .expr import parse
from .local import PointClassification, SharingMode
from .mobius import Mobius
from .region import Region
from .verdict import (
    MOBIUS_CONSISTENT, MOBIUS_UNDECIDED, STATUS_SHARES, STATUS_UNDECIDED,
    TRANSFER_HOLDS, TRANSFER_UNDECIDED, Analyzer, MobiusReport,
    SharingReport, TransferReport, check_sharing, verify_mobius_invariance,
    verify_quotient_transfer,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3


def _parse_weight(text: str):
    if text.strip().lower() == "inf":
        return math.inf
    try:
        w = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "weight must be a nonnegative integer or 'inf'")
    if w < 0:
        raise argparse.ArgumentTypeError("weight must be nonnegative")
    return w


def _parse_mobius(text: str) -> Mobius:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("mobius must be 'a,b,c,d'")
    try:
        a, b, c, d = (Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            "mobius coefficients must be rationals")
    return Mobius.make(a, b, c, d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="meroshare",
        description="Decide whether two meromorphic functions share a "
                    "third small function on a rectangle, under the "
                    "vanishing-sense and value-sense definitions with "
                    "any weight.")
    p.add_argument("--precision", type=int, default=256, metavar="BITS",
                   help="working precision in bits (default 256)")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("corpus",
                        help="run the built-in example corpus")
    pc.add_argument("--json", metavar="PATH",
                    help="write the corpus results as JSON")

    pa = sub.add_parser("analyze", help="analyze one (f, g, alpha) triple")
    pa.add_argument("--f", required=True, help="expression for f")
    pa.add_argument("--g", required=True, help="expression for g")
    pa.add_argument("--alpha", required=True, help="expression for alpha")
    pa.add_argument("--region", default="-7,7,-1,1",
                    metavar="XMIN,XMAX,YMIN,YMAX",
                    help="rectangle with rational entries "
                         "(default -7,7,-1,1)")
    pa.add_argument("--sense", choices=("vanishing", "value"),
                    default="vanishing",
                    help="sharing sense (default vanishing)")
    pa.add_argument("--weight", type=_parse_weight, default=math.inf,
                    metavar="W",
                    help="sharing weight: 0, 1, 2, ... or 'inf' "
                         "(default inf)")
    pa.add_argument("--mobius", type=_parse_mobius, metavar="A,B,C,D",
                    help="also verify invariance under the map "
                         "w -> (a*w+b)/(c*w+d) (value sense only)")
    pa.add_argument("--transfer", action="store_true",
                    help="also check whether f/alpha and g/alpha share "
                         "the constant 1 under the same mode")
    pa.add_argument("--json", metavar="PATH",
                    help="write the report as JSON")
    # let values like "-2,2,-2,2" (region, mobius coefficients) parse as
    # option arguments rather than being mistaken for flags
    matcher = re.compile(r"^-\d[\d,./-]*$")
    for sp in (p, pc, pa):
        sp._negative_number_matcher = matcher
    return p


# ---------------------------------------------------------------------------
# JSON serialization

def _weight_json(w) -> Any:
    return "inf" if w == math.inf else int(w)


def _order_json(o) -> Optional[Dict[str, Any]]:
    if o is None:
        return None
    return {"kind": o.kind,
            "order": o.signed_order}


def _point_json(c: PointClassification, snapped: bool, label: str,
                verdict: str) -> Dict[str, Any]:
    return {
        "point": {"snapped": snapped, "value": label},
        "orders": {
            "alpha": _order_json(c.ord_alpha),
            "f_minus_alpha": _order_json(c.ord_f_minus_alpha),
            "g_minus_alpha": _order_json(c.ord_g_minus_alpha),
            "f": _order_json(c.ord_f),
            "g": _order_json(c.ord_g),
            "recip_f": _order_json(c.ord_recip_f),
            "recip_g": _order_json(c.ord_recip_g),
        },
        "verdict": verdict,
    }


def _region_json(r: Region) -> List[str]:
    return [str(r.xmin), str(r.xmax), str(r.ymin), str(r.ymax)]


def report_json(report: SharingReport) -> Dict[str, Any]:
    points = []
    witnesses = []
    for pv in report.points:
        ap = pv.point
        points.append(_point_json(ap.classification, ap.candidate.snapped,
                                  ap.label, pv.verdict))
        if pv.verdict == "not_shared":
            witnesses.append(ap.label)
    return {
        "mode": {"sense": report.mode.sense,
                 "weight": _weight_json(report.mode.weight)},
        "region": _region_json(report.region),
        "points": points,
        "global": {"status": report.status, "witnesses": witnesses},
        "diagnostics": {
            "precision_bits": config.current().precision_bits,
            "candidate_points": len(report.points),
        },
    }


def _mobius_json(rep: MobiusReport) -> Dict[str, Any]:
    return {
        "map": rep.mobius.describe(),
        "status": rep.status,
        "mapped_global": {
            "status": rep.mapped.status,
            "witnesses": [p.point.label for p in rep.mapped.failures],
        },
    }


def _transfer_json(rep: TransferReport) -> Dict[str, Any]:
    out: Dict[str, Any] = {"status": rep.status}
    if rep.conclusion is not None:
        out["witnesses"] = [p.point.label
                            for p in rep.counterexample_points]
    return out


# ---------------------------------------------------------------------------
# Commands

def _print_report(doc: Dict[str, Any], out) -> None:
    mode = doc["mode"]
    r = doc["region"]
    print(f"mode    {mode['sense']}/{mode['weight']}", file=out)
    print(f"region  [{r[0]},{r[1]}) x [{r[2]},{r[3]})", file=out)
    print(f"status  {doc['global']['status']}", file=out)
    if doc["global"]["witnesses"]:
        print(f"witness {', '.join(doc['global']['witnesses'])}", file=out)
    for pt in doc["points"]:
        orders = pt["orders"]
        def fmt(name):
            o = orders[name]
            if o is None:
                return "-"
            return str(o["order"]) if o["order"] is not None else o["kind"]
        print(f"  point {pt['point']['value']}: {pt['verdict']}"
              f"  (f-a: {fmt('f_minus_alpha')}, g-a: {fmt('g_minus_alpha')},"
              f" alpha: {fmt('alpha')}, 1/f-1/a: {fmt('recip_f')},"
              f" 1/g-1/a: {fmt('recip_g')})", file=out)


def _write_json(doc: Dict[str, Any], path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def cmd_analyze(args, out) -> int:
    try:
        f = parse(args.f)
        g = parse(args.g)
        alpha = parse(args.alpha)
        region = Region.from_string(args.region)
    except (MeroshareError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    mode = SharingMode(args.sense, args.weight)
    analyzer = Analyzer()
    try:
        report = check_sharing(f, g, alpha, region, mode,
                               analyzer.analyze(f, g, alpha, region))
        doc = report_json(report)
        statuses = [report.status]
        if args.mobius is not None:
            mrep = verify_mobius_invariance(f, g, alpha, region, mode,
                                            args.mobius, analyzer)
            doc["mobius"] = _mobius_json(mrep)
            statuses.append(
                STATUS_SHARES if mrep.status == MOBIUS_CONSISTENT
                else STATUS_UNDECIDED if mrep.status == MOBIUS_UNDECIDED
                else "fails")
        if args.transfer:
            trep = verify_quotient_transfer(f, g, alpha, region, mode,
                                            analyzer)
            doc["transfer"] = _transfer_json(trep)
            statuses.append(
                STATUS_SHARES if trep.status == TRANSFER_HOLDS
                else STATUS_UNDECIDED if trep.status == TRANSFER_UNDECIDED
                else "fails")
    except MeroshareError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    _print_report(doc, out)
    if "mobius" in doc:
        print(f"mobius  {doc['mobius']['map']}: {doc['mobius']['status']}",
              file=out)
    if "transfer" in doc:
        t = doc["transfer"]
        wit = (", witnesses " + ", ".join(t.get("witnesses", ()))
               if t.get("witnesses") else "")
        print(f"transfer {t['status']}{wit}", file=out)
    _write_json(doc, args.json)
    if any(s == STATUS_UNDECIDED for s in statuses):
        return EXIT_UNDECIDED
    if any(s not in (STATUS_SHARES,) for s in statuses):
        return EXIT_FAIL
    return EXIT_OK


def cmd_corpus(args, out) -> int:
    try:
        result = run_corpus(CORPUS, echo=lambda line: print(line, file=out))
    except MeroshareError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    doc = {
        "rows": [{"identifier": r.identifier, "check": r.description,
                  "outcome": r.outcome, "detail": r.detail}
                 for r in result.rows],
        "all_pass": result.all_pass,
    }
    _write_json(doc, args.json)
    n = len(result.rows)
    npass = sum(1 for r in result.rows if r.outcome == "PASS")
    print(f"{npass}/{n} checks passed", file=out)
    if result.all_pass:
        return EXIT_OK
    return EXIT_FAIL if result.any_fail else EXIT_UNDECIDED


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else 0
    config.set_precision(args.precision)
    with mpmath.workprec(config.current().precision_bits):
        if args.command == "corpus":
            return cmd_corpus(args, sys.stdout)
        return cmd_analyze(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
