"""Zero and pole location inside a rectangle, by the argument principle.

The pipeline: split every relevant function into syntactically entire
numerator/denominator parts, count zeros of each part in the rectangle
by tracking the argument of its boundary values, subdivide until each
cell isolates one point, refine with a multiplicity-aware Newton step
on the logarithmic derivative, snap to exact rational / pi-multiple
coordinates when possible, and classify by windings on small circles.

All boundary tracking is float-first with an mpmath fallback for
values outside the double range; a value that lands exactly on a
contour raises BoundaryEvent and the contour is jittered.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import mpmath

from . import config
from .constants import QQi, SymConst, mpf_to_fraction
from .errors import (
    BoundaryEvent, IdenticallyVanishing, RefinementFailed,
    SubdivisionBudgetExceeded,
)
from .expr import (
    Expr, as_fraction, compile_complex, compile_majorant, compile_mp,
    differentiate, is_constant, sub, to_string,
)
from .laurent import LocalOrder, local_order


# ---------------------------------------------------------------------------
# Regions

@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle, half-open: [xmin, xmax) x [ymin, ymax)."""

    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("region must have positive width and height")

    @staticmethod
    def from_string(text: str) -> "Region":
        parts = [p.strip() for p in text.replace(";", ",").split(",")]
        if len(parts) != 4:
            raise ValueError(
                "region must be 'xmin,xmax,ymin,ymax' (rationals allowed)")
        vals = [Fraction(p) for p in parts]
        return Region(*vals)

    @staticmethod
    def default() -> "Region":
        return Region(Fraction(-7), Fraction(7), Fraction(-1), Fraction(1))

    def describe(self) -> str:
        return (f"[{self.xmin},{self.xmax}) x [{self.ymin},{self.ymax})")

    def contains_mpc(self, z: mpmath.mpc, slack: float = 1e-25) -> bool:
        """Half-open membership, with a tolerance band treated as 'on
        the boundary line' (a boundary hit counts as the lower edge)."""
        return (_cmp_bound(z.real, self.xmin, slack) >= 0
                and _cmp_bound(z.real, self.xmax, slack) < 0
                and _cmp_bound(z.imag, self.ymin, slack) >= 0
                and _cmp_bound(z.imag, self.ymax, slack) < 0)


def _cmp_bound(x: mpmath.mpf, bound: Fraction, slack: float) -> int:
    with mpmath.workprec(120):
        d = mpmath.mpf(x) - mpmath.mpf(bound.numerator) / bound.denominator
        if abs(d) < slack:
            return 0
        return -1 if d < 0 else 1


# ---------------------------------------------------------------------------
# Entire factors and boundary argument tracking

_SEG_THRESHOLD = 0.8     # max accepted phase step, radians
_SEG_DEPTH = 46          # bisection depth before declaring a boundary hit


class _Factor:
    """A syntactically entire expression with compiled evaluators."""

    def __init__(self, expr: Expr):
        self.expr = expr
        self.key = to_string(expr)
        self.fn_c = compile_complex(expr)
        self.fn_maj = compile_majorant(expr)
        self.fn_mp = compile_mp(expr)
        self.dfn_mp = compile_mp(differentiate(expr))

    def sample(self, z: complex) -> Tuple[float, float]:
        """(argument, log-magnitude) at z; BoundaryEvent on a true zero."""
        v: Optional[complex]
        try:
            v = self.fn_c(z)
        except (OverflowError, ZeroDivisionError, ValueError):
            v = None
        if v is not None:
            a = abs(v)
            if math.isfinite(a) and 1e-8 < a < 1e280:
                return math.atan2(v.imag, v.real), math.log(a)
        if v is not None and math.isfinite(abs(v)):
            # a small double result is trustworthy only when it clears
            # the first-order cancellation-noise scale of the tree
            try:
                v2, err = self.fn_maj(z)
                a2 = abs(v2)
                # demand relative accuracy 1e-4 (eps * err < 1e-4 * |v|)
                if (math.isfinite(err) and math.isfinite(a2)
                        and a2 > 2.3e-12 * err):
                    return math.atan2(v2.imag, v2.real), math.log(a2)
            except (OverflowError, ZeroDivisionError, ValueError):
                pass
        # genuine cancellation (or out-of-range values): recompute with
        # a ~90-digit budget
        with mpmath.workprec(300):
            w = self.fn_mp(mpmath.mpc(z))
            if w == 0:
                raise BoundaryEvent(f"factor {self.key} vanishes at {z}")
            return float(mpmath.arg(w)), float(mpmath.log(abs(w)))


_factor_memo: Dict[str, _Factor] = {}


def _get_factor(e: Expr) -> _Factor:
    key = to_string(e)
    got = _factor_memo.get(key)
    if got is None:
        got = _factor_memo[key] = _Factor(e)
    return got


def _wrap_angle(d: float) -> float:
    while d > math.pi:
        d -= 2 * math.pi
    while d <= -math.pi:
        d += 2 * math.pi
    return d


_LOG_RATIO = math.log(2.0)


def _seg_delta(f: _Factor, z0: complex, zm: complex, z1: complex,
               v0: Tuple[float, float], vm: Tuple[float, float],
               v1: Tuple[float, float], depth: int) -> float:
    """Phase change along a segment with a known midpoint sample.

    A segment is accepted only when the phase steps across its quarter
    points are all small AND the log-magnitude spread over the five
    samples is below ln 2.  The magnitude guard is what defeats
    aliasing by whole hidden turns: a zero close enough to the contour
    to sweep the phase by 2*pi between samples forces |f| to dip by far
    more than a factor of two at this scale."""
    if depth >= _SEG_DEPTH:
        raise BoundaryEvent(
            f"argument of {f.key} cannot be tracked near {z0} (zero on or "
            "touching the contour)")
    zq1 = (z0 + zm) / 2
    zq2 = (zm + z1) / 2
    vq1 = f.sample(zq1)
    vq2 = f.sample(zq2)
    samples = (v0, vq1, vm, vq2, v1)
    parts = [_wrap_angle(b[0] - a[0])
             for a, b in zip(samples, samples[1:])]
    mags = [s[1] for s in samples]
    if (max(abs(p) for p in parts) <= _SEG_THRESHOLD
            and max(mags) - min(mags) <= _LOG_RATIO):
        return sum(parts)
    return (_seg_delta(f, z0, zq1, zm, v0, vq1, vm, depth + 1)
            + _seg_delta(f, zm, zq2, z1, vm, vq2, v1, depth + 1))


def _path_delta(f: _Factor, pts: Sequence[complex]) -> float:
    vals = [f.sample(z) for z in pts]
    total = 0.0
    for i in range(len(pts) - 1):
        zm = (pts[i] + pts[i + 1]) / 2
        total += _seg_delta(f, pts[i], zm, pts[i + 1],
                            vals[i], f.sample(zm), vals[i + 1], 0)
    return total


def _to_integer_winding(total: float, what: str) -> int:
    turns = total / (2 * math.pi)
    n = round(turns)
    if abs(turns - n) > max(config.current().winding_residual, 1e-6):
        raise BoundaryEvent(
            f"non-integral winding {turns} on {what}")
    return int(n)


def _rect_pts(x0: float, x1: float, y0: float, y1: float,
              per_edge: int = 8) -> List[complex]:
    pts: List[complex] = []
    corners = [complex(x0, y0), complex(x1, y0),
               complex(x1, y1), complex(x0, y1), complex(x0, y0)]
    for a, b in zip(corners, corners[1:]):
        for k in range(per_edge):
            pts.append(a + (b - a) * k / per_edge)
    pts.append(corners[0])
    return pts


def rect_winding(f: _Factor, x0: float, x1: float,
                 y0: float, y1: float) -> int:
    total = _path_delta(f, _rect_pts(x0, x1, y0, y1))
    n = _to_integer_winding(total, f"rectangle [{x0},{x1}]x[{y0},{y1}]")
    if n < 0:
        raise BoundaryEvent(
            f"negative zero count for entire factor {f.key}")
    return n


def circle_winding(f: _Factor, center: complex, radius: float,
                   per_circle: int = 16) -> int:
    pts = [center + radius * cmath.exp(2j * math.pi * k / per_circle)
           for k in range(per_circle)]
    pts.append(pts[0])
    total = _path_delta(f, pts)
    return _to_integer_winding(total, f"circle r={radius} at {center}")


def _circle_winding_stable(f: _Factor, center: complex,
                           radius: float) -> Optional[int]:
    """Winding at two radii must agree; shrink away from boundary hits."""
    r = radius
    for _ in range(6):
        try:
            n1 = circle_winding(f, center, r)
            n2 = circle_winding(f, center, r / 2)
        except BoundaryEvent:
            r *= 0.618
            continue
        if n1 == n2:
            return n1
        r /= 2
    return None


# ---------------------------------------------------------------------------
# Identically-vanishing guard

_GENERIC_CENTERS = (
    SymConst.from_qqi(QQi(Fraction(17, 31), Fraction(3, 29))),
    SymConst.from_qqi(QQi(Fraction(-23, 37), Fraction(5, 41))),
)


def check_not_identically_zero(e: Expr, label: str) -> None:
    """Raise IdenticallyVanishing when e has no nonzero Taylor data at
    two generic centers (depth-capped, hence a semi-decision)."""
    for c in _GENERIC_CENTERS:
        o = local_order(e, c)
        if o.kind in ("regular", "zero", "pole"):
            return
    raise IdenticallyVanishing(
        f"{label} appears to vanish identically (no nonzero series "
        "coefficient at two generic centers up to the depth cap)")


# ---------------------------------------------------------------------------
# Subdivision + Newton refinement

_NEWTON_START_DIAM = 0.05
_CLUSTER_DIAM = 1e-10
_JITTERS = (0, 1, -1, 2, -2, 3, -3, 5, -5, 8, -8)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise SubdivisionBudgetExceeded(
                f"subdivision budget {self.limit} exhausted")


def _count_cell(factors: Sequence[_Factor], x0, x1, y0, y1) -> int:
    return sum(rect_winding(f, x0, x1, y0, y1) for f in factors)


def _refine(factors: Sequence[_Factor], z0: complex, m: int) -> mpmath.mpc:
    """Newton on the logarithmic derivative sum: near a point carrying
    m zeros of the factor product, z - m/S(z) converges quadratically."""
    tol = config.current().newton_residual
    with mpmath.workprec(max(config.current().precision_bits, 320) + 40):
        z = mpmath.mpc(z0)
        step = mpmath.mpf(1)
        for it in range(120):
            s = mpmath.mpc(0)
            ok = True
            for f in factors:
                v = f.fn_mp(z)
                if v == 0:
                    # landed exactly on a zero of one factor; nudge off
                    z += mpmath.mpc(1, 1) * mpmath.mpf(2) ** (-200)
                    ok = False
                    break
                s += f.dfn_mp(z) / v
            if not ok:
                continue
            if s == 0:
                raise RefinementFailed("vanishing logarithmic derivative")
            step = mpmath.mpf(m) / s
            z = z - step
            if abs(step) < mpmath.mpf(10) ** -33:
                break
            if it >= 30 and abs(step) > mpmath.mpf(10) ** -20:
                # quadratic convergence is long over by now; a stall at
                # this size means the cell holds an unresolved cluster
                raise RefinementFailed(
                    f"Newton stalled at step size {mpmath.nstr(abs(step), 5)}")
        if abs(step) > tol:
            raise RefinementFailed(
                f"Newton stalled at step size {mpmath.nstr(abs(step), 5)}")
        return +z


def _verify_refined(factors: Sequence[_Factor], z: mpmath.mpc,
                    m: int, diam: float) -> bool:
    """The refined point must carry exactly the m zeros of its cell on
    two small circles (small relative to the cell, so that a distinct
    zero just outside the cell cannot leak into the count)."""
    c = complex(z)
    r = min(1e-6, diam / 4)
    try:
        m1 = sum(circle_winding(f, c, r) for f in factors)
        m2 = sum(circle_winding(f, c, r / 100) for f in factors)
    except BoundaryEvent:
        return False
    return m1 == m and m2 == m


def _split_cluster(factors: Sequence[_Factor], center: complex,
                   diam: float, m: int
                   ) -> Optional[List[Tuple[mpmath.mpc, int,
                                            Dict[str, int]]]]:
    """Resolve a cluster that subdivision cannot separate (the cell is
    below double-precision coordinate resolution) by working per factor:
    each factor's zeros inside the cluster are refined by Newton at high
    precision, then co-located results are grouped into subpoints.  Each
    subpoint carries an exact table of per-factor orders, so downstream
    order queries never need a contour at sub-double scales.  Returns
    None when any factor's own zeros cannot be co-located."""
    per: List[Tuple[str, mpmath.mpc, int]] = []
    total = 0
    for f in factors:
        try:
            w = circle_winding(f, center, 2 * diam)
        except BoundaryEvent:
            return None
        if w == 0:
            continue
        try:
            z = _refine([f], center, w)
        except RefinementFailed:
            return None
        per.append((f.key, z, w))
        total += w
    if total != m:
        return None
    groups: List[Tuple[mpmath.mpc, Dict[str, int]]] = []
    for key, z, w in per:
        for i, (zg, table) in enumerate(groups):
            if abs(z - zg) < 1e-24:
                table[key] = table.get(key, 0) + w
                break
        else:
            groups.append((z, {key: w}))
    return [(z, sum(table.values()), table) for z, table in groups]


def _roots_in_cell(factors: Sequence[_Factor], x0, x1, y0, y1, m: int,
                   budget: _Budget,
                   out: List[Tuple[mpmath.mpc, int, Optional[Dict[str, int]]]],
                   retry_diam: float = math.inf) -> None:
    if m == 0:
        return
    w, h = x1 - x0, y1 - y0
    diam = max(w, h)
    if diam <= min(_NEWTON_START_DIAM, retry_diam):
        try:
            z = _refine(factors, complex((x0 + x1) / 2, (y0 + y1) / 2), m)
            zx, zy = float(z.real), float(z.imag)
            inside = (x0 - 1e-9 <= zx <= x1 + 1e-9
                      and y0 - 1e-9 <= zy <= y1 + 1e-9)
            if inside and _verify_refined(factors, z, m, diam):
                out.append((z, m, None))
                return
        except RefinementFailed:
            pass
        # the cell holds a cluster the refinement could not resolve;
        # don't retry until subdivision has shrunk it substantially
        retry_diam = diam / 8
        if diam <= _CLUSTER_DIAM:
            center = complex((x0 + x1) / 2, (y0 + y1) / 2)
            split = _split_cluster(factors, center, diam, m)
            if split is not None:
                out.extend(split)
                return
            # a cluster tighter than the resolution policy: keep it as a
            # single point carrying the combined count, confirmed by an
            # enclosing circle
            z = mpmath.mpc(center)
            try:
                mc = sum(circle_winding(f, center, 2 * diam)
                         for f in factors)
            except BoundaryEvent:
                mc = None
            if mc == m:
                out.append((z, m, None))
                return
            raise RefinementFailed(
                f"cannot isolate the {m} zeros in "
                f"[{x0},{x1}]x[{y0},{y1}]")
    vertical = w >= h
    lo, span = (x0, w) if vertical else (y0, h)
    for j in _JITTERS:
        cut = lo + span * (0.5 + j / 997.0)
        try:
            if vertical:
                a = (x0, cut, y0, y1)
                b = (cut, x1, y0, y1)
            else:
                a = (x0, x1, y0, cut)
                b = (x0, x1, cut, y1)
            budget.spend(2)
            ma = _count_cell(factors, *a)
            mb = _count_cell(factors, *b)
        except BoundaryEvent:
            continue
        if ma + mb != m:
            continue
        # a child that kept the full count is still the same cluster;
        # a child that split off some zeros is a fresh problem
        _roots_in_cell(factors, *a, ma, budget, out,
                       retry_diam if ma == m else math.inf)
        _roots_in_cell(factors, *b, mb, budget, out,
                       retry_diam if mb == m else math.inf)
        return
    raise SubdivisionBudgetExceeded(
        f"no clean split line found in [{x0},{x1}]x[{y0},{y1}]")


LocatedZero = Tuple[mpmath.mpc, int, Optional[Dict[str, int]]]


def zeros_of_factors(factors: Sequence[_Factor],
                     region: Region) -> Tuple[List[LocatedZero],
                                              Tuple[float, float, float, float]]:
    """All zeros (with total product multiplicity, and a per-factor
    order table for resolved cluster subpoints) of the factors in a
    rectangle slightly larger than the region.  Returns the zeros and
    the enlarged rectangle actually used."""
    budget = _Budget(config.current().subdivision_budget)
    x0f, x1f = float(region.xmin), float(region.xmax)
    y0f, y1f = float(region.ymin), float(region.ymax)
    dx = (x1f - x0f) / 997.0
    dy = (y1f - y0f) / 997.0
    last: Optional[BoundaryEvent] = None
    for k in (1, 2, 3, 5, 8, 13, 21):
        rect = (x0f - k * dx, x1f + k * dx, y0f - k * dy, y1f + k * dy)
        try:
            budget.spend()
            m = _count_cell(factors, *rect)
        except BoundaryEvent as ex:
            last = ex
            continue
        out: List[LocatedZero] = []
        _roots_in_cell(factors, *rect, m, budget, out)
        return _dedupe(out), rect
    raise BoundaryEvent(
        f"could not place an event-free contour around {region.describe()}: "
        f"{last}")


def _dedupe(points: List[LocatedZero]) -> List[LocatedZero]:
    kept: List[LocatedZero] = []
    for z, m, table in sorted(points, key=lambda t: (float(t[0].real),
                                                     float(t[0].imag))):
        # cluster subpoints are certified distinct down to the Newton
        # residual; everything else collides at the cluster scale
        def _near(other: LocatedZero) -> bool:
            tol = 1e-24 if (table is not None and other[2] is not None) \
                else _CLUSTER_DIAM
            return abs(z - other[0]) < tol
        if any(_near(other) for other in kept):
            continue
        kept.append((z, m, table))
    return kept


# ---------------------------------------------------------------------------
# Snapping to exact coordinates

def _snap_component(x: mpmath.mpf) -> Optional[Tuple[Fraction, Fraction]]:
    """Return (rational part, pi multiple) with x = r + q*pi, or None."""
    cfg = config.current()
    with mpmath.workprec(340):
        fx = mpf_to_fraction(mpmath.mpf(x))
        cand = fx.limit_denominator(cfg.snap_denominator)
        if abs(fx - cand) < Fraction(cfg.snap_tolerance):
            return cand, Fraction(0)
        q = mpf_to_fraction(mpmath.mpf(x) / mpmath.pi).limit_denominator(
            cfg.snap_pi_denominator)
        if q != 0:
            err = abs(mpmath.mpf(x)
                      - mpmath.pi * mpmath.mpf(q.numerator) / q.denominator)
            if err < cfg.snap_tolerance:
                return Fraction(0), q
    return None


def snap_point(z: mpmath.mpc) -> Optional[SymConst]:
    """Exact SymConst within snap tolerance of z (rational and/or
    pi-multiple real and imaginary parts), or None."""
    sre = _snap_component(z.real)
    sim = _snap_component(z.imag)
    if sre is None or sim is None:
        return None
    ra, qre = sre
    ia, qim = sim
    s = SymConst.from_qqi(QQi(ra, ia))
    if qre != 0 or qim != 0:
        s = s + SymConst.from_qqi(QQi(qre, qim)) * SymConst.pi()
    return s


# ---------------------------------------------------------------------------
# Candidate points

@dataclass
class CandidatePoint:
    """A located point relevant to a sharing verdict, with the circle
    radius inside which it is the only event."""

    location: SymConst
    approx: mpmath.mpc
    snapped: bool
    radius: float
    multiplicity: int
    # for resolved cluster subpoints: exact per-factor orders, and the
    # full set of factor keys known to have order 0 elsewhere
    factor_orders: Optional[Dict[str, int]] = None
    known_factors: Optional[FrozenSet[str]] = None
    _winding_cache: Dict[Tuple[str, float], Optional[int]] = field(
        default_factory=dict, repr=False)

    def sort_key(self) -> Tuple[float, float]:
        return (float(self.approx.real), float(self.approx.imag))

    def signed_winding_order(self, e: Expr) -> Optional[int]:
        num, den = as_fraction(e)
        wn = self._factor_order(num)
        wd = self._factor_order(den)
        if wn is None or wd is None:
            return None
        return wn - wd

    def _factor_order(self, e: Expr) -> Optional[int]:
        if is_constant(e):
            return 0
        if self.factor_orders is not None:
            name = to_string(e)
            got = self.factor_orders.get(name)
            if got is not None:
                return got
            if self.known_factors is not None and name in self.known_factors:
                return 0
            # an expression outside the located factor set cannot be
            # certified at sub-double scales
            return None
        key = (to_string(e), self.radius)
        if key not in self._winding_cache:
            self._winding_cache[key] = _circle_winding_stable(
                _get_factor(e), complex(self.approx), self.radius)
        return self._winding_cache[key]

    def winding_order_fn(self) -> Callable[[Expr], LocalOrder]:
        """Order classifier by circle windings around this point."""

        def order(e: Expr) -> LocalOrder:
            s = self.signed_winding_order(e)
            if s is None:
                return LocalOrder.undecided(
                    f"circle windings unstable at {self.approx}")
            if s != 0:
                return LocalOrder.from_signed(s)
            fn = compile_mp(e)
            with mpmath.workprec(config.current().precision_bits):
                try:
                    v = fn(mpmath.mpc(self.approx))
                except ZeroDivisionError:
                    return LocalOrder.undecided(
                        f"evaluation failed at {self.approx}")
            return LocalOrder.regular(SymConst.from_point(v))

        return order


def locate_candidates(f: Expr, g: Expr, alpha: Expr,
                      region: Region) -> List[CandidatePoint]:
    """Every point of the region that any sharing definition inspects:
    zeros of f - alpha and of g - alpha, zeros and poles of alpha, and
    poles of f and g."""
    f_a = sub(f, alpha)
    g_a = sub(g, alpha)
    check_not_identically_zero(f_a, "f - alpha")
    check_not_identically_zero(g_a, "g - alpha")
    parts: List[Expr] = []
    for e in (f, g, alpha, f_a, g_a):
        num, den = as_fraction(e)
        parts.extend((num, den))
    seen: Dict[str, Expr] = {}
    for p in parts:
        if is_constant(p):
            continue
        check_not_identically_zero(p, f"entire part {to_string(p)}")
        seen.setdefault(to_string(p), p)
    factors = [_get_factor(p) for p in seen.values()]
    if not factors:
        return []
    located, rect = zeros_of_factors(factors, region)
    factor_keys = frozenset(seen)

    candidates: List[CandidatePoint] = []
    for i, (z, mult, table) in enumerate(located):
        zc = complex(z)
        d_other = min((abs(zc - complex(w)) for j, (w, _, _) in
                       enumerate(located) if j != i), default=math.inf)
        d_edge = min(zc.real - rect[0], rect[1] - zc.real,
                     zc.imag - rect[2], rect[3] - zc.imag)
        radius = min(d_other / 2, d_edge / 2, 0.25)
        snapped = snap_point(z)
        cp = CandidatePoint(
            location=snapped if snapped is not None else SymConst.from_point(z),
            approx=z, snapped=snapped is not None,
            radius=radius, multiplicity=mult,
            factor_orders=table,
            known_factors=factor_keys if table is not None else None)
        if not region.contains_mpc(z):
            continue
        if _is_candidate(cp, f, g, alpha, f_a, g_a):
            candidates.append(cp)
    candidates.sort(key=CandidatePoint.sort_key)
    return candidates


def _is_candidate(cp: CandidatePoint, f: Expr, g: Expr, alpha: Expr,
                  f_a: Expr, g_a: Expr) -> bool:
    o_fa = cp.signed_winding_order(f_a)
    o_ga = cp.signed_winding_order(g_a)
    o_al = cp.signed_winding_order(alpha)
    o_f = cp.signed_winding_order(f)
    o_g = cp.signed_winding_order(g)
    if None in (o_fa, o_ga, o_al, o_f, o_g):
        # a located event we cannot classify is kept; the verdict layer
        # will report it as undecided rather than silently dropping it
        return True
    return (o_fa > 0 or o_ga > 0 or o_al != 0 or o_f < 0 or o_g < 0)


# ---------------------------------------------------------------------------
# Public counting helper

def net_zero_pole_count(e: Expr, region: Region) -> int:
    """Zeros minus poles of e in the region, with multiplicity, by the
    argument principle on the region's boundary."""
    num, den = as_fraction(e)
    x0, x1 = float(region.xmin), float(region.xmax)
    y0, y1 = float(region.ymin), float(region.ymax)
    n = 0 if is_constant(num) else rect_winding(_get_factor(num),
                                                x0, x1, y0, y1)
    d = 0 if is_constant(den) else rect_winding(_get_factor(den),
                                                x0, x1, y0, y1)
    return n - d
