"""Truncated Laurent series at a point and local order classification.

Series coefficients are SymConst values; certified-zero coefficients
are dropped as they appear, so the smallest stored index is a lower
bound for the valuation.  Division demands a leading divisor
coefficient certified nonzero; everything else degrades to explicit
Unknown/Undecided outcomes rather than guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from . import config
from .constants import SymConst, ZeroResult
from .errors import (
    DivisorValuationUnresolved, InvalidExpressionError, TruncationExhausted,
)
from .expr import (
    Add, Cos, Divide, Exp, Expr, IntegerPower, Multiply, Negate,
    RationalLiteral, Sin, Variable, is_constant,
)

# Sentinel for "known at every order" (exact polynomial data).
INF_ORDER = 10 ** 9


@dataclass
class LaurentSeries:
    """Coefficients of (z - center)^n for n up to truncation_order.

    Indices absent from `coeffs` but <= truncation_order are certified
    zero.  `valuation_resolved` is False when the leading stored
    coefficient could not be certified nonzero.
    """

    center: SymConst
    coeffs: Dict[int, SymConst]
    truncation_order: int
    valuation_resolved: bool = True

    @property
    def min_index(self) -> int:
        if not self.coeffs:
            return self.truncation_order + 1
        return min(self.coeffs)

    def coefficient(self, n: int) -> SymConst:
        if n > self.truncation_order:
            raise IndexError(f"coefficient {n} is beyond the truncation order "
                             f"{self.truncation_order}")
        return self.coeffs.get(n, SymConst.zero())

    def derivative(self) -> "LaurentSeries":
        out = {}
        for n, c in self.coeffs.items():
            if n == 0:
                continue
            out[n - 1] = c * SymConst.from_rational(n)
        t = self.truncation_order
        return LaurentSeries(self.center, out,
                             t if t >= INF_ORDER else t - 1,
                             self.valuation_resolved)


def _cap_order(n: int) -> int:
    return min(n, INF_ORDER)


def _lo(s: LaurentSeries) -> int:
    return s.min_index


def _put(coeffs: Dict[int, SymConst], n: int, c: SymConst) -> None:
    if c.zero_test(fast=True) is ZeroResult.ZERO:
        coeffs.pop(n, None)
    else:
        coeffs[n] = c


def _const_series(center: SymConst, value: SymConst) -> LaurentSeries:
    coeffs: Dict[int, SymConst] = {}
    _put(coeffs, 0, value)
    return LaurentSeries(center, coeffs, INF_ORDER)


def _one(center: SymConst) -> LaurentSeries:
    return _const_series(center, SymConst.one())


def _s_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    known = min(a.truncation_order, b.truncation_order)
    coeffs: Dict[int, SymConst] = {}
    for n in set(a.coeffs) | set(b.coeffs):
        if n > known:
            continue
        ca, cb = a.coeffs.get(n), b.coeffs.get(n)
        if ca is None:
            c = cb
        elif cb is None:
            c = ca
        else:
            c = ca + cb
        _put(coeffs, n, c)
    return LaurentSeries(a.center, coeffs, known)


def _s_neg(a: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(a.center, {n: -c for n, c in a.coeffs.items()},
                         a.truncation_order, a.valuation_resolved)


def _s_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    known = _cap_order(min(_lo(a) + b.truncation_order,
                           _lo(b) + a.truncation_order))
    coeffs: Dict[int, SymConst] = {}
    for i, ca in a.coeffs.items():
        for j, cb in b.coeffs.items():
            n = i + j
            if n > known:
                continue
            term = ca * cb
            prev = coeffs.get(n)
            coeffs[n] = term if prev is None else prev + term
    for n in list(coeffs):
        _put(coeffs, n, coeffs[n])
    return LaurentSeries(a.center, coeffs, known)


def _s_scale(c: SymConst, a: LaurentSeries) -> LaurentSeries:
    if c.is_exact_zero:
        return LaurentSeries(a.center, {}, a.truncation_order)
    coeffs: Dict[int, SymConst] = {}
    for n, ca in a.coeffs.items():
        _put(coeffs, n, c * ca)
    return LaurentSeries(a.center, coeffs, a.truncation_order)


def _leading(a: LaurentSeries):
    """(index, coeff) of the first coefficient certified nonzero;
    certified zeros are removed on the way.  Raises on Unknown."""
    for n in sorted(a.coeffs):
        zt = a.coeffs[n].zero_test()
        if zt is ZeroResult.ZERO:
            del a.coeffs[n]
            continue
        if zt is ZeroResult.NONZERO:
            return n, a.coeffs[n]
        raise DivisorValuationUnresolved(
            f"leading series coefficient (index {n}) is Unknown at the "
            "precision cap")
    raise TruncationExhausted(
        f"all series coefficients test zero up to order {a.truncation_order}")


def _s_inv(a: LaurentSeries, target: int) -> LaurentSeries:
    v, lead = _leading(a)
    needed = abs(v) + max(target, 4) + 4
    if a.truncation_order >= INF_ORDER:
        if len(a.coeffs) == 1:
            # exact monomial: inverse is exact
            return LaurentSeries(a.center,
                                 {-v: SymConst.one() / lead}, INF_ORDER)
        rel = needed
    else:
        rel = min(a.truncation_order - v, needed)
    # unit part u with u_0 = 1
    u = {k - v: a.coeffs[k] / lead for k in a.coeffs if 0 < k - v <= rel}
    inv = {0: SymConst.one()}
    for n in range(1, rel + 1):
        acc: Optional[SymConst] = None
        for k, uk in u.items():
            if k > n:
                continue
            prev = inv.get(n - k)
            if prev is None:
                continue
            term = uk * prev
            acc = term if acc is None else acc + term
        if acc is not None:
            c = -acc
            if c.zero_test(fast=True) is not ZeroResult.ZERO:
                inv[n] = c
    coeffs: Dict[int, SymConst] = {}
    for n, c in inv.items():
        _put(coeffs, n - v, c / lead)
    return LaurentSeries(a.center, coeffs, rel - v)


def _s_pow(a: LaurentSeries, k: int, target: int = INF_ORDER) -> LaurentSeries:
    if k < 0:
        return _s_pow(_s_inv(a, target), -k)
    out = _one(a.center)
    base = a
    n = k
    while n:
        if n & 1:
            out = _s_mul(out, base)
        base = _s_mul(base, base) if n > 1 else base
        n >>= 1
    return out


def _split_constant_term(a: LaurentSeries):
    if _lo(a) < 0:
        raise InvalidExpressionError(
            "composition requires an inner series with no pole part")
    c0 = a.coeffs.get(0, SymConst.zero())
    tail = {n: c for n, c in a.coeffs.items() if n >= 1}
    return c0, LaurentSeries(a.center, tail, a.truncation_order)


def _s_exp(a: LaurentSeries, target: int) -> LaurentSeries:
    c0, s = _split_constant_term(a)
    t = min(a.truncation_order, target)
    out = _one(a.center)
    term = _one(a.center)
    for k in range(1, t + 1):
        term = _s_truncate(_s_mul(term, s), t)
        if not term.coeffs:
            break
        term = _s_scale(SymConst.from_rational(1) / SymConst.from_rational(k),
                        term)
        out = _s_add(out, term)
    out = LaurentSeries(a.center, out.coeffs, t)
    return _s_scale(c0.exp(), out)


def _sin_cos_tail(s: LaurentSeries, t: int):
    """cos(s) and sin(s) as series, s having positive valuation."""
    cos_s = _one(s.center)
    sin_s = LaurentSeries(s.center, {}, t)
    term = _one(s.center)
    sign = 1
    for k in range(1, t + 1):
        term = _s_truncate(_s_mul(term, s), t)
        if not term.coeffs:
            break
        term = _s_scale(SymConst.from_rational(1) / SymConst.from_rational(k),
                        term)
        if k % 2 == 1:
            contrib = term if sign > 0 else _s_neg(term)
            sin_s = _s_add(sin_s, contrib)
        else:
            # cos/sin signs advance together with period four in k
            sign = -sign
            contrib = term if sign > 0 else _s_neg(term)
            cos_s = _s_add(cos_s, contrib)
    cos_s = LaurentSeries(s.center, cos_s.coeffs, t)
    sin_s = LaurentSeries(s.center, sin_s.coeffs, t)
    return cos_s, sin_s


def _s_sin(a: LaurentSeries, target: int) -> LaurentSeries:
    c0, s = _split_constant_term(a)
    t = min(a.truncation_order, target)
    cos_s, sin_s = _sin_cos_tail(s, t)
    return _s_add(_s_scale(c0.sin(), cos_s), _s_scale(c0.cos(), sin_s))


def _s_cos(a: LaurentSeries, target: int) -> LaurentSeries:
    c0, s = _split_constant_term(a)
    t = min(a.truncation_order, target)
    cos_s, sin_s = _sin_cos_tail(s, t)
    return _s_add(_s_scale(c0.cos(), cos_s), _s_neg(_s_scale(c0.sin(), sin_s)))


def _s_truncate(a: LaurentSeries, t: int) -> LaurentSeries:
    if a.truncation_order <= t:
        return a
    return LaurentSeries(a.center,
                         {n: c for n, c in a.coeffs.items() if n <= t}, t)


def _series(e: Expr, center: SymConst, target: int) -> LaurentSeries:
    if is_constant(e):
        return _const_series(center, SymConst(e))
    if isinstance(e, Variable):
        coeffs: Dict[int, SymConst] = {1: SymConst.one()}
        _put(coeffs, 0, center)
        return LaurentSeries(center, coeffs, INF_ORDER)
    if isinstance(e, Negate):
        return _s_neg(_series(e.arg, center, target))
    if isinstance(e, Add):
        return _s_add(_series(e.left, center, target),
                      _series(e.right, center, target))
    if isinstance(e, Multiply):
        return _s_mul(_series(e.left, center, target),
                      _series(e.right, center, target))
    if isinstance(e, Divide):
        return _s_mul(_series(e.num, center, target),
                      _s_inv(_series(e.den, center, target), target))
    if isinstance(e, IntegerPower):
        return _s_pow(_series(e.base, center, target), e.exponent, target)
    if isinstance(e, Exp):
        return _s_exp(_series(e.arg, center, target), target)
    if isinstance(e, Sin):
        return _s_sin(_series(e.arg, center, target), target)
    if isinstance(e, Cos):
        return _s_cos(_series(e.arg, center, target), target)
    raise TypeError(f"unknown node {e!r}")


def expand(e: Expr, center: SymConst, order: int) -> LaurentSeries:
    """Laurent coefficients of e at the center, from the valuation up to
    (at least) the requested order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    cap = max(config.current().laurent_depth_cap, 2 * order)
    w = max(order + 4, 8)
    while True:
        s = _series(e, center, w)
        # certify/trim the leading edge
        resolved = True
        for n in sorted(s.coeffs):
            zt = s.coeffs[n].zero_test()
            if zt is ZeroResult.ZERO:
                del s.coeffs[n]
                continue
            if zt is ZeroResult.UNKNOWN:
                resolved = False
            break
        if s.coeffs and s.truncation_order >= order:
            s.valuation_resolved = resolved
            return s
        if w >= cap:
            if not s.coeffs:
                raise TruncationExhausted(
                    f"series vanishes to depth {s.truncation_order} "
                    f"(cap {cap})")
            s.valuation_resolved = resolved
            return s
        w = min(2 * w, cap)


# ---------------------------------------------------------------------------
# Local order classification


@dataclass(frozen=True)
class LocalOrder:
    """Classification of a function at a point.

    kind: "zero" (order m >= 1), "regular" (certified nonzero value),
    "pole" (order m >= 1), "vanishes" (identically zero up to the depth
    cap), or "undecided".
    """

    kind: str
    order: int = 0
    value: Optional[SymConst] = None
    reason: str = ""

    @staticmethod
    def zero(m: int) -> "LocalOrder":
        return LocalOrder("zero", m)

    @staticmethod
    def pole(m: int) -> "LocalOrder":
        return LocalOrder("pole", m)

    @staticmethod
    def regular(value: SymConst) -> "LocalOrder":
        return LocalOrder("regular", 0, value)

    @staticmethod
    def vanishes(depth: int) -> "LocalOrder":
        return LocalOrder("vanishes", depth)

    @staticmethod
    def undecided(reason: str) -> "LocalOrder":
        return LocalOrder("undecided", reason=reason)

    @property
    def is_decisive(self) -> bool:
        return self.kind in ("zero", "regular", "pole")

    @property
    def signed_order(self) -> Optional[int]:
        """Valuation: +m for a zero, -m for a pole, 0 if regular."""
        if self.kind == "zero":
            return self.order
        if self.kind == "pole":
            return -self.order
        if self.kind == "regular":
            return 0
        return None

    @property
    def zero_order(self) -> Optional[int]:
        """Order as a zero; a pole or regular point counts as 0."""
        s = self.signed_order
        if s is None:
            return None
        return s if s > 0 else 0

    def describe(self) -> str:
        if self.kind == "zero":
            return f"zero({self.order})"
        if self.kind == "pole":
            return f"pole({self.order})"
        if self.kind == "regular":
            return "regular"
        if self.kind == "vanishes":
            return f"vanishes_to_depth({self.order})"
        return f"undecided: {self.reason}" if self.reason else "undecided"

    @staticmethod
    def from_signed(n: int, value: Optional[SymConst] = None) -> "LocalOrder":
        if n > 0:
            return LocalOrder.zero(n)
        if n < 0:
            return LocalOrder.pole(-n)
        return LocalOrder("regular", 0, value)


def local_order(e: Expr, center: SymConst) -> LocalOrder:
    """Zero/pole/regular classification of e at the center via series
    expansion with escalating truncation depth."""
    cap = config.current().laurent_depth_cap
    w = 8
    while True:
        try:
            s = _series(e, center, w)
        except DivisorValuationUnresolved as ex:
            return LocalOrder.undecided(str(ex))
        except TruncationExhausted as ex:
            if w < cap:
                w = min(2 * w, cap)
                continue
            return LocalOrder.undecided(f"inner divisor exhausted: {ex}")
        found: Optional[LocalOrder] = None
        for n in sorted(s.coeffs):
            zt = s.coeffs[n].zero_test()
            if zt is ZeroResult.ZERO:
                continue
            if zt is ZeroResult.NONZERO:
                if n < 0:
                    found = LocalOrder.pole(-n)
                elif n > 0:
                    found = LocalOrder.zero(n)
                else:
                    found = LocalOrder.regular(s.coeffs[n])
            else:
                found = LocalOrder.undecided(
                    f"coefficient at index {n} is Unknown at the precision cap")
            break
        if found is not None:
            return found
        if w >= cap:
            return LocalOrder.vanishes(cap)
        w = min(2 * w, cap)
