"""Per-point evidence and the local verdict for each sharing mode.

The five definitions reduce to one comparison rule: pick the pair of
local orders that applies (direct orders of f-alpha and g-alpha, or the
reciprocal-difference orders at a pole of alpha in value sense), map
each to its order as a zero (poles and regular points count 0), and
check the weighted coincidence condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .constants import SymConst
from .errors import MeroshareError
from .expr import Expr, reciprocal_of, sub
from .laurent import LocalOrder, local_order

Weight = Union[int, float]  # nonnegative int, or math.inf

VERDICT_SHARED = "shared"
VERDICT_NOT_SHARED = "not_shared"
VERDICT_UNDECIDED = "undecided"

SENSE_VANISHING = "vanishing"
SENSE_VALUE = "value"


@dataclass(frozen=True)
class SharingMode:
    """Which definition applies: the sense and the weight.

    weight 0 is IM, weight infinity is CM.
    """

    sense: str
    weight: Weight

    def __post_init__(self):
        if self.sense not in (SENSE_VANISHING, SENSE_VALUE):
            raise ValueError(f"unknown sense {self.sense!r}")
        ok = (self.weight == math.inf or
              (isinstance(self.weight, int) and self.weight >= 0))
        if not ok:
            raise ValueError("weight must be a nonnegative integer or infinity")

    def describe(self) -> str:
        w = "inf" if self.weight == math.inf else str(self.weight)
        return f"{self.sense}/{w}"


@dataclass
class PointClassification:
    """All local orders relevant to any sharing definition at one point.

    The reciprocal orders (of 1/f - 1/alpha and 1/g - 1/alpha) are
    present exactly when alpha has a pole at the point.
    """

    point: SymConst
    snapped: bool
    ord_alpha: LocalOrder
    ord_f_minus_alpha: LocalOrder
    ord_g_minus_alpha: LocalOrder
    ord_f: LocalOrder
    ord_g: LocalOrder
    ord_recip_f: Optional[LocalOrder] = None
    ord_recip_g: Optional[LocalOrder] = None

    def value_on_sphere(self, which: str) -> str:
        """Riemann-sphere value summary for f, g or alpha."""
        o = {"f": self.ord_f, "g": self.ord_g, "alpha": self.ord_alpha}[which]
        if o.kind == "pole":
            return "inf"
        if o.kind == "zero" or (o.kind == "vanishes"):
            return "0"
        if o.kind == "regular":
            if o.value is not None:
                import mpmath
                return mpmath.nstr(o.value.approx(64), 12)
            return "regular"
        return "unknown"


OrderFn = Callable[[Expr], LocalOrder]


def classify_point(f: Expr, g: Expr, alpha: Expr, z0: SymConst,
                   snapped: bool = True,
                   order_fn: Optional[OrderFn] = None) -> PointClassification:
    """Collect every local order a sharing verdict at z0 can need.

    order_fn overrides how local orders are computed (the region module
    passes a winding-number based classifier for non-snapped points);
    the default is the Laurent engine.
    """
    if order_fn is None:
        order_fn = lambda e: local_order(e, z0)
    ord_alpha = order_fn(alpha)
    ord_fa = order_fn(sub(f, alpha))
    ord_ga = order_fn(sub(g, alpha))
    ord_f = order_fn(f)
    ord_g = order_fn(g)
    ord_rf = ord_rg = None
    if ord_alpha.kind == "pole":
        ord_rf = order_fn(sub(reciprocal_of(f), reciprocal_of(alpha)))
        ord_rg = order_fn(sub(reciprocal_of(g), reciprocal_of(alpha)))
    return PointClassification(
        point=z0, snapped=snapped,
        ord_alpha=ord_alpha,
        ord_f_minus_alpha=ord_fa, ord_g_minus_alpha=ord_ga,
        ord_f=ord_f, ord_g=ord_g,
        ord_recip_f=ord_rf, ord_recip_g=ord_rg,
    )


def _coincide(o1: Optional[int], o2: Optional[int], weight: Weight) -> str:
    if o1 is None or o2 is None:
        return VERDICT_UNDECIDED
    if o1 == o2:
        return VERDICT_SHARED
    if o1 > weight and o2 > weight:
        return VERDICT_SHARED
    return VERDICT_NOT_SHARED


def local_verdict(c: PointClassification, mode: SharingMode) -> str:
    """Shared / NotShared / Undecided at one point under one mode.

    Points where neither side vanishes under the applicable branch are
    Shared (there is nothing to share there); Undecided is absorbing.
    """
    if mode.sense == SENSE_VALUE:
        if c.ord_alpha.kind == "pole":
            if c.ord_recip_f is None or c.ord_recip_g is None:
                raise MeroshareError(
                    "classification lacks reciprocal orders at a pole of alpha")
            return _coincide(c.ord_recip_f.zero_order,
                             c.ord_recip_g.zero_order, mode.weight)
        if not c.ord_alpha.is_decisive:
            # branch selection depends on whether alpha has a pole here
            return VERDICT_UNDECIDED
    return _coincide(c.ord_f_minus_alpha.zero_order,
                     c.ord_g_minus_alpha.zero_order, mode.weight)
