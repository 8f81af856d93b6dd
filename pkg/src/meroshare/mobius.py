"""Mobius transformations acting on function values.

T(w) = (a*w + b)/(c*w + d) with constant coefficients and a determinant
certified nonzero.  Applied to an expression symbolically, so that the
result stays inside the expression language.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .constants import SymConst, ZeroResult
from .errors import InvalidExpressionError
from .expr import Expr, add, div, is_literal_zero, mul

Coeff = Union[int, Fraction, SymConst]


def _coerce(c: Coeff) -> SymConst:
    if isinstance(c, SymConst):
        return c
    return SymConst.from_rational(Fraction(c))


@dataclass(frozen=True)
class Mobius:
    """w -> (a*w + b)/(c*w + d); the determinant a*d - b*c must be
    certified nonzero at construction."""

    a: SymConst
    b: SymConst
    c: SymConst
    d: SymConst

    @staticmethod
    def make(a: Coeff, b: Coeff, c: Coeff, d: Coeff) -> "Mobius":
        m = Mobius(_coerce(a), _coerce(b), _coerce(c), _coerce(d))
        det = m.a * m.d - m.b * m.c
        if det.zero_test() is not ZeroResult.NONZERO:
            raise InvalidExpressionError(
                "Mobius determinant a*d - b*c is not certified nonzero")
        return m

    @staticmethod
    def identity() -> "Mobius":
        return Mobius.make(1, 0, 0, 1)

    @staticmethod
    def inversion() -> "Mobius":
        return Mobius.make(0, 1, 1, 0)

    @staticmethod
    def translation(t: Coeff) -> "Mobius":
        return Mobius.make(1, t, 0, 1)

    @staticmethod
    def scaling(s: Coeff) -> "Mobius":
        return Mobius.make(s, 0, 0, 1)

    def is_identity_like(self) -> bool:
        """True when b = c = 0 and a = d (acts as the identity)."""
        return (self.b.is_exact_zero and self.c.is_exact_zero
                and (self.a - self.d).is_exact_zero)

    def describe(self) -> str:
        return (f"({self.a}*w + {self.b})/({self.c}*w + {self.d})")


def apply_mobius(m: Mobius, e: Expr) -> Expr:
    """The expression T(e).  Affine maps avoid the Divide node so the
    identity map returns an expression with the same pole set as e."""
    num = add(mul(m.a.expr, e), m.b.expr)
    if m.c.is_exact_zero:
        den_const = m.d.expr
        if is_literal_zero(den_const):
            raise InvalidExpressionError("Mobius with c = d = 0")
        return div(num, den_const)
    den = add(mul(m.c.expr, e), m.d.expr)
    return div(num, den)
