"""Certified constants.

A SymConst pairs a constant expression with (when available) an exact
value of the form a + b*pi, a and b Gaussian rationals, and with
rigorous complex ball enclosures computed through mpmath's interval
arithmetic.  The three-valued zero test is sound: Zero and NonZero are
certificates, Unknown is the honest fallback.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import mpmath
from mpmath import iv

from . import config
from .errors import InvalidExpressionError
from .expr import (
    Add, Cos, Divide, Exp, Expr, I, ImaginaryUnit, IntegerPower, Multiply,
    Negate, PI, PiLiteral, RationalLiteral, Sin, Variable, ZERO,
    add, is_constant, mul, rational,
)


class ZeroResult(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# Gaussian rationals and values of the form a + b*pi


@dataclass(frozen=True)
class QQi:
    re: Fraction
    im: Fraction

    def __add__(self, other: "QQi") -> "QQi":
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QQi") -> "QQi":
        return QQi(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def __mul__(self, other: "QQi") -> "QQi":
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def __truediv__(self, other: "QQi") -> "QQi":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi((self.re * other.re + self.im * other.im) / d,
                   (self.im * other.re - self.re * other.im) / d)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


QQI_ZERO = QQi(Fraction(0), Fraction(0))
QQI_ONE = QQi(Fraction(1), Fraction(0))

# Exact value: (a, b) meaning a + b*pi.
Exact = Tuple[QQi, QQi]


def _ex_add(x: Exact, y: Exact) -> Exact:
    return (x[0] + y[0], x[1] + y[1])


def _ex_neg(x: Exact) -> Exact:
    return (-x[0], -x[1])


def _ex_mul(x: Exact, y: Exact) -> Optional[Exact]:
    if x[1].is_zero:
        return (x[0] * y[0], x[0] * y[1])
    if y[1].is_zero:
        return (x[0] * y[0], x[1] * y[0])
    return None  # would need a pi^2 term


def _ex_div(x: Exact, y: Exact) -> Optional[Exact]:
    if y[1].is_zero:
        if y[0].is_zero:
            raise ZeroDivisionError("division by certified zero constant")
        return (x[0] / y[0], x[1] / y[0])
    if y[0].is_zero and x[0].is_zero:
        return (x[1] / y[1], QQI_ZERO)
    return None


def _ex_pow(x: Exact, k: int) -> Optional[Exact]:
    if k < 0:
        inv = _ex_div((QQI_ONE, QQI_ZERO), x)
        if inv is None:
            return None
        return _ex_pow(inv, -k)
    out: Exact = (QQI_ONE, QQI_ZERO)
    for _ in range(k):
        nxt = _ex_mul(out, x)
        if nxt is None:
            return None
        out = nxt
    return out


def _ex_is_zero(x: Exact) -> bool:
    # pi is transcendental: a + b*pi = 0 over the Gaussian rationals
    # forces a = b = 0.
    return x[0].is_zero and x[1].is_zero


def _ex_exp(x: Exact) -> Optional[Exact]:
    if _ex_is_zero(x):
        return (QQI_ONE, QQI_ZERO)
    return None


def _half_integer_pi_multiple(x: Exact) -> Optional[int]:
    """n with x = n*pi/2, when x is such a multiple."""
    a, b = x
    if not a.is_zero:
        return None
    if b.im != 0 or b.re.denominator > 2:
        return None
    return b.re.numerator * (2 // b.re.denominator)


_QUARTER_SIN = (Fraction(0), Fraction(1), Fraction(0), Fraction(-1))


def _ex_sin(x: Exact) -> Optional[Exact]:
    n = _half_integer_pi_multiple(x)
    if n is not None:
        return (QQi(_QUARTER_SIN[n % 4], Fraction(0)), QQI_ZERO)
    return None


def _ex_cos(x: Exact) -> Optional[Exact]:
    n = _half_integer_pi_multiple(x)
    if n is not None:
        return (QQi(_QUARTER_SIN[(n + 1) % 4], Fraction(0)), QQI_ZERO)
    return None


def _exact_value(e: Expr, memo: Optional[dict] = None) -> Optional[Exact]:
    """Exact a + b*pi value of a constant expression, or None when the
    expression falls outside that domain."""
    if memo is None:
        memo = {}
    key = id(e)
    if key in memo:
        return memo[key]
    out: Optional[Exact]
    if isinstance(e, RationalLiteral):
        out = (QQi(e.value, Fraction(0)), QQI_ZERO)
    elif isinstance(e, PiLiteral):
        out = (QQI_ZERO, QQI_ONE)
    elif isinstance(e, ImaginaryUnit):
        out = (QQi(Fraction(0), Fraction(1)), QQI_ZERO)
    elif isinstance(e, Variable):
        raise InvalidExpressionError("not a constant expression")
    elif isinstance(e, Negate):
        inner = _exact_value(e.arg, memo)
        out = None if inner is None else _ex_neg(inner)
    elif isinstance(e, Add):
        l = _exact_value(e.left, memo)
        r = _exact_value(e.right, memo) if l is not None else None
        out = None if (l is None or r is None) else _ex_add(l, r)
    elif isinstance(e, Multiply):
        l = _exact_value(e.left, memo)
        r = _exact_value(e.right, memo) if l is not None else None
        out = None if (l is None or r is None) else _ex_mul(l, r)
    elif isinstance(e, Divide):
        l = _exact_value(e.num, memo)
        r = _exact_value(e.den, memo) if l is not None else None
        if l is None or r is None or _ex_is_zero(r):
            out = None
        else:
            out = _ex_div(l, r)
    elif isinstance(e, IntegerPower):
        b = _exact_value(e.base, memo)
        if b is None or (e.exponent < 0 and _ex_is_zero(b)):
            out = None
        else:
            out = _ex_pow(b, e.exponent)
    elif isinstance(e, Exp):
        inner = _exact_value(e.arg, memo)
        out = None if inner is None else _ex_exp(inner)
    elif isinstance(e, Sin):
        inner = _exact_value(e.arg, memo)
        out = None if inner is None else _ex_sin(inner)
    elif isinstance(e, Cos):
        inner = _exact_value(e.arg, memo)
        out = None if inner is None else _ex_cos(inner)
    else:
        raise TypeError(f"unknown node {e!r}")
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# Complex balls (axis-aligned rectangles over mpmath interval arithmetic)


class Ball:
    """Rigorous enclosure of a complex number: a rectangle whose sides
    are mpmath intervals.  Operations assume iv.prec is already set."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def __repr__(self) -> str:
        return f"Ball(mid={mpmath.nstr(self.mid, 12)}, rad={mpmath.nstr(self.rad, 5)})"

    @property
    def mid(self) -> mpmath.mpc:
        # endpoints are exact mpf values; combine them in the ambient mp
        # context so the result does not depend on the iv context's
        # precision setting
        re = (mpmath.mpf(self.re.a) + mpmath.mpf(self.re.b)) / 2
        im = (mpmath.mpf(self.im.a) + mpmath.mpf(self.im.b)) / 2
        return mpmath.mpc(re, im)

    @property
    def rad(self) -> mpmath.mpf:
        dre = (mpmath.mpf(self.re.b) - mpmath.mpf(self.re.a)) / 2
        dim = (mpmath.mpf(self.im.b) - mpmath.mpf(self.im.a)) / 2
        return mpmath.sqrt(dre * dre + dim * dim) * (1 + mpmath.mpf(2) ** -20)

    @property
    def contains_zero(self) -> bool:
        return 0 in self.re and 0 in self.im

    def __add__(self, other: "Ball") -> "Ball":
        return Ball(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Ball") -> "Ball":
        return Ball(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Ball":
        return Ball(-self.re, -self.im)

    def __mul__(self, other: "Ball") -> "Ball":
        a, b, c, d = self.re, self.im, other.re, other.im
        return Ball(a * c - b * d, a * d + b * c)

    def __truediv__(self, other: "Ball") -> "Ball":
        c, d = other.re, other.im
        denom = c * c + d * d
        if 0 in denom:
            return whole_ball()
        a, b = self.re, self.im
        return Ball((a * c + b * d) / denom, (b * c - a * d) / denom)

    def pow(self, k: int) -> "Ball":
        if k < 0:
            return ball_one() / self.pow(-k)
        out = ball_one()
        base = self
        n = k
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exp(self) -> "Ball":
        try:
            r = iv.exp(self.re)
            return Ball(r * iv.cos(self.im), r * iv.sin(self.im))
        except (OverflowError, ValueError, mpmath.libmp.NoConvergence):
            return whole_ball()

    def sin(self) -> "Ball":
        ch, sh = _iv_cosh(self.im), _iv_sinh(self.im)
        return Ball(iv.sin(self.re) * ch, iv.cos(self.re) * sh)

    def cos(self) -> "Ball":
        ch, sh = _iv_cosh(self.im), _iv_sinh(self.im)
        return Ball(iv.cos(self.re) * ch, -(iv.sin(self.re) * sh))


def _iv_cosh(x):
    e = iv.exp(x)
    return (e + 1 / e) / 2


def _iv_sinh(x):
    e = iv.exp(x)
    return (e - 1 / e) / 2


def whole_ball() -> Ball:
    line = iv.mpf([mpmath.mpf("-inf"), mpmath.mpf("+inf")])
    return Ball(line, line)


def ball_one() -> Ball:
    return Ball(iv.mpf(1), iv.mpf(0))


def _iv_fraction(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def eval_ball(e: Expr, precision_bits: int) -> Ball:
    """Rigorous enclosure of a constant expression at the given working
    precision."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    saved = iv.prec
    iv.prec = precision_bits + 10
    try:
        return _eval_ball(e, {})
    finally:
        iv.prec = saved


def _eval_ball(e: Expr, memo: dict) -> Ball:
    key = id(e)
    if key in memo:
        return memo[key]
    if isinstance(e, RationalLiteral):
        out = Ball(_iv_fraction(e.value), iv.mpf(0))
    elif isinstance(e, PiLiteral):
        out = Ball(+iv.pi, iv.mpf(0))
    elif isinstance(e, ImaginaryUnit):
        out = Ball(iv.mpf(0), iv.mpf(1))
    elif isinstance(e, Variable):
        raise InvalidExpressionError("not a constant expression")
    elif isinstance(e, Negate):
        out = -_eval_ball(e.arg, memo)
    elif isinstance(e, Add):
        out = _eval_ball(e.left, memo) + _eval_ball(e.right, memo)
    elif isinstance(e, Multiply):
        out = _eval_ball(e.left, memo) * _eval_ball(e.right, memo)
    elif isinstance(e, Divide):
        out = _eval_ball(e.num, memo) / _eval_ball(e.den, memo)
    elif isinstance(e, IntegerPower):
        out = _eval_ball(e.base, memo).pow(e.exponent)
    elif isinstance(e, Exp):
        out = _eval_ball(e.arg, memo).exp()
    elif isinstance(e, Sin):
        out = _eval_ball(e.arg, memo).sin()
    elif isinstance(e, Cos):
        out = _eval_ball(e.arg, memo).cos()
    else:
        raise TypeError(f"unknown node {e!r}")
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# SymConst


def _expr_from_qqi(q: QQi) -> Expr:
    if q.im == 0:
        return rational(q.re)
    imag = mul(rational(q.im), I)
    if q.re == 0:
        return imag
    return add(rational(q.re), imag)


def _expr_from_exact(x: Exact) -> Expr:
    a, b = x
    if b.is_zero:
        return _expr_from_qqi(a)
    pi_part = mul(_expr_from_qqi(b), PI)
    if a.is_zero:
        return pi_part
    return add(_expr_from_qqi(a), pi_part)


class SymConst:
    """Certified constant: symbolic form plus cached ball enclosures."""

    __slots__ = ("expr", "exact", "_balls", "_zero_full", "_zero_fast")

    def __init__(self, expr: Expr, exact: Optional[Exact] = None,
                 compute_exact: bool = True):
        if not is_constant(expr):
            raise InvalidExpressionError("SymConst requires a constant expression")
        if exact is None and compute_exact:
            exact = _exact_value(expr)
        if exact is not None:
            expr = _expr_from_exact(exact)
        self.expr = expr
        self.exact = exact
        self._balls: Dict[int, Ball] = {}
        self._zero_full: Optional[ZeroResult] = None
        self._zero_fast: Optional[ZeroResult] = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value) -> "SymConst":
        q = Fraction(value)
        return SymConst(rational(q), (QQi(q, Fraction(0)), QQI_ZERO))

    @staticmethod
    def from_qqi(q: QQi) -> "SymConst":
        return SymConst(_expr_from_qqi(q), (q, QQI_ZERO))

    @staticmethod
    def pi() -> "SymConst":
        return SymConst(PI, (QQI_ZERO, QQI_ONE))

    @staticmethod
    def imaginary_unit() -> "SymConst":
        return SymConst(I, (QQi(Fraction(0), Fraction(1)), QQI_ZERO))

    @staticmethod
    def zero() -> "SymConst":
        return SymConst.from_rational(0)

    @staticmethod
    def one() -> "SymConst":
        return SymConst.from_rational(1)

    @staticmethod
    def from_point(z: mpmath.mpc) -> "SymConst":
        """Exact Gaussian rational equal to the (dyadic) mpc value."""
        re = mpf_to_fraction(mpmath.mpf(z.real))
        im = mpf_to_fraction(mpmath.mpf(z.imag))
        return SymConst.from_qqi(QQi(re, im))

    @staticmethod
    def pi_multiple(q, imag=Fraction(0)) -> "SymConst":
        """q*pi with rational q (optionally plus an imaginary rational)."""
        b = QQi(Fraction(q), Fraction(0))
        a = QQi(Fraction(0), Fraction(imag))
        return SymConst(_expr_from_exact((a, b)), (a, b))

    # -- representation ------------------------------------------------

    def __repr__(self) -> str:
        return f"SymConst({self.expr})"

    def __str__(self) -> str:
        return str(self.expr)

    # -- arithmetic ----------------------------------------------------

    def _binary(self, other: "SymConst", fold, node) -> "SymConst":
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = fold(self.exact, other.exact)
        if exact is not None:
            return SymConst(_expr_from_exact(exact), exact)
        return SymConst(node(self.expr, other.expr), None, compute_exact=False)

    def __add__(self, other: "SymConst") -> "SymConst":
        if other.exact is not None and _ex_is_zero(other.exact):
            return self
        if self.exact is not None and _ex_is_zero(self.exact):
            return other
        return self._binary(other, _ex_add, Add)

    def __sub__(self, other: "SymConst") -> "SymConst":
        return self + (-other)

    def __neg__(self) -> "SymConst":
        if self.exact is not None:
            x = _ex_neg(self.exact)
            return SymConst(_expr_from_exact(x), x)
        return SymConst(Negate(self.expr), None, compute_exact=False)

    def __mul__(self, other: "SymConst") -> "SymConst":
        if (self.exact is not None and _ex_is_zero(self.exact)) or \
           (other.exact is not None and _ex_is_zero(other.exact)):
            return SymConst.zero()
        if other.exact == (QQI_ONE, QQI_ZERO):
            return self
        if self.exact == (QQI_ONE, QQI_ZERO):
            return other
        return self._binary(other, _ex_mul, Multiply)

    def __truediv__(self, other: "SymConst") -> "SymConst":
        if self.exact is not None and _ex_is_zero(self.exact):
            return SymConst.zero()
        if other.exact == (QQI_ONE, QQI_ZERO):
            return self
        return self._binary(other, _ex_div, Divide)

    def __pow__(self, k: int) -> "SymConst":
        if self.exact is not None:
            x = _ex_pow(self.exact, k)
            if x is not None:
                return SymConst(_expr_from_exact(x), x)
        return SymConst(IntegerPower(self.expr, k), None, compute_exact=False)

    def exp(self) -> "SymConst":
        if self.exact is not None:
            x = _ex_exp(self.exact)
            if x is not None:
                return SymConst(_expr_from_exact(x), x)
        return SymConst(Exp(self.expr), None, compute_exact=False)

    def sin(self) -> "SymConst":
        if self.exact is not None:
            x = _ex_sin(self.exact)
            if x is not None:
                return SymConst(_expr_from_exact(x), x)
        return SymConst(Sin(self.expr), None, compute_exact=False)

    def cos(self) -> "SymConst":
        if self.exact is not None:
            x = _ex_cos(self.exact)
            if x is not None:
                return SymConst(_expr_from_exact(x), x)
        return SymConst(Cos(self.expr), None, compute_exact=False)

    # -- numerics -------------------------------------------------------

    def ball(self, precision_bits: int) -> Ball:
        b = self._balls.get(precision_bits)
        if b is None:
            b = eval_ball(self.expr, precision_bits)
            self._balls[precision_bits] = b
        return b

    def approx(self, precision_bits: Optional[int] = None) -> mpmath.mpc:
        if precision_bits is None:
            precision_bits = config.current().precision_bits
        with mpmath.workprec(precision_bits):
            return self.ball(precision_bits).mid

    # -- zero test -------------------------------------------------------

    def zero_test(self, fast: bool = False) -> ZeroResult:
        if self._zero_full is not None:
            return self._zero_full
        if self._zero_fast is None:
            self._zero_fast = self._structural_zero()
        if self._zero_fast is not ZeroResult.UNKNOWN:
            self._zero_full = self._zero_fast
            return self._zero_fast
        if fast:
            return ZeroResult.UNKNOWN
        result = ZeroResult.UNKNOWN
        for prec in config.current().zero_test_schedule:
            try:
                if not self.ball(prec).contains_zero:
                    result = ZeroResult.NONZERO
                    break
            except ZeroDivisionError:
                continue
        self._zero_full = result
        return result

    def _structural_zero(self) -> ZeroResult:
        if self.exact is not None:
            return ZeroResult.ZERO if _ex_is_zero(self.exact) else ZeroResult.NONZERO
        return _structural_zero_expr(self.expr, {}, {})

    @property
    def is_exact_zero(self) -> bool:
        return self.exact is not None and _ex_is_zero(self.exact)


def _structural_zero_expr(e: Expr, memo: dict, exmemo: dict) -> ZeroResult:
    key = id(e)
    if key in memo:
        return memo[key]
    ex = _exact_value(e, exmemo)
    if ex is not None:
        out = ZeroResult.ZERO if _ex_is_zero(ex) else ZeroResult.NONZERO
    elif isinstance(e, Exp):
        out = ZeroResult.NONZERO  # the exponential never vanishes
    elif isinstance(e, Negate):
        out = _structural_zero_expr(e.arg, memo, exmemo)
    elif isinstance(e, Multiply):
        l = _structural_zero_expr(e.left, memo, exmemo)
        r = _structural_zero_expr(e.right, memo, exmemo)
        if ZeroResult.ZERO in (l, r):
            out = ZeroResult.ZERO
        elif l is ZeroResult.NONZERO and r is ZeroResult.NONZERO:
            out = ZeroResult.NONZERO
        else:
            out = ZeroResult.UNKNOWN
    elif isinstance(e, Divide):
        n = _structural_zero_expr(e.num, memo, exmemo)
        if n is ZeroResult.ZERO:
            out = ZeroResult.ZERO
        elif (n is ZeroResult.NONZERO
              and _structural_zero_expr(e.den, memo, exmemo) is ZeroResult.NONZERO):
            out = ZeroResult.NONZERO
        else:
            out = ZeroResult.UNKNOWN
    elif isinstance(e, IntegerPower):
        if e.exponent == 0:
            out = ZeroResult.NONZERO
        else:
            b = _structural_zero_expr(e.base, memo, exmemo)
            if b is ZeroResult.NONZERO:
                out = ZeroResult.NONZERO
            elif b is ZeroResult.ZERO and e.exponent > 0:
                out = ZeroResult.ZERO
            else:
                out = ZeroResult.UNKNOWN
    else:
        out = ZeroResult.UNKNOWN
    memo[key] = out
    return out


def zero_test(c: SymConst) -> ZeroResult:
    """Sound three-valued zero test (module-level convenience)."""
    return c.zero_test()


def enclose(c: SymConst, precision_bits: int) -> Ball:
    """Ball enclosure of a certified constant at the given precision."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    return c.ball(precision_bits)


def mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    """Exact rational value of a (finite, dyadic) mpf."""
    sign, man, e, _ = mpmath.mpf(x)._mpf_
    if man == 0 and e != 0:
        raise ValueError("mpf value is not finite")
    value = Fraction(man)
    if e >= 0:
        value *= 2 ** e
    else:
        value /= 2 ** (-e)
    return -value if sign else value
