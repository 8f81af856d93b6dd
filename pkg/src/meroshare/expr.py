"""Expression language for meromorphic functions.

The AST is deliberately small: rationals, pi, i, the variable z, field
operations, integer powers, and exp/sin/cos restricted to entire
arguments.  Semantic equality of expressions is never decided on the
tree; callers compare local orders or certified values instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Tuple, Union

import mpmath

from .errors import InvalidExpressionError, ParseError


class Expr:
    """Base class for expression nodes.  Nodes are immutable values."""

    __slots__ = ()

    def __str__(self) -> str:
        return to_string(self)


@dataclass(frozen=True)
class Variable(Expr):
    __slots__ = ()


@dataclass(frozen=True)
class RationalLiteral(Expr):
    value: Fraction
    __slots__ = ("value",)


@dataclass(frozen=True)
class PiLiteral(Expr):
    __slots__ = ()


@dataclass(frozen=True)
class ImaginaryUnit(Expr):
    __slots__ = ()


@dataclass(frozen=True)
class Negate(Expr):
    arg: Expr
    __slots__ = ("arg",)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    __slots__ = ("left", "right")


@dataclass(frozen=True)
class Multiply(Expr):
    left: Expr
    right: Expr
    __slots__ = ("left", "right")


@dataclass(frozen=True)
class Divide(Expr):
    num: Expr
    den: Expr
    __slots__ = ("num", "den")


@dataclass(frozen=True)
class IntegerPower(Expr):
    base: Expr
    exponent: int
    __slots__ = ("base", "exponent")


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr
    __slots__ = ("arg",)


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr
    __slots__ = ("arg",)


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr
    __slots__ = ("arg",)


Z = Variable()
ZERO = RationalLiteral(Fraction(0))
ONE = RationalLiteral(Fraction(1))
PI = PiLiteral()
I = ImaginaryUnit()


def rational(value: Union[int, Fraction]) -> RationalLiteral:
    return RationalLiteral(Fraction(value))


def _literal(e: Expr) -> Union[Fraction, None]:
    if isinstance(e, RationalLiteral):
        return e.value
    if isinstance(e, Negate):
        inner = _literal(e.arg)
        return None if inner is None else -inner
    return None


def is_literal_zero(e: Expr) -> bool:
    return _literal(e) == 0


def is_literal_one(e: Expr) -> bool:
    return _literal(e) == 1


# Smart constructors.  Only literal rationals are folded; everything
# else is kept as written (simplification is out of scope).

def add(a: Expr, b: Expr) -> Expr:
    la, lb = _literal(a), _literal(b)
    if la is not None and lb is not None:
        return RationalLiteral(la + lb)
    if la == 0:
        return b
    if lb == 0:
        return a
    return Add(a, b)


def neg(a: Expr) -> Expr:
    la = _literal(a)
    if la is not None:
        return RationalLiteral(-la)
    if isinstance(a, Negate):
        return a.arg
    return Negate(a)


def sub(a: Expr, b: Expr) -> Expr:
    return add(a, neg(b))


def mul(a: Expr, b: Expr) -> Expr:
    la, lb = _literal(a), _literal(b)
    if la is not None and lb is not None:
        return RationalLiteral(la * lb)
    if la == 0 or lb == 0:
        return ZERO
    if la == 1:
        return b
    if lb == 1:
        return a
    return Multiply(a, b)


def div(a: Expr, b: Expr) -> Expr:
    lb = _literal(b)
    if lb == 0:
        raise InvalidExpressionError("division by the literal zero")
    la = _literal(a)
    if la is not None and lb is not None:
        return RationalLiteral(la / lb)
    if lb == 1:
        return a
    if la == 0 and not is_literal_zero(b):
        return ZERO
    return Divide(a, b)


def intpow(base: Expr, exponent: int) -> Expr:
    if not isinstance(exponent, int):
        raise InvalidExpressionError("power exponent must be a signed integer")
    lb = _literal(base)
    if lb is not None:
        if lb == 0 and exponent <= 0:
            raise InvalidExpressionError("0 raised to a nonpositive power")
        return RationalLiteral(lb ** exponent)
    if exponent == 1:
        return base
    return IntegerPower(base, exponent)


def exp(arg: Expr) -> Expr:
    _require_entire(arg, "exp")
    return Exp(arg)


def sin(arg: Expr) -> Expr:
    _require_entire(arg, "sin")
    return Sin(arg)


def cos(arg: Expr) -> Expr:
    _require_entire(arg, "cos")
    return Cos(arg)


def reciprocal_of(e: Expr) -> Expr:
    """1/e; rejects the literal zero.  Double reciprocals are kept as
    nested Divide nodes (local orders, not trees, carry the semantics)."""
    if is_literal_zero(e):
        raise InvalidExpressionError("reciprocal of the literal zero")
    return div(ONE, e)


def is_entire(e: Expr) -> bool:
    """Syntactic entirety: no division by, and no negative power of,
    anything that mentions the variable.  Constant denominators are
    allowed (they cannot create poles)."""
    if isinstance(e, (Variable, RationalLiteral, PiLiteral, ImaginaryUnit)):
        return True
    if isinstance(e, Negate):
        return is_entire(e.arg)
    if isinstance(e, (Add, Multiply)):
        return is_entire(e.left) and is_entire(e.right)
    if isinstance(e, Divide):
        return is_entire(e.num) and is_constant(e.den)
    if isinstance(e, IntegerPower):
        if e.exponent < 0:
            return is_constant(e.base)
        return is_entire(e.base)
    if isinstance(e, (Exp, Sin, Cos)):
        return is_entire(e.arg)
    raise TypeError(f"unknown node {e!r}")


def _require_entire(arg: Expr, fn: str) -> None:
    if not is_entire(arg):
        raise InvalidExpressionError(
            f"argument of {fn} must be entire (no division, no negative power)"
        )


def is_constant(e: Expr) -> bool:
    """True when the expression does not mention the variable."""
    if isinstance(e, Variable):
        return False
    if isinstance(e, (RationalLiteral, PiLiteral, ImaginaryUnit)):
        return True
    if isinstance(e, Negate):
        return is_constant(e.arg)
    if isinstance(e, (Add, Multiply)):
        return is_constant(e.left) and is_constant(e.right)
    if isinstance(e, Divide):
        return is_constant(e.num) and is_constant(e.den)
    if isinstance(e, IntegerPower):
        return is_constant(e.base)
    if isinstance(e, (Exp, Sin, Cos)):
        return is_constant(e.arg)
    raise TypeError(f"unknown node {e!r}")


def validate(e: Expr) -> None:
    """Check the structural invariants of the expression tree."""
    if isinstance(e, (Variable, RationalLiteral, PiLiteral, ImaginaryUnit)):
        return
    if isinstance(e, Negate):
        validate(e.arg)
        return
    if isinstance(e, (Add, Multiply)):
        validate(e.left)
        validate(e.right)
        return
    if isinstance(e, Divide):
        if is_literal_zero(e.den):
            raise InvalidExpressionError("division by the literal zero")
        validate(e.num)
        validate(e.den)
        return
    if isinstance(e, IntegerPower):
        if not isinstance(e.exponent, int):
            raise InvalidExpressionError("power exponent must be a signed integer")
        validate(e.base)
        return
    if isinstance(e, (Exp, Sin, Cos)):
        _require_entire(e.arg, type(e).__name__.lower())
        validate(e.arg)
        return
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Differentiation

def differentiate(e: Expr) -> Expr:
    """Complex derivative, by the standard calculus rules."""
    if isinstance(e, Variable):
        return ONE
    if isinstance(e, (RationalLiteral, PiLiteral, ImaginaryUnit)):
        return ZERO
    if isinstance(e, Negate):
        return neg(differentiate(e.arg))
    if isinstance(e, Add):
        return add(differentiate(e.left), differentiate(e.right))
    if isinstance(e, Multiply):
        return add(
            mul(differentiate(e.left), e.right),
            mul(e.left, differentiate(e.right)),
        )
    if isinstance(e, Divide):
        num = sub(
            mul(differentiate(e.num), e.den),
            mul(e.num, differentiate(e.den)),
        )
        return div(num, intpow(e.den, 2))
    if isinstance(e, IntegerPower):
        k = e.exponent
        if k == 0:
            return ZERO
        return mul(
            mul(rational(k), intpow(e.base, k - 1)),
            differentiate(e.base),
        )
    if isinstance(e, Exp):
        return mul(differentiate(e.arg), e)
    if isinstance(e, Sin):
        return mul(differentiate(e.arg), Cos(e.arg))
    if isinstance(e, Cos):
        return neg(mul(differentiate(e.arg), Sin(e.arg)))
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Numerator/denominator split into syntactically entire parts

def as_fraction(e: Expr) -> Tuple[Expr, Expr]:
    """Write e as num/den with both parts syntactically entire.

    Cancellation is not attempted: the zero set of num is a superset of
    the zeros of e, likewise den for the poles.
    """
    if isinstance(e, (Variable, RationalLiteral, PiLiteral, ImaginaryUnit,
                      Exp, Sin, Cos)):
        return e, ONE
    if isinstance(e, Negate):
        n, d = as_fraction(e.arg)
        return neg(n), d
    if isinstance(e, Add):
        n1, d1 = as_fraction(e.left)
        n2, d2 = as_fraction(e.right)
        return add(mul(n1, d2), mul(n2, d1)), mul(d1, d2)
    if isinstance(e, Multiply):
        n1, d1 = as_fraction(e.left)
        n2, d2 = as_fraction(e.right)
        return mul(n1, n2), mul(d1, d2)
    if isinstance(e, Divide):
        n1, d1 = as_fraction(e.num)
        n2, d2 = as_fraction(e.den)
        return mul(n1, d2), mul(d1, n2)
    if isinstance(e, IntegerPower):
        n, d = as_fraction(e.base)
        k = e.exponent
        if k >= 0:
            return intpow(n, k), intpow(d, k)
        return intpow(d, -k), intpow(n, -k)
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Parser

_FUNCTIONS = {"exp", "sin", "cos"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected '{ch}'")
        self.pos += 1

    def parse(self) -> Expr:
        e = self.parse_sum()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return e

    def parse_sum(self) -> Expr:
        e = self.parse_term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                e = Add(e, self.parse_term())
            elif ch == "-":
                self.pos += 1
                e = Add(e, Negate(self.parse_term()))
            else:
                return e

    def parse_term(self) -> Expr:
        e = self.parse_unary()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                e = Multiply(e, self.parse_unary())
            elif ch == "/":
                self.pos += 1
                rhs = self.parse_unary()
                if is_literal_zero(rhs):
                    raise self.error("division by the literal zero")
                e = Divide(e, rhs)
            else:
                return e

    def parse_unary(self) -> Expr:
        if self.peek() == "-":
            self.pos += 1
            return Negate(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            exponent = self.parse_exponent()
            return IntegerPower(base, exponent)
        return base

    def parse_exponent(self) -> int:
        self.skip_ws()
        sign = 1
        wrapped = False
        if self.peek() == "(":
            # Tolerate z^(-2); anything non-integer inside is rejected.
            self.pos += 1
            wrapped = True
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("exponent must be an integer literal "
                             "(fractional powers are not supported)")
        value = sign * int(self.text[start:self.pos])
        if wrapped:
            if self.peek() == "/":
                raise self.error("fractional power")
            self.expect(")")
        return value

    def parse_atom(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            e = self.parse_sum()
            self.expect(")")
            return e
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return RationalLiteral(Fraction(int(self.text[start:self.pos])))
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isalpha():
                self.pos += 1
            name = self.text[start:self.pos]
            if name == "z":
                return Z
            if name == "pi":
                return PI
            if name == "i":
                return I
            if name in _FUNCTIONS:
                self.expect("(")
                arg = self.parse_sum()
                self.expect(")")
                if not is_entire(arg):
                    self.pos = start
                    raise self.error(
                        f"argument of {name} must be entire "
                        "(no division, no negative power)")
                return {"exp": Exp, "sin": Sin, "cos": Cos}[name](arg)
            self.pos = start
            raise self.error(f"unknown identifier '{name}'")
        raise self.error("expected an expression")


def parse(text: str) -> Expr:
    """Parse an expression string; raises ParseError with a position."""
    e = _Parser(text).parse()
    validate(e)
    return e


# ---------------------------------------------------------------------------
# Pretty printer (round-trips through parse up to semantic identity)

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _precedence(e: Expr) -> int:
    if isinstance(e, Add):
        return _PREC_ADD
    if isinstance(e, (Multiply, Divide)):
        return _PREC_MUL
    if isinstance(e, Negate):
        return _PREC_UNARY
    if isinstance(e, RationalLiteral):
        if e.value < 0:
            return _PREC_UNARY
        if e.value.denominator != 1:
            return _PREC_MUL
        return _PREC_ATOM
    if isinstance(e, IntegerPower):
        return _PREC_POW
    return _PREC_ATOM


def _wrap(e: Expr, parent_prec: int) -> str:
    s = to_string(e)
    if _precedence(e) < parent_prec:
        return f"({s})"
    return s


def to_string(e: Expr) -> str:
    if isinstance(e, Variable):
        return "z"
    if isinstance(e, RationalLiteral):
        v = e.value
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(e, PiLiteral):
        return "pi"
    if isinstance(e, ImaginaryUnit):
        return "i"
    if isinstance(e, Negate):
        return "-" + _wrap(e.arg, _PREC_UNARY)
    if isinstance(e, Add):
        right = e.right
        if isinstance(right, Negate):
            return f"{_wrap(e.left, _PREC_ADD)} - {_wrap(right.arg, _PREC_MUL)}"
        if isinstance(right, RationalLiteral) and right.value < 0:
            return (f"{_wrap(e.left, _PREC_ADD)} - "
                    f"{to_string(RationalLiteral(-right.value))}")
        return f"{_wrap(e.left, _PREC_ADD)} + {_wrap(right, _PREC_MUL)}"
    if isinstance(e, Multiply):
        return f"{_wrap(e.left, _PREC_MUL)}*{_wrap(e.right, _PREC_UNARY)}"
    if isinstance(e, Divide):
        return f"{_wrap(e.num, _PREC_MUL)}/{_wrap(e.den, _PREC_UNARY)}"
    if isinstance(e, IntegerPower):
        k = e.exponent
        exp_str = str(k) if k >= 0 else f"(-{-k})"
        return f"{_wrap(e.base, _PREC_ATOM)}^{exp_str}"
    if isinstance(e, Exp):
        return f"exp({to_string(e.arg)})"
    if isinstance(e, Sin):
        return f"sin({to_string(e.arg)})"
    if isinstance(e, Cos):
        return f"cos({to_string(e.arg)})"
    raise TypeError(f"unknown node {e!r}")


# ---------------------------------------------------------------------------
# Numeric compilation

def compile_complex(e: Expr) -> Callable[[complex], complex]:
    """Compile to a machine-precision evaluator (fast path for contour
    integration and subdivision)."""
    if isinstance(e, Variable):
        return lambda z: z
    if isinstance(e, RationalLiteral):
        c = complex(e.value)
        return lambda z: c
    if isinstance(e, PiLiteral):
        c = complex(cmath.pi)
        return lambda z: c
    if isinstance(e, ImaginaryUnit):
        return lambda z: 1j
    if isinstance(e, Negate):
        f = compile_complex(e.arg)
        return lambda z: -f(z)
    if isinstance(e, Add):
        f, g = compile_complex(e.left), compile_complex(e.right)
        return lambda z: f(z) + g(z)
    if isinstance(e, Multiply):
        f, g = compile_complex(e.left), compile_complex(e.right)
        return lambda z: f(z) * g(z)
    if isinstance(e, Divide):
        f, g = compile_complex(e.num), compile_complex(e.den)
        return lambda z: f(z) / g(z)
    if isinstance(e, IntegerPower):
        f, k = compile_complex(e.base), e.exponent
        return lambda z: f(z) ** k
    if isinstance(e, Exp):
        f = compile_complex(e.arg)
        return lambda z: cmath.exp(f(z))
    if isinstance(e, Sin):
        f = compile_complex(e.arg)
        return lambda z: cmath.sin(f(z))
    if isinstance(e, Cos):
        f = compile_complex(e.arg)
        return lambda z: cmath.cos(f(z))
    raise TypeError(f"unknown node {e!r}")


def compile_mp(e: Expr):
    """Compile to an mpmath evaluator; precision is taken from the
    active mpmath context at call time."""
    if isinstance(e, Variable):
        return lambda z: z
    if isinstance(e, RationalLiteral):
        p, q = e.value.numerator, e.value.denominator
        if q == 1:
            return lambda z: mpmath.mpf(p)
        return lambda z: mpmath.mpf(p) / q
    if isinstance(e, PiLiteral):
        return lambda z: +mpmath.pi
    if isinstance(e, ImaginaryUnit):
        return lambda z: mpmath.mpc(0, 1)
    if isinstance(e, Negate):
        f = compile_mp(e.arg)
        return lambda z: -f(z)
    if isinstance(e, Add):
        f, g = compile_mp(e.left), compile_mp(e.right)
        return lambda z: f(z) + g(z)
    if isinstance(e, Multiply):
        f, g = compile_mp(e.left), compile_mp(e.right)
        return lambda z: f(z) * g(z)
    if isinstance(e, Divide):
        f, g = compile_mp(e.num), compile_mp(e.den)
        return lambda z: f(z) / g(z)
    if isinstance(e, IntegerPower):
        f, k = compile_mp(e.base), e.exponent
        return lambda z: f(z) ** k
    if isinstance(e, Exp):
        f = compile_mp(e.arg)
        return lambda z: mpmath.exp(f(z))
    if isinstance(e, Sin):
        f = compile_mp(e.arg)
        return lambda z: mpmath.sin(f(z))
    if isinstance(e, Cos):
        f = compile_mp(e.arg)
        return lambda z: mpmath.cos(f(z))
    raise TypeError(f"unknown node {e!r}")


def compile_majorant(e: Expr) -> Callable[[complex], Tuple[complex, float]]:
    """Compile to an evaluator returning (value, err), where err * eps
    is a first-order bound on the absolute rounding error of value.

    Each rule propagates the argument error bounds through the node's
    derivative and adds one unit of the node's own rounding, so err
    stays proportional to the true error rather than to the raw
    magnitudes: a tiny product of accurately-known factors is accepted,
    while a tiny difference of large terms is flagged as cancellation
    noise."""
    if isinstance(e, Variable):
        return lambda z: (z, abs(z))
    if isinstance(e, RationalLiteral):
        c = complex(e.value)
        m = abs(c)
        return lambda z: (c, m)
    if isinstance(e, PiLiteral):
        c = complex(cmath.pi)
        return lambda z: (c, cmath.pi)
    if isinstance(e, ImaginaryUnit):
        return lambda z: (1j, 1.0)
    if isinstance(e, Negate):
        f = compile_majorant(e.arg)
        def neg(z):
            v, m = f(z)
            return -v, m
        return neg
    if isinstance(e, Add):
        f, g = compile_majorant(e.left), compile_majorant(e.right)
        def add_(z):
            va, ea = f(z)
            vb, eb = g(z)
            v = va + vb
            return v, ea + eb + abs(v)
        return add_
    if isinstance(e, Multiply):
        f, g = compile_majorant(e.left), compile_majorant(e.right)
        def mul_(z):
            va, ea = f(z)
            vb, eb = g(z)
            v = va * vb
            return v, ea * abs(vb) + abs(va) * eb + abs(v)
        return mul_
    if isinstance(e, Divide):
        f, g = compile_majorant(e.num), compile_majorant(e.den)
        def div_(z):
            va, ea = f(z)
            vb, eb = g(z)
            v = va / vb
            ab = abs(vb)
            return v, (ea + abs(v) * eb) / ab + abs(v)
        return div_
    if isinstance(e, IntegerPower):
        f, k = compile_majorant(e.base), e.exponent
        if k < 0:
            inner = compile_complex(e)
            return lambda z: (inner(z), math.inf)
        def pow_(z):
            v, ev = f(z)
            w = v ** k
            av = abs(v)
            d = k * av ** (k - 1) if k >= 1 else 0.0
            return w, d * ev + k * abs(w)
        return pow_
    if isinstance(e, Exp):
        f = compile_majorant(e.arg)
        def exp_(z):
            v, ev = f(z)
            w = cmath.exp(v)
            aw = abs(w)
            return w, aw * ev + aw
        return exp_
    if isinstance(e, Sin):
        f = compile_majorant(e.arg)
        def sin_(z):
            v, ev = f(z)
            w = cmath.sin(v)
            return w, math.exp(abs(v.imag)) * ev + abs(w)
        return sin_
    if isinstance(e, Cos):
        f = compile_majorant(e.arg)
        def cos_(z):
            v, ev = f(z)
            w = cmath.cos(v)
            return w, math.exp(abs(v.imag)) * ev + abs(w)
        return cos_
    raise TypeError(f"unknown node {e!r}")
