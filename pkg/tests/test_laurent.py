"""Laurent engine: expansion, local orders, algebraic consistency."""

import random
from fractions import Fraction

import mpmath
import pytest

from meroshare.constants import SymConst
from meroshare.expr import (
    differentiate, div, mul, parse, reciprocal_of, to_string,
)
from meroshare.laurent import expand, local_order


def _pt(re, im=0):
    from meroshare.constants import QQi
    return SymConst.from_qqi(QQi(Fraction(re), Fraction(im)))


def test_known_local_orders():
    zero = SymConst.zero()
    assert local_order(parse("z^2*exp(z)"), zero).describe() == "zero(2)"
    assert local_order(parse("1/z"), zero).describe() == "pole(1)"
    assert local_order(parse("1/sin(z)"), zero).describe() == "pole(1)"
    o = local_order(parse("exp(z)"), zero)
    assert o.kind == "regular"
    assert abs(o.value.approx(64) - 1) < 1e-15
    assert local_order(parse("sin(z)"), SymConst.pi_multiple(1)
                       ).describe() == "zero(1)"
    assert local_order(parse("sin(z)^3"), SymConst.pi_multiple(-2)
                       ).describe() == "zero(3)"
    assert local_order(parse("(1 - exp(z^2))/z"), zero
                       ).describe() == "zero(1)"


def test_expand_geometric_series_coefficients():
    s = expand(parse("1/(1-z)"), SymConst.zero(), 6)
    for n in range(7):
        c = s.coefficient(n)
        assert abs(c.approx(64) - 1) < 1e-15


def test_expand_reports_certified_zero_gaps():
    s = expand(parse("sin(z)"), SymConst.zero(), 6)
    assert s.min_index == 1
    assert abs(s.coefficient(3).approx(64) + Fraction(1, 6)) < 1e-15
    assert s.coefficient(2).is_exact_zero or s.coefficient(2).approx(64) == 0


def _random_monomial_expr(rng):
    """(expr, signed order at the chosen center) with a known valuation."""
    centers = [_pt(0), _pt(1), _pt(-2), _pt(Fraction(1, 2)), _pt(0, 1)]
    c = rng.choice(centers)
    shift = to_string(c.expr)
    a = rng.randint(0, 3)
    b = rng.randint(0, 2)
    k = rng.randint(0, 2)
    base = f"(z - ({shift}))"
    e = parse(f"{base}^{a} * exp({rng.randint(-2, 2)}*z) "
              f"* (1 + {base})^{b} / {base}^{k}")
    return e, c, a - k


def test_order_additivity_of_products():
    rng = random.Random(123)
    for _ in range(200):
        e1, c1, o1 = _random_monomial_expr(rng)
        # reuse the same center for the second factor
        e2, _, o2 = _random_monomial_expr(rng)
        shift = to_string(c1.expr)
        e2 = parse(f"(z - ({shift}))^2 * (2 + (z - ({shift})))")
        o2 = 2
        o = local_order(mul(e1, e2), c1)
        assert o.is_decisive
        assert o.signed_order == o1 + o2


def test_inversion_negates_order():
    rng = random.Random(321)
    for _ in range(200):
        e, c, o_true = _random_monomial_expr(rng)
        o = local_order(reciprocal_of(e), c)
        assert o.is_decisive
        assert o.signed_order == -o_true


def test_derivative_drops_order_by_one():
    rng = random.Random(555)
    checked = 0
    for _ in range(200):
        e, c, o_true = _random_monomial_expr(rng)
        if o_true == 0:
            continue  # derivative order of a unit is unconstrained
        o = local_order(differentiate(e), c)
        assert o.is_decisive
        assert o.signed_order == o_true - 1
        checked += 1
    assert checked > 50


def test_exp_times_exp_of_negation_is_one():
    rng = random.Random(777)
    for _ in range(200):
        coeff = rng.randint(-3, 3)
        h = f"{coeff}*z + z^2/{rng.randint(1, 5)}"
        e = parse(f"exp({h}) * exp(-({h}))")
        c = _pt(Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
        o = local_order(e, c)
        assert o.kind == "regular"
        assert abs(o.value.approx(64) - 1) < 1e-12


def test_decisive_rate_on_random_instances():
    rng = random.Random(2024)
    decisive = 0
    total = 200
    for _ in range(total):
        e, c, _ = _random_monomial_expr(rng)
        if local_order(e, c).is_decisive:
            decisive += 1
    assert decisive / total >= 0.95


def test_pole_of_quotient():
    e = div(parse("exp(z)"), parse("sin(z)^2"))
    assert local_order(e, SymConst.pi_multiple(1)).describe() == "pole(2)"


def test_value_of_regular_point_is_certified():
    o = local_order(parse("exp(z) + 1"), SymConst.zero())
    assert o.kind == "regular"
    with mpmath.workprec(128):
        assert abs(o.value.approx(128) - 2) < mpmath.mpf(2) ** -100
