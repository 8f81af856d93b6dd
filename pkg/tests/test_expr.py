"""Expression core: parsing, printing, differentiation, fractions."""

import cmath
import random

import pytest

from meroshare.errors import InvalidExpressionError, ParseError
from meroshare.expr import (
    as_fraction, compile_complex, compile_majorant, differentiate,
    is_entire, parse, reciprocal_of, to_string,
)

SAMPLES = [
    "z",
    "1/z+exp(z)",
    "z+z^2*exp(z)",
    "sin(z)^3+sin(z)^4*exp(z^2)",
    "(1+exp(z^2))/sin(z)",
    "1/(1/z+exp(z))",
    "cos(z)*sin(z)-1/2",
    "-3/4*z^5 + pi*z - i",
]

POINTS = [0.3 + 0.4j, -1.1 + 0.2j, 2.0 - 1.5j, 0.01 + 0.99j]


def test_parse_to_string_round_trip():
    for text in SAMPLES:
        e = parse(text)
        again = parse(to_string(e))
        assert to_string(again) == to_string(e)


def test_parse_round_trip_preserves_values():
    for text in SAMPLES:
        f1 = compile_complex(parse(text))
        f2 = compile_complex(parse(to_string(parse(text))))
        for z in POINTS:
            assert abs(f1(z) - f2(z)) < 1e-12 * (1 + abs(f1(z)))


@pytest.mark.parametrize("bad", ["", "z+", "(z", "z**2", "w", "exp()",
                                 "1/0", "z^z"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_transcendental_args_must_be_entire():
    with pytest.raises(ParseError):
        parse("exp(1/z)")
    with pytest.raises(ParseError):
        parse("sin(1/(z-1))")
    from meroshare.expr import div, exp, rational, Variable
    with pytest.raises(InvalidExpressionError):
        exp(div(rational(1), Variable()))


def test_differentiate_matches_finite_differences():
    h = 1e-6
    for text in SAMPLES:
        e = parse(text)
        fn = compile_complex(e)
        dfn = compile_complex(differentiate(e))
        for z in POINTS:
            approx = (fn(z + h) - fn(z - h)) / (2 * h)
            exact = dfn(z)
            assert abs(approx - exact) < 1e-5 * (1 + abs(exact))


def test_as_fraction_reconstructs_value_with_entire_parts():
    for text in SAMPLES:
        e = parse(text)
        num, den = as_fraction(e)
        assert is_entire(num)
        assert is_entire(den)
        fn = compile_complex(e)
        fnum = compile_complex(num)
        fden = compile_complex(den)
        for z in POINTS:
            v = fn(z)
            assert abs(fnum(z) / fden(z) - v) < 1e-10 * (1 + abs(v))


def test_reciprocal_value():
    for text in SAMPLES:
        e = parse(text)
        fn = compile_complex(e)
        rn = compile_complex(reciprocal_of(e))
        for z in POINTS:
            v = fn(z)
            if abs(v) > 1e-6:
                assert abs(rn(z) - 1 / v) < 1e-9 * (1 + abs(1 / v))


def test_majorant_value_agrees_with_plain_compilation():
    rng = random.Random(7)
    for text in SAMPLES:
        e = parse(text)
        fn = compile_complex(e)
        mj = compile_majorant(e)
        for _ in range(10):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            try:
                v = fn(z)
            except (ZeroDivisionError, OverflowError):
                continue
            w, err = mj(z)
            assert w == v
            assert err >= 0


def test_majorant_flags_catastrophic_cancellation():
    # (1 + exp(z)*z^2)*z - z is z^3*exp(z) + O(z^4) in exact arithmetic,
    # but in doubles the subtraction near 0 is pure rounding noise
    e = parse("(1+exp(z)*z^2)*z - z")
    mj = compile_majorant(e)
    z = 1e-8 + 0j
    v, err = mj(z)
    # true value ~ 1e-24 is far below the error scale eps*err
    assert abs(v) < 2.3e-16 * err


def test_majorant_trusts_accurate_small_products():
    e = parse("sin(z)^4")
    mj = compile_majorant(e)
    z = cmath.pi + 1e-4
    v, err = mj(z)
    assert abs(v) > 2.3e-12 * err  # small but certified accurate
