"""Exact oracle for sharing verdicts on rational-function triples.

For rational f, g, alpha the sharing decision is pure polynomial
algebra: cancel the differences, factor the numerators over Q, and
compare multiplicities factor by factor.  Conjugate roots of one
irreducible factor all carry the same multiplicity, so the comparison
per irreducible factor decides the verdict at every root at once.

Also provides a generator of random rational triples whose interesting
points sit on a coarse rational grid, so that the numeric pipeline's
snapping always has a chance and root separation is guaranteed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import sympy as sp

Z = sp.symbols("z")

ORACLE_SHARES = "shares"
ORACLE_FAILS = "fails"


def _multiplicities(poly: sp.Expr) -> Dict[sp.Expr, int]:
    """Irreducible factor -> multiplicity of the numerator polynomial."""
    p = sp.Poly(sp.expand(poly), Z, domain="QQ")
    if p.is_zero:
        raise ValueError("identically zero polynomial in oracle")
    out: Dict[sp.Expr, int] = {}
    for fac, mult in p.factor_list()[1]:
        if fac.degree() == 0:
            continue
        out[fac.as_expr()] = mult
    return out


def _coincide(o1: int, o2: int, weight) -> bool:
    if o1 == o2:
        return True
    return o1 > weight and o2 > weight


def _compare(n1: sp.Expr, n2: sp.Expr, weight) -> bool:
    m1 = _multiplicities(n1)
    m2 = _multiplicities(n2)
    for fac in set(m1) | set(m2):
        if not _coincide(m1.get(fac, 0), m2.get(fac, 0), weight):
            return False
    return True


def oracle_verdict(f: sp.Expr, g: sp.Expr, alpha: sp.Expr,
                   sense: str, weight) -> str:
    """Exact global sharing verdict over all of C."""
    fa = sp.cancel(f - alpha)
    ga = sp.cancel(g - alpha)
    n1, n2 = sp.numer(fa), sp.numer(ga)
    if sense == "vanishing":
        return ORACLE_SHARES if _compare(n1, n2, weight) else ORACLE_FAILS

    # value sense: at poles of alpha compare the reciprocal differences,
    # elsewhere the direct ones
    den_a = sp.numer(sp.cancel(1 / alpha))  # poles of alpha
    pole_facs = set(_multiplicities(den_a)) if den_a.has(Z) else set()
    rf = sp.numer(sp.cancel(1 / f - 1 / alpha))
    rg = sp.numer(sp.cancel(1 / g - 1 / alpha))
    mr1, mr2 = _multiplicities(rf), _multiplicities(rg)
    m1, m2 = _multiplicities(n1), _multiplicities(n2)
    for fac in pole_facs:
        if not _coincide(mr1.get(fac, 0), mr2.get(fac, 0), weight):
            return ORACLE_FAILS
    for fac in set(m1) | set(m2):
        if fac in pole_facs:
            continue
        if not _coincide(m1.get(fac, 0), m2.get(fac, 0), weight):
            return ORACLE_FAILS
    return ORACLE_SHARES


# ---------------------------------------------------------------------------
# Random triple generation

@dataclass(frozen=True)
class RationalTriple:
    f: str
    g: str
    alpha: str
    region: str


_GRID = [Fraction(n, d) for d in (1, 2) for n in range(-5, 6)]


def _poly_str(roots: List[Fraction]) -> str:
    if not roots:
        return "1"
    parts = []
    for r in roots:
        if r == 0:
            parts.append("z")
        elif r.denominator == 1:
            parts.append(f"(z - {r.numerator})" if r > 0
                         else f"(z + {-r.numerator})")
        else:
            parts.append(f"(z - {r.numerator}/{r.denominator})" if r > 0
                         else f"(z + {-r.numerator}/{r.denominator})")
    return "*".join(parts)


def _pick_roots(rng: random.Random, pool: List[Fraction],
                k: int) -> List[Fraction]:
    return [rng.choice(pool) for _ in range(k)]


def random_rational_triple(rng: random.Random) -> RationalTriple:
    """f = alpha + s*u, g = alpha + s*v: the shared part s and the
    private parts u, v are products of grid-rooted linear factors, and
    alpha is a ratio of two more.  Degrees stay <= 5 throughout."""
    pool = list(_GRID)
    rng.shuffle(pool)
    # disjoint slices guarantee separation between the distinguished roots
    s_roots = _pick_roots(rng, pool[0:3], rng.randint(0, 2))
    u_roots = _pick_roots(rng, pool[3:6], rng.randint(0, 2))
    v_roots = _pick_roots(rng, pool[6:9], rng.randint(0, 2))
    a_num = _pick_roots(rng, pool[9:11], rng.randint(0, 1))
    a_den = _pick_roots(rng, pool[11:13], rng.randint(0, 1))
    c1 = rng.randint(1, 3)
    c2 = rng.randint(1, 3)
    alpha = f"({c1}*{_poly_str(a_num)})/({_poly_str(a_den)})"
    s = _poly_str(s_roots)
    f = f"{alpha} + {s}*{_poly_str(u_roots)}"
    g = f"{alpha} + {c2}*{s}*{_poly_str(v_roots)}"
    return RationalTriple(f=f, g=g, alpha=alpha, region="-6,6,-6,6")


def to_sympy(text: str) -> sp.Expr:
    return sp.sympify(text.replace("^", "**"), locals={"z": Z})
