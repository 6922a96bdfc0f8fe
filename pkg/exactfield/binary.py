"""Binary forms over GF(p), handled through sympy's univariate polynomials.

A binary form f(T0, T1) of degree d is dehomogenized at T0 = 1; a drop in
degree is a root at (0:1) of that multiplicity.
"""
from __future__ import annotations

from functools import reduce
from typing import Sequence

from sympy import Poly, Symbol

from contracts import FormError
from exactfield.field import inv
from exactfield.forms import Form

_t = Symbol("t")


def dehomogenize(f: Form) -> Poly:
    if f.nvars != 2:
        raise FormError(f"expected a binary form, got {f.nvars} variables")
    coeffs = [0] * (max(f.degree, 0) + 1)
    for (_, e1), c in f.terms:
        coeffs[e1] = c
    return Poly(list(reversed(coeffs)), _t, modulus=f.p)


def infinity_multiplicity(f: Form) -> int:
    g = dehomogenize(f)
    return f.degree - (g.degree() if not g.is_zero else 0)


def multiplicity_partition(f: Form) -> list[int]:
    """Multiplicities of the roots of f over the algebraic closure, largest first."""
    if f.is_zero:
        raise FormError("the zero form has no root partition")
    g = dehomogenize(f)
    parts: list[int] = []
    if g.degree() > 0:
        _, factors = g.sqf_list()
        for factor, mult in factors:
            parts.extend([mult] * factor.degree())
    at_infinity = infinity_multiplicity(f)
    if at_infinity:
        parts.append(at_infinity)
    return sorted(parts, reverse=True)


def common_root(forms: Sequence[Form]) -> bool:
    """True iff the binary forms share a zero on P^1 over the algebraic closure."""
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        return True
    if all(infinity_multiplicity(f) > 0 for f in nonzero):
        return True
    return common_divisor(nonzero).degree() > 0


def common_divisor(forms: Sequence[Form]) -> Poly:
    polys = [dehomogenize(f) for f in forms if not f.is_zero]
    return reduce(lambda a, b: a.gcd(b), polys)


def rational_roots(f: Form) -> list[tuple[tuple[int, int], int]]:
    """Roots of f in P^1(F_p) as ((T0, T1), multiplicity)."""
    if f.is_zero:
        raise FormError("the zero form vanishes everywhere")
    p = f.p
    roots: list[tuple[tuple[int, int], int]] = []
    g = dehomogenize(f)
    if g.degree() > 0:
        _, factors = g.factor_list()
        for factor, mult in factors:
            if factor.degree() == 1:
                a, b = (int(c) % p for c in factor.all_coeffs())
                roots.append(((1, (-b) * inv(a, p) % p), mult))
    at_infinity = infinity_multiplicity(f)
    if at_infinity:
        roots.append(((0, 1), at_infinity))
    return sorted(roots)


def format_divisor(poly: Poly) -> str:
    return str(poly.as_expr()).replace("t", "T1/T0")
