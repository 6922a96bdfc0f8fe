"""Euler characteristics of twists from Chern data.

On P^2, P^3 and P^4 the value is the one of the split bundle
O^(r-1) + O(c1) corrected by terms in c2, c3, c4. Any other n goes
through the Chern character: a virtual sum of O(0), ..., O(n) with the
same character is found by an exact Vandermonde solve.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from sympy import Matrix, Rational

from chernrr.chern import ChernVector, gbinom
from contracts import ChernError, CongruenceError

logger = logging.getLogger(__name__)


def chi_line(n: int, l: int) -> int:
    """chi(O(l)) on P^n, the binomial C(l+n, n) read as a polynomial in l."""
    return gbinom(l + n, n)


def _split_chi(cv: ChernVector, l: int) -> int:
    if cv.rank is None:
        raise ChernError("Riemann-Roch needs the rank")
    return (cv.rank - 1) * chi_line(cv.n, l) + chi_line(cv.n, l + cv.ci(1))


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise CongruenceError(f"{what} is not an integer ({value})")
    return int(value)


def schwarzenberger_residue(cv: ChernVector) -> int:
    if cv.n != 4:
        raise ChernError("the Schwarzenberger condition is stated on P^4")
    c1, c2, c3, c4 = cv.c
    return ((2 * c1 + 3) * (c3 - c1 * c2) + c2 * c2 + c2 - 2 * c4) % 12


def schwarzenberger_ok(cv: ChernVector) -> tuple[bool, int]:
    residue = schwarzenberger_residue(cv)
    return residue == 0, residue


def rr_chi_p2(cv: ChernVector, l: int) -> int:
    return _split_chi(cv, l) - cv.ci(2)


def rr_chi_p3(cv: ChernVector, l: int) -> int:
    c1, c2, c3 = cv.c
    if (c3 - c1 * c2) % 2:
        raise CongruenceError(f"c3 - c1*c2 = {c3 - c1 * c2} is odd")
    return _split_chi(cv, l) - (l + 2) * c2 + (c3 - c1 * c2) // 2


def rr_chi_p4(cv: ChernVector, l: int) -> int:
    ok, residue = schwarzenberger_ok(cv)
    if not ok:
        raise CongruenceError(f"Schwarzenberger condition fails with residue {residue}")
    c1, c2, c3, c4 = cv.c
    correction = (
        Fraction(-(l + 2) * (l + 3) * c2, 2)
        + Fraction((l + 2) * (c3 - c1 * c2), 2)
        + Fraction((2 * c1 + 3) * (c3 - c1 * c2) + c2 * c2 + c2 - 2 * c4, 12)
    )
    return _split_chi(cv, l) + _as_int(correction, "the Riemann-Roch correction")


def power_sums(cv: ChernVector) -> list[int]:
    """Power sums p_0..p_n of the Chern roots (p_k = k! ch_k), by Newton's identities."""
    if cv.rank is None:
        raise ChernError("the Chern character needs the rank")
    e = [1] + list(cv.c)
    p = [cv.rank]
    for k in range(1, cv.n + 1):
        s = sum((-1) ** (i - 1) * e[i] * p[k - i] for i in range(1, k))
        p.append(s + (-1) ** (k - 1) * k * e[k])
    return p


def virtual_line_sum(cv: ChernVector) -> list[Fraction]:
    """Multiplicities m_0..m_n with sum m_a ch(O(a)) = ch(E) up to degree n."""
    n = cv.n
    vandermonde = Matrix(n + 1, n + 1, lambda k, a: Rational(a) ** k)
    rhs = Matrix([Rational(x) for x in power_sums(cv)])
    solution = vandermonde.LUsolve(rhs)
    return [Fraction(int(x.p), int(x.q)) for x in solution]


def rr_chi_generic(cv: ChernVector, l: int) -> int:
    total = sum((m * chi_line(cv.n, l + a) for a, m in enumerate(virtual_line_sum(cv))), Fraction(0))
    return _as_int(total, "chi")


_CLOSED_FORMS = {2: rr_chi_p2, 3: rr_chi_p3, 4: rr_chi_p4}


def rr_chi(cv: ChernVector, l: int = 0) -> int:
    if cv.n < 1:
        raise ChernError("Riemann-Roch is implemented on P^n with n >= 1")
    fn = _CLOSED_FORMS.get(cv.n, rr_chi_generic)
    value = fn(cv, l)
    logger.debug("chi(%s(%d)) = %d on P^%d", cv.format(), l, value, cv.n)
    return value
