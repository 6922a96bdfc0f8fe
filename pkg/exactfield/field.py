"""Scalar arithmetic in F_p. Field elements are plain ints in [0, p)."""
from fractions import Fraction

from contracts import FieldError


def normalize(a: int, p: int) -> int:
    return int(a) % p


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise FieldError("zero has no inverse")
    return pow(a, -1, p)


def symmetric(a: int, p: int) -> int:
    a %= p
    return a - p if a > p // 2 else a


def from_rational(q: Fraction | int, p: int) -> int:
    q = Fraction(q)
    return q.numerator % p * inv(q.denominator, p) % p
