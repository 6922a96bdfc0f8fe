from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from tokenize import TokenError

from contracts import FormError, GeometryError
from exactfield.field import from_rational, inv, symmetric

Exponent = tuple[int, ...]

_TRANSFORMS = standard_transformations + (convert_xor,)


# -------------------------
# Monomial bases
# -------------------------

def _compositions(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(nvars - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_basis(nvars: int, d: int) -> tuple[Exponent, ...]:
    """All exponent vectors of total degree d, graded reverse-lexicographic (x0 > x1 > ...)."""
    if d < 0 or nvars <= 0:
        return ()
    return tuple(sorted(_compositions(nvars, d), key=lambda e: e[::-1]))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int) -> dict[Exponent, int]:
    return {e: i for i, e in enumerate(monomial_basis(nvars, d))}


def dim_forms(nvars: int, d: int) -> int:
    return len(monomial_basis(nvars, d))


def default_names(nvars: int) -> list[str]:
    return [f"x{i}" for i in range(nvars)]


# -------------------------
# Forms
# -------------------------

@dataclass(frozen=True)
class Form:
    nvars: int
    degree: int
    terms: tuple[tuple[Exponent, int], ...]
    p: int

    def __post_init__(self):
        for e, c in self.terms:
            if len(e) != self.nvars or sum(e) != self.degree:
                raise FormError(f"exponent {e} does not fit a degree-{self.degree} form in {self.nvars} variables")
            if not 0 < c < self.p:
                raise FormError(f"coefficient {c} not reduced mod {self.p}")

    @classmethod
    def from_dict(cls, nvars: int, degree: int, coeffs: Mapping[Exponent, int], p: int) -> Form:
        reduced = {tuple(e): int(c) % p for e, c in coeffs.items()}
        terms = tuple(sorted(((e, c) for e, c in reduced.items() if c), key=lambda t: t[0][::-1]))
        return cls(nvars, degree, terms, p)

    @classmethod
    def zero(cls, nvars: int, degree: int, p: int) -> Form:
        return cls(nvars, degree, (), p)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int) -> Form:
        return cls.from_dict(nvars, 0, {(0,) * nvars: c}, p)

    @classmethod
    def variable(cls, i: int, nvars: int, p: int) -> Form:
        e = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, 1, ((e, 1),), p)

    @classmethod
    def from_vector(cls, nvars: int, degree: int, vec: Iterable[int], p: int) -> Form:
        basis = monomial_basis(nvars, degree)
        return cls.from_dict(nvars, degree, dict(zip(basis, (int(v) for v in vec))), p)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    def coefficient(self, e: Exponent) -> int:
        return self.as_dict().get(tuple(e), 0)

    def to_vector(self) -> list[int]:
        coeffs = self.as_dict()
        return [coeffs.get(e, 0) for e in monomial_basis(self.nvars, self.degree)]

    def with_degree(self, degree: int) -> Form:
        if self.degree == degree:
            return self
        if not self.is_zero:
            raise FormError(f"form of degree {self.degree} used where degree {degree} is required")
        return Form.zero(self.nvars, degree, self.p)

    def _check(self, other: Form) -> None:
        if self.nvars != other.nvars or self.p != other.p:
            raise FormError("forms live in different rings")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.degree != other.degree:
            raise FormError(f"cannot add forms of degrees {self.degree} and {other.degree}")
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return Form.from_dict(self.nvars, self.degree, acc, self.p)

    def __neg__(self) -> Form:
        return Form(self.nvars, self.degree, tuple((e, self.p - c) for e, c in self.terms), self.p)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def scale(self, c: int) -> Form:
        c %= self.p
        if c == 0:
            return Form.zero(self.nvars, self.degree, self.p)
        return Form(self.nvars, self.degree, tuple((e, a * c % self.p) for e, a in self.terms), self.p)

    def __mul__(self, other: Form | int) -> Form:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        degree = self.degree + other.degree
        if self.is_zero or other.is_zero:
            return Form.zero(self.nvars, degree, self.p)
        acc: dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Form.from_dict(self.nvars, degree, acc, self.p)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise FormError(f"point has {len(point)} coordinates, form has {self.nvars} variables")
        total = 0
        for e, c in self.terms:
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * pow(int(x), k, self.p) % self.p
            total += term
        return total % self.p

    def substitute(self, images: Sequence[Form]) -> Form:
        """Replace x_i by images[i]; the images share one ring and one degree."""
        if len(images) != self.nvars:
            raise FormError("substitution needs one image per variable")
        ring = images[0]
        k = ring.degree
        if any(f.nvars != ring.nvars or f.p != ring.p or f.with_degree(k).degree != k for f in images):
            raise FormError("substitution images must share ring and degree")
        powers: dict[tuple[int, int], Form] = {}

        def power(i: int, m: int) -> Form:
            if (i, m) not in powers:
                powers[(i, m)] = Form.constant(1, ring.nvars, ring.p) if m == 0 else power(i, m - 1) * images[i]
            return powers[(i, m)]

        result = Form.zero(ring.nvars, self.degree * k, ring.p)
        for e, c in self.terms:
            term = Form.constant(c, ring.nvars, ring.p)
            for i, m in enumerate(e):
                term = term * power(i, m)
            result = result + term.with_degree(self.degree * k) if not term.is_zero else result
        return result

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero:
            return "0"
        names = list(names) if names else default_names(self.nvars)
        out = ""
        for e, c in self.terms:
            s = symmetric(c, self.p)
            mono = "*".join(name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k)
            mag = abs(s)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out = f"-{body}" if s < 0 else body
            else:
                out += f" - {body}" if s < 0 else f" + {body}"
        return out

    def __str__(self) -> str:
        return self.format()


def _symbol_table(nvars: int, names: Sequence[str] | None):
    names = list(names) if names else default_names(nvars)
    if len(names) != nvars:
        raise FormError(f"{len(names)} variable names for {nvars} variables")
    symbols = [Symbol(name) for name in names]
    table = dict(zip(names, symbols))
    for name, sym in zip(names, symbols):
        table.setdefault(name.upper(), sym)
    return symbols, table


def parse_form(text: str | int, nvars: int, p: int,
               names: Sequence[str] | None = None, degree: int | None = None) -> Form:
    if isinstance(text, int):
        return Form.constant(text, nvars, p) if degree in (None, 0) else (
            Form.zero(nvars, degree, p) if text == 0 else _raise(f"constant {text} is not of degree {degree}"))
    symbols, table = _symbol_table(nvars, names)
    try:
        expr = parse_expr(str(text), local_dict=table, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, ValueError, TokenError) as e:
        raise FormError(f"cannot parse form {text!r}: {e}")
    unknown = expr.free_symbols - set(symbols)
    if unknown:
        raise FormError(f"unknown variables {sorted(map(str, unknown))} in {text!r}")

    poly = Poly(expr, *symbols)
    coeffs: dict[Exponent, int] = {}
    degrees = set()
    for monom, c in poly.terms():
        if c == 0:
            continue
        if not c.is_Rational:
            raise FormError(f"coefficient {c} in {text!r} is not rational")
        degrees.add(sum(monom))
        coeffs[tuple(int(k) for k in monom)] = from_rational(Fraction(int(c.p), int(c.q)), p)
    if len(degrees) > 1:
        raise FormError(f"{text!r} is not homogeneous")
    d = degrees.pop() if degrees else (degree if degree is not None else 0)
    if degree is not None and d != degree:
        form = Form.from_dict(nvars, d, coeffs, p)
        return form.with_degree(degree)
    return Form.from_dict(nvars, d, coeffs, p)


def _raise(message: str):
    raise FormError(message)


# -------------------------
# Points
# -------------------------

@dataclass(frozen=True)
class PointP:
    coords: tuple[int, ...]
    p: int

    def __post_init__(self):
        if all(c % self.p == 0 for c in self.coords):
            raise GeometryError("the zero vector is not a point")

    @classmethod
    def of(cls, coords: Iterable[int], p: int) -> PointP:
        return cls(tuple(int(c) % p for c in coords), p)

    @property
    def nvars(self) -> int:
        return len(self.coords)

    def normalized(self) -> PointP:
        lead = next(c for c in self.coords if c)
        s = inv(lead, self.p)
        return PointP(tuple(c * s % self.p for c in self.coords), self.p)

    def format(self) -> str:
        return "(" + ":".join(str(symmetric(c, self.p)) for c in self.normalized().coords) + ")"
