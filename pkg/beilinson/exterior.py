"""Exterior algebra of V = k^{n+1} and of its dual, with the contraction pairing.

Basis elements are increasing index tuples. For phi in Lambda^{p+q} V* and
omega in Lambda^p V, phi . omega in Lambda^q V* is the dual of omega ^ -,
so that (phi . omega) . eta = phi . (omega ^ eta).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from contracts import ExteriorError
from exactfield.field import symmetric
from exactfield.linalg import rank

logger = logging.getLogger(__name__)

Indices = tuple[int, ...]


@lru_cache(maxsize=None)
def basis(dim: int, grade: int) -> tuple[Indices, ...]:
    if grade < 0 or grade > dim:
        return ()
    return tuple(itertools.combinations(range(dim), grade))


def shuffle_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of the permutation putting a + b in increasing order; 0 if they meet."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class ExtElement:
    dim: int
    grade: int
    terms: tuple[tuple[Indices, int], ...]
    p: int
    dual: bool = False

    def __post_init__(self):
        for idx, c in self.terms:
            if len(idx) != self.grade or list(idx) != sorted(set(idx)) or (idx and not 0 <= idx[0] <= idx[-1] < self.dim):
                raise ExteriorError(f"{idx} is not a basis index of Lambda^{self.grade} of a {self.dim}-space")
            if not 0 < c < self.p:
                raise ExteriorError(f"coefficient {c} not reduced mod {self.p}")

    @classmethod
    def from_dict(cls, dim: int, grade: int, coeffs: Mapping[Indices, int], p: int,
                  dual: bool = False) -> ExtElement:
        acc: dict[Indices, int] = {}
        for idx, c in coeffs.items():
            idx = tuple(int(i) for i in idx)
            order = sorted(range(len(idx)), key=lambda k: idx[k])
            key = tuple(idx[k] for k in order)
            if len(set(key)) < len(key):
                continue
            # parity of the sorting permutation
            sign = 1
            for i, j in itertools.combinations(range(len(order)), 2):
                if order[i] > order[j]:
                    sign = -sign
            acc[key] = (acc.get(key, 0) + sign * int(c)) % p
        terms = tuple(sorted((k, v) for k, v in acc.items() if v))
        return cls(dim, grade, terms, p, dual)

    @classmethod
    def zero(cls, dim: int, grade: int, p: int, dual: bool = False) -> ExtElement:
        return cls(dim, grade, (), p, dual)

    @classmethod
    def basis_element(cls, dim: int, indices: Iterable[int], p: int, dual: bool = False) -> ExtElement:
        indices = tuple(indices)
        return cls.from_dict(dim, len(indices), {indices: 1}, p, dual)

    @classmethod
    def from_vector(cls, dim: int, grade: int, vec: Iterable[int], p: int, dual: bool = False) -> ExtElement:
        return cls.from_dict(dim, grade, dict(zip(basis(dim, grade), (int(v) for v in vec))), p, dual)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: Iterable[int]) -> int:
        return dict(self.terms).get(tuple(indices), 0)

    def to_vector(self) -> list[int]:
        coeffs = dict(self.terms)
        return [coeffs.get(idx, 0) for idx in basis(self.dim, self.grade)]

    def _check(self, other: ExtElement) -> None:
        if (self.dim, self.p, self.dual) != (other.dim, other.p, other.dual):
            raise ExteriorError("elements live in different exterior algebras")

    def __add__(self, other: ExtElement) -> ExtElement:
        self._check(other)
        if self.grade != other.grade:
            raise ExteriorError(f"cannot add grades {self.grade} and {other.grade}")
        acc = dict(self.terms)
        for idx, c in other.terms:
            acc[idx] = acc.get(idx, 0) + c
        return ExtElement.from_dict(self.dim, self.grade, acc, self.p, self.dual)

    def scale(self, c: int) -> ExtElement:
        return ExtElement.from_dict(self.dim, self.grade, {k: v * c for k, v in self.terms}, self.p, self.dual)

    def __neg__(self) -> ExtElement:
        return self.scale(-1)

    def __sub__(self, other: ExtElement) -> ExtElement:
        return self + (-other)

    def format(self) -> str:
        if self.is_zero:
            return "0"
        letter = "f" if self.dual else "e"
        parts = []
        for idx, c in self.terms:
            s = symmetric(c, self.p)
            mono = "^".join(f"{letter}{i}" for i in idx) or "1"
            parts.append((s, mono if abs(s) == 1 else f"{abs(s)}*{mono}"))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" - {body}" if s < 0 else f" + {body}"
        return out


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    a._check(b)
    grade = a.grade + b.grade
    acc: dict[Indices, int] = {}
    for ia, ca in a.terms:
        for ib, cb in b.terms:
            sign = shuffle_sign(ia, ib)
            if sign:
                key = tuple(sorted(ia + ib))
                acc[key] = acc.get(key, 0) + sign * ca * cb
    return ExtElement.from_dict(a.dim, grade, acc, a.p, a.dual)


def contract(phi: ExtElement, omega: ExtElement) -> ExtElement:
    """phi . omega for phi in Lambda^{p+q} V* and omega in Lambda^p V."""
    if not phi.dual or omega.dual:
        raise ExteriorError("contraction pairs an element of Lambda V* with one of Lambda V")
    if (phi.dim, phi.p) != (omega.dim, omega.p):
        raise ExteriorError("elements live over different spaces")
    if omega.grade > phi.grade:
        raise ExteriorError(f"cannot contract grade {phi.grade} by grade {omega.grade}")
    acc: dict[Indices, int] = {}
    for i_phi, c_phi in phi.terms:
        for i_om, c_om in omega.terms:
            if not set(i_om) <= set(i_phi):
                continue
            rest = tuple(i for i in i_phi if i not in i_om)
            acc[rest] = acc.get(rest, 0) + shuffle_sign(i_om, rest) * c_phi * c_om
    return ExtElement.from_dict(phi.dim, phi.grade - omega.grade, acc, phi.p, dual=True)


# -------------------------
# Ranks
# -------------------------

def skew_matrix(omega: ExtElement) -> np.ndarray:
    if omega.grade != 2:
        raise ExteriorError(f"expected an element of Lambda^2, got grade {omega.grade}")
    m = np.zeros((omega.dim, omega.dim), dtype=np.int64)
    for (i, j), c in omega.terms:
        m[i, j] = c
        m[j, i] = (-c) % omega.p
    return m


def skew_rank(omega: ExtElement) -> int:
    """Rank of the skew map V* -> V attached to omega; always even."""
    return rank(skew_matrix(omega), omega.p)


def wedge_map_matrix(omega: ExtElement, q: int) -> np.ndarray:
    """omega ^ - : Lambda^q -> Lambda^{q + grade}, one column per basis element of Lambda^q."""
    src, tgt = basis(omega.dim, q), basis(omega.dim, q + omega.grade)
    out = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, idx in enumerate(src):
        image = wedge(omega, ExtElement.basis_element(omega.dim, idx, omega.p, omega.dual))
        out[:, j] = image.to_vector()
    return out


def wedge_map_rank(omega: ExtElement, q: int) -> int:
    m = wedge_map_matrix(omega, q)
    return rank(m, omega.p) if m.size else 0


@dataclass(frozen=True)
class ContractionVerdict:
    skew_rank: int
    locally_split: bool
    wedge_rank: int
    description: str

    def to_json(self) -> dict:
        return {
            "skew_rank": self.skew_rank,
            "locally_split": self.locally_split,
            "wedge_rank": self.wedge_rank,
            "description": self.description,
        }


def contraction_splits(omega: ExtElement) -> ContractionVerdict:
    """Whether the map Omega^4(4) -> Omega^2(2) on P^5 defined by omega is a locally split monomorphism."""
    if omega.dim != 6 or omega.grade != 2 or omega.dual:
        raise ExteriorError("expected an element of Lambda^2 of a 6-dimensional space")
    r = skew_rank(omega)
    wr = wedge_map_rank(omega, 2)
    if r == 6:
        text = "locally split; omega ^ - : Lambda^2 V -> Lambda^4 V is an isomorphism, so nothing maps Omega^2(2) onto O"
    elif r == 4:
        text = "omega lies in Lambda^2 V' with dim V' = 4; the map drops rank by 2 along P(V')"
    elif r == 2:
        text = "omega is decomposable; the map drops rank by at least 2 everywhere"
    else:
        text = "omega is zero"
    logger.debug("skew rank %d, wedge rank %d", r, wr)
    return ContractionVerdict(r, r == 6, wr, text)
