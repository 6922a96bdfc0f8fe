"""2 x 4 matrices of linear forms on P^3 and the pencil they define on P^1.

A column (h_0j, h_1j) of A is the element h_0j (x) e_0 + h_1j (x) e_1 of
k^2 (x) S_1. The pencil psi is the 4 x 4 matrix of binary linear forms with
psi[i][j] = coefficient of x_i in T0*h_0j + T1*h_1j, so psi evaluated at
(s, t) is the composite k^4 -> S_1 of A with the functional (s, t).
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from contracts import PencilError
from exactfield.binary import common_root
from exactfield.forms import Form
from exactfield.gradedmatrix import GradedMatrix, determinant, minors
from exactfield.linalg import rank

logger = logging.getLogger(__name__)

SRC = (0, 0, 0, 0)
TGT = (1, 1)


def linear_matrix(rows: Sequence[Sequence[Form | str | int]], p: int,
                  names: Sequence[str] | None = None) -> GradedMatrix:
    if len(rows) != 2 or any(len(row) != 4 for row in rows):
        raise PencilError("expected a 2 x 4 matrix of linear forms")
    return GradedMatrix.of(rows, SRC, TGT, 4, p, names)


def check_linear(a: GradedMatrix) -> None:
    if a.nvars != 4 or a.shape != (2, 4):
        raise PencilError(f"expected a 2 x 4 matrix in 4 variables, got {a.shape} in {a.nvars}")
    if len(set(a.src)) != 1 or len(set(a.tgt)) != 1 or a.tgt[0] - a.src[0] != 1:
        raise PencilError("entries must all be linear forms")


def coefficient_columns(a: GradedMatrix) -> np.ndarray:
    """8 x 4: column j holds the coefficients of h_0j then of h_1j."""
    check_linear(a)
    out = np.zeros((8, 4), dtype=np.int64)
    for j in range(4):
        for r in range(2):
            f = a.entry(r, j)
            for e, c in f.terms:
                out[4 * r + e.index(1), j] = c
    return out


def to_pencil(a: GradedMatrix) -> GradedMatrix:
    coeffs = coefficient_columns(a)
    p = a.p
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(Form.from_dict(2, 1, {(1, 0): int(coeffs[i, j]), (0, 1): int(coeffs[4 + i, j])}, p))
        rows.append(tuple(row))
    return GradedMatrix(2, SRC, (1, 1, 1, 1), tuple(rows), p)


def pencil_det(a: GradedMatrix) -> Form:
    """The binary quartic det(psi); zero when psi has rank 3 generically."""
    return determinant(to_pencil(a))


def is_injective(a: GradedMatrix) -> bool:
    return rank(coefficient_columns(a), a.p) == 4


def rank_three_everywhere(psi: GradedMatrix) -> bool:
    """No point of P^1 (over the closure) where psi drops below rank 3."""
    return not common_root(minors(psi, 3))


def is_stable(a: GradedMatrix) -> bool:
    if not is_injective(a):
        return False
    stable = rank_three_everywhere(to_pencil(a))
    logger.debug("stable: %s", stable)
    return stable


def act(a: GradedMatrix, g: np.ndarray, h: np.ndarray, c: np.ndarray | None = None) -> GradedMatrix:
    """g . A . h with the variables then changed by x_i -> sum_k c[i, k] x_k."""
    check_linear(a)
    p = a.p
    g, h = np.asarray(g, dtype=np.int64) % p, np.asarray(h, dtype=np.int64) % p
    rows = []
    for i in range(2):
        row = []
        for j in range(4):
            acc = Form.zero(4, 1, p)
            for r in range(2):
                for b in range(4):
                    w = int(g[i, r]) * int(h[b, j]) % p
                    if w:
                        acc = acc + a.entry(r, b).scale(w)
            row.append(acc)
        rows.append(row)
    out = a.with_entries(rows)
    if c is None:
        return out
    c = np.asarray(c, dtype=np.int64) % p
    images = [Form.from_dict(4, 1, {tuple(1 if t == k else 0 for t in range(4)): int(c[i, k]) for k in range(4)}, p)
              for i in range(4)]
    return out.substitute(images)
