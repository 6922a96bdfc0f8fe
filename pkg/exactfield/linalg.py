"""Exact Gaussian elimination over F_p on int64 numpy arrays."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from exactfield.field import inv

# products of two residues must fit, so p < 2^31
MAX_PRIME = 2**31 - 1
INT64_BOUND = 2**63 - 1 - MAX_PRIME


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def as_mod(matrix, p: int) -> np.ndarray:
    mat = np.asarray(matrix, dtype=np.int64)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1) if mat.size else np.zeros((0, 0), dtype=np.int64)
    return np.mod(mat, p)


def row_reduce(matrix, p: int) -> RowReduceResult:
    mat = as_mod(matrix, p).copy()
    m, n = mat.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(mat[row:, col])
        if nz.size == 0:
            continue
        pivot = row + int(nz[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row, col:] = mat[row, col:] * inv(int(mat[row, col]), p) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            mat[hit, col:] = (mat[hit, col:] - np.outer(factors[hit], mat[row, col:])) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))


def rank(matrix, p: int) -> int:
    mat = as_mod(matrix, p)
    if mat.size == 0:
        return 0
    # eliminate along the shorter side
    if mat.shape[0] > mat.shape[1]:
        mat = mat.T
    return row_reduce(mat, p).rank


def kernel_basis(matrix, p: int, ncols: int | None = None) -> np.ndarray:
    """Rows of the result span {x : matrix @ x = 0}; one row per free column of the echelon form."""
    mat = as_mod(matrix, p)
    if mat.size == 0:
        n = ncols if ncols is not None else (mat.shape[1] if mat.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    reduced = row_reduce(mat, p)
    red = reduced.matrix
    n = red.shape[1]
    pivot_set = set(reduced.pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(reduced.pivots):
            basis[k, c] = (-red[r, f]) % p
    return basis


def left_kernel_basis(matrix, p: int) -> np.ndarray:
    mat = as_mod(matrix, p)
    return kernel_basis(mat.T, p, ncols=mat.shape[0])


def solve(matrix, rhs, p: int) -> np.ndarray | None:
    """One solution of matrix @ x = rhs, free variables set to zero; None when inconsistent."""
    mat = as_mod(matrix, p)
    b = np.mod(np.asarray(rhs, dtype=np.int64).reshape(-1), p)
    m, n = mat.shape if mat.ndim == 2 else (b.size, 0)
    if m == 0:
        return np.zeros(n, dtype=np.int64)
    if n == 0:
        return np.zeros(0, dtype=np.int64) if not b.any() else None
    reduced = row_reduce(np.hstack([mat, b.reshape(-1, 1)]), p)
    if reduced.pivots and reduced.pivots[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(reduced.pivots):
        x[c] = reduced.matrix[r, n]
    return x


def matmul(a, b, p: int) -> np.ndarray:
    """a @ b mod p, summing the inner dimension in blocks that cannot overflow int64."""
    a, b = as_mod(a, p), as_mod(b, p)
    inner = a.shape[1]
    step = max(1, INT64_BOUND // max(1, (p - 1) ** 2))
    if step >= inner:
        return np.mod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, inner, step):
        out = (out + np.mod(a[:, start:start + step] @ b[start:start + step], p)) % p
    return out


def span_basis(vectors, p: int) -> np.ndarray:
    """Echelon basis (as rows) of the span of the given row vectors."""
    mat = as_mod(vectors, p)
    if mat.size == 0:
        return mat.reshape(0, mat.shape[1] if mat.ndim == 2 else 0)
    reduced = row_reduce(mat, p)
    return reduced.matrix[: reduced.rank]


def span_dim(vectors, p: int) -> int:
    return rank(vectors, p)


def in_span(vector, vectors, p: int) -> bool:
    mat = as_mod(vectors, p)
    v = np.mod(np.asarray(vector, dtype=np.int64).reshape(1, -1), p)
    if mat.size == 0:
        return not v.any()
    return rank(np.vstack([mat, v]), p) == rank(mat, p)
