"""Matrices of forms between sums of line bundles.

A GradedMatrix with src (s_1..s_c) and tgt (t_1..t_r) is the map
O(s_1) + ... + O(s_c) -> O(t_1) + ... + O(t_r); entry (i, j) is a form of
degree t_i - s_j (zero when that is negative). Rows index the target.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from contracts import ShapeError
from exactfield.forms import Form, PointP, monomial_basis, monomial_index, parse_form
from exactfield.linalg import rank, solve


@dataclass(frozen=True)
class GradedMatrix:
    nvars: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    entries: tuple[tuple[Form, ...], ...]
    p: int

    def __post_init__(self):
        if len(self.entries) != len(self.tgt):
            raise ShapeError(f"{len(self.entries)} rows for {len(self.tgt)} target twists")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.src):
                raise ShapeError(f"row {i} has {len(row)} entries for {len(self.src)} source twists")
            for j, f in enumerate(row):
                d = self.tgt[i] - self.src[j]
                if f.nvars != self.nvars or f.p != self.p:
                    raise ShapeError(f"entry ({i},{j}) lives in another ring")
                if f.degree != d:
                    raise ShapeError(f"entry ({i},{j}) has degree {f.degree}, expected {d}")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.nvars, self.src, self.tgt, self.entries, self.p))

    # -------------------------
    # Constructors
    # -------------------------

    @classmethod
    def of(cls, rows: Sequence[Sequence[Form | str | int]], src: Sequence[int], tgt: Sequence[int],
           nvars: int, p: int, names: Sequence[str] | None = None) -> GradedMatrix:
        src, tgt = tuple(int(s) for s in src), tuple(int(t) for t in tgt)
        if len(rows) != len(tgt):
            raise ShapeError(f"{len(rows)} rows for {len(tgt)} target twists")
        entries = []
        for i, row in enumerate(rows):
            if len(row) != len(src):
                raise ShapeError(f"row {i} has {len(row)} entries for {len(src)} source twists")
            line = []
            for j, raw in enumerate(row):
                d = tgt[i] - src[j]
                f = raw if isinstance(raw, Form) else parse_form(raw, nvars, p, names=names, degree=max(d, 0))
                line.append(f.with_degree(d))
            entries.append(tuple(line))
        return cls(nvars, src, tgt, tuple(entries), p)

    @classmethod
    def zero(cls, src: Sequence[int], tgt: Sequence[int], nvars: int, p: int) -> GradedMatrix:
        rows = tuple(tuple(Form.zero(nvars, t - s, p) for s in src) for t in tgt)
        return cls(nvars, tuple(src), tuple(tgt), rows, p)

    @classmethod
    def identity(cls, twists: Sequence[int], nvars: int, p: int) -> GradedMatrix:
        twists = tuple(twists)
        rows = tuple(
            tuple(Form.constant(1, nvars, p) if i == j else Form.zero(nvars, twists[i] - twists[j], p)
                  for j in range(len(twists)))
            for i in range(len(twists))
        )
        return cls(nvars, twists, twists, rows, p)

    @classmethod
    def row(cls, forms: Sequence[Form], target: int = 0) -> GradedMatrix:
        """The map sum O(target - deg f_j) -> O(target) given by (f_1 ... f_m)."""
        first = forms[0]
        src = tuple(target - f.degree for f in forms)
        return cls(first.nvars, src, (target,), (tuple(forms),), first.p)

    @classmethod
    def column(cls, forms: Sequence[Form], source: int = 0) -> GradedMatrix:
        first = forms[0]
        tgt = tuple(source + f.degree for f in forms)
        return cls(first.nvars, (source,), tgt, tuple((f,) for f in forms), first.p)

    # -------------------------
    # Shape
    # -------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.tgt), len(self.src)

    def entry(self, i: int, j: int) -> Form:
        return self.entries[i][j]

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for row in self.entries for f in row)

    def with_entries(self, rows: Iterable[Iterable[Form]]) -> GradedMatrix:
        fitted = tuple(
            tuple(f.with_degree(t - s) for f, s in zip(row, self.src))
            for row, t in zip(rows, self.tgt)
        )
        return GradedMatrix(self.nvars, self.src, self.tgt, fitted, self.p)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> GradedMatrix:
        return GradedMatrix(
            self.nvars,
            tuple(self.src[j] for j in cols),
            tuple(self.tgt[i] for i in rows),
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            self.p,
        )

    # -------------------------
    # Algebra
    # -------------------------

    def __add__(self, other: GradedMatrix) -> GradedMatrix:
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ShapeError("cannot add graded matrices of different shapes")
        return self.with_entries(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        )

    def __neg__(self) -> GradedMatrix:
        return self.scale(-1)

    def __sub__(self, other: GradedMatrix) -> GradedMatrix:
        return self + (-other)

    def scale(self, c: int) -> GradedMatrix:
        return self.with_entries(tuple(f.scale(c) for f in row) for row in self.entries)

    def __matmul__(self, other: GradedMatrix) -> GradedMatrix:
        return compose(self, other)

    def twist(self, t: int) -> GradedMatrix:
        return GradedMatrix(self.nvars, tuple(s + t for s in self.src), tuple(x + t for x in self.tgt),
                            self.entries, self.p)

    def substitute(self, images: Sequence[Form]) -> GradedMatrix:
        """Substitute linear forms for the variables (restriction to a linear subspace, change of coordinates)."""
        first = images[0]
        if first.degree != 1:
            raise ShapeError("only linear substitutions preserve twists")
        rows = tuple(
            tuple(f.substitute(images).with_degree(t - s) if not f.is_zero
                  else Form.zero(first.nvars, t - s, first.p) for f, s in zip(row, self.src))
            for row, t in zip(self.entries, self.tgt)
        )
        return GradedMatrix(first.nvars, self.src, self.tgt, rows, first.p)

    def format(self, names: Sequence[str] | None = None) -> list[list[str]]:
        return [[f.format(names) for f in row] for row in self.entries]


def compose(m: GradedMatrix, n: GradedMatrix) -> GradedMatrix:
    """m after n."""
    if m.src != n.tgt:
        raise ShapeError(f"cannot compose: source {m.src} does not match target {n.tgt}")
    rows = []
    for i, t in enumerate(m.tgt):
        line = []
        for j, s in enumerate(n.src):
            acc = Form.zero(m.nvars, t - s, m.p)
            for k in range(len(m.src)):
                a, b = m.entries[i][k], n.entries[k][j]
                if a.is_zero or b.is_zero:
                    continue
                acc = (acc + a * b).with_degree(t - s)
            line.append(acc)
        rows.append(tuple(line))
    return GradedMatrix(m.nvars, n.src, m.tgt, tuple(rows), m.p)


def dual(m: GradedMatrix) -> GradedMatrix:
    return GradedMatrix(
        m.nvars,
        tuple(-t for t in m.tgt),
        tuple(-s for s in m.src),
        tuple(tuple(m.entries[i][j] for i in range(len(m.tgt))) for j in range(len(m.src))),
        m.p,
    )


def hstack(blocks: Sequence[GradedMatrix]) -> GradedMatrix:
    first = blocks[0]
    if any(b.tgt != first.tgt for b in blocks):
        raise ShapeError("horizontal blocks need equal targets")
    rows = tuple(tuple(f for b in blocks for f in b.entries[i]) for i in range(len(first.tgt)))
    return GradedMatrix(first.nvars, tuple(s for b in blocks for s in b.src), first.tgt, rows, first.p)


def vstack(blocks: Sequence[GradedMatrix]) -> GradedMatrix:
    first = blocks[0]
    if any(b.src != first.src for b in blocks):
        raise ShapeError("vertical blocks need equal sources")
    rows = tuple(row for b in blocks for row in b.entries)
    return GradedMatrix(first.nvars, first.src, tuple(t for b in blocks for t in b.tgt), rows, first.p)


def block_diag(blocks: Sequence[GradedMatrix]) -> GradedMatrix:
    first = blocks[0]
    src = tuple(s for b in blocks for s in b.src)
    rows = []
    for bi, b in enumerate(blocks):
        for i, t in enumerate(b.tgt):
            line = []
            for bj, other in enumerate(blocks):
                if bi == bj:
                    line.extend(b.entries[i])
                else:
                    line.extend(Form.zero(first.nvars, t - s, first.p) for s in other.src)
            rows.append(tuple(line))
    return GradedMatrix(first.nvars, src, tuple(t for b in blocks for t in b.tgt), tuple(rows), first.p)


# -------------------------
# Graded pieces
# -------------------------

def piece_offsets(twists: Sequence[int], l: int, nvars: int) -> list[int]:
    offsets = [0]
    for a in twists:
        offsets.append(offsets[-1] + len(monomial_basis(nvars, l + a)))
    return offsets


@lru_cache(maxsize=4096)
def graded_piece(m: GradedMatrix, l: int) -> np.ndarray:
    """H^0 of m twisted by l: sum_j S_{l+s_j} -> sum_i S_{l+t_i} in monomial coordinates."""
    col_off = piece_offsets(m.src, l, m.nvars)
    row_off = piece_offsets(m.tgt, l, m.nvars)
    out = np.zeros((row_off[-1], col_off[-1]), dtype=np.int64)
    for i, row in enumerate(m.entries):
        index = monomial_index(m.nvars, l + m.tgt[i])
        for j, f in enumerate(row):
            if f.is_zero:
                continue
            for k, e in enumerate(monomial_basis(m.nvars, l + m.src[j])):
                c = col_off[j] + k
                for fe, coeff in f.terms:
                    r = row_off[i] + index[tuple(a + b for a, b in zip(e, fe))]
                    out[r, c] = (out[r, c] + coeff) % m.p
    out.setflags(write=False)
    return out


def evaluate(m: GradedMatrix, x: PointP | Sequence[int]) -> np.ndarray:
    coords = x.coords if isinstance(x, PointP) else tuple(x)
    out = np.zeros(m.shape, dtype=np.int64)
    for i, row in enumerate(m.entries):
        for j, f in enumerate(row):
            out[i, j] = f.evaluate(coords)
    return out


def forms_to_vector(forms: Sequence[Form], twists: Sequence[int], l: int) -> np.ndarray:
    parts = []
    for f, a in zip(forms, twists):
        d = l + a
        parts.append(np.asarray(f.with_degree(d).to_vector() if d >= 0 else [], dtype=np.int64))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def vector_to_forms(vec: Sequence[int], twists: Sequence[int], l: int, nvars: int, p: int) -> list[Form]:
    offsets = piece_offsets(twists, l, nvars)
    return [
        Form.from_vector(nvars, l + a, vec[offsets[k]:offsets[k + 1]], p) if l + a >= 0
        else Form.zero(nvars, l + a, p)
        for k, a in enumerate(twists)
    ]


def solve_graded(m: GradedMatrix, r: GradedMatrix) -> GradedMatrix | None:
    """A graded f with m @ f == r, found column by column; None if some column has no lift."""
    if m.tgt != r.tgt:
        raise ShapeError("lift target mismatch")
    columns = []
    for j, s in enumerate(r.src):
        rhs = forms_to_vector([r.entries[i][j] for i in range(len(r.tgt))], r.tgt, -s)
        x = solve(graded_piece(m, -s), rhs, m.p)
        if x is None:
            return None
        columns.append(vector_to_forms(x, m.src, -s, m.nvars, m.p))
    rows = tuple(tuple(columns[j][k] for j in range(len(r.src))) for k in range(len(m.src)))
    return GradedMatrix(m.nvars, r.src, m.src, rows, m.p)


# -------------------------
# Determinants and ideals
# -------------------------

def determinant(m: GradedMatrix) -> Form:
    rows, cols = m.shape
    if rows != cols:
        raise ShapeError("determinant of a non-square matrix")
    degree = sum(m.tgt) - sum(m.src)
    if rows == 0:
        return Form.constant(1, m.nvars, m.p)

    # Laplace expansion along rows, memoized on the unused columns
    @lru_cache(maxsize=None)
    def expand(start: int, remaining: tuple[int, ...]) -> Form:
        if start == rows:
            return Form.constant(1, m.nvars, m.p)
        d = sum(m.tgt[start:]) - sum(m.src[j] for j in remaining)
        acc = Form.zero(m.nvars, d, m.p)
        for pos, j in enumerate(remaining):
            f = m.entries[start][j]
            if f.is_zero:
                continue
            sub = expand(start + 1, remaining[:pos] + remaining[pos + 1:])
            if sub.is_zero:
                continue
            term = f * sub
            acc = acc + (-term if pos % 2 else term)
        return acc.with_degree(d)

    return expand(0, tuple(range(cols))).with_degree(degree)


def minors(m: GradedMatrix, k: int) -> list[Form]:
    rows, cols = m.shape
    return [
        determinant(m.submatrix(r, c))
        for r in itertools.combinations(range(rows), k)
        for c in itertools.combinations(range(cols), k)
    ]


def maximal_minors(m: GradedMatrix) -> list[Form]:
    return minors(m, min(m.shape))


def ideal_piece(gens: Sequence[Form], d: int) -> np.ndarray:
    """Columns spanning the degree-d part of the ideal generated by gens."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return np.zeros((0, 0), dtype=np.int64)
    return graded_piece(GradedMatrix.row(gens), d)


def ideal_piece_dim(gens: Sequence[Form], d: int) -> int:
    piece = ideal_piece(gens, d)
    return rank(piece, gens[0].p) if piece.size else 0


def rank_at(m: GradedMatrix, x: PointP | Sequence[int]) -> int:
    return rank(evaluate(m, x), m.p)
