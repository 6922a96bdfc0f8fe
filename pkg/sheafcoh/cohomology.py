from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from contracts import NodeError, UncertifiedNode
from exactfield.gradedmatrix import GradedMatrix, dual as dual_matrix, evaluate, graded_piece, piece_offsets
from exactfield.linalg import matmul, rank
from exactfield.sampling import random_points
from geomtests.epi import epi_certificate
from sheafcoh.models import (
    h0_basis,
    h0_dim,
    h0_model,
    fiber_model,
    image_rows,
    line_h0,
    line_hn,
    subquotient_dim,
)
from sheafcoh.nodes import Dual, KerEpi, KerFrom, KerInto, LineSum, SheafNode, SubQuot, Sum, Twist, has_model

logger = logging.getLogger(__name__)

CERTIFY_POINTS = 6


@dataclass(frozen=True)
class Cell:
    """h^i(E(l)) known to lie in [lo, hi]; exact when lo == hi."""
    lo: int
    hi: int

    @classmethod
    def exact(cls, v: int) -> Cell:
        return cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise NodeError(f"cell is indeterminate in [{self.lo}, {self.hi}]")
        return self.lo

    def __add__(self, other: Cell | int) -> Cell:
        other = other if isinstance(other, Cell) else Cell.exact(other)
        return Cell(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: Cell | int) -> Cell:
        other = other if isinstance(other, Cell) else Cell.exact(other)
        return Cell(self.lo - other.hi, self.hi - other.lo)

    def clamp(self) -> Cell:
        return Cell(max(self.lo, 0), max(self.hi, 0))

    def to_json(self) -> int | list[int]:
        return self.lo if self.is_exact else [self.lo, self.hi]


ZERO = Cell.exact(0)


@dataclass(frozen=True)
class CohTable:
    n: int
    window: tuple[int, int]
    cells: Mapping[tuple[int, int], Cell] = field(hash=False)

    @property
    def twists(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def cell(self, i: int, l: int) -> Cell:
        if i < 0 or i > self.n:
            return ZERO
        if (i, l) not in self.cells:
            raise NodeError(f"h^{i} at twist {l} is outside the window {self.window}")
        return self.cells[(i, l)]

    def h(self, i: int, l: int) -> int:
        return self.cell(i, l).value

    def column_exact(self, l: int) -> bool:
        return all(self.cell(i, l).is_exact for i in range(self.n + 1))

    def chi(self, l: int) -> int:
        return sum((-1) ** i * self.h(i, l) for i in range(self.n + 1))

    def indeterminate(self) -> list[tuple[int, int]]:
        return sorted(k for k, c in self.cells.items() if not c.is_exact)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "window": list(self.window),
            "h": {str(i): {str(l): self.cell(i, l).to_json() for l in self.twists} for i in range(self.n + 1)},
        }


def default_window(n: int) -> tuple[int, int]:
    return -n - 3, 4


# -------------------------
# Duals
# -------------------------

def dual_node(node: SheafNode) -> SheafNode | None:
    """The dual as another expressible node, or None."""
    if isinstance(node, LineSum):
        return LineSum(node.nvars, node.p, tuple(-a for a in node.twists))
    if isinstance(node, KerEpi):
        m = node.matrix
        return SubQuot(dual_matrix(m), LineSum(m.nvars, m.p, tuple(-a for a in m.src)))
    if isinstance(node, SubQuot):
        inner = dual_node(node.target)
        return None if inner is None else KerFrom(inner, dual_matrix(node.matrix))
    if isinstance(node, KerFrom):
        inner = dual_node(node.source)
        return None if inner is None else SubQuot(dual_matrix(node.matrix), inner)
    if isinstance(node, Twist):
        inner = dual_node(node.node)
        return None if inner is None else Twist(inner, -node.by)
    if isinstance(node, Sum):
        parts = [dual_node(part) for part in node.parts]
        return None if any(q is None for q in parts) else Sum(tuple(parts))
    if isinstance(node, Dual):
        return node.node
    return None


# -------------------------
# Certification
# -------------------------

def _fiber_dim_ok(node: SheafNode, points) -> bool:
    return all(subquotient_dim(fiber_model(node, x), node.p) == node.rank for x in points)


@lru_cache(maxsize=256)
def certify(node: SheafNode, seed: int = 0, window: tuple[int, int] | None = None) -> bool:
    """Check the epi/mono hypotheses every construction relies on; raise UncertifiedNode on failure."""
    p = node.p
    if isinstance(node, LineSum):
        return True
    if isinstance(node, KerEpi):
        cert = epi_certificate(node.matrix)
        if not cert.ok:
            raise UncertifiedNode(f"no epimorphism certificate up to degree {cert.max_degree}")
        return True
    if isinstance(node, (Twist, Dual)):
        return certify(node.node, seed, window)
    if isinstance(node, Sum):
        return all(certify(part, seed, window) for part in node.parts)

    points = random_points(seed, node.nvars, p, CERTIFY_POINTS)
    if isinstance(node, KerInto):
        certify(node.target, seed, window)
        for x in points:
            inner = fiber_model(node.target, x)
            cols = evaluate(node.matrix, x).T
            if rank(np.vstack([inner.z, cols]), p) != inner.z.shape[0]:
                raise UncertifiedNode(f"map does not land in the target node at {x.format()}")
            if rank(np.vstack([inner.s, cols]), p) != inner.z.shape[0]:
                raise UncertifiedNode(f"map onto the target node is not surjective at {x.format()}")
    elif isinstance(node, KerFrom):
        certify(node.source, seed, window)
        for x in points:
            inner = fiber_model(node.source, x)
            m = evaluate(node.matrix, x)
            if inner.s.shape[0] and matmul(inner.s, m.T, p).any():
                raise UncertifiedNode(f"map is not defined on the source node at {x.format()}")
            if rank(image_rows(m, inner.z, p), p) != len(node.matrix.tgt):
                raise UncertifiedNode(f"map from the source node is not surjective at {x.format()}")
    elif isinstance(node, SubQuot):
        certify(node.target, seed, window)
        for x in points:
            inner = fiber_model(node.target, x)
            cols = evaluate(node.matrix, x).T
            if rank(np.vstack([inner.z, cols]), p) != inner.z.shape[0]:
                raise UncertifiedNode(f"map does not land in the target node at {x.format()}")
            base = rank(inner.s, p) if inner.s.shape[0] else 0
            if rank(np.vstack([inner.s, cols]), p) - base != len(node.matrix.src):
                raise UncertifiedNode(f"map into the target node is not injective at {x.format()}")
        lo, hi = window or default_window(node.n)
        for l in range(lo, hi + 1):
            inner = h0_model(node.target, l)
            src_width = piece_offsets(node.matrix.src, l, node.nvars)[-1]
            if not src_width:
                continue
            images = image_rows(graded_piece(node.matrix, l), np.eye(src_width, dtype=np.int64), p)
            base = rank(inner.s, p) if inner.s.shape[0] else 0
            if rank(np.vstack([inner.s, images]), p) - base != src_width:
                raise UncertifiedNode(f"sections of the subsheaf do not inject at twist {l}")
    else:
        raise NodeError(f"unknown node {node!r}")

    if not _fiber_dim_ok(node, points):
        raise UncertifiedNode("fiber dimension differs from the rank at a sampled point")
    logger.debug("certified %s", type(node).__name__)
    return True


# -------------------------
# Cohomology
# -------------------------

def _induced_rank_into(node: KerInto | SubQuot, l: int) -> int:
    """Rank of H^0(A(l)) -> H^0(G(l)) for a line sum A mapped into the node G."""
    inner = h0_model(node.target, l)
    src_width = piece_offsets(node.matrix.src, l, node.nvars)[-1]
    if not src_width:
        return 0
    images = image_rows(graded_piece(node.matrix, l), np.eye(src_width, dtype=np.int64), node.p)
    base = rank(inner.s, node.p) if inner.s.shape[0] else 0
    return rank(np.vstack([inner.s, images]), node.p) - base


def _induced_rank_from(node: KerFrom, l: int) -> int:
    inner = h0_model(node.source, l)
    if not inner.z.shape[0]:
        return 0
    return rank(image_rows(graded_piece(node.matrix, l), inner.z, node.p), node.p)


def _top_rank(node: SubQuot, l: int) -> Cell:
    """Rank of H^n(A(l)) -> H^n(G(l)), read off the dual map on sections of G^v."""
    n = node.n
    a_top = line_hn(node.matrix.src, l, n)
    g_top = cell(node.target, n, l)
    if a_top == 0 or g_top.hi == 0:
        return ZERO
    g_dual = dual_node(node.target)
    if g_dual is None or not has_model(g_dual):
        return Cell(0, min(a_top, g_top.hi))
    k = -l - n - 1
    inner = h0_model(g_dual, k)
    if not inner.z.shape[0]:
        return ZERO
    m = dual_matrix(node.matrix)
    return Cell.exact(rank(image_rows(graded_piece(m, k), inner.z, node.p), node.p))


@lru_cache(maxsize=65536)
def cell(node: SheafNode, i: int, l: int) -> Cell:
    n = node.n
    if n < 2:
        raise NodeError("sheaf cohomology is implemented on P^n with n >= 2")
    if i < 0 or i > n:
        return ZERO

    if isinstance(node, LineSum):
        if i == 0:
            return Cell.exact(line_h0(node.twists, l, n))
        if i == n:
            return Cell.exact(line_hn(node.twists, l, n))
        return ZERO

    if isinstance(node, Twist):
        return cell(node.node, i, l + node.by)

    if isinstance(node, Sum):
        total = ZERO
        for part in node.parts:
            total = total + cell(part, i, l)
        return total

    if isinstance(node, Dual):
        return cell(node.node, n - i, -l - n - 1)

    if isinstance(node, KerEpi):
        src, tgt = node.matrix.src, node.matrix.tgt
        if i == 0:
            return Cell.exact(h0_dim(node, l))
        if i == 1:
            return Cell.exact(line_h0(tgt, l, n) - line_h0(src, l, n) + h0_dim(node, l))
        if i == n:
            return Cell.exact(line_hn(src, l, n) - line_hn(tgt, l, n))
        return ZERO

    if isinstance(node, KerInto):
        src, g = node.matrix.src, node.target
        if i in (0, 1):
            rk = _induced_rank_into(node, l)
            return Cell.exact(line_h0(src, l, n) - rk) if i == 0 else (cell(g, 0, l) - rk).clamp()
        if i < n:
            return cell(g, i - 1, l)
        return (cell(g, n - 1, l) + line_hn(src, l, n) - cell(g, n, l)).clamp()

    if isinstance(node, KerFrom):
        tgt, g = node.matrix.tgt, node.source
        if i in (0, 1):
            rk = _induced_rank_from(node, l)
            if i == 0:
                return (cell(g, 0, l) - rk).clamp()
            return (Cell.exact(line_h0(tgt, l, n) - rk) + cell(g, 1, l)).clamp()
        if i < n:
            return cell(g, i, l)
        return (cell(g, n, l) - line_hn(tgt, l, n)).clamp()

    if isinstance(node, SubQuot):
        src, g = node.matrix.src, node.target
        if i == 0:
            return Cell.exact(h0_model(node, l).dim) if has_model(node) else (cell(g, 0, l) - line_h0(src, l, n)).clamp()
        if i <= n - 2:
            return cell(g, i, l)
        r = _top_rank(node, l)
        if i == n - 1:
            return (cell(g, n - 1, l) + line_hn(src, l, n) - r).clamp()
        return (cell(g, n, l) - r).clamp()

    raise NodeError(f"unknown node {node!r}")


def coh_table(node: SheafNode, window: tuple[int, int] | None = None, *, seed: int = 0,
              check: bool = True) -> CohTable:
    window = window or default_window(node.n)
    if check:
        certify(node, seed, window)
    cells = {(i, l): cell(node, i, l) for l in range(window[0], window[1] + 1) for i in range(node.n + 1)}
    table = CohTable(node.n, window, cells)
    if table.indeterminate():
        logger.info("indeterminate cells %s", table.indeterminate())
    return table


# -------------------------
# P(E)
# -------------------------

def section_matrix(node: SheafNode) -> GradedMatrix:
    """O^{h0} -> ambient(E) whose columns are a basis of H^0(E)."""
    model = h0_basis(node, 0)
    if model.dim == 0:
        raise NodeError("the node has no global sections")
    columns = model.sections()
    rows = tuple(tuple(columns[c][r] for c in range(model.dim)) for r in range(len(node.ambient)))
    return GradedMatrix(node.nvars, (0,) * model.dim, node.ambient, rows, node.p)


def p_transform(node: SheafNode) -> SheafNode:
    """P(E)^v, the kernel of the evaluation map H^0(E) x O -> E."""
    m = section_matrix(node)
    if isinstance(node, LineSum):
        return KerEpi(m)
    return KerInto(m, node)


def p_bundle(node: SheafNode) -> SheafNode:
    kernel = p_transform(node)
    return dual_node(kernel) or Dual(kernel)


def hypotheses_on_dual(node: SheafNode, window: tuple[int, int] | None = None) -> dict[str, bool | None]:
    """H^0(E^v) = 0 and H^1(E^v) = 0, or None where the dual is not expressible."""
    d = dual_node(node)
    if d is None:
        return {"h0_dual_vanishes": None, "h1_dual_vanishes": None}
    return {"h0_dual_vanishes": cell(d, 0, 0) == ZERO, "h1_dual_vanishes": cell(d, 1, 0) == ZERO}


def monotone_vanishing_ok(table: CohTable) -> bool:
    """If h^j(E(m-j)) = 0 for all j > i, the same holds at m+1, wherever the table decides it."""
    n = table.n

    def vanishes_above(i: int, m: int) -> bool | None:
        seen = True
        for j in range(i + 1, n + 1):
            l = m - j
            if not table.window[0] <= l <= table.window[1]:
                return None
            c = table.cell(j, l)
            if not c.is_exact:
                return None
            seen = seen and c.lo == 0
        return seen

    for i in range(n):
        for m in range(table.window[0], table.window[1] + n + 1):
            here, there = vanishes_above(i, m), vanishes_above(i, m + 1)
            if here is True and there is False:
                return False
    return True
