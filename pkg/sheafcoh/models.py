"""Concrete section and fiber models of sheaf nodes.

H^0(E(l)) is Z/S with S <= Z <= H^0(ambient(l)); vectors are rows in the
monomial coordinates of the ambient graded piece. The fiber E(x) is Zf/Sf
inside k^{rank ambient}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from contracts import NodeError
from exactfield.forms import Form, PointP
from exactfield.gradedmatrix import evaluate, graded_piece, piece_offsets, vector_to_forms
from exactfield.linalg import as_mod, kernel_basis, matmul, rank, span_basis
from sheafcoh.nodes import Dual, KerEpi, KerFrom, KerInto, LineSum, SheafNode, SubQuot, Sum, Twist

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subquotient:
    z: np.ndarray
    s: np.ndarray

    @property
    def dim(self) -> int:
        return self.z.shape[0] - self.s.shape[0]


@dataclass(frozen=True)
class SectionModel:
    node: SheafNode
    l: int
    ambient: tuple[int, ...]
    model: Subquotient
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def sections(self) -> list[list[Form]]:
        """The basis as vectors of forms in the ambient sum."""
        return [vector_to_forms(v, self.ambient, self.l, self.node.nvars, self.node.p) for v in self.basis]


def _empty(width: int) -> np.ndarray:
    return np.zeros((0, width), dtype=np.int64)


def _span(rows: np.ndarray, p: int, width: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return _empty(width)
    return span_basis(rows, p)


def line_h0(twists, l: int, n: int) -> int:
    return sum(comb(n + l + a, n) for a in twists if l + a >= 0)


def line_hn(twists, l: int, n: int) -> int:
    return sum(comb(-l - a - 1, n) for a in twists if -l - a - 1 >= n)


def preimage(m: np.ndarray, target: np.ndarray, p: int, width: int) -> np.ndarray:
    """Rows v with m @ v in the row span of target."""
    if m.shape[0] == 0:
        return np.eye(width, dtype=np.int64)
    if target.shape[0] == 0:
        return kernel_basis(m, p, ncols=width)
    joint = np.hstack([as_mod(m, p), as_mod(target, p).T])
    kernel = kernel_basis(joint, p)
    return _span(kernel[:, :width], p, width)


def restrict_kernel(z: np.ndarray, m: np.ndarray, p: int, width: int) -> np.ndarray:
    """Rows of span(z) killed by m."""
    if z.shape[0] == 0 or m.shape[0] == 0:
        return z
    coeffs = kernel_basis(matmul(m, z.T, p), p, ncols=z.shape[0])
    return _span(matmul(coeffs, z, p), p, width)


def image_rows(m: np.ndarray, rows: np.ndarray, p: int) -> np.ndarray:
    if rows.shape[0] == 0:
        return _empty(m.shape[0])
    return matmul(rows, as_mod(m, p).T, p)


def block_diagonal(parts: list[np.ndarray], widths: list[int]) -> np.ndarray:
    total = sum(widths)
    out = [_empty(total)]
    offset = 0
    for rows, w in zip(parts, widths):
        if rows.shape[0]:
            padded = np.zeros((rows.shape[0], total), dtype=np.int64)
            padded[:, offset:offset + w] = rows
            out.append(padded)
        offset += w
    return np.vstack(out)


# -------------------------
# H^0 models
# -------------------------

@lru_cache(maxsize=2048)
def h0_model(node: SheafNode, l: int) -> Subquotient:
    if isinstance(node, Dual):
        raise NodeError("a dual known only through Serre duality has no section model")
    p = node.p
    width = piece_offsets(node.ambient, l, node.nvars)[-1]

    if isinstance(node, LineSum):
        return Subquotient(np.eye(width, dtype=np.int64), _empty(width))

    if isinstance(node, KerEpi):
        return Subquotient(kernel_basis(graded_piece(node.matrix, l), p, ncols=width), _empty(width))

    if isinstance(node, KerInto):
        inner = h0_model(node.target, l)
        return Subquotient(preimage(graded_piece(node.matrix, l), inner.s, p, width), _empty(width))

    if isinstance(node, KerFrom):
        inner = h0_model(node.source, l)
        z = restrict_kernel(inner.z, graded_piece(node.matrix, l), p, width)
        return Subquotient(z, inner.s)

    if isinstance(node, SubQuot):
        inner = h0_model(node.target, l)
        src_width = piece_offsets(node.matrix.src, l, node.nvars)[-1]
        images = image_rows(graded_piece(node.matrix, l), np.eye(src_width, dtype=np.int64), p)
        s = _span(np.vstack([inner.s, images]), p, width)
        return Subquotient(inner.z, s)

    if isinstance(node, Twist):
        return h0_model(node.node, l + node.by)

    if isinstance(node, Sum):
        models = [h0_model(part, l) for part in node.parts]
        widths = [piece_offsets(part.ambient, l, node.nvars)[-1] for part in node.parts]
        return Subquotient(block_diagonal([m.z for m in models], widths),
                           block_diagonal([m.s for m in models], widths))

    raise NodeError(f"unknown node {node!r}")


def complement_basis(model: Subquotient, p: int) -> np.ndarray:
    """Rows of z whose classes form a basis of z/s."""
    width = model.z.shape[1]
    chosen: list[np.ndarray] = []
    current = model.s
    base = rank(current, p) if current.shape[0] else 0
    for row in model.z:
        trial = np.vstack([current, row.reshape(1, -1)]) if current.shape[0] else row.reshape(1, -1)
        r = rank(trial, p)
        if r > base:
            chosen.append(row)
            current, base = trial, r
        if len(chosen) == model.dim:
            break
    return np.array(chosen, dtype=np.int64).reshape(len(chosen), width)


@lru_cache(maxsize=512)
def h0_basis(node: SheafNode, l: int) -> SectionModel:
    model = h0_model(node, l)
    basis = model.z if model.s.shape[0] == 0 else complement_basis(model, node.p)
    logger.debug("h0 basis at l=%d: %d sections", l, basis.shape[0])
    return SectionModel(node, l, node.ambient, model, basis)


def h0_dim(node: SheafNode, l: int) -> int:
    if isinstance(node, LineSum):
        return line_h0(node.twists, l, node.n)
    if isinstance(node, KerEpi):
        piece = graded_piece(node.matrix, l)
        width = piece_offsets(node.ambient, l, node.nvars)[-1]
        return width - (rank(piece, node.p) if piece.size else 0)
    if isinstance(node, Twist):
        return h0_dim(node.node, l + node.by)
    if isinstance(node, Sum):
        return sum(h0_dim(part, l) for part in node.parts)
    return h0_model(node, l).dim


# -------------------------
# Fiber models
# -------------------------

def fiber_model(node: SheafNode, x: PointP) -> Subquotient:
    if isinstance(node, Dual):
        raise NodeError("a dual known only through Serre duality has no fiber model")
    p = node.p
    width = len(node.ambient)

    if isinstance(node, LineSum):
        return Subquotient(np.eye(width, dtype=np.int64), _empty(width))

    if isinstance(node, KerEpi):
        return Subquotient(kernel_basis(evaluate(node.matrix, x), p, ncols=width), _empty(width))

    if isinstance(node, KerInto):
        inner = fiber_model(node.target, x)
        return Subquotient(preimage(evaluate(node.matrix, x), inner.s, p, width), _empty(width))

    if isinstance(node, KerFrom):
        inner = fiber_model(node.source, x)
        return Subquotient(restrict_kernel(inner.z, evaluate(node.matrix, x), p, width), inner.s)

    if isinstance(node, SubQuot):
        inner = fiber_model(node.target, x)
        cols = evaluate(node.matrix, x).T
        return Subquotient(inner.z, _span(np.vstack([inner.s, cols]), p, width))

    if isinstance(node, Twist):
        return fiber_model(node.node, x)

    if isinstance(node, Sum):
        models = [fiber_model(part, x) for part in node.parts]
        widths = [len(part.ambient) for part in node.parts]
        return Subquotient(block_diagonal([m.z for m in models], widths),
                           block_diagonal([m.s for m in models], widths))

    raise NodeError(f"unknown node {node!r}")


def subquotient_dim(model: Subquotient, p: int) -> int:
    z = rank(model.z, p) if model.z.shape[0] else 0
    s = rank(model.s, p) if model.s.shape[0] else 0
    return z - s


def evaluate_sections(model: SectionModel, x: PointP) -> np.ndarray:
    """Values at x of the basis sections, one row per section, in k^{rank ambient}."""
    node = model.node
    offsets = piece_offsets(model.ambient, model.l, node.nvars)
    out = np.zeros((model.dim, len(model.ambient)), dtype=np.int64)
    for r, forms in enumerate(model.sections()):
        for k, f in enumerate(forms):
            if offsets[k + 1] > offsets[k]:
                out[r, k] = f.evaluate(x.coords)
    return out
