"""Lines in P^n, restriction of sheaf nodes to them, and splitting types."""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from chernrr.chern import chern_of_node
from contracts import GeometryError, SplittingError
from exactfield.binary import common_divisor, common_root, format_divisor
from exactfield.forms import Form, PointP
from exactfield.gradedmatrix import GradedMatrix, maximal_minors
from exactfield.linalg import rank
from sheafcoh.cohomology import dual_node
from sheafcoh.models import h0_dim
from sheafcoh.nodes import Dual, KerEpi, KerFrom, KerInto, LineSum, SheafNode, SubQuot, Sum, Twist

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineParam:
    a: PointP
    b: PointP

    def __post_init__(self):
        if self.a.nvars != self.b.nvars or self.a.p != self.b.p:
            raise GeometryError("the points live in different spaces")
        if rank(np.array([self.a.coords, self.b.coords], dtype=np.int64), self.a.p) != 2:
            raise GeometryError("the points do not span a line")

    @classmethod
    def through(cls, a: Sequence[int] | PointP, b: Sequence[int] | PointP, p: int | None = None) -> LineParam:
        if not isinstance(a, PointP):
            a = PointP.of(a, p)
        if not isinstance(b, PointP):
            b = PointP.of(b, p)
        return cls(a, b)

    @property
    def nvars(self) -> int:
        return self.a.nvars

    @property
    def p(self) -> int:
        return self.a.p

    def images(self) -> list[Form]:
        """x_i = a_i u0 + b_i u1."""
        return [Form.from_dict(2, 1, {(1, 0): ai, (0, 1): bi}, self.p) for ai, bi in zip(self.a.coords, self.b.coords)]

    def point_at(self, s: int, t: int) -> PointP:
        return PointP.of([s * ai + t * bi for ai, bi in zip(self.a.coords, self.b.coords)], self.p)

    def contains(self, x: PointP) -> bool:
        return rank(np.array([self.a.coords, self.b.coords, x.coords], dtype=np.int64), self.p) == 2

    def format(self) -> str:
        return f"line through {self.a.format()} and {self.b.format()}"


def restrict_matrix(m: GradedMatrix, line: LineParam) -> GradedMatrix:
    return m.substitute(line.images())


def restrict_node(node: SheafNode, line: LineParam) -> SheafNode:
    if node.nvars != line.nvars:
        raise GeometryError(f"line lives in P^{line.nvars - 1}, node on P^{node.n}")
    if isinstance(node, LineSum):
        return LineSum(2, node.p, node.twists)
    if isinstance(node, KerEpi):
        return KerEpi(restrict_matrix(node.matrix, line))
    if isinstance(node, KerInto):
        return KerInto(restrict_matrix(node.matrix, line), restrict_node(node.target, line))
    if isinstance(node, KerFrom):
        return KerFrom(restrict_node(node.source, line), restrict_matrix(node.matrix, line))
    if isinstance(node, SubQuot):
        return SubQuot(restrict_matrix(node.matrix, line), restrict_node(node.target, line))
    if isinstance(node, Twist):
        return Twist(restrict_node(node.node, line), node.by)
    if isinstance(node, Sum):
        return Sum(tuple(restrict_node(part, line) for part in node.parts))
    if isinstance(node, Dual):
        return Dual(restrict_node(node.node, line))
    raise GeometryError(f"cannot restrict {node!r}")


def _check_epis(node: SheafNode) -> None:
    """Every epimorphism of line sums inside the restricted node must stay onto along the line."""
    if isinstance(node, KerEpi):
        m = node.matrix
        if not m.shape[0]:
            return
        gens = maximal_minors(m)
        if common_root(gens):
            nonzero = [f for f in gens if not f.is_zero]
            divisor = format_divisor(common_divisor(nonzero)) if nonzero else "the whole line"
            raise SplittingError("restricted map drops rank along the line", divisor=divisor)
    for child in _children(node):
        _check_epis(child)


def _children(node: SheafNode) -> list[SheafNode]:
    if isinstance(node, (KerInto, SubQuot)):
        return [node.target]
    if isinstance(node, KerFrom):
        return [node.source]
    if isinstance(node, (Twist, Dual)):
        return [node.node]
    if isinstance(node, Sum):
        return list(node.parts)
    return []


def exact_sections(node: SheafNode) -> bool:
    """True when the H^0 model equals H^0 of the sheaf in every twist, on any P^n."""
    if isinstance(node, (LineSum, KerEpi, KerInto)):
        return True
    if isinstance(node, KerFrom):
        return exact_sections(node.source)
    if isinstance(node, Twist):
        return exact_sections(node.node)
    if isinstance(node, Sum):
        return all(exact_sections(part) for part in node.parts)
    return False


def _type_from_h0(h0, top: int, bottom: int, rank_: int) -> list[int]:
    """Recover a1 >= ... >= ar from l -> h0(E(l)) = sum max(0, a_i + l + 1), given bottom <= a_i <= top."""
    def jumps(l: int) -> int:
        return h0(l) - h0(l - 1)

    counts = Counter()
    for m in range(bottom, top + 1):
        k = jumps(-m) - jumps(-m - 1)
        if k < 0:
            raise SplittingError(f"section counts are not those of a bundle on P^1 near degree {m}")
        if k:
            counts[m] = k
    if sum(counts.values()) != rank_:
        raise SplittingError(f"found {sum(counts.values())} summands for a bundle of rank {rank_}")
    return sorted(counts.elements(), reverse=True)


def splitting_type_on_line(node: SheafNode, line: LineParam) -> list[int]:
    """Degrees a_1 >= ... >= a_r with E|L = O(a_1) + ... + O(a_r)."""
    restricted = restrict_node(node, line)
    _check_epis(restricted)
    r = node.rank
    c1 = chern_of_node(node).ci(1)
    sign = 1
    if exact_sections(restricted):
        target = restricted
    else:
        target = dual_node(restricted)
        if target is None or not exact_sections(target):
            raise SplittingError("no exact section model of the node along the line")
        sign, c1 = -1, -c1
    top = max(target.ambient) if target.ambient else 0
    bottom = c1 - (r - 1) * top
    degrees = _type_from_h0(lambda l: h0_dim(target, l), top, bottom, r)
    if sum(degrees) != c1:
        raise SplittingError(f"splitting degrees sum to {sum(degrees)}, expected {c1}")
    degrees = sorted((sign * a for a in degrees), reverse=True)
    logger.debug("splitting type on %s: %s", line.format(), degrees)
    return degrees


# -------------------------
# Edges of a tetrahedron
# -------------------------

def edge_incidences(line: LineParam, z: Sequence[PointP]) -> list[tuple[int, int]]:
    """Pairs (i, j) such that the line meets the edge through z_i and z_j."""
    p = line.p
    if len(z) != 4 or line.nvars != 4:
        raise GeometryError("edge avoidance needs four points in P^3 and a line in P^3")
    if rank(np.array([x.coords for x in z], dtype=np.int64), p) != 4:
        raise GeometryError("the four points are coplanar")
    for x in z:
        if line.contains(x):
            raise GeometryError(f"the line passes through {x.format()}")
    met = []
    for i, j in itertools.combinations(range(4), 2):
        rows = np.array([line.a.coords, line.b.coords, z[i].coords, z[j].coords], dtype=np.int64)
        if rank(rows, p) < 4:
            met.append((i, j))
    return met


def edge_avoidance(line: LineParam, z: Sequence[PointP]) -> bool:
    return not edge_incidences(line, z)
