"""Sheaf expressions over P^n.

Every node except Dual sits inside an ambient sum of line bundles, and its
sections are described as a subquotient Z/S of the sections of that sum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from contracts import NodeError
from exactfield.gradedmatrix import GradedMatrix


class SheafNode:
    nvars: int
    p: int

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def ambient(self) -> tuple[int, ...]:
        raise NodeError(f"{type(self).__name__} has no ambient line-bundle sum")

    @property
    def rank(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class LineSum(SheafNode):
    nvars: int
    p: int
    twists: tuple[int, ...]

    @classmethod
    def of(cls, twists: Sequence[int], nvars: int, p: int) -> LineSum:
        return cls(nvars, p, tuple(int(a) for a in twists))

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.twists

    @property
    def rank(self) -> int:
        return len(self.twists)


@dataclass(frozen=True)
class KerEpi(SheafNode):
    """Kernel of an epimorphism of line-bundle sums src -> tgt."""
    matrix: GradedMatrix

    @property
    def nvars(self) -> int:
        return self.matrix.nvars

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.matrix.src

    @property
    def rank(self) -> int:
        return len(self.matrix.src) - len(self.matrix.tgt)


@dataclass(frozen=True)
class KerInto(SheafNode):
    """Kernel of an epimorphism from a line-bundle sum onto an existing node."""
    matrix: GradedMatrix
    target: SheafNode

    def __post_init__(self):
        if self.matrix.tgt != self.target.ambient:
            raise NodeError(f"map lands in {self.matrix.tgt}, node sits in {self.target.ambient}")

    @property
    def nvars(self) -> int:
        return self.matrix.nvars

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.matrix.src

    @property
    def rank(self) -> int:
        return len(self.matrix.src) - self.target.rank


@dataclass(frozen=True)
class KerFrom(SheafNode):
    """Kernel of an epimorphism from an existing node onto a line-bundle sum."""
    source: SheafNode
    matrix: GradedMatrix

    def __post_init__(self):
        if self.matrix.src != self.source.ambient:
            raise NodeError(f"map starts at {self.matrix.src}, node sits in {self.source.ambient}")

    @property
    def nvars(self) -> int:
        return self.matrix.nvars

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.source.ambient

    @property
    def rank(self) -> int:
        return self.source.rank - len(self.matrix.tgt)


@dataclass(frozen=True)
class SubQuot(SheafNode):
    """Quotient of an existing node by a line-bundle sum mapped into it injectively."""
    matrix: GradedMatrix
    target: SheafNode

    def __post_init__(self):
        if self.matrix.tgt != self.target.ambient:
            raise NodeError(f"map lands in {self.matrix.tgt}, node sits in {self.target.ambient}")

    @property
    def nvars(self) -> int:
        return self.matrix.nvars

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.target.ambient

    @property
    def rank(self) -> int:
        return self.target.rank - len(self.matrix.src)


@dataclass(frozen=True)
class Twist(SheafNode):
    node: SheafNode
    by: int

    @property
    def nvars(self) -> int:
        return self.node.nvars

    @property
    def p(self) -> int:
        return self.node.p

    @property
    def ambient(self) -> tuple[int, ...]:
        return tuple(a + self.by for a in self.node.ambient)

    @property
    def rank(self) -> int:
        return self.node.rank


@dataclass(frozen=True)
class Sum(SheafNode):
    parts: tuple[SheafNode, ...]

    def __post_init__(self):
        if not self.parts:
            raise NodeError("empty direct sum")
        if len({(part.nvars, part.p) for part in self.parts}) != 1:
            raise NodeError("summands live on different spaces")

    @property
    def nvars(self) -> int:
        return self.parts[0].nvars

    @property
    def p(self) -> int:
        return self.parts[0].p

    @property
    def ambient(self) -> tuple[int, ...]:
        return tuple(a for part in self.parts for a in part.ambient)

    @property
    def rank(self) -> int:
        return sum(part.rank for part in self.parts)

    def offsets(self) -> list[int]:
        out = [0]
        for part in self.parts:
            out.append(out[-1] + len(part.ambient))
        return out


@dataclass(frozen=True)
class Dual(SheafNode):
    """Dual of a bundle known only through Serre duality; no section model."""
    node: SheafNode

    @property
    def nvars(self) -> int:
        return self.node.nvars

    @property
    def p(self) -> int:
        return self.node.p

    @property
    def rank(self) -> int:
        return self.node.rank


def has_model(node: SheafNode) -> bool:
    if isinstance(node, Dual):
        return False
    if isinstance(node, (KerInto, SubQuot)):
        return has_model(node.target)
    if isinstance(node, KerFrom):
        return has_model(node.source)
    if isinstance(node, Twist):
        return has_model(node.node)
    if isinstance(node, Sum):
        return all(has_model(part) for part in node.parts)
    return True


def describe(node: SheafNode) -> str:
    if isinstance(node, LineSum):
        return describe_sum(node.twists)
    if isinstance(node, KerEpi):
        return f"ker({describe_sum(node.matrix.src)} -> {describe_sum(node.matrix.tgt)})"
    if isinstance(node, KerInto):
        return f"ker({describe_sum(node.matrix.src)} -> {describe(node.target)})"
    if isinstance(node, KerFrom):
        return f"ker({describe(node.source)} -> {describe_sum(node.matrix.tgt)})"
    if isinstance(node, SubQuot):
        return f"coker({describe_sum(node.matrix.src)} -> {describe(node.target)})"
    if isinstance(node, Twist):
        return f"({describe(node.node)})({node.by})"
    if isinstance(node, Sum):
        return " + ".join(describe(part) for part in node.parts)
    if isinstance(node, Dual):
        return f"({describe(node.node)})^v"
    raise NodeError(f"unknown node {node!r}")


def describe_sum(twists: Sequence[int]) -> str:
    return "+".join(f"O({a})" for a in twists) or "0"
