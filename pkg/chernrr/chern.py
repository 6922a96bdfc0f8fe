"""Total Chern classes as integer polynomials in the hyperplane class, truncated above h^n."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from contracts import ChernError
from sheafcoh.nodes import Dual, KerEpi, KerFrom, KerInto, LineSum, SheafNode, SubQuot, Sum, Twist

Truncated = tuple[int, ...]


@dataclass(frozen=True)
class ChernVector:
    n: int
    rank: int | None
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.n:
            raise ChernError(f"expected {self.n} Chern classes on P^{self.n}, got {len(self.c)}")

    @classmethod
    def of(cls, n: int, rank: int | None, c: Sequence[int]) -> ChernVector:
        c = [int(x) for x in c]
        if len(c) > n:
            if any(c[n:]):
                raise ChernError(f"c_{n + 1} and above vanish on P^{n}")
            c = c[:n]
        return cls(n, rank, tuple(c + [0] * (n - len(c))))

    def ci(self, i: int) -> int:
        if i == 0:
            return 1
        return self.c[i - 1] if 1 <= i <= self.n else 0

    @property
    def total(self) -> Truncated:
        return (1,) + self.c

    def to_json(self) -> dict:
        return {"n": self.n, "rank": self.rank, "c": list(self.c)}

    def format(self) -> str:
        return f"({self.rank if self.rank is not None else '?'}; {', '.join(str(x) for x in self.c)})"


# -------------------------
# Truncated polynomial arithmetic
# -------------------------

def mul(a: Truncated, b: Truncated, n: int) -> Truncated:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return tuple(out)


def inverse(a: Truncated, n: int) -> Truncated:
    if not a or a[0] not in (1, -1):
        raise ChernError("total Chern class with non-unit constant term")
    a = tuple(a) + (0,) * (n + 1 - len(a))
    out = [0] * (n + 1)
    out[0] = a[0]
    for k in range(1, n + 1):
        out[k] = -a[0] * sum(a[i] * out[k - i] for i in range(1, k + 1))
    return tuple(out)


def div(a: Truncated, b: Truncated, n: int) -> Truncated:
    return mul(a, inverse(b, n), n)


def line_sum_class(twists: Sequence[int], n: int) -> Truncated:
    out: Truncated = (1,) + (0,) * n
    for a in twists:
        out = mul(out, (1, a) + (0,) * (n - 1), n)
    return out


def gbinom(x: int, k: int) -> int:
    """Binomial coefficient C(x, k) for any integer x."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // factorial(k)


def twist_class(cv: ChernVector, t: int) -> ChernVector:
    if cv.rank is None:
        raise ChernError("twisting needs the rank")
    r, n = cv.rank, cv.n
    c = [sum(gbinom(r - i, k - i) * cv.ci(i) * t ** (k - i) for i in range(k + 1)) for k in range(1, n + 1)]
    return ChernVector(n, r, tuple(c))


def dual_class(cv: ChernVector) -> ChernVector:
    return ChernVector(cv.n, cv.rank, tuple((-1) ** i * x for i, x in enumerate(cv.c, start=1)))


def from_total(total: Truncated, n: int, rank: int | None) -> ChernVector:
    return ChernVector(n, rank, tuple(total[1: n + 1]))


# -------------------------
# Nodes
# -------------------------

def _total(node: SheafNode) -> Truncated:
    n = node.n
    if isinstance(node, LineSum):
        return line_sum_class(node.twists, n)
    if isinstance(node, KerEpi):
        return div(line_sum_class(node.matrix.src, n), line_sum_class(node.matrix.tgt, n), n)
    if isinstance(node, KerInto):
        return div(line_sum_class(node.matrix.src, n), _total(node.target), n)
    if isinstance(node, KerFrom):
        return div(_total(node.source), line_sum_class(node.matrix.tgt, n), n)
    if isinstance(node, SubQuot):
        return div(_total(node.target), line_sum_class(node.matrix.src, n), n)
    if isinstance(node, Sum):
        out: Truncated = (1,) + (0,) * n
        for part in node.parts:
            out = mul(out, _total(part), n)
        return out
    if isinstance(node, Twist):
        inner = from_total(_total(node.node), n, node.node.rank)
        return twist_class(inner, node.by).total
    if isinstance(node, Dual):
        return dual_class(from_total(_total(node.node), n, node.rank)).total
    raise ChernError(f"unknown node {node!r}")


def chern_of_node(node: SheafNode) -> ChernVector:
    return from_total(_total(node), node.n, node.rank)


def p_chern(cv: ChernVector, h0: int | None = None) -> ChernVector:
    """Chern classes of P(E) from those of E: the dual of 1/c(E). The rank is h0 - rank(E) when h0 is given."""
    inv = inverse(cv.total, cv.n)
    rank = h0 - cv.rank if h0 is not None and cv.rank is not None else None
    return dual_class(from_total(inv, cv.n, rank))
