from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from contracts import ComplexError, ShapeError
from exactfield.forms import Form, monomial_basis
from exactfield.gradedmatrix import GradedMatrix, compose, dual as dual_matrix, graded_piece
from exactfield.linalg import rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeComplex:
    """Homologically indexed: terms[k - lo] are the twists of C_k, diffs[k - lo - 1] is d_k : C_k -> C_{k-1}."""
    nvars: int
    p: int
    lo: int
    terms: tuple[tuple[int, ...], ...]
    diffs: tuple[GradedMatrix, ...]

    def __post_init__(self):
        if not self.terms:
            raise ShapeError("a complex needs at least one position")
        if len(self.diffs) != len(self.terms) - 1:
            raise ShapeError(f"{len(self.terms)} positions need {len(self.terms) - 1} differentials")
        for k, d in enumerate(self.diffs):
            if d.src != self.terms[k + 1] or d.tgt != self.terms[k]:
                raise ShapeError(f"differential d_{self.lo + k + 1} does not match its terms")
            if d.nvars != self.nvars or d.p != self.p:
                raise ShapeError("differentials live in another ring")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.nvars, self.p, self.lo, self.terms, self.diffs))

    @classmethod
    def from_diffs(cls, diffs: Sequence[GradedMatrix], lo: int = 0) -> FreeComplex:
        """Complex with d_{lo+1}, d_{lo+2}, ... given in order."""
        if not diffs:
            raise ShapeError("use FreeComplex.single for a complex without differentials")
        terms = [diffs[0].tgt] + [d.src for d in diffs]
        first = diffs[0]
        return cls(first.nvars, first.p, lo, tuple(terms), tuple(diffs))

    @classmethod
    def single(cls, twists: Sequence[int], nvars: int, p: int, position: int = 0) -> FreeComplex:
        return cls(nvars, p, position, (tuple(twists),), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    @property
    def positions(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, k: int) -> tuple[int, ...]:
        if self.lo <= k <= self.hi:
            return self.terms[k - self.lo]
        return ()

    def diff(self, k: int) -> GradedMatrix:
        if self.lo < k <= self.hi:
            return self.diffs[k - self.lo - 1]
        return GradedMatrix.zero(self.term(k), self.term(k - 1), self.nvars, self.p)

    def max_degree(self) -> int:
        return max((f.degree for d in self.diffs for row in d.entries for f in row if not f.is_zero), default=1)

    def squares_to_zero(self) -> bool:
        return all(compose(self.diff(k - 1), self.diff(k)).is_zero for k in range(self.lo + 2, self.hi + 1))

    def with_diff(self, k: int, d: GradedMatrix) -> FreeComplex:
        diffs = list(self.diffs)
        diffs[k - self.lo - 1] = d
        return FreeComplex(self.nvars, self.p, self.lo, self.terms, tuple(diffs))


@dataclass(frozen=True)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    components: Mapping[int, GradedMatrix] = field(hash=False)

    def component(self, k: int) -> GradedMatrix:
        if k in self.components:
            return self.components[k]
        return GradedMatrix.zero(self.source.term(k), self.target.term(k), self.source.nvars, self.source.p)

    def commutes(self) -> bool:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for k in range(lo + 1, hi + 1):
            left = compose(self.component(k - 1), self.source.diff(k))
            right = compose(self.target.diff(k), self.component(k))
            if not (left - right).is_zero:
                return False
        return True


# -------------------------
# Constructors
# -------------------------

def koszul(forms: Sequence[Form], twist: int = 0) -> FreeComplex:
    """Koszul complex of f_1..f_m: C_k = sum over k-subsets S of O(twist - deg f_S)."""
    if not forms:
        raise ComplexError("koszul needs at least one form")
    if any(f.is_zero for f in forms):
        raise ComplexError("koszul forms must be nonzero")
    nvars, p = forms[0].nvars, forms[0].p
    m = len(forms)
    subsets = [list(itertools.combinations(range(m), k)) for k in range(m + 1)]
    terms = [tuple(twist - sum(forms[i].degree for i in s) for s in subsets[k]) for k in range(m + 1)]
    diffs = []
    for k in range(1, m + 1):
        index = {s: r for r, s in enumerate(subsets[k - 1])}
        rows = [[Form.zero(nvars, t - s, p) for s in terms[k]] for t in terms[k - 1]]
        for c, subset in enumerate(subsets[k]):
            for pos, i in enumerate(subset):
                face = subset[:pos] + subset[pos + 1:]
                rows[index[face]][c] = forms[i] if pos % 2 == 0 else -forms[i]
        diffs.append(GradedMatrix(nvars, terms[k], terms[k - 1], tuple(tuple(r) for r in rows), p))
    return FreeComplex(nvars, p, 0, tuple(terms), tuple(diffs))


def _blocks(c: FreeComplex, d: FreeComplex, k: int) -> list[tuple[int, int]]:
    return [(i, k - i) for i in c.positions if d.lo <= k - i <= d.hi]


def tensor(c: FreeComplex, d: FreeComplex) -> FreeComplex:
    """Total complex; block order by position of c, then c-summand major. d = dc x 1 + (-1)^i 1 x dd."""
    if (c.nvars, c.p) != (d.nvars, d.p):
        raise ShapeError("tensor of complexes over different rings")
    nvars, p = c.nvars, c.p
    lo, hi = c.lo + d.lo, c.hi + d.hi

    def twists(k):
        return tuple(a + b for i, j in _blocks(c, d, k) for a in c.term(i) for b in d.term(j))

    def offsets(k):
        out, pos = {}, 0
        for i, j in _blocks(c, d, k):
            out[(i, j)] = pos
            pos += len(c.term(i)) * len(d.term(j))
        return out

    terms = [twists(k) for k in range(lo, hi + 1)]
    diffs = []
    for k in range(lo + 1, hi + 1):
        src, tgt = terms[k - lo], terms[k - 1 - lo]
        rows = [[Form.zero(nvars, t - s, p) for s in src] for t in tgt]
        src_off, tgt_off = offsets(k), offsets(k - 1)
        for (i, j), s0 in src_off.items():
            nb = len(d.term(j))
            if (i - 1, j) in tgt_off:
                dc, t0 = c.diff(i), tgt_off[(i - 1, j)]
                for a2, a in itertools.product(range(len(c.term(i - 1))), range(len(c.term(i)))):
                    f = dc.entries[a2][a]
                    if f.is_zero:
                        continue
                    for b in range(nb):
                        rows[t0 + a2 * nb + b][s0 + a * nb + b] = f
            if (i, j - 1) in tgt_off:
                dd, t0 = d.diff(j), tgt_off[(i, j - 1)]
                nb2 = len(d.term(j - 1))
                for a in range(len(c.term(i))):
                    for b2, b in itertools.product(range(nb2), range(nb)):
                        f = dd.entries[b2][b]
                        if f.is_zero:
                            continue
                        rows[t0 + a * nb2 + b2][s0 + a * nb + b] = -f if i % 2 else f
        diffs.append(GradedMatrix(nvars, src, tgt, tuple(tuple(r) for r in rows), p))
    return FreeComplex(nvars, p, lo, tuple(terms), tuple(diffs))


def dual(c: FreeComplex) -> FreeComplex:
    """(C^v)_k = (C_{-k})^v with the transposed differentials; an involution."""
    terms = tuple(tuple(-a for a in c.term(-k)) for k in range(-c.hi, -c.lo + 1))
    diffs = tuple(dual_matrix(c.diff(-k + 1)) for k in range(-c.hi + 1, -c.lo + 1))
    return FreeComplex(c.nvars, c.p, -c.hi, terms, diffs)


def twist(c: FreeComplex, t: int) -> FreeComplex:
    return FreeComplex(
        c.nvars, c.p, c.lo,
        tuple(tuple(a + t for a in term) for term in c.terms),
        tuple(d.twist(t) for d in c.diffs),
    )


def shift(c: FreeComplex, s: int) -> FreeComplex:
    """C[s] with C[s]_k = C_{k-s}; differentials pick up the sign (-1)^s."""
    sign = -1 if s % 2 else 1
    return FreeComplex(c.nvars, c.p, c.lo + s, c.terms, tuple(d.scale(sign) for d in c.diffs))


def _block_matrix(blocks: Sequence[Sequence[GradedMatrix | None]], src: Sequence[Sequence[int]],
                  tgt: Sequence[Sequence[int]], nvars: int, p: int) -> GradedMatrix:
    rows = []
    for bi, tgt_block in enumerate(tgt):
        for r, t in enumerate(tgt_block):
            line = []
            for bj, src_block in enumerate(src):
                m = blocks[bi][bj]
                for c, s in enumerate(src_block):
                    line.append(m.entries[r][c] if m is not None else Form.zero(nvars, t - s, p))
            rows.append(tuple(line))
    return GradedMatrix(nvars, tuple(a for b in src for a in b), tuple(a for b in tgt for a in b), tuple(rows), p)


def cone(f: ChainMap) -> FreeComplex:
    """Cone_i = C_{i-1} + D_i with differential [[-d^C, 0], [f, d^D]]."""
    c, d = f.source, f.target
    if not f.commutes():
        raise ComplexError("cone of a map that is not a chain map")
    lo = min(c.lo + 1, d.lo)
    hi = max(c.hi + 1, d.hi)
    terms = tuple(c.term(i - 1) + d.term(i) for i in range(lo, hi + 1))
    diffs = []
    for i in range(lo + 1, hi + 1):
        src = [c.term(i - 1), d.term(i)]
        tgt = [c.term(i - 2), d.term(i - 1)]
        blocks = [
            [c.diff(i - 1).scale(-1), None],
            [f.component(i - 1), d.diff(i)],
        ]
        diffs.append(_block_matrix(blocks, src, tgt, c.nvars, c.p))
    return FreeComplex(c.nvars, c.p, lo, terms, tuple(diffs))


# -------------------------
# Exactness
# -------------------------

@dataclass(frozen=True)
class ExactnessReport:
    window: tuple[int, int]
    positions: tuple[int, ...]
    homology: Mapping[tuple[int, int], int] = field(hash=False)

    def exact_at(self, k: int) -> bool:
        return all(v == 0 for (pos, _), v in self.homology.items() if pos == k)

    @property
    def is_exact(self) -> bool:
        return all(v == 0 for v in self.homology.values())

    def failures(self) -> list[tuple[int, int, int]]:
        return sorted((k, l, v) for (k, l), v in self.homology.items() if v)


def default_window(c: FreeComplex) -> tuple[int, int]:
    bound = c.nvars * c.max_degree()
    return -bound, bound


def piece_dim(twists: Iterable[int], l: int, nvars: int) -> int:
    return sum(len(monomial_basis(nvars, l + a)) for a in twists)


def verify_exact(c: FreeComplex, window: tuple[int, int] | None = None,
                 positions: Iterable[int] | None = None) -> ExactnessReport:
    window = window or default_window(c)
    positions = tuple(positions) if positions is not None else tuple(range(c.lo + 1, c.hi))
    ranks: dict[tuple[int, int], int] = {}

    def rk(k: int, l: int) -> int:
        if (k, l) not in ranks:
            piece = graded_piece(c.diff(k), l)
            ranks[(k, l)] = rank(piece, c.p) if piece.size else 0
        return ranks[(k, l)]

    homology = {}
    for l in range(window[0], window[1] + 1):
        for k in positions:
            homology[(k, l)] = piece_dim(c.term(k), l, c.nvars) - rk(k, l) - rk(k + 1, l)
    report = ExactnessReport(window, positions, homology)
    logger.debug("exactness on %s at %s: %d nonzero strands", window, positions, len(report.failures()))
    return report


def hilbert_function(c: FreeComplex, l: int) -> int:
    """Alternating sum of graded-piece dimensions; the Hilbert function of H_0 when c resolves it."""
    return sum((-1) ** (k % 2) * piece_dim(c.term(k), l, c.nvars) for k in c.positions)


def _hilbert_polynomial_start(c: FreeComplex) -> int:
    lowest = min((a for term in c.terms for a in term), default=0)
    return max(0, -lowest) + 1


def scheme_dimension_and_degree(c: FreeComplex) -> tuple[int, int]:
    """(dim, degree) read from finite differences of the Hilbert polynomial of H_0(c)."""
    n = c.nvars - 1
    start = _hilbert_polynomial_start(c)
    values = [hilbert_function(c, start + i) for i in range(n + 2)]
    diffs = [values]
    for _ in range(n + 1):
        prev = diffs[-1]
        diffs.append([b - a for a, b in zip(prev, prev[1:])])
    for r in range(n, -1, -1):
        if diffs[r] and diffs[r][0] != 0:
            return r, diffs[r][0]
    return -1, 0


def scheme_degree(c: FreeComplex) -> int:
    return scheme_dimension_and_degree(c)[1]


# -------------------------
# Minimalization
# -------------------------

def _find_unit(c: FreeComplex) -> tuple[int, int, int] | None:
    for k in range(c.lo + 1, c.hi + 1):
        d = c.diff(k)
        for i, row in enumerate(d.entries):
            for j, f in enumerate(row):
                if f.degree == 0 and not f.is_zero:
                    return k, i, j
    return None


def _drop(seq: Sequence, idx: int) -> tuple:
    return tuple(x for n, x in enumerate(seq) if n != idx)


def _cancel(c: FreeComplex, k: int, i: int, j: int) -> FreeComplex:
    d = c.diff(k)
    u = d.entries[i][j].coefficient((0,) * c.nvars)
    u_inv = pow(u, -1, c.p)
    keep_rows = [r for r in range(len(d.tgt)) if r != i]
    keep_cols = [s for s in range(len(d.src)) if s != j]
    rows = []
    for r in keep_rows:
        line = []
        for s in keep_cols:
            gamma, beta = d.entries[r][j], d.entries[i][s]
            entry = d.entries[r][s]
            if not gamma.is_zero and not beta.is_zero:
                entry = (entry - (gamma * beta).scale(u_inv)).with_degree(entry.degree)
            line.append(entry)
        rows.append(tuple(line))
    new_k = GradedMatrix(c.nvars, _drop(d.src, j), _drop(d.tgt, i), tuple(rows), c.p)

    terms = list(c.terms)
    terms[k - c.lo] = _drop(c.term(k), j)
    terms[k - 1 - c.lo] = _drop(c.term(k - 1), i)
    diffs = list(c.diffs)
    diffs[k - c.lo - 1] = new_k
    if k + 1 <= c.hi:
        up = c.diff(k + 1)
        diffs[k - c.lo] = up.submatrix([r for r in range(len(up.tgt)) if r != j], range(len(up.src)))
    if k - 1 > c.lo:
        down = c.diff(k - 1)
        diffs[k - c.lo - 2] = down.submatrix(range(len(down.tgt)), [s for s in range(len(down.src)) if s != i])
    return FreeComplex(c.nvars, c.p, c.lo, tuple(terms), tuple(diffs))


def strip(c: FreeComplex) -> FreeComplex:
    """Drop empty positions at both ends."""
    lo, hi = c.lo, c.hi
    while lo < hi and not c.term(lo):
        lo += 1
    while hi > lo and not c.term(hi):
        hi -= 1
    terms = tuple(c.term(k) for k in range(lo, hi + 1))
    diffs = tuple(c.diff(k) for k in range(lo + 1, hi + 1))
    return FreeComplex(c.nvars, c.p, lo, terms, diffs)


def trim(c: FreeComplex) -> FreeComplex:
    """Cancel summands joined by unit scalar entries until none are left."""
    cancelled = 0
    while (hit := _find_unit(c)) is not None:
        c = _cancel(c, *hit)
        cancelled += 1
    logger.debug("trim cancelled %d pairs", cancelled)
    return strip(c)
