"""Normal forms of stable 2 x 4 matrices of linear forms under GL(2) x GL(S_1) x GL(4).

When det(psi) is not identically zero, the multiplicity partition of the
quartic decides the case. Otherwise psi has rank 3 everywhere, its
cokernel is O(m) and its kernel is O(m - 4); m comes from the lowest
degree of a syzygy of psi.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from contracts import PencilError
from exactfield.binary import multiplicity_partition, rational_roots
from exactfield.field import inv
from exactfield.forms import Form, PointP, monomial_basis
from exactfield.gradedmatrix import (
    GradedMatrix,
    dual,
    evaluate,
    graded_piece,
    ideal_piece,
    minors,
    vector_to_forms,
)
from exactfield.linalg import in_span, kernel_basis, left_kernel_basis, rank
from pencil24.pencil import is_injective, linear_matrix, pencil_det, rank_three_everywhere, to_pencil

logger = logging.getLogger(__name__)

NOT_INJECTIVE = "NotInjective"
NOT_STABLE = "NotStable"

PARTITION_CASES = {(1, 1, 1, 1): 1, (2, 1, 1): 2, (2, 2): 3, (3, 1): 4, (4,): 5}
COKERNEL_CASES = {1: 6, 2: 7, 3: 8}

TOP_ROW = ["x0", "x1", "x2", "x3"]
CANONICAL_ROWS = {
    3: [TOP_ROW, ["x0 + x1", "x1", "x3", 0]],
    4: [TOP_ROW, ["x0", "x2", "x3", 0]],
    5: [TOP_ROW, ["x1", "x2", "x3", 0]],
    6: [["x0", "x1", "x2", 0], [0, "x0", "x1", "x2"]],
    7: [["x0", "x1", 0, "x2"], [0, "x0", "x1", "x3"]],
    8: [["x0", 0, "x1", "x2"], [0, "x0", "x2", "x3"]],
}
# places a simple root of det(psi) at (-2:1)
SPECIAL_A0 = 2


@dataclass(frozen=True)
class Degeneracy:
    description: str
    points: tuple[tuple[PointP, int], ...] = ()
    equations: tuple[Form, ...] = ()
    generators: tuple[Form, ...] = ()


@dataclass(frozen=True)
class PencilClass:
    tag: str
    partition: tuple[int, ...] | None = None
    m: int | None = None
    det: Form | None = None
    canonical: GradedMatrix | None = None
    degeneracy: Degeneracy | None = None

    @property
    def case(self) -> int | None:
        return int(self.tag[4:]) if self.tag.startswith("Case") else None

    @property
    def syzygy_degree(self) -> int | None:
        return None if self.m is None else 4 - self.m


def case1_rows(a0: int, a1: int) -> list[list]:
    return [TOP_ROW, [f"{a0}*x0", f"{a1}*x1", "x2", 0]]


def case2_rows(a0: int) -> list[list]:
    return [TOP_ROW, [f"{a0}*x0", "x1", "x3", 0]]


def canonical_matrix(case: int, p: int, a1: int | None = None) -> GradedMatrix:
    if case == 1:
        if a1 is None:
            raise PencilError("Case 1 needs the parameter a1")
        return linear_matrix(case1_rows(SPECIAL_A0, a1), p)
    if case == 2:
        return linear_matrix(case2_rows(SPECIAL_A0), p)
    return linear_matrix(CANONICAL_ROWS[case], p)


# -------------------------
# Roots on P^1
# -------------------------

def _bracket(u: tuple[int, int], v: tuple[int, int], p: int) -> int:
    return (u[0] * v[1] - u[1] * v[0]) % p


def cross_ratio(a, b, c, d, p: int) -> int:
    return _bracket(a, c, p) * _bracket(b, d, p) * inv(_bracket(a, d, p) * _bracket(b, c, p), p) % p


def case1_parameter(roots: Sequence[tuple[int, int]], p: int) -> int | None:
    """a1 such that the roots are projectively equivalent to 0, -1, -2, -a1 (as T0/T1), in some order."""
    for r1, r2, r3, r4 in itertools.permutations(roots):
        lam = cross_ratio(r1, r2, r3, r4, p)
        if (lam - 2) % p:
            return 2 * inv(2 - lam, p) % p
    return None


def degeneracy_point(psi: GradedMatrix, root: tuple[int, int]) -> PointP:
    """The point of P^3 where every form of the composite k^4 -> S_1 at this functional vanishes."""
    left = left_kernel_basis(evaluate(psi, root), psi.p)
    if left.shape[0] != 1:
        raise PencilError(f"pencil has corank {left.shape[0]} at {root}")
    return PointP.of(left[0], psi.p)


# -------------------------
# Rank 3 everywhere
# -------------------------

def syzygy_degree(psi: GradedMatrix) -> int:
    """Lowest e with a nonzero vector of degree-e binary forms killed by psi."""
    for e in range(0, 5):
        piece = graded_piece(psi, e)
        if kernel_basis(piece, psi.p, ncols=piece.shape[1]).shape[0]:
            return e
    raise PencilError("psi has no syzygy in degree <= 4")


def left_syzygy(psi: GradedMatrix, m: int) -> list[Form]:
    """w with w . psi = 0, entries of degree m - 1; its image in P^3 is the reduced degeneracy locus."""
    d = dual(psi)
    vectors = kernel_basis(graded_piece(d, m), psi.p)
    if vectors.shape[0] != 1:
        raise PencilError(f"expected a unique left syzygy of degree {m - 1}, found {vectors.shape[0]}")
    return vector_to_forms(vectors[0], d.src, m, 2, psi.p)


def vanishing_forms(w: Sequence[Form], d: int) -> list[Form]:
    """Forms of degree d in x0..x3 vanishing on the image of t -> w(t)."""
    p = w[0].p
    basis = monomial_basis(4, d)
    cols = [Form.from_dict(4, d, {e: 1}, p).substitute(w).to_vector() for e in basis]
    matrix = np.array(cols, dtype=np.int64).T
    return [Form.from_vector(4, d, v, p) for v in kernel_basis(matrix, p, ncols=len(basis))]


def image_equations(w: Sequence[Form], m: int) -> list[Form]:
    linear = vanishing_forms(w, 1)
    if m < 3:
        return linear
    p = w[0].p
    span = ideal_piece(linear, 2).T if linear else np.zeros((0, 10), dtype=np.int64)
    extra = []
    for q in vanishing_forms(w, 2):
        v = np.array(q.to_vector(), dtype=np.int64)
        if span.shape[0] and in_span(v, span, p):
            continue
        extra.append(q)
        span = np.vstack([span, v.reshape(1, -1)])
    return linear + extra


def _format_equations(forms: Sequence[Form]) -> str:
    return ", ".join(f"{f.format()} = 0" for f in forms)


# -------------------------
# Classification
# -------------------------

def _classify_finite(a: GradedMatrix, psi: GradedMatrix, det: Form, gens: tuple[Form, ...]) -> PencilClass:
    p = a.p
    partition = tuple(multiplicity_partition(det))
    case = PARTITION_CASES.get(partition)
    if case is None:
        raise PencilError(f"unexpected multiplicity partition {partition}")
    roots = rational_roots(det)
    points = tuple((degeneracy_point(psi, r), mult) for r, mult in roots)
    split = sum(mult for _, mult in roots) == 4

    canonical = None
    if split:
        if case == 1:
            a1 = case1_parameter([r for r, _ in roots], p)
            canonical = canonical_matrix(1, p, a1) if a1 is not None else None
        else:
            canonical = canonical_matrix(case, p)
    else:
        logger.info("roots of det(psi) do not split over F_%d; canonical form omitted", p)

    text = "points " + ", ".join(f"{x.format()} x{mult}" for x, mult in points) if points else "no F_p-rational points"
    if not split:
        text += f"; {4 - sum(mult for _, mult in roots)} further points over an extension"
    return PencilClass(
        tag=f"Case{case}",
        partition=partition,
        det=det,
        canonical=canonical,
        degeneracy=Degeneracy(text, points=points, generators=gens),
    )


def _classify_degenerate(psi: GradedMatrix, det: Form, gens: tuple[Form, ...]) -> PencilClass:
    p = psi.p
    e = syzygy_degree(psi)
    m = 4 - e
    case = COKERNEL_CASES.get(m)
    if case is None:
        raise PencilError(f"cokernel degree {m} is impossible for an injective stable matrix")
    w = left_syzygy(psi, m)
    equations = tuple(image_equations(w, m))
    if m == 1:
        x = PointP.of([f.coefficient((0, 0)) for f in w], p)
        degeneracy = Degeneracy(f"fat point, the square of the ideal of {x.format()}", points=((x, 1),),
                                equations=equations, generators=gens)
    elif m == 2:
        degeneracy = Degeneracy(f"line {_format_equations(equations)}; cokernel O_L(2)",
                                equations=equations, generators=gens)
    else:
        degeneracy = Degeneracy(f"conic {_format_equations(equations)}; cokernel O_P1(3) along the conic",
                                equations=equations, generators=gens)
    return PencilClass(tag=f"Case{case}", m=m, det=det, canonical=canonical_matrix(case, p),
                       degeneracy=degeneracy)


def classify(a: GradedMatrix) -> PencilClass:
    if not is_injective(a):
        return PencilClass(tag=NOT_INJECTIVE)
    psi = to_pencil(a)
    if not rank_three_everywhere(psi):
        return PencilClass(tag=NOT_STABLE)
    det = pencil_det(a)
    gens = tuple(f for f in minors(a, 2) if not f.is_zero)
    result = _classify_degenerate(psi, det, gens) if det.is_zero else _classify_finite(a, psi, det, gens)
    logger.debug("classified as %s", result.tag)
    return result


def minor_ideal_equals(a: GradedMatrix, expected: Sequence[Form], degree_bound: int = 4) -> bool:
    """The 2 x 2 minors of a and the expected forms span the same graded pieces up to degree_bound."""
    p = a.p
    ours = [f for f in minors(a, 2) if not f.is_zero]
    theirs = [f for f in expected if not f.is_zero]
    for d in range(degree_bound + 1):
        x = ideal_piece(ours, d) if ours else np.zeros((0, 0), dtype=np.int64)
        y = ideal_piece(theirs, d) if theirs else np.zeros((0, 0), dtype=np.int64)
        rx = rank(x, p) if x.size else 0
        ry = rank(y, p) if y.size else 0
        if rx != ry:
            return False
        if rx and rank(np.hstack([x, y]), p) != rx:
            return False
    return True
