import numpy as np
import pytest

from contracts import PencilError
from exactfield.forms import PointP, parse_form
from exactfield.gradedmatrix import evaluate, minors
from exactfield.linalg import rank
from exactfield.sampling import random_invertible
from pencil24.classify import (
    NOT_INJECTIVE,
    NOT_STABLE,
    canonical_matrix,
    classify,
    minor_ideal_equals,
)
from pencil24.pencil import act, is_injective, is_stable, linear_matrix, pencil_det, to_pencil

P = 101


# -------------------------
# The pencil
# -------------------------

def test_pencil_of_diagonal_matrix():
    a = linear_matrix([["x0", "x1", "x2", "x3"], ["2*x0", "5*x1", "x2", 0]], P)
    assert is_injective(a)
    psi = to_pencil(a)
    assert psi.entry(0, 0) == parse_form("T0 + 2*T1", 2, P, names=("T0", "T1"))
    assert psi.entry(3, 3) == parse_form("T0", 2, P, names=("T0", "T1"))
    assert pencil_det(a).degree == 4


def test_linear_matrix_shape_is_checked():
    with pytest.raises(PencilError):
        linear_matrix([["x0", "x1", "x2"], ["x1", "x2", "x3"]], P)


# -------------------------
# Classification
# -------------------------

@pytest.mark.parametrize("case, partition", [(2, (2, 1, 1)), (3, (2, 2)), (4, (3, 1)), (5, (4,))])
def test_canonical_cases_with_finite_degeneracy(case, partition):
    got = classify(canonical_matrix(case, P))
    assert got.tag == f"Case{case}"
    assert got.partition == partition
    assert sum(mult for _, mult in got.degeneracy.points) == 4


def test_case1_parameter_round_trips():
    got = classify(canonical_matrix(1, P, a1=5))
    assert got.tag == "Case1"
    assert got.partition == (1, 1, 1, 1)
    assert len(got.degeneracy.points) == 4
    assert classify(got.canonical).tag == "Case1"
    with pytest.raises(PencilError):
        canonical_matrix(1, P)


@pytest.mark.parametrize("case, m", [(6, 1), (7, 2), (8, 3)])
def test_canonical_cases_with_degenerate_pencil(case, m):
    a = canonical_matrix(case, P)
    got = classify(a)
    assert got.tag == f"Case{case}"
    assert got.m == m
    assert got.syzygy_degree == 4 - m
    assert got.det.is_zero


def test_case6_vanishes_at_its_point():
    a = canonical_matrix(6, P)
    assert rank(evaluate(a, PointP.of([0, 0, 0, 1], P).coords), P) == 0


def test_not_injective_and_not_stable():
    assert classify(linear_matrix([["x0", "x0", "x2", "x3"], ["x1", "x1", "x2", "x3"]], P)).tag == NOT_INJECTIVE
    split = linear_matrix([["x0", "x1", 0, 0], [0, 0, "x2", "x3"]], P)
    assert is_injective(split) and not is_stable(split)
    assert classify(split).tag == NOT_STABLE


def conjugates(case, count):
    rng = np.random.default_rng(case)
    for _ in range(count):
        yield random_invertible(rng, 2, P), random_invertible(rng, 4, P), random_invertible(rng, 4, P)


@pytest.mark.parametrize("case", range(1, 9))
def test_classification_survives_a_few_conjugates(case):
    a = canonical_matrix(case, P, a1=5)
    for g, h, c in conjugates(case, 3):
        assert classify(act(a, g, h, c)).tag == f"Case{case}"


@pytest.mark.slow
@pytest.mark.parametrize("case", range(1, 9))
def test_classification_is_invariant_under_the_group(case):
    a = canonical_matrix(case, P, a1=5)
    want = classify(a)
    for g, h, c in conjugates(case, 100):
        got = classify(act(a, g, h, c))
        assert got.tag == want.tag
        assert got.partition == want.partition and got.m == want.m


# -------------------------
# Minor ideals
# -------------------------

CASE3_QUADRICS = ["x1*x3", "x0*x3", "x3^2", "x1*x2", "x0*x2", "x1^2"]
# square of the ideal of (0:0:0:1)
CASE6_FAT_POINT = ["x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"]


@pytest.mark.parametrize("case, generators, holds", [
    (3, CASE3_QUADRICS, True),
    (6, CASE6_FAT_POINT, True),
    (3, CASE6_FAT_POINT, False),
    (6, CASE3_QUADRICS, False),
])
def test_minor_ideals_of_canonical_matrices(case, generators, holds):
    a = canonical_matrix(case, P)
    expected = [parse_form(g, 4, P) for g in generators]
    assert minor_ideal_equals(a, expected, degree_bound=4) is holds


def test_minor_ideal_equals():
    a = canonical_matrix(7, P)
    assert minor_ideal_equals(a, minors(a, 2))
    assert not minor_ideal_equals(a, [parse_form("x0^2", 4, P)])
    moved = act(a, [[1, 1], [0, 1]], np.eye(4, dtype=np.int64))
    assert minor_ideal_equals(moved, minors(a, 2))
