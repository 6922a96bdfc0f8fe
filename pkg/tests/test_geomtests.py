import functools
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from contracts import GeometryError, SplittingError
from exactfield.forms import PointP, parse_form
from exactfield.gradedmatrix import GradedMatrix
from freecomplex.complex import koszul
from geomtests.cayley import cayley_bacharach, cayley_bacharach_failures, monomial_values
from geomtests.epi import epi_certificate
from geomtests.globalgen import GENERATED, NOT_GENERATED, is_globally_generated
from geomtests.lines import LineParam, edge_avoidance, edge_incidences, splitting_type_on_line
from geomtests.quadric import QUADRIC_NAMES, quadric_line_component_test
from sheafcoh.nodes import KerEpi, LineSum, SubQuot

P = 101


def omega(nvars, t, p=P):
    xs = [parse_form(f"x{i}", nvars, p) for i in range(nvars)]
    return KerEpi(koszul(xs, twist=t).diff(1))


def plane_points(p):
    out = []
    for coords in itertools.product(range(p), repeat=3):
        x = PointP.of(coords, p) if any(coords) else None
        if x is not None and x.normalized() not in {y.normalized() for y in out}:
            out.append(x)
    return out


PLANE_F5 = plane_points(5)


# -------------------------
# Cayley-Bacharach
# -------------------------

@functools.cache
def all_coefficients(count, p):
    return np.array(list(itertools.product(range(p), repeat=count)), dtype=np.int64)


def brute_force_failures(points, d, p):
    values = monomial_values(points, d)
    coeffs = all_coefficients(values.shape[1], p)
    at = np.mod(values @ coeffs.T, p)
    nonzero = at != 0
    single = nonzero.sum(axis=0) == 1
    return sorted({int(np.argmax(nonzero[:, c])) for c in np.flatnonzero(single)})


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(0, len(PLANE_F5) - 1), min_size=2, max_size=6, unique=True), st.sampled_from([1, 2]))
def test_cayley_bacharach_against_brute_force(indices, d):
    points = [PLANE_F5[i] for i in indices]
    failures = cayley_bacharach_failures(points, d)
    assert [points.index(z) for z in failures] == brute_force_failures(points, d, 5)


def configurations_up_to_projectivity(max_size=6):
    # PGL(3) is transitive on non-collinear triples, so every set of at most
    # max_size points moves to one through (1:0:0), (0:1:0), (0:0:1) or onto
    # the line x2 = 0 through the first two
    where = {x.coords: i for i, x in enumerate(PLANE_F5)}
    e0, e1, e2 = where[(1, 0, 0)], where[(0, 1, 0)], where[(0, 0, 1)]
    yield (e0,)
    line = [i for i, x in enumerate(PLANE_F5) if x.coords[2] == 0 and i not in (e0, e1)]
    for k in range(len(line) + 1):
        for rest in itertools.combinations(line, k):
            yield (e0, e1, *rest)
    others = [i for i in range(len(PLANE_F5)) if i not in (e0, e1, e2)]
    for k in range(max_size - 2):
        for rest in itertools.combinations(others, k):
            yield (e0, e1, e2, *rest)


@pytest.mark.slow
@pytest.mark.parametrize("d", [1, 2])
def test_cayley_bacharach_on_every_small_configuration(d):
    disagreements = []
    for indices in configurations_up_to_projectivity():
        points = [PLANE_F5[i] for i in indices]
        got = [points.index(z) for z in cayley_bacharach_failures(points, d)]
        if got != brute_force_failures(points, d, 5):
            disagreements.append(indices)
    assert disagreements == []


def test_four_general_points_satisfy_cayley_bacharach_for_lines():
    points = [PointP.of(c, P) for c in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1])]
    assert cayley_bacharach(points, 1)


def test_collinear_triple_breaks_cayley_bacharach():
    points = [PointP.of(c, P) for c in ([1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1])]
    assert cayley_bacharach_failures(points, 1) == [points[3]]


def test_repeated_points_are_rejected():
    with pytest.raises(GeometryError):
        cayley_bacharach_failures([PointP.of([1, 2, 3], P), PointP.of([2, 4, 6], P)], 1)


# -------------------------
# Epimorphisms
# -------------------------

def test_epi_certificate():
    cert = epi_certificate(GradedMatrix.of([["x0", "x1", "x2"]], (-1, -1, -1), (0,), 3, P))
    assert cert.ok and cert.degree == 1
    assert not epi_certificate(GradedMatrix.of([["x0", "x1"]], (-1, -1), (0,), 3, P)).ok


# -------------------------
# Lines and splitting types
# -------------------------

def test_line_param():
    line = LineParam.through([1, 0, 0, 0], [0, 1, 0, 0], P)
    assert line.contains(PointP.of([3, 5, 0, 0], P))
    assert not line.contains(PointP.of([0, 0, 1, 0], P))
    assert line.format() == "line through (1:0:0:0) and (0:1:0:0)"
    with pytest.raises(GeometryError):
        LineParam.through([1, 2, 0, 0], [2, 4, 0, 0], P)


def test_splitting_types_of_standard_bundles():
    plane_line = LineParam.through([1, 0, 0], [0, 1, 0], P)
    assert splitting_type_on_line(omega(3, 1), plane_line) == [0, -1]
    assert splitting_type_on_line(LineSum.of([1, -1], 3, P), plane_line) == [1, -1]
    column = GradedMatrix.of([["x0"], ["x1"], ["x2"]], (-1,), (0, 0, 0), 3, P)
    assert splitting_type_on_line(SubQuot(column, LineSum.of([0, 0, 0], 3, P)), plane_line) == [1, 0]

    space_line = LineParam.through([1, 0, 0, 0], [0, 1, 0, 0], P)
    assert splitting_type_on_line(omega(4, 2), space_line) == [1, 1, 0]


def test_splitting_fails_where_the_map_drops_rank():
    node = KerEpi(GradedMatrix.of([["x0", "x1", "x2"]], (-1, -1, -1), (0,), 4, P))
    line = LineParam.through([0, 0, 0, 1], [1, 0, 0, 0], P)
    with pytest.raises(SplittingError):
        splitting_type_on_line(node, line)


def test_edges_of_the_coordinate_tetrahedron():
    z = [PointP.of(e, P) for e in np.eye(4, dtype=np.int64).tolist()]
    meeting = LineParam.through([1, 1, 0, 0], [0, 0, 1, 1], P)
    assert edge_incidences(meeting, z) == [(0, 1), (2, 3)]
    avoiding = LineParam.through([1, 0, 1, 2], [0, 1, 3, 1], P)
    assert edge_avoidance(avoiding, z)
    with pytest.raises(GeometryError):
        edge_incidences(avoiding, z[:3] + [PointP.of([1, 1, 1, 0], P)])
    with pytest.raises(GeometryError):
        edge_incidences(LineParam.through([1, 0, 0, 0], [0, 1, 1, 1], P), z)


# -------------------------
# Global generation
# -------------------------

def test_generated_bundle():
    verdict = is_globally_generated(omega(4, 2), trials=20, seed=1)
    assert verdict.generated and verdict.tag == GENERATED
    assert verdict.h0 == 6


def test_witness_point_for_a_negative_summand():
    verdict = is_globally_generated(LineSum.of([0, -1], 3, P), trials=5)
    assert not verdict.generated and verdict.tag == NOT_GENERATED
    assert verdict.witness_point is not None
    assert verdict.to_json()["h0"] == 1


def test_witness_line_for_a_negative_summand():
    line = LineParam.through([1, 0, 0], [0, 0, 1], P)
    verdict = is_globally_generated(LineSum.of([1, -1], 3, P), trials=5, lines=[line])
    assert verdict.witness_line == line
    assert verdict.splitting == (1, -1)
    assert verdict.to_json()["splitting"] == [1, -1]


# -------------------------
# Lines on the quadric
# -------------------------

def q(text):
    return parse_form(text, 4, P, names=QUADRIC_NAMES)


def test_quadric_space_without_line_components():
    space = [q("u0*v0^3 + u1*v0^2*v1"), q("u0*v0^2*v1 + u1*v0*v1^2"), q("u0*v0*v1^2 + u1*v1^3")]
    assert quadric_line_component_test(space)


def test_quadric_space_with_a_line_component():
    space = [q("u0*v0^3 + u1*v0^2*v1"), q("u0*v0^2*v1 + u1*v0*v1^2"), q("u0*v1^3 + u1*v1^3")]
    assert not quadric_line_component_test(space)


def test_quadric_rejects_wrong_bidegree():
    with pytest.raises(GeometryError):
        quadric_line_component_test([q("u0^2*v0^2"), q("u0*v0^3"), q("u1*v1^3")])
