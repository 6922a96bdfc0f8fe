import pytest
from hypothesis import given, settings, strategies as st

from chernrr.chern import ChernVector, chern_of_node, dual_class, p_chern, twist_class
from chernrr.constraints import RANK2_P3_HALF, gg_constraints, nonneg
from chernrr.riemannroch import (
    chi_line,
    rr_chi,
    rr_chi_generic,
    rr_chi_p2,
    rr_chi_p3,
    rr_chi_p4,
    schwarzenberger_ok,
)
from chernrr.surfaces import SurfaceInvariants, double_point, surface_bundle_data
from contracts import ChernError, CongruenceError
from exactfield.forms import parse_form
from freecomplex.complex import koszul
from sheafcoh.nodes import KerEpi, LineSum, Sum, Twist

P = 101


def omega(nvars, t):
    xs = [parse_form(f"x{i}", nvars, P) for i in range(nvars)]
    return KerEpi(koszul(xs, twist=t).diff(1))


# -------------------------
# Chern vectors
# -------------------------

def test_chern_vector_of_pads_and_rejects():
    assert ChernVector.of(3, 2, [1]).c == (1, 0, 0)
    assert ChernVector.of(2, 2, [1, 2, 0]).c == (1, 2)
    with pytest.raises(ChernError):
        ChernVector.of(2, 2, [1, 2, 3])
    with pytest.raises(ChernError):
        ChernVector(3, 2, (1, 2))
    assert ChernVector.of(3, 2, [2, 1, 0]).format() == "(2; 2, 1, 0)"


def test_chern_of_constructions():
    assert chern_of_node(omega(4, 2)) == ChernVector(3, 3, (2, 2, 0))
    assert chern_of_node(omega(5, 2)) == ChernVector(4, 4, (3, 4, 2, 1))
    assert chern_of_node(LineSum.of([1, 1], 4, P)) == ChernVector(3, 2, (2, 1, 0))
    both = Sum((omega(4, 2), LineSum.of([2], 4, P)))
    assert chern_of_node(both) == ChernVector(3, 4, (4, 6, 4))


def test_twist_and_dual_classes():
    trivial = ChernVector.of(3, 2, [0, 0, 0])
    assert twist_class(trivial, 1) == ChernVector(3, 2, (2, 1, 0))
    assert twist_class(twist_class(trivial, 1), -1) == trivial
    assert dual_class(ChernVector(3, 2, (2, 1, 0))) == ChernVector(3, 2, (-2, 1, 0))
    node = omega(4, 2)
    assert chern_of_node(Twist(node, 1)) == twist_class(chern_of_node(node), 1)
    with pytest.raises(ChernError):
        twist_class(ChernVector(3, None, (1, 0, 0)), 1)


@settings(max_examples=50)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_p_chern_is_involution(c):
    cv = ChernVector.of(3, None, c)
    assert p_chern(p_chern(cv)).c == cv.c


def test_p_chern_of_hyperplane_bundle():
    assert p_chern(ChernVector.of(3, 1, [1]), h0=4) == ChernVector(3, 3, (1, 1, 1))


# -------------------------
# Riemann-Roch
# -------------------------

def test_chi_of_line_bundles():
    assert chi_line(3, 1) == 4
    assert chi_line(3, -4) == -1
    assert chi_line(2, -1) == 0
    assert rr_chi(ChernVector.of(3, 1, [0]), 1) == 4
    assert rr_chi(ChernVector.of(3, 1, [0]), -4) == -1


def test_chi_of_omega2():
    assert rr_chi(chern_of_node(omega(4, 2)), 0) == 6
    assert rr_chi(chern_of_node(omega(4, 2)), -2) == -1


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(-6, 6), st.integers(-10, 10), st.integers(-4, 4))
def test_closed_form_on_p2_matches_character(r, c1, c2, l):
    cv = ChernVector(2, r, (c1, c2))
    assert rr_chi_p2(cv, l) == rr_chi_generic(cv, l)


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(-5, 5), st.integers(-8, 8), st.integers(-6, 6), st.integers(-4, 4))
def test_closed_form_on_p3_matches_character(r, c1, c2, k, l):
    cv = ChernVector(3, r, (c1, c2, c1 * c2 + 2 * k))
    assert rr_chi_p3(cv, l) == rr_chi_generic(cv, l)


def test_closed_form_on_p4_matches_character():
    for cv in (chern_of_node(omega(5, 2)), ChernVector(4, 2, (4, 8, 8, 0)), ChernVector(4, 1, (2, 0, 0, 0))):
        for l in range(-4, 4):
            assert rr_chi_p4(cv, l) == rr_chi_generic(cv, l)


def test_parity_of_c3_on_p3():
    with pytest.raises(CongruenceError):
        rr_chi(ChernVector(3, 2, (1, 0, 1)))


def test_schwarzenberger():
    ok, residue = schwarzenberger_ok(ChernVector(4, 2, (5, 8, 0, 0)))
    assert not ok and residue == 8
    assert schwarzenberger_ok(chern_of_node(omega(5, 2))) == (True, 0)
    with pytest.raises(CongruenceError):
        rr_chi(ChernVector(4, 2, (5, 8, 0, 0)))
    with pytest.raises(ChernError):
        schwarzenberger_ok(ChernVector(3, 2, (1, 1, 1)))


def test_generic_rr_on_p5():
    cv = chern_of_node(omega(6, 2))
    assert rr_chi(cv, 0) == 15
    assert rr_chi(ChernVector.of(5, 1, [0]), 1) == 6


# -------------------------
# Constraints and surfaces
# -------------------------

def test_gg_constraints():
    assert gg_constraints(ChernVector(3, 3, (2, 2, 0))) == []
    assert RANK2_P3_HALF in gg_constraints(ChernVector(3, 2, (4, 9, 0)))
    assert nonneg(1) in gg_constraints(ChernVector(3, 2, (-1, 0, 0)))
    assert gg_constraints(ChernVector(3, 2, (4, 9, 0)), skip=[RANK2_P3_HALF, "c2 <= c1^2"]) == []


def test_double_point_formula():
    assert double_point(SurfaceInvariants(8, 5, 1, 0)) == 0
    assert double_point(SurfaceInvariants(8, 4, 1, 0)) == 1


def test_surface_bundle_data():
    data = surface_bundle_data(SurfaceInvariants(8, 5, 1, 0), h1_oy1=1)
    assert data.rank == 5
    assert (data.c2, data.c3, data.c4) == (8, 8, 0)
    assert data.consistent is True
    assert data.chern() == ChernVector(4, 5, (4, 8, 8, 0))
    assert surface_bundle_data(SurfaceInvariants(8, 5, 1, 0)).consistent is None


def test_surface_invariants_are_validated():
    with pytest.raises(ChernError):
        SurfaceInvariants(0, 1, 0, 0)
    with pytest.raises(ChernError):
        SurfaceInvariants(5, -1, 0, 0)
