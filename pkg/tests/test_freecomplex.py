import pytest
from hypothesis import given, settings, strategies as st

from contracts import ComplexError, LiftNotFound, ShapeError
from exactfield.forms import Form, parse_form
from exactfield.gradedmatrix import GradedMatrix
from freecomplex.complex import (
    ChainMap,
    FreeComplex,
    cone,
    dual,
    hilbert_function,
    koszul,
    scheme_degree,
    scheme_dimension_and_degree,
    shift,
    tensor,
    trim,
    twist,
    verify_exact,
)
from freecomplex.liaison import ferrand_liaison, koszul_lift

P = 101


def f(text, nvars):
    return parse_form(text, nvars, P)


def twisted_cubic():
    names = ("x0", "x1", "x2", "x3")
    d1 = GradedMatrix.of(
        [["x1*x3 - x2^2", "-x0*x3 + x1*x2", "x0*x2 - x1^2"]],
        (-2, -2, -2), (0,), 4, P, names,
    )
    d2 = GradedMatrix.of(
        [["x0", "x1"], ["x1", "x2"], ["x2", "x3"]],
        (-3, -3), (-2, -2, -2), 4, P, names,
    )
    return FreeComplex.from_diffs([d1, d2])


# -------------------------
# Construction
# -------------------------

def test_koszul_terms_and_signs():
    c = koszul([f("x0", 3), f("x1", 3), f("x2", 3)])
    assert c.terms == ((0,), (-1, -1, -1), (-2, -2, -2), (-3,))
    assert c.squares_to_zero()
    # the face dropping the second index carries a minus sign
    d2 = c.diff(2)
    assert d2.entries[0][0] == -f("x1", 3)
    assert d2.entries[1][0] == f("x0", 3)


def test_koszul_rejects_empty_or_zero():
    with pytest.raises(ComplexError):
        koszul([])
    with pytest.raises(ComplexError):
        koszul([Form.zero(3, 1, P)])


def test_mismatched_terms_rejected():
    d = GradedMatrix.of([["x0"]], (-1,), (0,), 3, P)
    with pytest.raises(ShapeError):
        FreeComplex(3, P, 0, ((0,), (-2,)), (d,))


def test_dual_is_involution():
    c = koszul([f("x0", 3), f("x1^2", 3)], twist=1)
    assert dual(dual(c)) == c
    assert dual(c).lo == -c.hi


def test_twist_and_shift():
    c = koszul([f("x0", 3), f("x1", 3)])
    t = twist(c, 2)
    assert t.terms == ((2,), (1, 1), (0,))
    s = shift(c, 1)
    assert s.lo == 1 and s.squares_to_zero()


def test_tensor_of_koszul_is_koszul():
    a, b = koszul([f("x0", 3)]), koszul([f("x1", 3)])
    t = tensor(a, b)
    assert t.terms == koszul([f("x0", 3), f("x1", 3)]).terms
    assert t.squares_to_zero()
    assert verify_exact(t, window=(-2, 3)).is_exact


def test_cone_of_identity_is_exact():
    c = koszul([f("x0", 3), f("x1", 3)])
    ident = ChainMap(c, c, {k: GradedMatrix.identity(c.term(k), 3, P) for k in c.positions})
    assert ident.commutes()
    k = cone(ident)
    assert k.squares_to_zero()
    assert verify_exact(k, window=(-3, 3), positions=k.positions).is_exact


def test_trim_cancels_unit_pairs():
    c = cone(ChainMap(
        koszul([f("x0", 3)]), koszul([f("x0", 3)]),
        {k: GradedMatrix.identity(koszul([f("x0", 3)]).term(k), 3, P) for k in (0, 1)},
    ))
    trimmed = trim(c)
    assert all(not term for term in trimmed.terms)


# -------------------------
# Exactness and Hilbert data
# -------------------------

def test_regular_sequence_koszul_is_exact():
    c = koszul([f("x0", 3), f("x1", 3), f("x2", 3)])
    assert verify_exact(c, window=(-3, 3)).is_exact


def test_repeated_form_is_not_exact():
    c = koszul([f("x0", 3), f("x0", 3)])
    report = verify_exact(c, window=(0, 2))
    assert not report.is_exact
    assert (1, 1, 1) in report.failures()
    assert not report.exact_at(1)


def test_point_and_complete_intersection_degrees():
    point = koszul([f("x0", 3), f("x1", 3)])
    assert hilbert_function(point, 3) == 1
    assert scheme_degree(point) == 1
    assert scheme_dimension_and_degree(koszul([f("x0^2", 3), f("x1^2", 3)])) == (0, 4)
    assert scheme_dimension_and_degree(koszul([f("x0*x1", 4), f("x2^3", 4)])) == (1, 6)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(-2, 2))
def test_monomial_regular_sequences_are_exact(degrees, t):
    forms = [f(f"x{i}^{d}", 4) for i, d in enumerate(degrees)]
    c = koszul(forms, twist=t)
    assert c.squares_to_zero()
    assert verify_exact(c, window=(-4, 4)).is_exact


# -------------------------
# Liaison
# -------------------------

def test_twisted_cubic_resolution_is_exact():
    res = twisted_cubic()
    assert res.squares_to_zero()
    assert verify_exact(res, window=(-4, 4)).is_exact
    assert scheme_dimension_and_degree(res) == (1, 3)


def test_linking_twisted_cubic_gives_a_line():
    res = twisted_cubic()
    a, b = f("x0*x2 - x1^2", 4), f("x1*x3 - x2^2", 4)
    lift = koszul_lift(res, a, b)
    assert lift.commutes()

    linked = ferrand_liaison(res, a, b)
    assert linked.term(0) == (0,)
    assert sorted(linked.term(1)) == [-1, -1]
    assert linked.term(2) == (-2,)
    assert linked.squares_to_zero()
    assert verify_exact(linked, window=(-4, 4)).is_exact
    assert scheme_degree(res) + scheme_degree(linked) == a.degree * b.degree


def test_lift_fails_outside_the_ideal():
    res = twisted_cubic()
    with pytest.raises(LiftNotFound):
        koszul_lift(res, f("x0^2", 4), f("x1*x3 - x2^2", 4))


def test_liaison_needs_three_term_resolution():
    with pytest.raises(ComplexError):
        ferrand_liaison(koszul([f("x0", 4)]), f("x0", 4), f("x1", 4))
