import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from beilinson.exterior import (
    ExtElement,
    basis,
    contract,
    contraction_splits,
    shuffle_sign,
    skew_rank,
    wedge,
    wedge_map_rank,
)
from beilinson.monad import beilinson_terms, load_table, omega_restriction, table_from_json
from contracts import BeilinsonError, ExteriorError
from sheafcoh.cohomology import Cell, CohTable

P = 101


def e(dim, *idx):
    return ExtElement.basis_element(dim, idx, P)


def f(dim, *idx):
    return ExtElement.basis_element(dim, idx, P, dual=True)


def elements(dim, grade, dual=False):
    size = len(basis(dim, grade))
    return st.lists(st.integers(0, P - 1), min_size=size, max_size=size).map(
        lambda vec: ExtElement.from_vector(dim, grade, vec, P, dual)
    )


# -------------------------
# Exterior algebra
# -------------------------

def test_from_dict_sorts_with_sign():
    assert ExtElement.from_dict(4, 2, {(1, 0): 1}, P) == e(4, 0, 1).scale(-1)
    assert ExtElement.from_dict(4, 2, {(1, 1): 3}, P).is_zero
    assert (e(4, 0, 1) - e(4, 2, 3)).format() == "e0^e1 - e2^e3"


def test_bad_indices_rejected():
    with pytest.raises(ExteriorError):
        ExtElement(3, 1, (((5,), 1),), P)


def test_wedge_is_graded_commutative():
    a, b = e(4, 0), e(4, 1)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero
    assert shuffle_sign((1,), (0,)) == -1
    assert shuffle_sign((0, 2), (2,)) == 0


def test_contraction_on_basis_vectors():
    assert contract(f(4, 0, 1), e(4, 0)) == f(4, 1)
    assert contract(f(4, 0, 1), e(4, 1)) == -f(4, 0)
    assert contract(f(4, 0, 1), ExtElement.zero(4, 1, P)).is_zero
    with pytest.raises(ExteriorError):
        contract(e(4, 0, 1), e(4, 0))
    with pytest.raises(ExteriorError):
        contract(f(4, 0), e(4, 0, 1))


@settings(max_examples=30, deadline=None)
@given(elements(5, 4, dual=True), elements(5, 1), elements(5, 2))
def test_contraction_is_dual_to_wedge(phi, omega, eta):
    assert contract(contract(phi, omega), eta) == contract(phi, wedge(omega, eta))


@st.composite
def exterior_samples(draw, dim=5):
    p = draw(st.integers(0, dim))
    q = draw(st.integers(0, dim - p))
    r = draw(st.integers(0, dim - p - q))
    phi = draw(elements(dim, p + q + r, dual=True))
    return phi, draw(elements(dim, p)), draw(elements(dim, q)), draw(elements(dim, r))


def check_exterior_laws(phi, a, b, c):
    p, q = a.grade, b.grade
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert contract(contract(phi, a), b) == contract(phi, wedge(a, b))


@settings(max_examples=60, deadline=None)
@given(exterior_samples())
def test_exterior_laws(sample):
    check_exterior_laws(*sample)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(exterior_samples())
def test_exterior_laws_on_many_triples(sample):
    check_exterior_laws(*sample)


def test_skew_and_wedge_ranks():
    assert skew_rank(e(6, 0, 1)) == 2
    assert skew_rank(e(6, 0, 1) + e(6, 2, 3)) == 4
    full = e(6, 0, 1) + e(6, 2, 3) + e(6, 4, 5)
    assert skew_rank(full) == 6
    assert wedge_map_rank(full, 2) == 15


def test_contraction_trichotomy():
    full = contraction_splits(e(6, 0, 1) + e(6, 2, 3) + e(6, 4, 5))
    assert full.locally_split and full.wedge_rank == 15
    assert full.to_json()["skew_rank"] == 6
    partial = contraction_splits(e(6, 0, 1) + e(6, 2, 3))
    assert not partial.locally_split and partial.skew_rank == 4
    assert contraction_splits(e(6, 0, 1)).skew_rank == 2
    with pytest.raises(ExteriorError):
        contraction_splits(e(5, 0, 1))


# -------------------------
# Monads
# -------------------------

def sparse_table(n, entries):
    return table_from_json({"n": n, "window": [-n, 0], "default": 0, "h": entries})


def test_monad_of_a_rank_three_bundle_on_p4():
    table = sparse_table(4, {"1": {"-1": 3, "0": 5}, "2": {"-3": 1}})
    shape = beilinson_terms(table)
    assert shape.positions == [-1, 0, 1]
    assert shape.at(-1) == ((1, 3),)
    assert shape.at(0) == ((3, 1),)
    assert shape.at(1) == ((5, 0),)
    assert shape.format() == "Omega^3(3) -> Omega^1(1)^3 -> O^5"
    assert shape.rank == 3


def test_monad_on_p5():
    table = sparse_table(5, {"3": {"-4": 1}, "2": {"-2": 1}, "1": {"0": 1}})
    shape = beilinson_terms(table)
    assert shape.format() == "Omega^4(4) -> Omega^2(2) -> O"
    assert shape.to_json()["terms"]["0"] == [{"omega": 2, "multiplicity": 1}]


def test_zero_table_gives_empty_monad():
    shape = beilinson_terms(sparse_table(3, {}))
    assert shape.is_empty and shape.format() == "0"


def test_monad_needs_decided_cells():
    cells = {(i, l): Cell.exact(0) for i in range(3) for l in range(-2, 1)}
    cells[(1, -1)] = Cell(0, 2)
    with pytest.raises(BeilinsonError):
        beilinson_terms(CohTable(2, (-2, 0), cells))
    with pytest.raises(BeilinsonError):
        beilinson_terms(table_from_json({"n": 2, "window": [-2, 0], "h": {"0": {"0": 1}}}))
    with pytest.raises(BeilinsonError):
        beilinson_terms(sparse_table(2, {}), n=3)


def test_load_table(tmp_path):
    path = tmp_path / "table.json"
    path.write_text(json.dumps({"n": 2, "window": [-2, 0], "default": 0, "h": {"1": {"-1": [0, 1]}}}))
    table = load_table(path)
    assert table.cell(1, -1) == Cell(0, 1)
    with pytest.raises(BeilinsonError):
        load_table(tmp_path / "missing.json")


@pytest.mark.parametrize("p, n, n_sub, want", [
    (4, 5, 3, [(3, 2), (2, 1)]),
    (0, 4, 2, [(0, 1)]),
    (2, 4, 3, [(2, 1), (1, 1)]),
])
def test_omega_restriction(p, n, n_sub, want):
    got = omega_restriction(p, n, n_sub)
    assert got == want
    assert sum(mult * comb(n_sub, i) for i, mult in got) == comb(n, p)


def test_omega_restriction_ranges():
    with pytest.raises(BeilinsonError):
        omega_restriction(6, 5, 3)
    with pytest.raises(BeilinsonError):
        omega_restriction(2, 4, 4)
