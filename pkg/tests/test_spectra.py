import pytest
from hypothesis import given, settings, strategies as st

from contracts import SpectrumError
from spectra.spectrum import (
    MINUS_ONE_TWICE,
    NEGATIVE_RUN,
    NONINCREASING,
    POSITIVE_RUN,
    STRICT_TAIL,
    Spectrum,
    c3_from_spectrum,
    enumerate_spectra,
    genus_from_c3,
    h1_from_spectrum,
    h2_from_spectrum,
    spectrum_violations,
)


def ks(spectra):
    return [s.k for s in spectra]


# -------------------------
# Enumeration
# -------------------------

def test_c2_with_nonnegative_c3():
    assert ks(enumerate_spectra(2, -2, 1, c3_nonneg=True)) == [(0, 0), (0, -1), (-1, -1)]


def test_c2_without_c3_filter_keeps_one_zero():
    assert (1, 0) in ks(enumerate_spectra(2, -2, 1))


def test_c1_is_zero_only():
    assert ks(enumerate_spectra(1, -3, 3)) == [(0,)]


def test_strict_tail_rule_on_c4():
    plain = ks(enumerate_spectra(4, -3, 1))
    strict = ks(enumerate_spectra(4, -3, 1, spectrum2=True))
    assert (0, -1, -2, -2) in plain
    assert (0, -1, -2, -2) not in strict
    assert (0, -1, -2, -3) in strict
    assert set(strict) < set(plain)


def test_enumeration_rejects_bad_input():
    with pytest.raises(SpectrumError):
        enumerate_spectra(0, -1, 1)
    with pytest.raises(SpectrumError):
        enumerate_spectra(2, 1, -1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5), st.integers(-4, 0), st.integers(0, 3))
def test_emitted_spectra_pass_their_rules(c, kmin, kmax):
    for s in enumerate_spectra(c, kmin, kmax, spectrum2=True):
        assert spectrum_violations(s, spectrum2=True) == []
        assert list(s.k) == sorted(s.k, reverse=True)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6))
def test_symmetric_option(c):
    for s in enumerate_spectra(c, -c, c, symmetric=True):
        assert sorted(s.k) == sorted(-k for k in s.k)


def test_broken_sequences_are_rejected():
    assert NONINCREASING in spectrum_violations((0, 1))
    assert POSITIVE_RUN in spectrum_violations((2, 0))
    assert NEGATIVE_RUN in spectrum_violations((0, -2))
    assert MINUS_ONE_TWICE in spectrum_violations((-1, -2))
    assert STRICT_TAIL in spectrum_violations((0, -1, -2, -2), spectrum2=True)


# -------------------------
# Cohomology from the spectrum
# -------------------------

@pytest.mark.parametrize("k, l, want", [
    ((0, 0, -1), -1, 2),
    ((0, -1, -1, -1), -1, 1),
    ((1, 0, 0), -5, 0),
])
def test_h1(k, l, want):
    assert h1_from_spectrum(Spectrum.of(k), l) == want


@pytest.mark.parametrize("k, l, want", [
    ((0, -1, -2), -1, 1),
    ((0, 0, 0, 0), -2, 0),
    ((0, -1, -2, -3), 0, 1),
])
def test_h2(k, l, want):
    assert h2_from_spectrum(Spectrum.of(k), l) == want


def test_evaluators_check_their_range():
    with pytest.raises(SpectrumError):
        h1_from_spectrum(Spectrum.of((0,)), 0)
    with pytest.raises(SpectrumError):
        h2_from_spectrum(Spectrum.of((0,)), -4)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5))
def test_h1_at_minus_two_detects_positive_entries(c):
    for s in enumerate_spectra(c, -c, c):
        assert (h1_from_spectrum(s, -2) == 0) == (max(s.k) < 1)


def test_c3_and_genus():
    assert c3_from_spectrum(Spectrum.of((-1, -1, -2, -2))) == 12
    assert Spectrum.of((0, 0, 0)).c3 == 0
    assert genus_from_c3(0) == 1
    assert genus_from_c3(c3_from_spectrum(Spectrum.of((0, 0, -1)))) == 2
    with pytest.raises(SpectrumError):
        genus_from_c3(3)
