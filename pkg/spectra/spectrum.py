"""Spectra of stable rank-2 reflexive sheaves on P^3 with c1 = 0.

Enumeration filters by necessary conditions only; cohomological exclusions
of particular spectra are catalog assertions, not rules here.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from contracts import SpectrumError

logger = logging.getLogger(__name__)

NONINCREASING = "nonincreasing"
POSITIVE_RUN = "positive values are preceded by 0..k"
NEGATIVE_RUN = "negative values are preceded by -1..k"
MINUS_ONE_TWICE = "without 0, -1 occurs twice"
STRICT_TAIL = "strict decrease continues once started below 0"
SYMMETRIC = "symmetric"
C3_NONNEG = "c3 >= 0"
NO_POSITIVE = "no entry >= 1"


@dataclass(frozen=True)
class Spectrum:
    k: tuple[int, ...]

    @classmethod
    def of(cls, k: Sequence[int]) -> Spectrum:
        return cls(tuple(int(x) for x in k))

    @property
    def c(self) -> int:
        return len(self.k)

    @property
    def c3(self) -> int:
        return c3_from_spectrum(self)

    def to_json(self) -> list[int]:
        return list(self.k)


def spectrum_violations(s: Spectrum | Sequence[int], *, spectrum2: bool = False, symmetric: bool = False,
                        c3_nonneg: bool = False, exclude_ge_1: bool = False) -> list[str]:
    k = s.k if isinstance(s, Spectrum) else tuple(s)
    present = set(k)
    out = []
    if any(a < b for a, b in zip(k, k[1:])):
        out.append(NONINCREASING)
    top, bottom = (max(k), min(k)) if k else (0, 0)
    if top > 0 and not all(v in present for v in range(0, top + 1)):
        out.append(POSITIVE_RUN)
    if bottom < 0 and not all(v in present for v in range(bottom, 0)):
        out.append(NEGATIVE_RUN)
    if 0 not in present and k.count(-1) < 2:
        out.append(MINUS_ONE_TWICE)
    if spectrum2:
        # 1-based i in 2..c-1 with 0 >= k_{i-1} > k_i > k_{i+1}
        for i in range(1, len(k) - 1):
            if 0 >= k[i - 1] > k[i] > k[i + 1]:
                tail = k[i + 1:]
                if any(a <= b for a, b in zip(tail, tail[1:])):
                    out.append(STRICT_TAIL)
                break
    if symmetric and Counter(k) != Counter(-a for a in k):
        out.append(SYMMETRIC)
    if c3_nonneg and sum(k) > 0:
        out.append(C3_NONNEG)
    if exclude_ge_1 and top >= 1:
        out.append(NO_POSITIVE)
    return out


def enumerate_spectra(c: int, kmin: int, kmax: int, *, spectrum2: bool = False, symmetric: bool = False,
                      c3_nonneg: bool = False, exclude_ge_1: bool = False) -> list[Spectrum]:
    if c < 1:
        raise SpectrumError("c2 must be at least 1")
    if kmin > kmax:
        raise SpectrumError(f"empty range [{kmin}, {kmax}]")
    opts = dict(spectrum2=spectrum2, symmetric=symmetric, c3_nonneg=c3_nonneg, exclude_ge_1=exclude_ge_1)
    out = [
        Spectrum(k)
        for k in itertools.combinations_with_replacement(range(kmax, kmin - 1, -1), c)
        if not spectrum_violations(k, **opts)
    ]
    logger.debug("c=%d, range [%d, %d]: %d spectra", c, kmin, kmax, len(out))
    return out


def h1_from_spectrum(s: Spectrum, l: int) -> int:
    """h^1(F(l)) for l <= -1."""
    if l > -1:
        raise SpectrumError(f"the spectrum gives h^1(F(l)) only for l <= -1, not {l}")
    return sum(max(0, k + l + 2) for k in s.k)


def h2_from_spectrum(s: Spectrum, l: int) -> int:
    """h^2(F(l)) for l >= -3."""
    if l < -3:
        raise SpectrumError(f"the spectrum gives h^2(F(l)) only for l >= -3, not {l}")
    return sum(max(0, -(k + l + 2)) for k in s.k)


def c3_from_spectrum(s: Spectrum) -> int:
    return -2 * sum(s.k)


def genus_from_c3(c3: int) -> int:
    """Arithmetic genus of the curve attached to F by c3 = 2 p_a - 2."""
    if c3 % 2:
        raise SpectrumError(f"c3 = {c3} is odd")
    return c3 // 2 + 1
