"""Bookkeeping for a smooth surface Y in P^4 arising as a degeneracy locus of sections."""
from __future__ import annotations

from dataclasses import dataclass

from chernrr.chern import ChernVector
from contracts import ChernError


@dataclass(frozen=True)
class SurfaceInvariants:
    d: int
    pi: int
    q: int
    pg: int

    def __post_init__(self):
        if self.d < 1:
            raise ChernError(f"surface degree {self.d} must be positive")
        if min(self.pi, self.q, self.pg) < 0:
            raise ChernError("genera must be nonnegative")

    @property
    def ck(self) -> int:
        """C.K for a hyperplane section C, by adjunction."""
        return 2 * self.pi - 2 - self.d

    @property
    def c_plus_k_squared(self) -> int:
        return double_point(self)


def double_point(s: SurfaceInvariants) -> int:
    """(C+K)^2 from the double point formula for surfaces in P^4."""
    twice = (s.d - 3) * (s.d - 4) + 2 * (1 - s.pi - 6 * s.q + 6 * s.pg)
    return twice // 2


@dataclass(frozen=True)
class SurfaceBundleData:
    rank: int
    c2: int
    c3: int
    c4: int
    consistent: bool | None = None

    def chern(self, c1: int = 4) -> ChernVector:
        return ChernVector(4, self.rank, (c1, self.c2, self.c3, self.c4))

    def to_json(self) -> dict:
        return {"rank": self.rank, "c2": self.c2, "c3": self.c3, "c4": self.c4, "consistent": self.consistent}


def surface_bundle_data(s: SurfaceInvariants, h1_oy1: int | None = None) -> SurfaceBundleData:
    """Rank and Chern classes of the bundle whose sections degenerate along Y.

    With h^1(O_Y(1)) supplied, also checks pi - d + 3 = h^1(O_Y(1)) - q + p_g.
    """
    consistent = None if h1_oy1 is None else s.pi - s.d + 3 == h1_oy1 - s.q + s.pg
    return SurfaceBundleData(
        rank=1 + s.pi - s.q + s.pg,
        c2=s.d,
        c3=2 * s.pi - 2,
        c4=double_point(s),
        consistent=consistent,
    )
