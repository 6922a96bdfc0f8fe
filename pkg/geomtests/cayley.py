import logging
from typing import Sequence

import numpy as np

from contracts import GeometryError
from exactfield.forms import PointP, monomial_basis
from exactfield.linalg import rank

logger = logging.getLogger(__name__)


def monomial_values(points: Sequence[PointP], d: int) -> np.ndarray:
    """Rows: points; columns: degree-d monomials evaluated there."""
    first = points[0]
    basis = monomial_basis(first.nvars, d)
    out = np.zeros((len(points), len(basis)), dtype=np.int64)
    for r, x in enumerate(points):
        for c, e in enumerate(basis):
            v = 1
            for xi, k in zip(x.coords, e):
                if k:
                    v = v * pow(xi, k, x.p) % x.p
            out[r, c] = v
    return out


def _check_distinct(points: Sequence[PointP]) -> None:
    if len({x.normalized() for x in points}) != len(points):
        raise GeometryError("the points are not distinct")
    if len({(x.nvars, x.p) for x in points}) > 1:
        raise GeometryError("the points live in different spaces")


def cayley_bacharach_failures(points: Sequence[PointP], d: int) -> list[PointP]:
    """Points z such that some degree-d form vanishes on the others but not at z."""
    if not points or d < 0:
        return []
    _check_distinct(points)
    p = points[0].p
    values = monomial_values(points, d)
    full = rank(values, p)
    failures = []
    for k, z in enumerate(points):
        others = np.delete(values, k, axis=0)
        if (rank(others, p) if others.shape[0] else 0) != full:
            failures.append(z)
    logger.debug("Cayley-Bacharach in degree %d: %d of %d points fail", d, len(failures), len(points))
    return failures


def cayley_bacharach(points: Sequence[PointP], d: int) -> bool:
    return not cayley_bacharach_failures(points, d)
