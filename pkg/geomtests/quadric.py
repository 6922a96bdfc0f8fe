"""Divisors made of lines on the quadric P^1 x P^1.

Forms of bidegree (1, 3) are written in u0, u1, v0, v1. A (1, 0)-form
s*u0 + t*u1 divides an element of the subspace L exactly when L meets
(s*u0 + t*u1) * H^0(O(0, 3)); this is a rank drop of an 8 x 7 matrix of
binary forms in (s, t).
"""
from __future__ import annotations

import logging
from typing import Sequence

from contracts import GeometryError
from exactfield.binary import common_root
from exactfield.forms import Form
from exactfield.gradedmatrix import GradedMatrix, minors
from exactfield.linalg import rank

logger = logging.getLogger(__name__)

QUADRIC_NAMES = ["u0", "u1", "v0", "v1"]


def _bidegree_coords(f: Form) -> list[int]:
    """Coordinates in the basis u_a * v0^(3-k) * v1^k, a in (0, 1), k in 0..3."""
    out = [0] * 8
    for (a0, a1, b0, b1), c in f.terms:
        if a0 + a1 != 1 or b0 + b1 != 3:
            raise GeometryError(f"{f.format(QUADRIC_NAMES)} is not of bidegree (1, 3)")
        out[(0 if a0 else 4) + b1] = c
    return out


def line_divisor_matrix(space: Sequence[Form]) -> GradedMatrix:
    p = space[0].p
    cols = [_bidegree_coords(f) for f in space]
    s = Form.variable(0, 2, p)
    t = Form.variable(1, 2, p)
    zero = Form.zero(2, 1, p)
    rows = []
    for r in range(8):
        row = [Form.constant(col[r], 2, p) if col[r] else Form.zero(2, 0, p) for col in cols]
        # (s u0 + t u1) * v0^(3-k) v1^k
        for k in range(4):
            row.append(s if r == k else t if r == 4 + k else zero)
        rows.append(row)
    return GradedMatrix.of(rows, [1] * len(space) + [0] * 4, [1] * 8, 2, p)


def quadric_line_component_test(space: Sequence[Form]) -> bool:
    """True iff no nonzero element of the 3-dimensional space is divisible by a form of bidegree (1, 0)."""
    if len(space) != 3:
        raise GeometryError("expected three spanning forms")
    p = space[0].p
    if rank([_bidegree_coords(f) for f in space], p) != 3:
        raise GeometryError("the forms do not span a 3-dimensional space")
    m = line_divisor_matrix(space)
    found = common_root(minors(m, 7))
    logger.debug("line component through the subspace: %s", found)
    return not found
