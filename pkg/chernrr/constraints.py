from __future__ import annotations

import logging
from typing import Iterable

from chernrr.chern import ChernVector

logger = logging.getLogger(__name__)

C2_AT_MOST_C1_SQUARED = "c2 <= c1^2"
RANK2_P3_HALF = "2*c2 <= c1^2"
C3_LOWER_P4 = "c3 >= 2*c2 - 8"
C2_LOWER = "c2 >= c1 - 1"


def nonneg(i: int) -> str:
    return f"c{i} >= 0"


def gg_constraints(cv: ChernVector, skip: Iterable[str] = ()) -> list[str]:
    """Necessary conditions on the Chern classes of a globally generated bundle that fail for cv."""
    skip = set(skip)
    c1, c2, c3 = cv.ci(1), cv.ci(2), cv.ci(3)
    checks = [(nonneg(i), cv.ci(i) >= 0) for i in range(1, cv.n + 1)]
    if cv.n >= 2:
        checks.append((C2_AT_MOST_C1_SQUARED, c2 <= c1 * c1))
        if c2 > 0:
            checks.append((C2_LOWER, c2 >= c1 - 1))
    if cv.n == 3 and cv.rank == 2:
        checks.append((RANK2_P3_HALF, 2 * c2 <= c1 * c1))
    if cv.n == 4 and c1 == 4 and 5 <= c2 <= 8:
        checks.append((C3_LOWER_P4, c3 >= 2 * c2 - 8))
    violated = [name for name, ok in checks if not ok and name not in skip]
    if violated:
        logger.debug("%s violates %s", cv.format(), violated)
    return violated
