import logging
from dataclasses import dataclass
from math import comb

from exactfield.gradedmatrix import GradedMatrix, ideal_piece_dim, minors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EpiCertificate:
    ok: bool
    degree: int | None
    max_degree: int


def epi_certificate(m: GradedMatrix, max_degree: int | None = None) -> EpiCertificate:
    """Smallest d <= max_degree where the maximal minors span all forms of degree d."""
    rows, cols = m.shape
    n = m.nvars - 1
    if rows == 0:
        return EpiCertificate(True, 0, max_degree or 0)
    if rows > cols:
        return EpiCertificate(False, None, max_degree or 0)
    gens = [f for f in minors(m, rows) if not f.is_zero]
    if not gens:
        return EpiCertificate(False, None, max_degree or 0)
    top = max(f.degree for f in gens)
    max_degree = max_degree if max_degree is not None else (n + 1) * top + 1
    for d in range(min(f.degree for f in gens), max_degree + 1):
        if ideal_piece_dim(gens, d) == comb(n + d, n):
            logger.debug("epimorphism certified in degree %d", d)
            return EpiCertificate(True, d, max_degree)
    return EpiCertificate(False, None, max_degree)
