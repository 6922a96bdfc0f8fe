"""Global generation: sampled positive verdicts, exact negative witnesses."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from contracts import GeometryError, SplittingError
from exactfield.forms import PointP
from exactfield.gradedmatrix import GradedMatrix, evaluate
from exactfield.linalg import rank
from exactfield.sampling import random_points
from geomtests.lines import LineParam, splitting_type_on_line
from sheafcoh.cohomology import section_matrix
from sheafcoh.models import fiber_model, h0_dim
from sheafcoh.nodes import SheafNode, has_model

logger = logging.getLogger(__name__)

GENERATED = "generated-up-to-sampling"
NOT_GENERATED = "not-generated"


@dataclass(frozen=True)
class GGVerdict:
    generated: bool
    trials: int
    seed: int
    h0: int
    witness_point: PointP | None = None
    witness_line: LineParam | None = None
    splitting: tuple[int, ...] | None = None

    @property
    def tag(self) -> str:
        return GENERATED if self.generated else NOT_GENERATED

    def to_json(self) -> dict:
        out = {"tag": self.tag, "trials": self.trials, "seed": self.seed, "h0": self.h0}
        if self.witness_point is not None:
            out["witness_point"] = self.witness_point.format()
        if self.witness_line is not None:
            out["witness_line"] = self.witness_line.format()
            out["splitting"] = list(self.splitting or ())
        return out


def _section_values(sections: GradedMatrix | None, x: PointP, width: int) -> np.ndarray:
    if sections is None:
        return np.zeros((0, width), dtype=np.int64)
    return evaluate(sections, x).T


def sections_span_fiber(node: SheafNode, x: PointP, sections: GradedMatrix | None = None) -> bool:
    """True iff the global sections of the node span its fiber at x."""
    if sections is None and h0_dim(node, 0):
        sections = section_matrix(node)
    fiber = fiber_model(node, x)
    p = node.p
    values = _section_values(sections, x, len(node.ambient))
    base = rank(fiber.s, p) if fiber.s.shape[0] else 0
    full = rank(fiber.z, p) if fiber.z.shape[0] else 0
    spanned = rank(np.vstack([fiber.s, values]), p) if fiber.s.shape[0] + values.shape[0] else 0
    return spanned - base == full - base


def is_globally_generated(node: SheafNode, trials: int = 500, seed: int = 0,
                          points: Sequence[PointP] = (), lines: Sequence[LineParam] = ()) -> GGVerdict:
    if not has_model(node):
        raise GeometryError("global generation needs a section model of the node")
    h0 = h0_dim(node, 0)

    for line in lines:
        try:
            degrees = splitting_type_on_line(node, line)
        except SplittingError as e:
            logger.info("no splitting type on %s: %s", line.format(), e)
            continue
        if min(degrees) < 0:
            logger.info("negative summand on %s: %s", line.format(), degrees)
            return GGVerdict(False, trials, seed, h0, witness_line=line, splitting=tuple(degrees))

    sections = section_matrix(node) if h0 else None
    candidates = list(points) + random_points(seed, node.nvars, node.p, trials)
    for x in candidates:
        if not sections_span_fiber(node, x, sections):
            logger.info("sections do not span the fiber at %s", x.format())
            return GGVerdict(False, trials, seed, h0, witness_point=x)
    logger.debug("generated at %d points with %d sections", len(candidates), h0)
    return GGVerdict(True, trials, seed, h0)
