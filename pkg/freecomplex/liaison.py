import logging

from contracts import ComplexError, LiftNotFound
from exactfield.forms import Form
from exactfield.gradedmatrix import GradedMatrix, compose, solve_graded
from freecomplex.complex import ChainMap, FreeComplex, cone, dual, koszul, shift, strip, trim, twist

logger = logging.getLogger(__name__)


def _check_resolution_shape(res: FreeComplex) -> None:
    if res.lo != 0 or res.hi != 2 or res.term(0) != (0,):
        raise ComplexError("liaison expects 0 -> L -> F -> O with O at position 0")


def koszul_lift(res: FreeComplex, a: Form, b: Form) -> ChainMap:
    """Comparison map from the Koszul complex of (a, b) to res, lifted degree by degree."""
    _check_resolution_shape(res)
    k = koszul([a, b])
    eps, phi = res.diff(1), res.diff(2)

    alpha0 = GradedMatrix.identity((0,), res.nvars, res.p)
    alpha1 = solve_graded(eps, k.diff(1))
    if alpha1 is None:
        raise LiftNotFound(f"{a} and {b} do not lie in the ideal presented by the resolution")
    alpha2 = solve_graded(phi, compose(alpha1, k.diff(2)))
    if alpha2 is None:
        raise LiftNotFound("no second lift: the relation of the Koszul complex does not lift to the syzygies")
    return ChainMap(k, res, {0: alpha0, 1: alpha1, 2: alpha2})


def ferrand_liaison(res: FreeComplex, a: Form, b: Form) -> FreeComplex:
    """Resolution 0 -> F^v(-a-b) -> O(-a) + O(-b) + L^v(-a-b) -> O of the residual scheme."""
    lift = koszul_lift(res, a, b)
    total = a.degree + b.degree
    linked = trim(twist(dual(cone(lift)), -total))
    linked = strip(linked)
    linked = shift(linked, -linked.lo)
    logger.debug("linked resolution terms %s", linked.terms)
    return linked
