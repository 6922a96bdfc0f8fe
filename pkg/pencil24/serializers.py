from exactfield.gradedmatrix import GradedMatrix
from pencil24.classify import PencilClass


def matrix_to_response(m: GradedMatrix | None) -> list[list[str]] | None:
    return None if m is None else m.format()


def pencil_class_to_response(pc: PencilClass) -> dict:
    out = {
        "tag": pc.tag,
        "case": pc.case,
        "partition": list(pc.partition) if pc.partition else None,
        "m": pc.m,
        "syzygy_degree": pc.syzygy_degree,
        "det": None if pc.det is None else pc.det.format(["T0", "T1"]),
        "canonical": matrix_to_response(pc.canonical),
    }
    d = pc.degeneracy
    if d is not None:
        out["degeneracy"] = {
            "description": d.description,
            "points": [{"point": x.format(), "multiplicity": mult} for x, mult in d.points],
            "equations": [f.format() for f in d.equations],
            "generators": [f.format() for f in d.generators],
        }
    return out
