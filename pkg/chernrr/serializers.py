from chernrr.chern import ChernVector, p_chern
from chernrr.constraints import gg_constraints
from chernrr.riemannroch import rr_chi, schwarzenberger_ok
from contracts import ChernError


def chern_from_body(body: dict) -> ChernVector:
    try:
        n = int(body["n"])
        rank = None if body.get("rank") is None else int(body["rank"])
        c = [int(x) for x in body["c"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ChernError(f"malformed Chern vector: {e}")
    return ChernVector.of(n, rank, c)


def chern_to_response(cv: ChernVector, twists=range(-3, 1), h0: int | None = None) -> dict:
    out = {
        "chern": cv.to_json(),
        "p_chern": p_chern(cv, h0).to_json(),
        "gg_constraints": gg_constraints(cv),
    }
    if cv.rank is not None:
        out["chi"] = {str(l): rr_chi(cv, l) for l in twists}
    if cv.n == 4:
        ok, residue = schwarzenberger_ok(cv)
        out["schwarzenberger"] = {"ok": ok, "residue": residue}
    return out
