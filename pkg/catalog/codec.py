"""JSON grammar for sheaf constructions.

Nodes are tagged objects:

    {"sum": [a, ...]}                              line-bundle sum
    {"ker": {"matrix": M}}                         kernel of an epimorphism of line sums
    {"ker": {"matrix": M, "into": node}}           kernel of a line sum onto a node
    {"ker": {"matrix": M, "from": node}}           kernel of a node onto a line sum
    {"quot": {"matrix": M, "of": node}}            quotient of a node by a line sum
    {"twist": {"node": node, "by": t}}
    {"direct": [node, ...]}
    {"dual": node}
    {"ptransform": node}                           P(E) of a globally generated node

A whole construction may also be {"pencil": rows}, a 2 x 4 matrix of linear
forms on P^3. Matrices are {"src": [...], "tgt": [...], "rows": [[...]]} or
{"koszul": {"forms": [...], "diff": k, "twist": t}}.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from contracts import CatalogError
from exactfield.forms import parse_form
from exactfield.gradedmatrix import GradedMatrix
from freecomplex.complex import koszul
from pencil24.pencil import linear_matrix
from sheafcoh.cohomology import dual_node, p_bundle
from sheafcoh.nodes import Dual, KerEpi, KerFrom, KerInto, LineSum, SheafNode, SubQuot, Sum, Twist

NODE_TAGS = ("sum", "ker", "quot", "twist", "direct", "dual", "ptransform")


@dataclass(frozen=True)
class Construction:
    node: SheafNode | None = None
    pencil: GradedMatrix | None = None


def _single_tag(data: Any, what: str) -> tuple[str, Any]:
    if not isinstance(data, dict) or len(data) != 1:
        raise CatalogError(f"{what} must be an object with exactly one tag, got {data!r}")
    return next(iter(data.items()))


def _field(obj: Any, key: str, what: str):
    if not isinstance(obj, dict) or key not in obj:
        raise CatalogError(f"{what} needs a {key!r} field")
    return obj[key]


# -------------------------
# Matrices
# -------------------------

def parse_matrix(data: Any, nvars: int, p: int) -> GradedMatrix:
    if isinstance(data, dict) and "koszul" in data:
        kz = data["koszul"]
        forms = [parse_form(f, nvars, p) for f in _field(kz, "forms", "koszul")]
        k = int(_field(kz, "diff", "koszul"))
        complex_ = koszul(forms, int(kz.get("twist", 0)))
        if not 1 <= k <= len(forms):
            raise CatalogError(f"koszul complex of {len(forms)} forms has no differential d_{k}")
        return complex_.diff(k)
    src = _field(data, "src", "matrix")
    tgt = _field(data, "tgt", "matrix")
    rows = _field(data, "rows", "matrix")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise CatalogError("matrix rows must be a list of lists")
    return GradedMatrix.of(rows, src, tgt, nvars, p, data.get("names"))


def encode_matrix(m: GradedMatrix) -> dict:
    return {"src": list(m.src), "tgt": list(m.tgt), "rows": m.format()}


# -------------------------
# Nodes
# -------------------------

def parse_node(data: Any, nvars: int, p: int) -> SheafNode:
    tag, body = _single_tag(data, "node")
    if tag == "sum":
        if not isinstance(body, list) or not all(isinstance(a, int) for a in body):
            raise CatalogError("sum takes a list of integer twists")
        return LineSum.of(body, nvars, p)
    if tag == "ker":
        m = parse_matrix(_field(body, "matrix", "ker"), nvars, p)
        if "into" in body:
            return KerInto(m, parse_node(body["into"], nvars, p))
        if "from" in body:
            return KerFrom(parse_node(body["from"], nvars, p), m)
        return KerEpi(m)
    if tag == "quot":
        m = parse_matrix(_field(body, "matrix", "quot"), nvars, p)
        return SubQuot(m, parse_node(_field(body, "of", "quot"), nvars, p))
    if tag == "twist":
        return Twist(parse_node(_field(body, "node", "twist"), nvars, p), int(_field(body, "by", "twist")))
    if tag == "direct":
        if not isinstance(body, list):
            raise CatalogError("direct takes a list of nodes")
        return Sum(tuple(parse_node(part, nvars, p) for part in body))
    if tag == "dual":
        inner = parse_node(body, nvars, p)
        return dual_node(inner) or Dual(inner)
    if tag == "ptransform":
        return p_bundle(parse_node(body, nvars, p))
    raise CatalogError(f"unknown node tag {tag!r}; expected one of {', '.join(NODE_TAGS)}")


def encode_node(node: SheafNode) -> dict:
    if isinstance(node, LineSum):
        return {"sum": list(node.twists)}
    if isinstance(node, KerEpi):
        return {"ker": {"matrix": encode_matrix(node.matrix)}}
    if isinstance(node, KerInto):
        return {"ker": {"matrix": encode_matrix(node.matrix), "into": encode_node(node.target)}}
    if isinstance(node, KerFrom):
        return {"ker": {"matrix": encode_matrix(node.matrix), "from": encode_node(node.source)}}
    if isinstance(node, SubQuot):
        return {"quot": {"matrix": encode_matrix(node.matrix), "of": encode_node(node.target)}}
    if isinstance(node, Twist):
        return {"twist": {"node": encode_node(node.node), "by": node.by}}
    if isinstance(node, Sum):
        return {"direct": [encode_node(part) for part in node.parts]}
    if isinstance(node, Dual):
        return {"dual": encode_node(node.node)}
    raise CatalogError(f"cannot encode {node!r}")


def parse_construction(data: Any, n: int, p: int) -> Construction:
    nvars = n + 1
    tag, body = _single_tag(data, "construction")
    if tag == "pencil":
        if n != 3:
            raise CatalogError("pencil constructions live on P^3")
        return Construction(pencil=linear_matrix(body, p))
    return Construction(node=parse_node(data, nvars, p))
