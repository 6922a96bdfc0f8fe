"""Command line entry point: `ggb <command>`.

Exit codes: 0 when the command succeeds or the tested property holds,
1 when a verification fails, 2 on malformed input.
"""
from __future__ import annotations

import json
import sys
from functools import wraps
from pathlib import Path
from typing import Callable

import click

from beilinson.exterior import ExtElement, contraction_splits
from beilinson.monad import beilinson_terms, load_table
from catalog.codec import encode_matrix, parse_construction, parse_matrix
from catalog.repo import get_entry, list_entries, load_catalog
from catalog.verify import verify_all, verify_file
from chernrr.chern import ChernVector, chern_of_node
from chernrr.riemannroch import rr_chi, schwarzenberger_ok
from chernrr.serializers import chern_to_response
from chernrr.surfaces import SurfaceInvariants, surface_bundle_data
from config import Settings, configure_logging, load_settings, parse_window
from contracts import GGBundlesError
from exactfield.forms import PointP, parse_form
from freecomplex.complex import FreeComplex, scheme_degree, verify_exact
from freecomplex.liaison import ferrand_liaison
from geomtests.cayley import cayley_bacharach_failures
from geomtests.globalgen import is_globally_generated
from geomtests.lines import LineParam, edge_incidences, splitting_type_on_line
from pencil24.classify import classify
from pencil24.pencil import linear_matrix
from pencil24.serializers import pencil_class_to_response
from sheafcoh.cohomology import coh_table, hypotheses_on_dual
from sheafcoh.nodes import SheafNode
from spectra.serializers import spectrum_to_response
from spectra.spectrum import enumerate_spectra

EXIT_FAILED = 1
EXIT_INPUT = 2


# -------------------------
# Plumbing
# -------------------------

def domain_errors_exit_2(fn: Callable):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GGBundlesError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT)
    return wrapper


def emit(ctx: click.Context, payload, text: str) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text)


def settings_of(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


def parse_ints(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part != ""]
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got {text!r}")


def parse_point(text: str, p: int) -> PointP:
    return PointP.of(parse_ints(text), p)


def parse_line(text: str, p: int) -> LineParam:
    if ";" not in text:
        raise click.BadParameter(f"a line is two points separated by ';', got {text!r}")
    a, b = text.split(";", 1)
    return LineParam.through(parse_ints(a), parse_ints(b), p)


def _yes_no(value: bool | None) -> str:
    return "not checked" if value is None else ("yes" if value else "no")


def read_json_arg(text: str):
    """Inline JSON, or @path for a file."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise click.BadParameter(f"invalid JSON: {e}")


def node_options(fn: Callable):
    fn = click.option("--entry", "entry_id", default=None, help="Take the construction of a catalog entry.")(fn)
    fn = click.option("--construction", default=None, help="Construction JSON, or @file.")(fn)
    fn = click.option("--n", "n", type=int, default=None, help="Dimension of the projective space.")(fn)
    return fn


def load_node(settings: Settings, n: int | None, construction: str | None,
              entry_id: str | None) -> tuple[SheafNode, tuple[int, int] | None]:
    window = settings.window
    if entry_id is not None:
        entry = get_entry(load_catalog(settings.catalog_path), entry_id)
        if entry is None:
            raise click.BadParameter(f"no catalog entry {entry_id!r}")
        n, data, window = entry.n, entry.construction, window or entry.window
    elif construction is not None and n is not None:
        data = read_json_arg(construction)
    else:
        raise click.UsageError("give --entry, or --n together with --construction")
    built = parse_construction(data, n, settings.prime)
    if built.node is None:
        raise click.UsageError("the construction is a pencil, not a sheaf")
    return built.node, window


# -------------------------
# Group
# -------------------------

@click.group()
@click.option("--prime", type=int, default=None, help="Characteristic of the base field.")
@click.option("--seed", type=int, default=None, help="Seed for sampled points.")
@click.option("--window", default=None, help="Twist window LO:HI.")
@click.option("--trials", type=int, default=None, help="Sample points for global generation.")
@click.option("--json", "as_json", is_flag=True, help="Machine readable output.")
@click.option("--log-level", default=None, help="Logging level.")
@click.pass_context
@domain_errors_exit_2
def ggb(ctx: click.Context, prime, seed, window, trials, as_json, log_level):
    settings = load_settings(
        prime=prime,
        seed=seed,
        trials=trials,
        window=parse_window(window),
        log_level=log_level.upper() if log_level else None,
    )
    configure_logging(settings)
    ctx.obj = {"settings": settings, "json": as_json}


# -------------------------
# Chern data
# -------------------------

@ggb.command()
@click.argument("c", nargs=-1, type=int)
@click.option("--n", "n", type=int, default=4, show_default=True)
@click.option("--rank", type=int, default=None)
@click.option("--h0", type=int, default=None, help="h^0(E), for the rank of P(E).")
@click.option("--surface", nargs=4, type=int, default=None, metavar="D PI Q PG",
              help="Bundle data for a surface in P^4 instead of C.")
@click.option("--h1-oy1", type=int, default=None, help="h^1(O_Y(1)) for the surface consistency check.")
@click.pass_context
@domain_errors_exit_2
def chern(ctx, c, n, rank, h0, surface, h1_oy1):
    """Chern data of a vector c_1 .. c_n: P(E), chi, gg constraints."""
    if surface:
        data = surface_bundle_data(SurfaceInvariants(*surface), h1_oy1)
        cv = data.chern()
        payload = {"surface": data.to_json(), **chern_to_response(cv)}
    else:
        if not c:
            raise click.UsageError("give the Chern classes, or --surface")
        cv = ChernVector.of(n, rank, c)
        payload = chern_to_response(cv, h0=h0)
    lines = [f"chern {cv.format()}", f"P(E) {ChernVector.of(**payload['p_chern']).format()}"]
    if payload["gg_constraints"]:
        lines.append("violates " + "; ".join(payload["gg_constraints"]))
    if "schwarzenberger" in payload:
        s = payload["schwarzenberger"]
        lines.append(f"schwarzenberger {'ok' if s['ok'] else 'fails'} (residue {s['residue']})")
    if "surface" in payload:
        lines.insert(0, f"surface bundle rank {data.rank}, consistent: {data.consistent}")
    emit(ctx, payload, "\n".join(lines))


@ggb.command()
@click.argument("c", nargs=-1, type=int, required=True)
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--rank", type=int, required=True)
@click.pass_context
@domain_errors_exit_2
def rr(ctx, c, n, rank):
    """Euler characteristics chi(E(l)) over the window."""
    cv = ChernVector.of(n, rank, c)
    lo, hi = settings_of(ctx).window or (-n - 1, 1)
    chis = {l: rr_chi(cv, l) for l in range(lo, hi + 1)}
    payload = {"chern": cv.to_json(), "chi": {str(l): v for l, v in chis.items()}}
    emit(ctx, payload, "\n".join(f"chi(E({l})) = {v}" for l, v in chis.items()))


@ggb.command()
@click.argument("c", type=int)
@click.option("--kmin", type=int, default=None)
@click.option("--kmax", type=int, default=None)
@click.option("--spectrum2", is_flag=True)
@click.option("--symmetric", is_flag=True)
@click.option("--c3-nonneg", is_flag=True)
@click.option("--exclude-ge-1", is_flag=True)
@click.pass_context
@domain_errors_exit_2
def spectra(ctx, c, kmin, kmax, spectrum2, symmetric, c3_nonneg, exclude_ge_1):
    """Admissible spectra with c entries."""
    kmin = -c if kmin is None else kmin
    kmax = c if kmax is None else kmax
    found = enumerate_spectra(c, kmin, kmax, spectrum2=spectrum2, symmetric=symmetric,
                              c3_nonneg=c3_nonneg, exclude_ge_1=exclude_ge_1)
    payload = {"c": c, "range": [kmin, kmax], "Spectra": [spectrum_to_response(s) for s in found]}
    text = "\n".join(f"({', '.join(map(str, s.k))})  c3 = {s.c3}" for s in found) or "no admissible spectra"
    emit(ctx, payload, text)


# -------------------------
# Pencils
# -------------------------

@ggb.command("classify-pencil")
@click.argument("top")
@click.argument("bottom")
@click.option("--names", default=None, help="Comma separated variable names.")
@click.pass_context
@domain_errors_exit_2
def classify_pencil(ctx, top, bottom, names):
    """Classify the 2 x 4 matrix with rows TOP and BOTTOM (comma separated linear forms)."""
    rows = [[f.strip() for f in row.split(",")] for row in (top, bottom)]
    names = names.split(",") if names else None
    result = classify(linear_matrix(rows, settings_of(ctx).prime, names))
    payload = pencil_class_to_response(result)
    lines = [result.tag]
    if result.degeneracy is not None:
        lines.append(result.degeneracy.description)
    if result.canonical is not None:
        lines.append("canonical " + json.dumps(result.canonical.format()))
    emit(ctx, payload, "\n".join(lines))


# -------------------------
# Sheaves
# -------------------------

@ggb.command()
@node_options
@click.pass_context
@domain_errors_exit_2
def coh(ctx, n, construction, entry_id):
    """Cohomology table h^i(E(l)) over the window."""
    settings = settings_of(ctx)
    node, window = load_node(settings, n, construction, entry_id)
    table = coh_table(node, window, seed=settings.seed)
    cv = chern_of_node(node)
    dual = hypotheses_on_dual(node)
    payload = {"chern": cv.to_json(), **table.to_json(), "dual": dual}
    width = max(len(str(c.to_json())) for c in table.cells.values()) + 1
    lines = [f"chern {cv.format()}", "l".rjust(4) + "".join(str(l).rjust(width) for l in table.twists)]
    for i in range(table.n, -1, -1):
        lines.append(f"h{i}".rjust(4) + "".join(str(table.cell(i, l).to_json()).rjust(width) for l in table.twists))
    lines.append("H^0(E^v) = 0: " + _yes_no(dual["h0_dual_vanishes"]) + ", H^1(E^v) = 0: " + _yes_no(dual["h1_dual_vanishes"]))
    emit(ctx, payload, "\n".join(lines))


@ggb.command()
@node_options
@click.option("--line", "lines", multiple=True, help="Candidate witness line 'a0,..;b0,..'.")
@click.pass_context
@domain_errors_exit_2
def gg(ctx, n, construction, entry_id, lines):
    """Global generation: sampled positive verdict or an exact witness."""
    settings = settings_of(ctx)
    node, _ = load_node(settings, n, construction, entry_id)
    candidates = [parse_line(text, settings.prime) for text in lines]
    verdict = is_globally_generated(node, settings.trials, settings.seed, lines=candidates)
    text = f"{verdict.tag} (h0 = {verdict.h0}, {verdict.trials} trials, seed {verdict.seed})"
    if verdict.witness_line is not None:
        text += f"\nsplits as {verdict.splitting} on {verdict.witness_line.format()}"
    if verdict.witness_point is not None:
        text += f"\nsections do not span the fiber at {verdict.witness_point.format()}"
    emit(ctx, verdict.to_json(), text)
    if not verdict.generated:
        sys.exit(EXIT_FAILED)


@ggb.command()
@node_options
@click.option("--line", "line_text", required=True, help="Line 'a0,..;b0,..'.")
@click.pass_context
@domain_errors_exit_2
def splits(ctx, n, construction, entry_id, line_text):
    """Splitting type of E on a line."""
    settings = settings_of(ctx)
    node, _ = load_node(settings, n, construction, entry_id)
    line = parse_line(line_text, settings.prime)
    degrees = splitting_type_on_line(node, line)
    emit(ctx, {"line": line.format(), "splitting": degrees},
         " + ".join(f"O({a})" for a in degrees) + f" on {line.format()}")


# -------------------------
# Points and lines
# -------------------------

@ggb.command()
@click.argument("points", nargs=-1, required=True)
@click.option("--degree", "d", type=int, required=True, help="Degree of the forms tested.")
@click.pass_context
@domain_errors_exit_2
def cb(ctx, points, d):
    """Cayley-Bacharach for POINTS (each comma separated coordinates) with respect to degree d."""
    p = settings_of(ctx).prime
    z = [parse_point(text, p) for text in points]
    failures = cayley_bacharach_failures(z, d)
    payload = {"degree": d, "holds": not failures, "failures": [x.format() for x in failures]}
    text = "holds" if not failures else "fails at " + ", ".join(x.format() for x in failures)
    emit(ctx, payload, text)
    if failures:
        sys.exit(EXIT_FAILED)


@ggb.command()
@click.argument("points", nargs=4)
@click.option("--line", "line_text", required=True, help="Line 'a0,..;b0,..'.")
@click.pass_context
@domain_errors_exit_2
def edges(ctx, points, line_text):
    """Whether a line of P^3 avoids the six edges of the tetrahedron on four POINTS."""
    p = settings_of(ctx).prime
    z = [parse_point(text, p) for text in points]
    met = edge_incidences(parse_line(line_text, p), z)
    payload = {"avoids": not met, "edges": [list(e) for e in met]}
    emit(ctx, payload, "avoids every edge" if not met else "meets edges " + ", ".join(f"{i}{j}" for i, j in met))
    if met:
        sys.exit(EXIT_FAILED)


# -------------------------
# Beilinson and liaison
# -------------------------

@ggb.command()
@click.argument("table", type=click.Path(exists=True, dir_okay=False), required=False)
@click.option("--omega", "terms", multiple=True,
              help="Term 'i,j[:c]' of an element of Lambda^2 of a 6-space; runs the contraction test.")
@click.pass_context
@domain_errors_exit_2
def beilinson(ctx, table, terms):
    """Beilinson monad shape of a cohomology TABLE, or the contraction test for --omega."""
    p = settings_of(ctx).prime
    if terms:
        coeffs = {}
        for term in terms:
            idx, _, c = term.partition(":")
            coeffs[tuple(parse_ints(idx))] = int(c or 1)
        verdict = contraction_splits(ExtElement.from_dict(6, 2, coeffs, p))
        emit(ctx, verdict.to_json(), f"skew rank {verdict.skew_rank}: {verdict.description}")
        return
    if table is None:
        raise click.UsageError("give a table file or --omega terms")
    shape = beilinson_terms(load_table(table))
    emit(ctx, shape.to_json(), f"{shape.format()}   (rank {shape.rank})")


@ggb.command()
@click.argument("source", metavar="JSON")
@click.pass_context
@domain_errors_exit_2
def liaison(ctx, source):
    """Link a curve by a complete intersection of forms a, b.

    JSON (inline or @file) is {"n": 3, "resolution": [d1, d2], "a": form, "b": form}
    with d1 : F -> O and d2 : L -> F as catalog matrices.
    """
    p = settings_of(ctx).prime
    data = read_json_arg(source)
    if not isinstance(data, dict) or not {"n", "resolution", "a", "b"} <= data.keys():
        raise click.BadParameter("liaison input needs n, resolution, a and b")
    nvars = int(data["n"]) + 1
    res = FreeComplex.from_diffs([parse_matrix(m, nvars, p) for m in data["resolution"]])
    a, b = (parse_form(data[k], nvars, p) for k in ("a", "b"))
    linked = ferrand_liaison(res, a, b)
    exact = verify_exact(linked).is_exact
    degree, linked_degree = scheme_degree(res), scheme_degree(linked)
    payload = {
        "terms": {str(k): list(linked.term(k)) for k in linked.positions},
        "diffs": {str(k): encode_matrix(linked.diff(k)) for k in range(linked.lo + 1, linked.hi + 1)},
        "exact": exact,
        "degree": degree,
        "linked_degree": linked_degree,
        "complete_intersection_degree": a.degree * b.degree,
    }
    text = "\n".join([
        " <- ".join(str(list(linked.term(k))) for k in linked.positions),
        f"exact: {exact}",
        f"deg Y + deg Y' = {degree} + {linked_degree} (a*b = {a.degree * b.degree})",
    ])
    emit(ctx, payload, text)
    if not exact or degree + linked_degree != a.degree * b.degree:
        sys.exit(EXIT_FAILED)


# -------------------------
# Catalog
# -------------------------

@ggb.group()
def catalog():
    """The catalog of classified bundles."""


@catalog.command("list")
@click.option("--n", "n", type=int, default=None)
@click.pass_context
@domain_errors_exit_2
def catalog_list(ctx, n):
    entries = list_entries(load_catalog(settings_of(ctx).catalog_path), n=n)
    payload = [{"id": e.id, "n": e.n, "notes": e.notes} for e in entries]
    emit(ctx, payload, "\n".join(f"{e.id:<40} P^{e.n}  {e.notes}" for e in entries))


@catalog.command("verify")
@click.option("--entry", "entry_ids", multiple=True, help="Verify only these entries.")
@click.option("--catalog", "path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_context
@domain_errors_exit_2
def catalog_verify(ctx, entry_ids, path):
    """Recompute every entry and compare with its expectations."""
    settings = settings_of(ctx)
    path = path or settings.catalog_path
    if entry_ids:
        entries = [e for e in load_catalog(path) if e.id in entry_ids]
        missing = set(entry_ids) - {e.id for e in entries}
        if missing:
            raise click.BadParameter(f"no catalog entries {', '.join(sorted(missing))}")
        report = verify_all(entries, settings)
    else:
        report = verify_file(path, settings)
    emit(ctx, report.to_json(), report.format())
    if not report.passed:
        sys.exit(EXIT_FAILED)


def main() -> None:
    ggb(prog_name="ggb")


if __name__ == "__main__":
    main()
