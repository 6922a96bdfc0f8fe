"""Re-verification of catalog entries against freshly computed invariants."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from catalog.codec import parse_construction
from catalog.repo import GG_NOT_GENERATED, CatalogEntry, entry_from_json, read_raw
from chernrr.chern import chern_of_node
from chernrr.constraints import gg_constraints
from chernrr.riemannroch import rr_chi, schwarzenberger_ok
from config import Settings
from contracts import GGBundlesError
from geomtests.globalgen import is_globally_generated
from geomtests.lines import LineParam
from pencil24.classify import classify
from sheafcoh.cohomology import CohTable, cell, coh_table, default_window, monotone_vanishing_ok
from sheafcoh.nodes import SheafNode
from utils.time_utils import now_rfc1123

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    expected: Any = None
    computed: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "expected": self.expected, "computed": self.computed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class EntryReport:
    id: str
    checks: list[CheckResult] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, expected=None, computed=None, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(ok), expected, computed, detail))

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [c.to_json() for c in self.checks],
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class VerifyReport:
    timestamp: str
    prime: int
    seed: int
    trials: int
    entries: list[EntryReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failed_ids(self) -> list[str]:
        return [e.id for e in self.entries if not e.passed]

    def to_json(self) -> dict:
        return {
            "timestamp": self.timestamp,
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "total": len(self.entries),
            "failed": self.failed_ids,
            "entries": [e.to_json() for e in self.entries],
        }

    def format(self) -> str:
        lines = [f"catalog verification at {self.timestamp} (p={self.prime}, seed={self.seed}, trials={self.trials})"]
        for e in self.entries:
            lines.append(f"{'PASS' if e.passed else 'FAIL'} {e.id} ({e.seconds:.2f}s)")
            if e.error is not None:
                lines.append(f"    error: {e.error}")
            for c in e.failures:
                lines.append(f"    {c.name}: expected {c.expected}, computed {c.computed} {c.detail}".rstrip())
        lines.append(f"{len(self.entries) - len(self.failed_ids)}/{len(self.entries)} entries passed")
        return "\n".join(lines)


# -------------------------
# Individual checks
# -------------------------

def _check_chern(report: EntryReport, entry: CatalogEntry, node: SheafNode):
    cv = chern_of_node(node)
    want = entry.expected.chern
    if want is not None:
        ok = want.c == cv.c and (want.rank is None or want.rank == cv.rank)
        report.add("chern", ok, want.format(), cv.format())
    return cv


def _lookup(table: CohTable, node: SheafNode, i: int, l: int):
    if table.window[0] <= l <= table.window[1]:
        return table.cell(i, l)
    return cell(node, i, l)


def _check_cells(report: EntryReport, entry: CatalogEntry, node: SheafNode, table: CohTable) -> None:
    for want in entry.expected.cells:
        got = _lookup(table, node, want.i, want.l)
        ok = got.lo <= want.h <= got.hi
        detail = f"[{want.provenance}: {want.anchor}]" + ("" if got.is_exact else " indeterminate")
        report.add(f"h{want.i}({want.l})", ok, want.h, got.to_json(), detail)


def _check_rr(report: EntryReport, cv, table: CohTable) -> None:
    bad = []
    for l in table.twists:
        if table.column_exact(l) and table.chi(l) != rr_chi(cv, l):
            bad.append({"twist": l, "table": table.chi(l), "rr": rr_chi(cv, l)})
    report.add("riemann-roch", not bad, [], bad)


def _check_schwarzenberger(report: EntryReport, entry: CatalogEntry, cv) -> None:
    ok, residue = schwarzenberger_ok(cv)
    want = True if entry.expected.schwarzenberger is None else entry.expected.schwarzenberger
    report.add("schwarzenberger", ok == want, want, ok, f"residue {residue}")


def _check_gg(report: EntryReport, entry: CatalogEntry, node: SheafNode, cv, settings: Settings) -> None:
    want = entry.expected.gg
    lines = [LineParam.through(a, b, node.p) for a, b in entry.expected.witness_lines]
    verdict = is_globally_generated(node, settings.trials, settings.seed, lines=lines)
    if want == GG_NOT_GENERATED:
        ok = not verdict.generated and verdict.witness_line is not None
        report.add("gg", ok, want, verdict.tag, verdict.witness_line.format() if verdict.witness_line else "")
        return
    report.add("gg", verdict.generated, want, verdict.tag, f"h0 = {verdict.h0}")
    violated = gg_constraints(cv)
    report.add("gg-constraints", not violated, [], violated)


def _check_h1_drop(report: EntryReport, table: CohTable) -> None:
    bad = []
    for l in table.twists:
        if l < -1 or l - 1 < table.window[0]:
            continue
        here, before = table.cell(1, l), table.cell(1, l - 1)
        if here.is_exact and before.is_exact and here.lo and here.lo > before.lo - 2:
            bad.append(l)
    report.add("h1-drop", not bad, [], bad)


# -------------------------
# Driver
# -------------------------

def _verify_node(report: EntryReport, entry: CatalogEntry, node: SheafNode, settings: Settings) -> None:
    cv = _check_chern(report, entry, node)
    window = entry.window or settings.window or default_window(entry.n)
    table = coh_table(node, window, seed=settings.seed)
    _check_cells(report, entry, node, table)
    _check_rr(report, cv, table)
    report.add("monotone-vanishing", monotone_vanishing_ok(table), True, monotone_vanishing_ok(table))
    if entry.n == 4:
        _check_schwarzenberger(report, entry, cv)
    if entry.expected.gg is not None:
        _check_gg(report, entry, node, cv, settings)
        if entry.n == 2 and entry.generated_expected:
            _check_h1_drop(report, table)


def verify_entry(entry: CatalogEntry, settings: Settings) -> EntryReport:
    report = EntryReport(entry.id)
    start = time.perf_counter()
    try:
        construction = parse_construction(entry.construction, entry.n, settings.prime)
        if construction.pencil is not None:
            got = classify(construction.pencil)
            report.add("pencil", got.tag == entry.expected.pencil, entry.expected.pencil, got.tag)
        else:
            _verify_node(report, entry, construction.node, settings)
    except GGBundlesError as e:
        report.error = f"{type(e).__name__}: {e}"
    report.seconds = time.perf_counter() - start

    logger.info("%s %s in %.2fs", entry.id, "passed" if report.passed else "FAILED", report.seconds)
    if report.error is not None:
        logger.warning("%s: %s", entry.id, report.error)
    for c in report.failures:
        logger.warning("%s: %s expected %s, computed %s", entry.id, c.name, c.expected, c.computed)
    return report


def verify_all(entries: Iterable[CatalogEntry | dict], settings: Settings) -> VerifyReport:
    """Entries may be parsed or raw JSON objects; a raw entry that does not parse fails on its own."""
    report = VerifyReport(now_rfc1123(), settings.prime, settings.seed, settings.trials)
    for raw in entries:
        if isinstance(raw, CatalogEntry):
            report.entries.append(verify_entry(raw, settings))
            continue
        try:
            entry = entry_from_json(raw)
        except GGBundlesError as e:
            entry_id = str(raw.get("id", "?")) if isinstance(raw, dict) else "?"
            logger.warning("%s: %s", entry_id, e)
            report.entries.append(EntryReport(entry_id, error=f"{type(e).__name__}: {e}"))
            continue
        report.entries.append(verify_entry(entry, settings))
    report.entries.sort(key=lambda e: e.id)
    return report


def verify_file(path: str | Path, settings: Settings) -> VerifyReport:
    return verify_all(read_raw(path), settings)
