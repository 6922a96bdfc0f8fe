"""The catalog file: a JSON object {"entries": [...]} kept in the order written."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from chernrr.chern import ChernVector
from contracts import CatalogError

logger = logging.getLogger(__name__)

GG_GENERATED = "generated"
GG_NOT_GENERATED = "not-generated"
GG_INSTANCE = "generated-for-this-instance"
GG_TAGS = (GG_GENERATED, GG_NOT_GENERATED, GG_INSTANCE)

PROVENANCE_TAGS = ("stated", "derived")


@dataclass(frozen=True)
class ExpectedCell:
    i: int
    l: int
    h: int
    provenance: str
    anchor: str


@dataclass(frozen=True)
class Expected:
    chern: ChernVector | None = None
    cells: tuple[ExpectedCell, ...] = ()
    gg: str | None = None
    witness_lines: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()
    pencil: str | None = None
    schwarzenberger: bool | None = None


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n: int
    construction: dict
    expected: Expected
    window: tuple[int, int] | None = None
    notes: str = ""
    raw: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def generated_expected(self) -> bool:
        return self.expected.gg in (GG_GENERATED, GG_INSTANCE)

    def to_json(self) -> dict:
        return self.raw


def _cell(data: Any, entry_id: str) -> ExpectedCell:
    try:
        cell = ExpectedCell(int(data["i"]), int(data["l"]), int(data["h"]), data["provenance"], data["anchor"])
    except (KeyError, TypeError, ValueError) as e:
        raise CatalogError(f"{entry_id}: malformed expected cell {data!r}: {e}")
    if cell.provenance not in PROVENANCE_TAGS:
        raise CatalogError(f"{entry_id}: provenance must be one of {PROVENANCE_TAGS}, got {cell.provenance!r}")
    if not isinstance(cell.anchor, str) or not cell.anchor.strip():
        raise CatalogError(f"{entry_id}: every expected cell needs an anchor")
    return cell


def _expected(data: Any, n: int, entry_id: str) -> Expected:
    if not isinstance(data, dict):
        raise CatalogError(f"{entry_id}: expected must be an object")
    chern = None
    if "chern" in data:
        c = data["chern"]
        try:
            chern = ChernVector.of(n, c.get("rank"), c["c"])
        except (KeyError, TypeError, AttributeError) as e:
            raise CatalogError(f"{entry_id}: malformed chern block: {e}")
    gg = data.get("gg")
    if gg is not None and gg not in GG_TAGS:
        raise CatalogError(f"{entry_id}: gg must be one of {GG_TAGS}, got {gg!r}")
    lines = tuple((tuple(a), tuple(b)) for a, b in data.get("witness_lines", []))
    if gg == GG_NOT_GENERATED and not lines:
        raise CatalogError(f"{entry_id}: a not-generated entry needs a witness line")
    return Expected(
        chern=chern,
        cells=tuple(_cell(c, entry_id) for c in data.get("cells", [])),
        gg=gg,
        witness_lines=lines,
        pencil=data.get("pencil"),
        schwarzenberger=data.get("schwarzenberger"),
    )


def entry_from_json(data: Any) -> CatalogEntry:
    if not isinstance(data, dict) or "id" not in data:
        raise CatalogError(f"catalog entry without an id: {data!r}")
    entry_id = str(data["id"])
    try:
        n = int(data["n"])
        construction = data["construction"]
    except (KeyError, TypeError, ValueError) as e:
        raise CatalogError(f"{entry_id}: missing or malformed field {e}")
    window = data.get("window")
    if window is not None:
        if not isinstance(window, list) or len(window) != 2 or window[0] > window[1]:
            raise CatalogError(f"{entry_id}: window must be [lo, hi]")
        window = (int(window[0]), int(window[1]))
    return CatalogEntry(
        id=entry_id,
        n=n,
        construction=construction,
        expected=_expected(data.get("expected", {}), n, entry_id),
        window=window,
        notes=data.get("notes", ""),
        raw=data,
    )


def read_raw(path: str | Path) -> list[dict]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise CatalogError(f"cannot read catalog {path}: {e}")
    except json.JSONDecodeError as e:
        raise CatalogError(f"catalog {path} is not valid JSON: {e}")
    entries = data.get("entries") if isinstance(data, dict) else None
    if not isinstance(entries, list):
        raise CatalogError(f"catalog {path} must be an object with an entries list")
    return entries


def load_catalog(path: str | Path) -> list[CatalogEntry]:
    entries = [entry_from_json(e) for e in read_raw(path)]
    ids = [e.id for e in entries]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise CatalogError(f"duplicate entry ids: {', '.join(duplicates)}")
    logger.debug("loaded %d catalog entries from %s", len(entries), path)
    return entries


def get_entry(entries: list[CatalogEntry], entry_id: str) -> CatalogEntry | None:
    return next((e for e in entries if e.id == entry_id), None)


def list_entries(entries: list[CatalogEntry], *, n: int | None = None, limit: int | None = None,
                 offset: int = 0) -> list[CatalogEntry]:
    selected = [e for e in entries if n is None or e.n == n]
    return selected[offset:] if limit is None else selected[offset:offset + limit]


def dumps_catalog(entries: list[dict]) -> str:
    return json.dumps({"entries": entries}, indent=2, ensure_ascii=False) + "\n"


def save_catalog(path: str | Path, entries: list[dict]) -> None:
    Path(path).write_text(dumps_catalog(entries), encoding="utf-8")
