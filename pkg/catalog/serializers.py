from catalog.repo import CatalogEntry
from utils.urls import entry_mini, entry_self_url


def entry_to_response(entry: CatalogEntry) -> dict:
    e = entry.expected
    out = {
        "id": entry.id,
        "n": entry.n,
        "window": list(entry.window) if entry.window else None,
        "construction": entry.construction,
        "expected": {
            "chern": e.chern.to_json() if e.chern else None,
            "cells": [
                {"i": c.i, "l": c.l, "h": c.h, "provenance": c.provenance, "anchor": c.anchor}
                for c in e.cells
            ],
            "gg": e.gg,
            "witness_lines": [[list(a), list(b)] for a, b in e.witness_lines],
            "pencil": e.pencil,
            "schwarzenberger": e.schwarzenberger,
        },
        "notes": entry.notes,
        "self": entry_self_url(entry.id),
    }
    return out


def entry_mini_response(entry: CatalogEntry) -> dict:
    out = entry_mini(entry.id)
    out["n"] = entry.n
    return out
