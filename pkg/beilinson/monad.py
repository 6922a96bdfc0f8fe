"""Shapes of Beilinson monads read off cohomology tables.

For a sheaf F on P^n the monad has C^p = sum_{j >= p} H^j(F(p-j)) (x) Omega^{j-p}(j-p),
so every term comes from a twist in [-n, 0]. Only term multiplicities are
computed here; the differentials are not.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from math import comb
from pathlib import Path

from contracts import BeilinsonError, NodeError
from sheafcoh.cohomology import Cell, CohTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonadShape:
    """terms[p] lists (multiplicity, k) meaning Omega^k(k)^multiplicity at position p."""
    n: int
    terms: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    @property
    def positions(self) -> list[int]:
        return [p for p, _ in self.terms]

    def at(self, p: int) -> tuple[tuple[int, int], ...]:
        return dict(self.terms).get(p, ())

    @property
    def is_empty(self) -> bool:
        return not self.terms

    def term_rank(self, p: int) -> int:
        return sum(mult * comb(self.n, k) for mult, k in self.at(p))

    @property
    def rank(self) -> int:
        """Rank of the sheaf the monad computes."""
        return sum((-1) ** p * self.term_rank(p) for p in self.positions)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": {str(p): [{"omega": k, "multiplicity": mult} for mult, k in parts] for p, parts in self.terms},
        }

    def format(self) -> str:
        if self.is_empty:
            return "0"
        return " -> ".join(format_term(self.at(p)) for p in self.positions)


def format_omega(k: int, mult: int) -> str:
    base = "O" if k == 0 else f"Omega^{k}({k})"
    return base if mult == 1 else f"{base}^{mult}"


def format_term(parts) -> str:
    return " + ".join(format_omega(k, mult) for mult, k in parts)


def beilinson_terms(table: CohTable, n: int | None = None) -> MonadShape:
    n = table.n if n is None else n
    if n != table.n:
        raise BeilinsonError(f"table lives on P^{table.n}, not P^{n}")
    out = []
    for p in range(-n, n + 1):
        parts = []
        for j in range(max(p, 0), min(n, p + n) + 1):
            l = p - j
            try:
                c = table.cell(j, l)
            except NodeError:
                raise BeilinsonError(f"the table has no h^{j} at twist {l}")
            if not c.is_exact:
                raise BeilinsonError(f"h^{j} at twist {l} is indeterminate in [{c.lo}, {c.hi}]")
            if c.lo:
                parts.append((c.lo, j - p))
        if parts:
            out.append((p, tuple(sorted(parts, key=lambda t: -t[1]))))
    shape = MonadShape(n, tuple(out))
    logger.debug("monad shape %s", shape.format())
    return shape


def omega_restriction(p: int, n: int, n_sub: int) -> list[tuple[int, int]]:
    """Omega^p(p) of P^n restricted to a linear P^{n_sub}, as (i, multiplicity) of Omega^i(i)."""
    if not 0 <= p <= n:
        raise BeilinsonError(f"Omega^{p} does not live on P^{n}")
    if not 0 <= n_sub < n:
        raise BeilinsonError(f"P^{n_sub} is not a proper linear subspace of P^{n}")
    codim = n - n_sub
    return [(i, comb(codim, p - i)) for i in range(min(p, n_sub), -1, -1) if 0 <= p - i <= codim]


# -------------------------
# Sparse tables
# -------------------------

def _cell_from_json(value) -> Cell:
    if isinstance(value, int):
        return Cell.exact(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value):
        return Cell(value[0], value[1])
    raise BeilinsonError(f"cannot read a cohomology cell from {value!r}")


def table_from_json(data: dict) -> CohTable:
    """Tables as written by CohTable.to_json, optionally sparse with a "default" for missing cells."""
    try:
        n = int(data["n"])
        window = tuple(int(v) for v in data.get("window", (-n, 0)))
        entries = data.get("h", {})
    except (KeyError, TypeError, ValueError) as e:
        raise BeilinsonError(f"malformed cohomology table: {e}")
    if len(window) != 2 or window[0] > window[1]:
        raise BeilinsonError(f"bad window {window}")
    default = data.get("default")
    cells = {}
    for i in range(n + 1):
        row = entries.get(str(i), {})
        for l in range(window[0], window[1] + 1):
            if str(l) in row:
                cells[(i, l)] = _cell_from_json(row[str(l)])
            elif default is not None:
                cells[(i, l)] = _cell_from_json(default)
    return CohTable(n, window, cells)


def load_table(path: str | Path) -> CohTable:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise BeilinsonError(f"cannot read {path}: {e}")
    return table_from_json(data)
