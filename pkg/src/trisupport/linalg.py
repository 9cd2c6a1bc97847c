"""Exact sparse linear algebra over the rationals.

Rows are dicts column -> integer (denominators are cleared on entry).
Elimination is fraction-free: new_row = pivot * row - factor * pivot_row,
followed by a gcd strip, so no rounding can ever occur and entries stay
moderate.  Pivots are chosen Markowitz-style (sparsest column, then sparsest
row) to limit fill-in; the choice is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

SparseRow = dict[int, int]


def row_from_fractions(entries: Mapping[int, Fraction]) -> SparseRow:
    """Clear denominators and strip the content of one row."""
    entries = {c: Fraction(v) for c, v in entries.items() if v != 0}
    if not entries:
        return {}
    lcm = 1
    for v in entries.values():
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    row = {c: int(v * lcm) for c, v in entries.items()}
    return _strip(row)


def _strip(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Echelon:
    """Sparse echelon form with recorded pivot columns."""

    def __init__(self, rows: Iterable[SparseRow], ncols: int):
        self.ncols = ncols
        self.pivot_rows: list[SparseRow] = []
        self.pivot_cols: list[int] = []
        self._reduce([dict(r) for r in rows if r])

    def _reduce(self, active: list[SparseRow]) -> None:
        # col -> set of active row ids currently hitting it
        col_rows: dict[int, set[int]] = {}
        rows: dict[int, SparseRow] = {i: r for i, r in enumerate(active)}
        for i, r in rows.items():
            for c in r:
                col_rows.setdefault(c, set()).add(i)
        while rows:
            pc = min(col_rows, key=lambda c: (len(col_rows[c]), c))
            cands = col_rows[pc]
            pi = min(cands, key=lambda i: (len(rows[i]), i))
            prow = rows.pop(pi)
            for c in prow:
                col_rows[c].discard(pi)
                if not col_rows[c]:
                    del col_rows[c]
            pv = prow[pc]
            for i in list(col_rows.get(pc, ())):
                r = rows[i]
                f = r[pc]
                new: SparseRow = {}
                for c, v in r.items():
                    w = v * pv - f * prow.get(c, 0)
                    if w:
                        new[c] = w
                for c in prow:
                    if c not in r:
                        w = -f * prow[c]
                        if w:
                            new[c] = w
                new = _strip(new)
                for c in r:
                    col_rows[c].discard(i)
                    if not col_rows[c]:
                        del col_rows[c]
                if new:
                    rows[i] = new
                    for c in new:
                        col_rows.setdefault(c, set()).add(i)
                else:
                    del rows[i]
            self.pivot_rows.append(prow)
            self.pivot_cols.append(pc)
        # pivot rows are kept in elimination order: the row chosen at step t
        # contains no pivot column of steps < t, so reverse-order substitution
        # only ever references already-solved pivots.

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def free_cols(self) -> list[int]:
        pivots = set(self.pivot_cols)
        return [c for c in range(self.ncols) if c not in pivots]

    def nullspace(self) -> list[list[Fraction]]:
        """One exact basis vector per free column, in ascending column order."""
        basis: list[list[Fraction]] = []
        for f in self.free_cols():
            vec = [Fraction(0)] * self.ncols
            vec[f] = Fraction(1)
            for r in range(len(self.pivot_cols) - 1, -1, -1):
                row = self.pivot_rows[r]
                pc = self.pivot_cols[r]
                s = Fraction(0)
                for c, v in row.items():
                    if c != pc:
                        s += v * vec[c]
                vec[pc] = -s / row[pc]
            basis.append(vec)
        return basis


def rank(rows: Iterable[SparseRow], ncols: int) -> int:
    return Echelon(rows, ncols).rank


def nullspace(rows: Iterable[SparseRow], ncols: int) -> list[list[Fraction]]:
    return Echelon(rows, ncols).nullspace()
