"""Exact rank of sparse integer matrices by fraction-free row elimination."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

SparseRow = dict[int, int]


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _peel(rows: list[SparseRow]) -> tuple[int, list[SparseRow]]:
    """Strip rows and columns with a single nonzero entry.

    Such an entry is always a pivot, so each strip adds one to the rank.
    """
    rows = [dict(r) for r in rows if r]
    alive = set(range(len(rows)))
    by_col: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for c in row:
            by_col.setdefault(c, set()).add(i)
    peeled = 0
    queue = [("r", i) for i in alive if len(rows[i]) == 1] + [("c", c) for c, s in by_col.items() if len(s) == 1]
    while queue:
        kind, x = queue.pop()
        if kind == "r":
            if x not in alive or len(rows[x]) != 1:
                continue
            (c,) = rows[x]
        else:
            if len(by_col.get(x, ())) != 1:
                continue
            c = x
            (x,) = by_col[c]
        # row x is the pivot row for column c: drop both
        peeled += 1
        alive.discard(x)
        for col in rows[x]:
            holders = by_col[col]
            holders.discard(x)
            if len(holders) == 1:
                queue.append(("c", col))
        for i in list(by_col.pop(c, ())):
            if i == x:
                continue
            del rows[i][c]
            if len(rows[i]) == 1:
                queue.append(("r", i))
            elif not rows[i]:
                alive.discard(i)
    return peeled, [rows[i] for i in sorted(alive) if rows[i]]


def rank(rows: Iterable[Mapping[int, int]]) -> int:
    """Rank over the rationals of a matrix given as sparse integer rows.

    Singleton rows and columns are peeled first.  The rest is reduced
    against accepted pivot rows by ``row <- a*row - b*pivot`` and kept
    primitive, so entries stay small and no fractions appear.
    """
    r, rest = _peel([{c: v for c, v in row.items() if v} for row in rows])
    pivots: dict[int, SparseRow] = {}
    for source in rest:
        row = {c: v for c, v in source.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                row = _primitive(row)
                if row[col] < 0:
                    row = {c: -v for c, v in row.items()}
                pivots[col] = row
                r += 1
                break
            a, b = piv[col], row[col]
            if a != 1:
                g = gcd(a, b)
                a, b = a // g, b // g
                if a != 1:
                    row = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                w = row.get(c, 0) - b * v
                if w:
                    row[c] = w
                else:
                    del row[c]
            if a != 1 and row:
                row = _primitive(row)
    return r


def multiply(left: list[SparseRow], right: list[SparseRow]) -> list[SparseRow]:
    """Row-vector convention product: (x * left) * right."""
    out = []
    for row in left:
        acc: SparseRow = {}
        for mid, v in row.items():
            for c, w in right[mid].items():
                acc[c] = acc.get(c, 0) + v * w
        out.append({c: v for c, v in acc.items() if v})
    return out
