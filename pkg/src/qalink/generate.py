"""Diagram generators: 2-strand torus links, braid closures, twist insertion."""

from __future__ import annotations

from typing import Sequence

from .diagram import LinkDiagram, PDError


def braid_closure(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; ``i`` is sigma_i, ``-i`` its inverse.

    In sigma_i the strand at position i+1 passes under the one at i.
    """
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    if any(g == 0 or abs(g) >= strands for g in word):
        raise PDError("braid generator out of range")
    current = list(range(1, strands + 1))
    fresh = strands + 1
    raw = []
    for g in word:
        i = abs(g) - 1
        x, y = current[i], current[i + 1]
        a, b = fresh, fresh + 1
        fresh += 2
        if g > 0:
            raw.append([y, b, a, x])
        else:
            raw.append([x, y, b, a])
        current[i], current[i + 1] = a, b
    close = {current[p]: p + 1 for p in range(strands)}
    raw = [[close.get(e, e) for e in cr] for cr in raw]
    touched = {abs(g) - 1 for g in word} | {abs(g) for g in word}
    loops = sum(1 for p in range(strands) if p not in touched)
    return LinkDiagram.from_raw(raw, loops, relabel=True)


def torus2(n: int) -> LinkDiagram:
    """Positive (2, n) torus link as the closure of sigma_1^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return braid_closure([1] * n, 2)


def twist(d: LinkDiagram, c: int, n: int, kind: str = "vertical") -> LinkDiagram:
    """Replace crossing ``c`` by n copies of itself chained into a twist.

    Vertical copies sit side by side so that their A-smoothings continue
    one another; horizontal copies are stacked so that their B-smoothings
    do.
    """
    if n < 1:
        raise ValueError("twist length n must be at least 1")
    if not 0 <= c < len(d.crossings):
        raise IndexError(f"unknown crossing id {c}")
    if kind not in ("vertical", "horizontal"):
        raise ValueError("kind must be 'vertical' or 'horizontal'")
    if n == 1:
        return d
    sw, se, ne, nw = d.crossings[c]
    fresh = max(e for cr in d.crossings for e in cr) + 1
    u = list(range(fresh, fresh + n - 1))
    v = list(range(fresh + n - 1, fresh + 2 * n - 2))
    chain = []
    for j in range(n):
        if kind == "vertical":
            left_s, left_n = (sw, nw) if j == 0 else (u[j - 1], v[j - 1])
            right_s, right_n = (se, ne) if j == n - 1 else (u[j], v[j])
            chain.append([left_s, right_s, right_n, left_n])
        else:
            low_w, low_e = (sw, se) if j == 0 else (u[j - 1], v[j - 1])
            up_w, up_e = (nw, ne) if j == n - 1 else (u[j], v[j])
            chain.append([low_w, low_e, up_e, up_w])
    raw = [list(cr) for k, cr in enumerate(d.crossings) if k != c]
    raw[c:c] = chain
    return LinkDiagram.from_raw(raw, d.free_loops, relabel=True)
