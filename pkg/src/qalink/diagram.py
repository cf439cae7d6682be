"""Oriented planar link diagrams in PD notation.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting
at the incoming under-strand (Knot Atlas convention).  Slots 0 and 2 carry
the under-strand, slots 1 and 3 the over-strand.  Diagrams are stored
normalized so that the under-strand always runs from slot 0 to slot 2;
the direction of the over-strand is then exactly the crossing sign:
``+1`` when it runs from slot 3 to slot 1, ``-1`` from slot 1 to slot 3.

Crossingless unknotted components are kept as a plain count
(``free_loops``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Crossing = tuple[int, int, int, int]
Slot = tuple[int, int]

# Resolutions as pairings of crossing slots.  The A (0-) smoothing joins
# each under-slot to the next slot counterclockwise.
A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))
THROUGH_PAIRS = ((0, 2), (1, 3))


class PDError(ValueError):
    """Malformed or inconsistent planar diagram input."""


def _slot_map(crossings: Sequence[Sequence[int]]) -> dict[int, list[Slot]]:
    where: dict[int, list[Slot]] = {}
    for k, cr in enumerate(crossings):
        if len(cr) != 4:
            raise PDError(f"crossing {k} has {len(cr)} entries, expected 4")
        for p, e in enumerate(cr):
            where.setdefault(e, []).append((k, p))
    for e, places in where.items():
        if len(places) != 2:
            raise PDError(f"edge label {e} appears {len(places)} times, expected 2")
    return where


def _other(where: dict[int, list[Slot]], e: int, slot: Slot) -> Slot:
    a, b = where[e]
    return b if a == slot else a


def _trace(crossings, where) -> list[list[tuple[int, Slot, Slot]]]:
    """Closed strands as lists of (edge, tail slot, head slot).

    Each strand is walked from its smallest edge, leaving through the
    edge's first slot; the direction is arbitrary at this point.
    """
    seen: set[int] = set()
    strands = []
    for start in sorted(where):
        if start in seen:
            continue
        tail, head = where[start]
        strand = []
        e = start
        while True:
            strand.append((e, tail, head))
            seen.add(e)
            k, p = head
            tail = (k, (p + 2) % 4)
            e = crossings[k][tail[1]]
            head = _other(where, e, tail)
            if e == start and tail == strand[0][1]:
                break
            if len(strand) > 2 * len(where) + 2:
                raise PDError("strand traversal does not close up")
        strands.append(strand)
    return strands


def _orientation_flags(crossings, reverse: Iterable[int] = ()) -> list[list[bool]]:
    """Per-slot incoming flags inferred from the PD convention.

    A strand that passes under somewhere follows the "slot 0 is incoming"
    rule when all its under-passages agree; otherwise (or when it only
    passes over) the strand's smallest edge is followed toward its smaller
    neighbour.  Strands containing an edge from ``reverse`` are flipped.
    """
    where = _slot_map(crossings)
    reverse = set(reverse)
    unknown = reverse - set(where)
    if unknown:
        raise PDError(f"orientation override names unknown edges {sorted(unknown)}")
    flags = [[False] * 4 for _ in crossings]
    for strand in _trace(crossings, where):
        votes = {head[1] for _, _, head in strand if head[1] % 2 == 0}
        if votes == {0}:
            flip = False
        elif votes == {2}:
            flip = True
        else:
            edges = [e for e, _, _ in strand]
            i = edges.index(min(edges))
            nxt, prv = edges[(i + 1) % len(edges)], edges[i - 1]
            if nxt != prv:
                flip = nxt > prv
            else:
                _, tail, head = strand[i]
                flip = head > tail
        if any(e in reverse for e, _, _ in strand):
            flip = not flip
        for _, tail, head in strand:
            k, p = tail if flip else head
            flags[k][p] = True
    return flags


def _normalize(crossings, flags) -> tuple[tuple[Crossing, ...], tuple[int, ...]]:
    out, signs = [], []
    for k, (cr, fl) in enumerate(zip(crossings, flags)):
        cr, fl = tuple(cr), list(fl)
        if fl[0] == fl[2] or fl[1] == fl[3]:
            raise PDError(f"inconsistent orientation at crossing {k}")
        if fl[2]:
            cr = cr[2:] + cr[:2]
            fl = fl[2:] + fl[:2]
        out.append(cr)
        signs.append(1 if fl[3] else -1)
    return tuple(out), tuple(signs)


def _relabel(crossings: Sequence[Crossing], signs: Sequence[int]) -> tuple[Crossing, ...]:
    """Relabel edges 1..2n along the orientation, strand by strand."""
    if not crossings:
        return ()
    where = _slot_map(crossings)
    heads = _heads(signs)
    mapping: dict[int, int] = {}
    for start in sorted(where):
        if start in mapping:
            continue
        e = start
        while e not in mapping:
            mapping[e] = len(mapping) + 1
            head = next(s for s in where[e] if s in heads)
            k, p = head
            e = crossings[k][(p + 2) % 4]
    return tuple(tuple(mapping[e] for e in cr) for cr in crossings)


def _heads(signs: Sequence[int]) -> set[Slot]:
    heads = set()
    for k, s in enumerate(signs):
        heads.add((k, 0))
        heads.add((k, 3 if s > 0 else 1))
    return heads


def _union_find():
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    return parent, find


def splice(crossings: Sequence[Crossing], removals: dict[int, Sequence[tuple[int, int]]]):
    """Delete crossings, joining their slots in the given pairs.

    Returns ``(kept crossing indices, relabelled kept crossings, closed loops)``
    where closed loops are strands that lost all their crossings.
    """
    parent, find = _union_find()
    loops = 0
    for k, pairs in removals.items():
        cr = crossings[k]
        for p, q in pairs:
            a, b = find(cr[p]), find(cr[q])
            if a == b:
                loops += 1
            else:
                parent[a] = b
    kept = [k for k in range(len(crossings)) if k not in removals]
    new = tuple(tuple(find(e) for e in crossings[k]) for k in kept)
    return kept, new, loops


@dataclass(frozen=True)
class SmoothingResult:
    """Both resolutions of a diagram at one crossing.

    ``zero`` is the A-smoothing and ``one`` the B-smoothing.  Exactly one of
    them inherits the orientation (``oriented`` names which); the other has
    the strand through the lowest edge label reversed.  ``e`` counts the
    change in negative crossings of that re-oriented resolution against
    the remaining crossings of the source.
    """

    zero: "LinkDiagram"
    one: "LinkDiagram"
    e: int
    sign: int
    oriented: int
    crossing: int

    @property
    def disoriented(self) -> "LinkDiagram":
        return self.one if self.oriented == 0 else self.zero


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise PDError("one sign per crossing required")
        if self.free_loops < 0:
            raise PDError("free_loops must be non-negative")
        if any(s not in (1, -1) for s in self.signs):
            raise PDError("crossing signs must be +1 or -1")
        _slot_map(self.crossings)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_raw(cls, crossings: Iterable[Sequence[int]], free_loops: int = 0,
                 reverse: Iterable[int] = (), relabel: bool = False) -> "LinkDiagram":
        """Orient raw PD tuples by the inference rules and normalize them."""
        raw = [tuple(int(e) for e in cr) for cr in crossings]
        flags = _orientation_flags(raw, reverse)
        normed, signs = _normalize(raw, flags)
        if relabel:
            normed = _relabel(normed, signs)
        d = cls(normed, signs, free_loops)
        d._check_planar()
        return d

    @classmethod
    def _from_flags(cls, crossings, flags, free_loops) -> "LinkDiagram":
        normed, signs = _normalize(crossings, flags)
        return cls(_relabel(normed, signs), signs, free_loops)

    def _check_planar(self) -> None:
        for group in self.split_groups:
            faces = _faces([self.crossings[k] for k in group])
            if len(faces) != len(group) + 2:
                raise PDError("diagram is not planar (Euler characteristic check failed)")

    # -- basic data -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def slots(self) -> dict[int, list[Slot]]:
        return _slot_map(self.crossings)

    @cached_property
    def heads(self) -> frozenset[Slot]:
        return frozenset(_heads(self.signs))

    def edge_direction(self, e: int) -> tuple[Slot, Slot]:
        """(tail slot, head slot) of an edge."""
        a, b = self.slots[e]
        return (b, a) if a in self.heads else (a, b)

    @cached_property
    def _strands(self) -> list[list[int]]:
        out = []
        seen: set[int] = set()
        for start in sorted(self.slots):
            if start in seen:
                continue
            strand, e = [], start
            while e not in seen:
                seen.add(e)
                strand.append(e)
                k, p = self.edge_direction(e)[1]
                e = self.crossings[k][(p + 2) % 4]
            out.append(strand)
        return out

    def components(self) -> tuple[int, dict[int, int]]:
        """Component count (free loops included) and edge -> component index."""
        owner = {e: i for i, strand in enumerate(self._strands) for e in strand}
        return len(self._strands) + self.free_loops, owner

    @property
    def n_components(self) -> int:
        return len(self._strands) + self.free_loops

    @cached_property
    def split_groups(self) -> list[list[int]]:
        """Crossing indices grouped into connected pieces of the diagram."""
        parent, find = _union_find()
        for e, ((k1, _), (k2, _)) in self.slots.items():
            a, b = find(k1), find(k2)
            if a != b:
                parent[a] = b
        groups: dict[int, list[int]] = {}
        for k in range(len(self.crossings)):
            groups.setdefault(find(k), []).append(k)
        return sorted(groups.values())

    def crossing_counts(self) -> tuple[int, int, int]:
        """(negative count x, positive count y, writhe y - x)."""
        y = sum(1 for s in self.signs if s > 0)
        x = len(self.signs) - y
        return x, y, y - x

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def linking_matrix(self) -> list[list[int]]:
        count, owner = self.components()
        lk2 = [[0] * count for _ in range(count)]
        for cr, s in zip(self.crossings, self.signs):
            u, o = owner[cr[0]], owner[cr[1]]
            if u != o:
                lk2[u][o] += s
                lk2[o][u] += s
        for row in lk2:
            for m, v in enumerate(row):
                if v % 2:
                    raise PDError("odd signed crossing count between components")
                row[m] = v // 2
        return lk2

    # -- operations -------------------------------------------------------

    def mirror(self) -> "LinkDiagram":
        """Exchange over and under strands at every crossing."""
        crossings, flags = [], []
        for k, cr in enumerate(self.crossings):
            fl = [(k, p) in self.heads for p in range(4)]
            crossings.append(cr[1:] + cr[:1])
            flags.append(fl[1:] + fl[:1])
        normed, signs = _normalize(crossings, flags)
        return LinkDiagram(normed, signs, self.free_loops)

    def reverse(self, edges: Iterable[int]) -> "LinkDiagram":
        """Reverse the components containing any of ``edges``."""
        _, owner = self.components()
        comps = {owner[e] for e in edges}
        flags = []
        for k, cr in enumerate(self.crossings):
            flags.append([((k, p) in self.heads) != (owner[cr[p]] in comps) for p in range(4)])
        normed, signs = _normalize(self.crossings, flags)
        return LinkDiagram(normed, signs, self.free_loops)

    def _arc(self, k: int, p: int) -> tuple[list[int], int]:
        edges, cur = [], (k, p)
        while True:
            e = self.crossings[cur[0]][cur[1]]
            edges.append(e)
            k2, p2 = _other(self.slots, e, cur)
            if k2 == k:
                return edges, p2
            cur = (k2, (p2 + 2) % 4)

    def smooth(self, c: int) -> SmoothingResult:
        if not 0 <= c < len(self.crossings):
            raise IndexError(f"unknown crossing id {c}")
        sign = self.signs[c]
        flags = [[(k, p) in self.heads for p in range(4)] for k in range(len(self.crossings))]

        # The disoriented resolution needs one of the two arcs through c reversed.
        arc0, end = self._arc(c, 0)
        rest = min(p for p in (1, 2, 3) if p != end)
        arc1, _ = self._arc(c, rest)
        flipped_arc = arc0 if min(arc0) < min(arc1) else arc1
        flipped = [row[:] for row in flags]
        for e in set(flipped_arc):
            for k, p in self.slots[e]:
                flipped[k][p] = not flipped[k][p]

        def build(pairs, fl):
            kept, new, loops = splice(self.crossings, {c: pairs})
            return LinkDiagram._from_flags(new, [fl[k] for k in kept], self.free_loops + loops)

        oriented = 0 if sign > 0 else 1
        pairs = (A_PAIRS, B_PAIRS)
        good = build(pairs[oriented], flags)
        bad = build(pairs[1 - oriented], flipped)
        x_rest = self.crossing_counts()[0] - (1 if sign < 0 else 0)
        e = bad.crossing_counts()[0] - x_rest
        zero, one = (good, bad) if oriented == 0 else (bad, good)
        return SmoothingResult(zero, one, e, sign, oriented, c)

    # -- serialization ----------------------------------------------------

    def normalized(self) -> "LinkDiagram":
        """Relabelled along the orientation with crossings sorted."""
        labels = _relabel(self.crossings, self.signs)
        order = sorted(range(len(labels)), key=lambda k: labels[k])
        return LinkDiagram(tuple(labels[k] for k in order),
                           tuple(self.signs[k] for k in order), self.free_loops)

    def to_pd(self) -> str:
        parts = ["X(%d,%d,%d,%d)" % cr for cr in self.crossings]
        if self.crossings:
            default = _orientation_flags(self.crossings)
            reversed_edges = []
            for strand in self._strands:
                e = strand[0]
                tail, head = self.edge_direction(e)
                if not default[head[0]][head[1]]:
                    reversed_edges.append(e)
            if reversed_edges:
                parts.append("O(%s)" % ",".join(map(str, reversed_edges)))
        if self.free_loops:
            parts.append(f"U{self.free_loops}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_pd() or "<empty diagram>"

    def to_json(self) -> dict:
        d = self.normalized()
        return {
            "crossings": [list(cr) for cr in d.crossings],
            "signs": list(d.signs),
            "free_loops": d.free_loops,
            "pd": d.to_pd(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "LinkDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(tuple(cr) for cr in data["crossings"]), tuple(data["signs"]),
                   int(data.get("free_loops", 0)))


# -- faces and canonical codes --------------------------------------------


def _faces(crossings: Sequence[Crossing]) -> list[list[Slot]]:
    """Faces of the planar map as lists of corners.

    Corner (k, i) is the region between slots i and i+1 of crossing k.
    """
    if not crossings:
        return []
    where = _slot_map(crossings)
    seen: set[Slot] = set()
    faces = []
    for k in range(len(crossings)):
        for i in range(4):
            if (k, i) in seen:
                continue
            face, corner = [], (k, i)
            while corner not in seen:
                seen.add(corner)
                face.append(corner)
                ck, ci = corner
                out = (ck, (ci + 1) % 4)
                corner = _other(where, crossings[ck][out[1]], out)
            faces.append(face)
    return faces


def faces(d: LinkDiagram) -> list[list[Slot]]:
    return _faces(d.crossings)


def planar_code(crossings: Sequence[Crossing]) -> tuple[int, ...]:
    """Relabelling-invariant code of a connected unoriented diagram.

    The minimum over all starting slots of a breadth-first encoding; two
    diagrams with equal codes are the same planar map with the same
    over/under data.
    """
    n = len(crossings)
    if n == 0:
        return ()
    where = _slot_map(crossings)
    partner = {}
    for e, (s1, s2) in where.items():
        partner[s1] = s2
        partner[s2] = s1
    best = None
    for k0 in range(n):
        for p0 in range(4):
            order = {k0: 0}
            rot = {k0: p0}
            queue = [k0]
            code = []
            i = 0
            while i < len(queue):
                k = queue[i]
                i += 1
                r = rot[k]
                code.append(r % 2)
                for j in range(4):
                    k2, p2 = partner[(k, (r + j) % 4)]
                    if k2 not in order:
                        order[k2] = len(queue)
                        rot[k2] = p2
                        queue.append(k2)
                    code.append(order[k2])
                    code.append((p2 - rot[k2]) % 4)
            code_t = tuple(code)
            if best is None or code_t < best:
                best = code_t
    return best


def unoriented_groups(crossings: Sequence[Crossing]) -> list[list[int]]:
    parent, find = _union_find()
    where = _slot_map(crossings)
    for (k1, _), (k2, _) in where.values():
        a, b = find(k1), find(k2)
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for k in range(len(crossings)):
        groups.setdefault(find(k), []).append(k)
    return sorted(groups.values())


# -- PD text ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([XO])\s*[\(\[]([^\)\]]*)[\)\]]|U\s*(\d+)|PD\s*[\(\[]|[\)\],;])", re.I)


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` terms plus optional ``U<k>`` and ``O(edges)``.

    ``O(...)`` lists edges whose components are oriented against the
    default inference.
    """
    if text is None or not text.strip():
        raise PDError("empty PD input")
    crossings, reverse, loops = [], [], 0
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PDError(f"cannot parse PD text near {text[pos:pos + 20]!r}")
        pos = m.end()
        kind, body, count = m.group(1), m.group(2), m.group(3)
        if count is not None:
            loops += int(count)
        elif kind is not None:
            items = [s.strip() for s in body.split(",") if s.strip()]
            try:
                values = [int(s) for s in items]
            except ValueError:
                raise PDError(f"non-integer edge label in {m.group(0).strip()!r}") from None
            if kind.upper() == "X":
                if len(values) != 4:
                    raise PDError(f"crossing {m.group(0).strip()!r} has arity {len(values)}, expected 4")
                crossings.append(values)
            else:
                reverse.extend(values)
        if pos < len(text) and text[pos:].strip() == "":
            break
    if not crossings and not loops:
        raise PDError("PD input declares no crossings and no loops")
    if reverse and not crossings:
        raise PDError("orientation override given for a crossingless diagram")
    return LinkDiagram.from_raw(crossings, loops, reverse)


# -- greedy Reidemeister I / II reduction -----------------------------------


def _find_move(crossings: Sequence[Crossing]):
    """Locate a removable kink or bigon.

    Returns ``("R1", k, p)`` for a kink whose loop joins slots p and p+1,
    ``("R2", k1, k2)`` for a bigon whose two strands pass over/under
    consistently, or ``None``.
    """
    for k, cr in enumerate(crossings):
        for p in range(4):
            if cr[p] == cr[(p + 1) % 4]:
                return ("R1", k, p)
    for face in _faces(crossings):
        if len(face) != 2:
            continue
        (k1, i1), (k2, i2) = face
        if k1 == k2:
            continue
        # The face corner (k, i) is bounded by slots i and i+1; the strand
        # through slot i+1 of k1 is the one entering the bigon at k2 slot i2.
        e = crossings[k1][(i1 + 1) % 4]
        if crossings[k2][i2] != e:
            continue
        if (i1 + 1) % 2 == i2 % 2:
            return ("R2", k1, k2)
    return None


def reduce_crossings(crossings: Sequence[Crossing], flags=None):
    """Greedy Reidemeister I/II reduction.

    ``flags`` (per-slot incoming booleans) are carried along when given.
    Returns ``(crossings, flags, loops, kink_sign, kink_exp)`` where the
    removed kinks multiply the Kauffman bracket by ``kink_sign * A^kink_exp``.
    """
    crossings = [tuple(cr) for cr in crossings]
    flags = [list(f) for f in flags] if flags is not None else None
    loops, ksign, kexp = 0, 1, 0
    while crossings:
        move = _find_move(crossings)
        if move is None:
            break
        if move[0] == "R1":
            _, k, p = move
            pairs = ((p, (p + 1) % 4), ((p + 2) % 4, (p + 3) % 4))
            kept, new, closed = splice(crossings, {k: pairs})
            loops += closed - 1
            ksign = -ksign
            kexp += 3 if p % 2 == 0 else -3
        else:
            _, k1, k2 = move
            kept, new, closed = splice(crossings, {k1: THROUGH_PAIRS, k2: THROUGH_PAIRS})
            loops += closed
        crossings = list(new)
        if flags is not None:
            flags = [flags[k] for k in kept]
    return crossings, flags, loops, ksign, kexp


def simplify(d: LinkDiagram) -> LinkDiagram:
    """Oriented diagram after greedy Reidemeister I/II reduction."""
    flags = [[(k, p) in d.heads for p in range(4)] for k in range(len(d.crossings))]
    crossings, flags, loops, _, _ = reduce_crossings(d.crossings, flags)
    return LinkDiagram._from_flags(crossings, flags, d.free_loops + loops)
