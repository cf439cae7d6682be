"""Unreduced rational Khovanov homology from the cube of resolutions.

Vertex ``s`` of the cube is a bitmask over crossings (bit set means
B-smoothing).  Each circle carries a 2-dimensional space spanned by v+
and v- in degrees +1 and -1; a generator is stored as the bitmask of its
v- circles.  The complex splits by the unshifted quantum degree
``J = deg + |s|``, so homology is computed one J at a time.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .diagram import A_PAIRS, B_PAIRS, LinkDiagram, _union_find
from .laurent import HalfLaurent
from .linalg import SparseRow, rank

DEFAULT_MAX_CROSSINGS = 14


class CrossingLimitError(ValueError):
    pass


def max_crossings() -> int:
    raw = os.environ.get("QALINK_MAX_CROSSINGS")
    return int(raw) if raw else DEFAULT_MAX_CROSSINGS


class BigradedDims:
    """Finite map (i, j) -> dimension with zero entries dropped."""

    def __init__(self, dims: Mapping[tuple[int, int], int] | None = None):
        self._dims = {}
        for (i, j), v in (dims or {}).items():
            if v < 0:
                raise ValueError(f"negative dimension at {(i, j)}")
            if v:
                self._dims[(int(i), int(j))] = int(v)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._dims.get(key, 0)

    def items(self):
        return sorted(self._dims.items())

    def cells(self) -> list[tuple[int, int]]:
        return sorted(self._dims)

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __eq__(self, other) -> bool:
        if isinstance(other, BigradedDims):
            return self._dims == other._dims
        if isinstance(other, Mapping):
            return self._dims == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __repr__(self) -> str:
        return f"BigradedDims({dict(self.items())})"

    def _need(self):
        if not self._dims:
            raise ValueError("empty homology has no support")

    @property
    def i_min(self) -> int:
        self._need()
        return min(i for i, _ in self._dims)

    @property
    def i_max(self) -> int:
        self._need()
        return max(i for i, _ in self._dims)

    @property
    def j_min(self) -> int:
        self._need()
        return min(j for _, j in self._dims)

    @property
    def j_max(self) -> int:
        self._need()
        return max(j for _, j in self._dims)

    def total(self) -> int:
        return sum(self._dims.values())

    def column(self, i: int) -> int:
        return sum(v for (a, _), v in self._dims.items() if a == i)

    def row(self, j: int) -> int:
        return sum(v for (_, b), v in self._dims.items() if b == j)

    def shifted(self, di: int, dj: int) -> "BigradedDims":
        return BigradedDims({(i + di, j + dj): v for (i, j), v in self._dims.items()})

    def mirrored(self) -> "BigradedDims":
        return BigradedDims({(-i, -j): v for (i, j), v in self._dims.items()})

    def tensor_loops(self, loops: int) -> "BigradedDims":
        dims = dict(self._dims)
        for _ in range(loops):
            nxt: dict[tuple[int, int], int] = {}
            for (i, j), v in dims.items():
                for dj in (-1, 1):
                    nxt[(i, j + dj)] = nxt.get((i, j + dj), 0) + v
            dims = nxt
        return BigradedDims(dims)

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "dim": v} for (i, j), v in self.items()]

    @classmethod
    def from_json(cls, triples: Iterable[Mapping]) -> "BigradedDims":
        return cls({(t["i"], t["j"]): t["dim"] for t in triples})

    def grid(self) -> str:
        """Table with j rows descending and i columns ascending."""
        if not self._dims:
            return "(zero)"
        cols = range(self.i_min, self.i_max + 1)
        step = 2
        rows = range(self.j_max, self.j_min - 1, -step)
        width = max(4, max(len(str(c)) for c in cols) + 1)
        head = "j\\i".rjust(5) + "".join(str(c).rjust(width) for c in cols)
        lines = [head]
        for j in rows:
            cells = "".join((str(self[(i, j)]) if self[(i, j)] else ".").rjust(width) for i in cols)
            lines.append(str(j).rjust(5) + cells)
        return "\n".join(lines)


@dataclass(frozen=True)
class TwoVarPoly:
    """Integer polynomial in t and q keyed by (t-exponent, q-exponent)."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: v for k, v in sorted(self.terms.items()) if v})

    def __eq__(self, other) -> bool:
        if isinstance(other, TwoVarPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __add__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TwoVarPoly(out)

    def __sub__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        return self + TwoVarPoly({k: -v for k, v in other.terms.items()})

    def __mul__(self, other: "TwoVarPoly") -> "TwoVarPoly":
        out: dict[tuple[int, int], int] = {}
        for (a, b), v in self.terms.items():
            for (c, d), w in other.terms.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + v * w
        return TwoVarPoly(out)

    def at_t(self, t: int) -> HalfLaurent:
        """Specialize t to an integer, giving a polynomial in q."""
        out: dict[Fraction, int] = {}
        for (i, j), v in self.terms.items():
            out[j] = out.get(j, 0) + v * Fraction(t) ** i
        return HalfLaurent({j: int(v) for j, v in out.items()}, var="q")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # Degree-zero column first, then by descending i and j.
        order = sorted(self.terms, key=lambda k: (k[0] != 0, -k[0], -k[1]))
        parts = []
        for i, j in order:
            v = self.terms[(i, j)]
            mono = ""
            if i:
                mono += "t" if i == 1 else f"t^{i}"
            if j:
                mono += "q" if j == 1 else f"q^{j}"
            if not mono:
                mono = str(abs(v))
            elif abs(v) != 1:
                mono = f"{abs(v)}{mono}"
            sign = "-" if v < 0 else "+"
            parts.append(mono if not parts and v > 0 else (f"-{mono}" if not parts else f"{sign} {mono}"))
        return " ".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[i, j, v] for (i, j), v in self.terms.items()]


# -- the cube -----------------------------------------------------------------


def _circles(crossings, state: int):
    """Circle index of every edge label in one resolution."""
    parent, find = _union_find()
    for k, cr in enumerate(crossings):
        for p, q in (B_PAIRS if state >> k & 1 else A_PAIRS):
            a, b = find(cr[p]), find(cr[q])
            if a != b:
                parent[a] = b
    roots: dict[int, int] = {}
    label = {}
    for cr in crossings:
        for e in cr:
            r = find(e)
            if r not in roots:
                roots[r] = len(roots)
            label[e] = roots[r]
    return label, len(roots)


@dataclass
class CubeVertex:
    state: int
    circles: int
    label: dict[int, int]

    @property
    def height(self) -> int:
        return bin(self.state).count("1")


def _popcount(x: int) -> int:
    return bin(x).count("1")


def build_cube(d: LinkDiagram) -> list[CubeVertex]:
    n = len(d.crossings)
    out = []
    for s in range(1 << n):
        label, m = _circles(d.crossings, s)
        out.append(CubeVertex(s, m, label))
    return out


@dataclass
class ChainComplex:
    """Unshifted complex split by J: ``dims[J][r]`` and ``maps[J][r]``.

    ``maps[J][r]`` is the sparse matrix of d: C^{r,J} -> C^{r+1,J} with
    one row per source basis element.
    """

    n: int
    dims: dict[int, dict[int, int]]
    maps: dict[int, dict[int, list[SparseRow]]]


def _cube_edge(cr, src: CubeVertex, dst: CubeVertex):
    """Circle correspondence along one cube edge.

    Returns ``(carry, a, b, targets)``: ``carry`` lists (source circle,
    target bit) for circles untouched by the crossing; ``a``/``b`` are the
    touched source circles (equal for a split) and ``targets`` the touched
    target circles.
    """
    a, b = src.label[cr[0]], src.label[cr[2]]
    reps: dict[int, int] = {}
    for e, c in src.label.items():
        reps.setdefault(c, e)
    carry = tuple((c, 1 << dst.label[e]) for c, e in sorted(reps.items()) if c not in (a, b))
    if a != b:
        return carry, a, b, (dst.label[cr[0]],)
    return carry, a, b, (dst.label[cr[0]], dst.label[cr[1]])


def _edge_images(edge, g: int) -> list[int]:
    """Images of generator ``g`` (bitmask of v- circles) under merge or split."""
    carry, a, b, targets = edge
    base = 0
    for c, bit in carry:
        if g >> c & 1:
            base |= bit
    if a != b:
        ma, mb = g >> a & 1, g >> b & 1
        if ma and mb:
            return []
        return [base | (1 << targets[0] if ma or mb else 0)]
    p, q = targets
    if g >> a & 1:
        return [base | 1 << p | 1 << q]
    return [base | 1 << q, base | 1 << p]


def chain_complex(d: LinkDiagram) -> ChainComplex:
    n = len(d.crossings)
    cube = build_cube(d)
    index: dict[tuple[int, int], dict[int, int]] = {}
    basis: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for v in cube:
        r = v.height
        for g in range(1 << v.circles):
            J = v.circles - 2 * _popcount(g) + r
            cell = basis.setdefault((r, J), [])
            index.setdefault((r, J), {})[(v.state, g)] = len(cell)
            cell.append((v.state, g))

    edges: dict[int, list] = {}
    for v in cube:
        out = []
        for k in range(n):
            if v.state >> k & 1:
                continue
            dst = cube[v.state | 1 << k]
            sign = -1 if _popcount(v.state & ((1 << k) - 1)) % 2 else 1
            out.append((dst.state, sign, _cube_edge(d.crossings[k], v, dst)))
        edges[v.state] = out

    maps: dict[int, dict[int, list[SparseRow]]] = {}
    dims: dict[int, dict[int, int]] = {}
    for (r, J), cell in basis.items():
        dims.setdefault(J, {})[r] = len(cell)
    for (r, J), cell in basis.items():
        if r == n:
            continue
        target = index.get((r + 1, J), {})
        rows = []
        for state, g in cell:
            row: SparseRow = {}
            for dst, sign, edge in edges[state]:
                for img in _edge_images(edge, g):
                    col = target[(dst, img)]
                    row[col] = row.get(col, 0) + sign
            rows.append({c: v for c, v in row.items() if v})
        maps.setdefault(J, {})[r] = rows
    return ChainComplex(n, dims, maps)


def _homology_job(args):
    J, dims, maps = args
    ranks = {r: rank(rows) for r, rows in maps.items()}
    out = {}
    for r, dim in dims.items():
        h = dim - ranks.get(r, 0) - ranks.get(r - 1, 0)
        if h < 0:
            raise ArithmeticError(f"negative homology dimension at r={r}, J={J}")
        if h:
            out[r] = h
    return J, out


def unshifted_homology(d: LinkDiagram, workers: int | None = None) -> BigradedDims:
    """Homology of the unnormalized complex, indexed by (|s|, J)."""
    cx = chain_complex(d)
    jobs = [(J, cx.dims[J], cx.maps.get(J, {})) for J in sorted(cx.dims)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_homology_job, jobs))
    else:
        results = [_homology_job(job) for job in jobs]
    return BigradedDims({(r, J): h for J, row in results for r, h in row.items()})


def homology(d: LinkDiagram, workers: int | None = None) -> BigradedDims:
    """Normalized Khovanov homology H^{i,j} of the diagram."""
    limit = max_crossings()
    if len(d.crossings) > limit:
        raise CrossingLimitError(
            f"{len(d.crossings)} crossings exceeds the homology limit {limit} "
            "(set QALINK_MAX_CROSSINGS to raise it)")
    if not d.crossings:
        if d.free_loops == 0:
            raise ValueError("homology of the empty diagram is undefined")
        return BigradedDims({(0, 0): 1}).tensor_loops(d.free_loops)
    x, y, _ = d.crossing_counts()
    raw = unshifted_homology(d, workers)
    return raw.shifted(-x, y - 2 * x).tensor_loops(d.free_loops)


def kh_polynomial(h: BigradedDims) -> TwoVarPoly:
    return TwoVarPoly(dict(h.items()))


def euler_characteristic(h: BigradedDims) -> HalfLaurent:
    return kh_polynomial(h).at_t(-1)


def euler_check(h: BigradedDims, v: HalfLaurent) -> tuple[bool, HalfLaurent]:
    """Compare Kh(-1, q) with (q^-1 + q) V(t^(1/2) = -q); returns (ok, residual)."""
    vq = v.subs(Fraction(1, 2), 1, sign=-1, var="q")
    residual = euler_characteristic(h) - HalfLaurent({-1: 1, 1: 1}, var="q") * vq
    return residual.is_zero(), residual
