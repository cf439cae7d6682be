"""Diagonal structure of thin Khovanov homology.

Thinness, gaps, breadths, Lee dimensions, the knight-move decomposition,
the lower-diagonal counts ``a`` and the Jones coefficients ``b`` that they
determine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .diagram import LinkDiagram
from .goeritz import signature
from .khovanov import BigradedDims, TwoVarPoly
from .laurent import GapRecord, HalfLaurent, gaps_from_support


class KnightMoveError(ValueError):
    """Homology that does not split into Lee pawns plus knight pairs."""


def thinness(h: BigradedDims, sigma: int) -> tuple[bool, list[tuple[int, int]]]:
    """Whether all support lies on j - 2i = -sigma +- 1; offending cells otherwise."""
    bad = [(i, j) for i, j in h.cells() if j - 2 * i not in (-sigma - 1, -sigma + 1)]
    return not bad, bad


def differential_gaps(h: BigradedDims) -> list[GapRecord]:
    return gaps_from_support({i for i, _ in h.cells()}, 1)


def quantum_gaps(h: BigradedDims) -> list[GapRecord]:
    return gaps_from_support({j for _, j in h.cells()}, 2)


def breadths(h: BigradedDims) -> tuple[int, int, bool]:
    bi = h.i_max - h.i_min
    bj = h.j_max - h.j_min
    return bi, bj, bj == 2 * bi + 2


def lee_dims(components: int, lk: Sequence[Sequence[int]]) -> dict[int, int]:
    """Homological support of Lee homology from pairwise linking numbers.

    Every subset E of the components other than the first contributes 2
    at i = 2 * sum(lk(l, m) for l in E, m not in E).
    """
    if components < 1:
        raise ValueError("need at least one component")
    out: dict[int, int] = {}
    others = range(1, components)
    for size in range(components):
        for subset in itertools.combinations(others, size):
            chosen = set(subset)
            i = 2 * sum(lk[l][m] for l in chosen for m in range(components) if m not in chosen)
            out[i] = out.get(i, 0) + 2
    return dict(sorted(out.items()))


def lee_dims_of(d: LinkDiagram) -> dict[int, int]:
    count, _ = d.components()
    return lee_dims(count, d.linking_matrix())


def lee_polynomial(sigma: int, components: int, lk: Sequence[Sequence[int]]) -> TwoVarPoly:
    terms = {}
    for i, dim in lee_dims(components, lk).items():
        for dj in (-1, 1):
            terms[(i, 2 * i - sigma + dj)] = dim // 2
    return TwoVarPoly(terms)


def _pawn(lee: Mapping[int, int], sigma: int) -> dict[tuple[int, int], int]:
    cells = {}
    for i, dim in lee.items():
        if dim % 2:
            raise ValueError(f"odd Lee dimension {dim} at i={i}")
        for dj in (-1, 1):
            cells[(i, 2 * i - sigma + dj)] = dim // 2
    return cells


@dataclass(frozen=True)
class KnightMove:
    pawn: BigradedDims
    pairs: tuple[tuple[tuple[int, int], tuple[int, int], int], ...]
    kh_prime: HalfLaurent

    def to_json(self) -> dict:
        return {
            "pawn": self.pawn.to_json(),
            "pairs": [{"lower": list(lo), "upper": list(up), "count": n} for lo, up, n in self.pairs],
            "kh_prime": self.kh_prime.to_json(),
            "kh_prime_text": str(self.kh_prime),
        }


def knight_move_decompose(h: BigradedDims, lee: Mapping[int, int], sigma: int) -> KnightMove:
    """Split thin homology into Lee pawns and (i, j) & (i+1, j+4) pairs.

    ``kh_prime`` is a polynomial in ``T = t q^2`` whose coefficient of
    ``T^k`` counts pairs with lower cell (k, 2k - sigma - 1).
    """
    thin, bad = thinness(h, sigma)
    if not thin:
        raise KnightMoveError(f"homology is not thin; off-diagonal cells {bad}")
    rest = {cell: h[cell] for cell in h.cells()}
    pawn = _pawn(lee, sigma)
    for cell, n in pawn.items():
        left = rest.get(cell, 0) - n
        if left < 0:
            raise KnightMoveError(f"Lee pawn at {cell} exceeds homology")
        rest[cell] = left
    pairs = []
    kh_prime: dict[int, int] = {}
    for i, j in sorted(rest):
        n = rest[(i, j)]
        if not n or j != 2 * i - sigma - 1:
            continue
        up = (i + 1, j + 4)
        if rest.get(up, 0) < n:
            raise KnightMoveError(f"cell {(i, j)} has no knight partner at {up}")
        rest[up] -= n
        rest[(i, j)] = 0
        pairs.append(((i, j), up, n))
        kh_prime[i] = n
    leftover = {c: n for c, n in rest.items() if n}
    if leftover:
        raise KnightMoveError(f"unpaired cells remain: {leftover}")
    return KnightMove(BigradedDims(pawn), tuple(pairs), HalfLaurent(kh_prime, var="T"))


def lower_diagonal_a(h: BigradedDims, lee: Mapping[int, int]) -> list[int]:
    """Knight counts a_1..a_m along the lower diagonal, one per column.

    Column ``i_min + l - 1`` holds a_l.  The values are cross-checked
    against the column recursion a_l = dim H^i - dim Lee^i - a_{l-1}.
    """
    i0, j0 = h.i_min, h.j_min
    a = []
    for l in range(1, h.i_max - i0 + 2):
        i = i0 + l - 1
        cell = (i, j0 + 2 * l - 2)
        value = h[cell] - lee.get(i, 0) // 2
        if value < 0:
            raise ValueError(f"negative a_{l} at {cell}")
        expected = h.column(i) - lee.get(i, 0) - (a[-1] if a else 0)
        if value != expected:
            raise ValueError(f"a_{l} = {value} disagrees with the column recursion ({expected})")
        a.append(value)
    return a


@dataclass
class DiagonalProfile:
    sigma: int
    i_min: int
    i_max: int
    j_min: int
    j_max: int
    lower: list[tuple[int, int, int]]
    upper: list[tuple[int, int, int]]
    a: list[int]
    b: dict[int, int] = field(default_factory=dict)
    b_terms: dict[int, tuple[int, int]] = field(default_factory=dict)

    def a_at(self, i: int) -> int:
        l = i - self.i_min
        return self.a[l] if 0 <= l < len(self.a) else 0

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "i_min": self.i_min,
            "i_max": self.i_max,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "lower": [list(c) for c in self.lower],
            "upper": [list(c) for c in self.upper],
            "a": list(self.a),
            "b": {str(j): v for j, v in sorted(self.b.items())},
        }


def diagonal_profile(h: BigradedDims, sigma: int, lee: Mapping[int, int]) -> DiagonalProfile:
    thin, bad = thinness(h, sigma)
    if not thin:
        raise KnightMoveError(f"homology is not thin; off-diagonal cells {bad}")
    lower = [(i, j, n) for (i, j), n in h.items() if j - 2 * i == -sigma - 1]
    upper = [(i, j, n) for (i, j), n in h.items() if j - 2 * i == -sigma + 1]
    prof = DiagonalProfile(sigma, h.i_min, h.i_max, h.j_min, h.j_max, lower, upper,
                           lower_diagonal_a(h, lee))
    prof.b, prof.b_terms = _coefficients(prof, lee)
    return prof


def _coefficients(profile: DiagonalProfile, lee: Mapping[int, int]):
    b, terms = {}, {}
    for i in range(profile.i_min, profile.i_max + 1):
        j = 2 * i - profile.sigma
        lee_term = lee.get(i, 0) // 2
        a_term = (-1) ** (i % 2) * (profile.a_at(i) + profile.a_at(i - 1))
        b[j] = lee_term + a_term
        terms[j] = (lee_term, a_term)
    return b, terms


def coefficients_b(profile: DiagonalProfile, lee: Mapping[int, int]) -> dict[int, int]:
    """Coefficient of q^j in the Jones polynomial for j = 2i - sigma.

    Raises if some b_j vanishes while one of its two defining terms does
    not (the Lee and knight contributions can never cancel).
    """
    b, terms = _coefficients(profile, lee)
    for j, value in b.items():
        lee_term, a_term = terms[j]
        if value == 0 and (lee_term or a_term):
            raise ValueError(f"b_{j} cancels: Lee term {lee_term}, knight term {a_term}")
    return b


def reconstruct_jones(profile: DiagonalProfile, lee: Mapping[int, int]) -> HalfLaurent:
    """Jones polynomial rebuilt from the diagonal data, in t."""
    vq = HalfLaurent(coefficients_b(profile, lee), var="q")
    return vq.subs(1, Fraction(1, 2), sign=-1, var="t")


def analyze(d: LinkDiagram, h: BigradedDims | None = None, workers: int | None = None) -> dict:
    """Full diagonal analysis as a JSON-ready report."""
    from .khovanov import homology, kh_polynomial
    from .skein import jones

    if h is None:
        h = homology(d, workers=workers)
    sigma = signature(d)
    lee = lee_dims_of(d)
    v = jones(d)
    thin, bad = thinness(h, sigma)
    bi, bj, rel = breadths(h)
    report = {
        "pd": d.to_pd(),
        "signature": sigma,
        "homology": h.to_json(),
        "kh_polynomial": str(kh_polynomial(h)),
        "lee": {str(i): n for i, n in lee.items()},
        "thin": thin,
        "off_diagonal": [list(c) for c in bad],
        "differential_gaps": [g.to_json() for g in differential_gaps(h)],
        "quantum_gaps": [g.to_json() for g in quantum_gaps(h)],
        "breadths": {"i": bi, "j": bj, "relation_holds": rel},
        "jones": str(v),
    }
    try:
        km = knight_move_decompose(h, lee, sigma)
        report["knight_move"] = km.to_json()
    except KnightMoveError as exc:
        report["knight_move"] = {"error": str(exc)}
    try:
        prof = diagonal_profile(h, sigma, lee)
        rebuilt = reconstruct_jones(prof, lee)
        report["profile"] = prof.to_json()
        report["reconstructed_jones"] = str(rebuilt)
        report["reconstruction_matches"] = rebuilt == v
    except ValueError as exc:
        report["profile"] = {"error": str(exc)}
    return report
