"""Quasi-alternating obstructions, the recursive certifier, Kanenobu knots."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from . import analysis
from .diagram import LinkDiagram, planar_code, simplify, unoriented_groups
from .khovanov import BigradedDims, homology, max_crossings
from .laurent import HalfLaurent, breadth, determinant_eval, gaps_of
from .skein import bracket_state_sum, jones, jones_from_bracket, STATE_SUM_LIMIT

VIOLATED = "violated"
SATISFIED = "satisfied"
INAPPLICABLE = "inapplicable"
NOT_QA = "not_quasi_alternating"
NO_OBSTRUCTION = "no_obstruction_found"


@dataclass
class Check:
    check: str
    status: str
    witness: object = None

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status, "witness": self.witness}


@dataclass
class ObstructionReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return NOT_QA if any(c.status == VIOLATED for c in self.checks) else NO_OBSTRUCTION

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.check == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "checks": [c.to_json() for c in self.checks]}


def det_bound_check(v: HalfLaurent) -> tuple[int, int, bool]:
    """(ceil(breadth/2) + 1, det, holds) for a Jones polynomial."""
    lhs = math.ceil(breadth(v) / 2) + 1
    det = determinant_eval(v)
    return lhs, det, lhs <= det


def _gap_check(name: str, gaps) -> Check:
    long = [g.to_json() for g in gaps if g.length > 1]
    if long:
        return Check(name, VIOLATED, long)
    return Check(name, SATISFIED, [g.to_json() for g in gaps])


def report_from_invariants(v: HalfLaurent, h: BigradedDims | None = None,
                           sigma: int | None = None,
                           lee: Mapping[int, int] | None = None,
                           skipped: str | None = None) -> ObstructionReport:
    """Run every check that the supplied invariants allow."""
    rep = ObstructionReport()
    rep.checks.append(_gap_check("jones_gaps", gaps_of(v, 1)))
    if h is None:
        why = skipped or "Khovanov homology not available"
        for name in ("differential_gaps", "quantum_gaps", "thinness", "knight_move", "breadth_identity"):
            rep.checks.append(Check(name, INAPPLICABLE, why))
    else:
        rep.checks.append(_gap_check("differential_gaps", analysis.differential_gaps(h)))
        rep.checks.append(_gap_check("quantum_gaps", analysis.quantum_gaps(h)))
        if sigma is None:
            rep.checks.append(Check("thinness", INAPPLICABLE, "signature not supplied"))
        else:
            thin, bad = analysis.thinness(h, sigma)
            rep.checks.append(Check("thinness", SATISFIED if thin else VIOLATED,
                                    {"sigma": sigma, "off_diagonal": [list(c) for c in bad]}))
        if sigma is None or lee is None:
            rep.checks.append(Check("knight_move", INAPPLICABLE, "signature or Lee data not supplied"))
        else:
            try:
                km = analysis.knight_move_decompose(h, lee, sigma)
                rep.checks.append(Check("knight_move", SATISFIED, {"kh_prime": str(km.kh_prime)}))
            except analysis.KnightMoveError as exc:
                rep.checks.append(Check("knight_move", VIOLATED, str(exc)))
        bi, bj, ok = analysis.breadths(h)
        rep.checks.append(Check("breadth_identity", SATISFIED if ok else VIOLATED,
                                {"breadth_i": bi, "breadth_j": bj}))
    lhs, det, holds = det_bound_check(v)
    rep.checks.append(Check("determinant_bound", SATISFIED if holds else VIOLATED,
                            {"lhs": lhs, "det": det}))
    return rep


def obstruction_report(d: LinkDiagram, workers: int | None = None) -> ObstructionReport:
    v = jones(d)
    limit = max_crossings()
    if len(d.crossings) > limit:
        return report_from_invariants(v, skipped=f"{len(d.crossings)} crossings exceeds limit {limit}")
    h = homology(d, workers=workers)
    return report_from_invariants(v, h, analysis.signature(d), analysis.lee_dims_of(d))


# -- Kanenobu knots ------------------------------------------------------------

_W = HalfLaurent({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}) ** 2


def kanenobu_jones(p: int, q: int) -> HalfLaurent:
    s = p + q
    return HalfLaurent.monomial(s, (-1) ** (s % 2)) * (_W - 1) + 1


@dataclass
class KanenobuReport:
    p: int
    q: int
    jones: HalfLaurent
    gaps: list
    det: int
    verdict: str

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "jones": str(self.jones),
            "gaps": [g.to_json() for g in self.gaps],
            "det": self.det,
            "criterion_applies": abs(self.p + self.q) > 6,
            "verdict": self.verdict,
        }


def kanenobu_verdict(p: int, q: int) -> KanenobuReport:
    v = kanenobu_jones(p, q)
    gaps = gaps_of(v, 1)
    verdict = NOT_QA if any(g.length > 1 for g in gaps) else "no_verdict"
    return KanenobuReport(p, q, v, gaps, determinant_eval(v), verdict)


# -- certifier -----------------------------------------------------------------


@dataclass
class CertNode:
    pd: str
    det: int
    crossing: int | None = None
    children: tuple["CertNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.crossing is None

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_json(self) -> dict:
        out = {"pd": self.pd, "det": self.det}
        if not self.is_leaf:
            out["crossing"] = self.crossing
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class QACertificate:
    root: CertNode
    nodes_searched: int

    status = "certified"

    def to_json(self) -> dict:
        return {"status": self.status, "nodes_searched": self.nodes_searched, "tree": self.root.to_json()}


@dataclass
class Indeterminate:
    reason: str
    nodes_searched: int

    status = "indeterminate"

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason, "nodes_searched": self.nodes_searched}


class _Budget(Exception):
    pass


def _key(d: LinkDiagram):
    groups = unoriented_groups(d.crossings)
    codes = sorted(planar_code(tuple(d.crossings[k] for k in g)) for g in groups)
    return tuple(codes), d.free_loops


def _pd_text(d: LinkDiagram) -> str:
    return d.to_pd() or "U0"


def qa_certify(d: LinkDiagram, budget: int = 10_000):
    """Search for a resolution tree proving the diagram quasi-alternating.

    Only a positive answer is meaningful: failure or budget exhaustion
    yields ``Indeterminate``.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    used = 0
    dets: dict = {}
    failed: set = set()
    done: dict = {}

    def det_of(x: LinkDiagram) -> int:
        k = _key(x)
        if k not in dets:
            dets[k] = determinant_eval(jones(x))
        return dets[k]

    def visit(x: LinkDiagram):
        nonlocal used
        used += 1
        if used > budget:
            raise _Budget
        x = simplify(x)
        k = _key(x)
        if k in done:
            return done[k]
        if k in failed:
            return None
        det = det_of(x)
        if not x.crossings:
            node = CertNode(_pd_text(x), det) if x.n_components == 1 else None
        else:
            node = None
            for c in range(len(x.crossings)):
                res = x.smooth(c)
                d0, d1 = det_of(res.zero), det_of(res.one)
                if d0 < 1 or d1 < 1 or d0 + d1 != det:
                    continue
                left = visit(res.zero)
                if left is None:
                    continue
                right = visit(res.one)
                if right is None:
                    continue
                node = CertNode(_pd_text(x), det, c, (left, right))
                break
        if node is None:
            failed.add(k)
        else:
            done[k] = node
        return node

    try:
        root = visit(d)
    except _Budget:
        return Indeterminate(f"node budget {budget} exhausted", used)
    if root is None:
        return Indeterminate("no certifying resolution tree found", used)
    return QACertificate(root, used)


def _det_independent(x: LinkDiagram) -> int:
    if len(x.crossings) <= STATE_SUM_LIMIT:
        return determinant_eval(jones_from_bracket(bracket_state_sum(x), x.writhe))
    return determinant_eval(jones(x))


def validate_certificate(cert: QACertificate, source: LinkDiagram | None = None) -> list[str]:
    """Independent check of a certificate; returns a list of problems."""
    from .diagram import parse_pd

    problems: list[str] = []

    def load(node: CertNode) -> LinkDiagram:
        return parse_pd("U1") if node.pd == "U0" else parse_pd(node.pd)

    if source is not None:
        if _key(simplify(source)) != _key(load(cert.root)):
            problems.append("root does not match the simplified source diagram")

    def check(node: CertNode, path: str):
        x = load(node)
        det = _det_independent(x)
        if det != node.det:
            problems.append(f"{path}: recorded det {node.det} but recomputed {det}")
        if node.is_leaf:
            if x.crossings or x.n_components != 1:
                problems.append(f"{path}: leaf is not a crossingless unknot")
            if det != 1:
                problems.append(f"{path}: leaf determinant {det} != 1")
            return
        if len(node.children) != 2:
            problems.append(f"{path}: internal node needs two children")
            return
        res = x.smooth(node.crossing)
        for label, child, resolved in (("0", node.children[0], res.zero), ("1", node.children[1], res.one)):
            if _key(simplify(resolved)) != _key(load(child)):
                problems.append(f"{path}/{label}: child is not the simplified resolution")
            if child.det < 1 or child.det >= node.det:
                problems.append(f"{path}/{label}: determinant does not strictly decrease")
        if node.children[0].det + node.children[1].det != det:
            problems.append(f"{path}: det additivity fails")
        for label, child in zip("01", node.children):
            check(child, f"{path}/{label}")

    check(cert.root, "root")
    return problems
