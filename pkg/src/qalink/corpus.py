"""Bundled fixture diagrams and the acceptance sweep behind ``corpus run``."""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product

from .analysis import (breadths, diagonal_profile, differential_gaps, knight_move_decompose,
                       lee_dims_of, quantum_gaps, reconstruct_jones, signature, thinness)
from .diagram import LinkDiagram, parse_pd
from .generate import braid_closure, torus2, twist
from .khovanov import euler_check, homology
from .laurent import breadth, gap_between, gaps_of, determinant_eval
from .obstruction import det_bound_check, kanenobu_verdict, qa_certify, validate_certificate, NOT_QA
from .skein import A, A_INV, bracket, bracket_state_sum, bracket_twist, jones, jones_by_skein

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
HOPF_NEGATIVE_PD = "X(4,1,3,2) X(2,3,1,4)"

TABLE1 = {(-3, -9): 1, (-2, -5): 1, (0, -3): 1, (0, -1): 1}


def fixtures() -> dict[str, LinkDiagram]:
    """Named fixture diagrams; every one is alternating, hence quasi-alternating."""
    out = {
        "unknot": parse_pd("U1"),
        "hopf+": torus2(2),
        "hopf-": parse_pd(HOPF_NEGATIVE_PD),
        "trefoil": parse_pd(TREFOIL_PD),
        "figure_eight": parse_pd(FIGURE_EIGHT_PD),
    }
    for n in range(1, 8):
        out[f"torus2_{n}"] = torus2(n)
    out["8_18"] = braid_closure([1, -2] * 4)
    return out


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}" + (f" ({self.detail})" if self.detail else "")

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


def _criterion(number, title):
    def wrap(fn):
        def run(fx):
            try:
                ok, detail = fn(fx)
            except Exception as exc:  # a crash is a failed criterion, reported as data
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return Outcome(number, title, ok, detail)
        run.number = number
        return run
    return wrap


@_criterion(1, "trefoil homology equals Table 1")
def _c1(fx):
    t = time.perf_counter()
    h = homology(fx["trefoil"])
    dt = time.perf_counter() - t
    return h == TABLE1 and dt < 1.0, f"{dt:.3f}s"


@_criterion(2, "trefoil Jones, determinant, breadth, gap")
def _c2(fx):
    v = jones(fx["trefoil"])
    gaps = gaps_of(v)
    ok = (str(v) == "-t^-4 + t^-3 + t^-1" and determinant_eval(v) == 3 and breadth(v) == 3
          and len(gaps) == 1 and gaps[0].start == -2 and gaps[0].length == 1)
    return ok, str(v)


@_criterion(3, "Euler identity on every fixture")
def _c3(fx):
    t = time.perf_counter()
    bad = [name for name, d in fx.items() if not euler_check(homology(d), jones(d))[0]]
    dt = time.perf_counter() - t
    return not bad and dt < 30, f"{dt:.2f}s" + (f", failing {bad}" if bad else "")


@_criterion(4, "skein relation and the four oriented skein cases")
def _c4(fx):
    bad = []
    for name, d in fx.items():
        b, v = bracket(d), jones(d)
        for c in range(len(d.crossings)):
            res = d.smooth(c)
            if b != A * bracket(res.zero) + A_INV * bracket(res.one):
                bad.append((name, c, "bracket"))
            for kind in ("I", "II"):
                if jones_by_skein(d, c, kind) != v:
                    bad.append((name, c, kind))
    return not bad, f"failing {bad}" if bad else ""


def _thin(fx):
    for name, d in fx.items():
        h = homology(d)
        sigma = signature(d)
        if thinness(h, sigma)[0]:
            yield name, d, h, sigma


@_criterion(5, "breadth identity on thin fixtures")
def _c5(fx):
    bad = [name for name, _, h, _ in _thin(fx) if not breadths(h)[2]]
    tre = breadths(homology(fx["trefoil"]))
    return not bad and tre[:2] == (3, 8), f"trefoil {tre[:2]}"


@_criterion(6, "all differential, Jones and quantum gaps have length 1")
def _c6(fx):
    bad = []
    for name, d in fx.items():
        h = homology(d)
        for kind, gaps in (("differential", differential_gaps(h)), ("jones", gaps_of(jones(d))),
                           ("quantum", quantum_gaps(h))):
            if any(g.length != 1 for g in gaps):
                bad.append((name, kind))
    tre = differential_gaps(homology(fx["trefoil"]))
    single = len(tre) == 1 and tre[0].start == -1
    return not bad and single, f"failing {bad}" if bad else "trefoil gap at i=-1"


@_criterion(7, "knight-move decomposition and Jones reconstruction")
def _c7(fx):
    bad = []
    for name, d, h, sigma in _thin(fx):
        lee = lee_dims_of(d)
        km = knight_move_decompose(h, lee, sigma)
        prof = diagonal_profile(h, sigma, lee)
        if any(c < 0 for _, c in km.kh_prime.items()) or reconstruct_jones(prof, lee) != jones(d):
            bad.append(name)
    d = fx["trefoil"]
    prof = diagonal_profile(homology(d), signature(d), lee_dims_of(d))
    ok = prof.a == [1, 0, 0, 0] and prof.b == {-8: -1, -6: 1, -4: 0, -2: 1}
    return not bad and ok, f"trefoil a={prof.a}"


@_criterion(8, "Kanenobu verdicts for |p+q| <= 12")
def _c8(fx):
    t = time.perf_counter()
    bad = []
    for p, q in product(range(-12, 13), repeat=2):
        s = abs(p + q)
        if s > 12:
            continue
        verdict = kanenobu_verdict(p, q).verdict
        if (verdict == NOT_QA) != (s >= 7):
            bad.append((p, q))
    dt = time.perf_counter() - t
    return not bad and dt < 1.0, f"{dt:.3f}s"


@_criterion(9, "determinant bound on fixtures")
def _c9(fx):
    bad = [name for name, d in fx.items() if not det_bound_check(jones(d))[2]]
    return not bad and det_bound_check(jones(fx["trefoil"]))[:2] == (3, 3), f"failing {bad}" if bad else ""


@_criterion(10, "certifier on unknot, Hopf, trefoil, torus2(n<=7)")
def _c10(fx):
    names = ["unknot", "hopf+", "hopf-", "trefoil"] + [f"torus2_{n}" for n in range(1, 8)]
    bad = []
    for name in names:
        cert = qa_certify(fx[name], budget=10_000)
        if cert.status != "certified" or validate_certificate(cert, fx[name]):
            bad.append(name)
    return not bad, f"failing {bad}" if bad else ""


@_criterion(11, "twist formulas against generated diagrams")
def _c11(fx):
    bad = []
    for name in ("trefoil", "hopf+", "hopf-"):
        d = fx[name]
        for c, n, kind in product(range(len(d.crossings)), range(1, 6), ("vertical", "horizontal")):
            if bracket_twist(d, c, n, kind) != bracket_state_sum(twist(d, c, n, kind)):
                bad.append((name, c, n, kind))
    return not bad, f"failing {bad}" if bad else ""


@_criterion(12, "gap between A<L0> and A^-1<L1> is at most 7")
def _c12(fx):
    worst = 0
    for d in fx.values():
        for c in range(len(d.crossings)):
            res = d.smooth(c)
            gap = gap_between(A * bracket(res.zero), A_INV * bracket(res.one))
            if gap is not None:
                worst = max(worst, gap.length)
    return worst <= 7, f"longest gap {worst}"


CRITERIA = [_c1, _c2, _c3, _c4, _c5, _c6, _c7, _c8, _c9, _c10, _c11, _c12]


def run_acceptance() -> list[Outcome]:
    fx = fixtures()
    return [criterion(fx) for criterion in CRITERIA]
