"""Command-line front end.

Exit status: 0 success, 1 an obstruction was violated (or an acceptance
criterion failed), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import analyze
from .diagram import LinkDiagram, PDError, parse_pd
from .khovanov import CrossingLimitError, homology, kh_polynomial
from .obstruction import NOT_QA, kanenobu_verdict, obstruction_report, qa_certify
from .skein import bracket, jones


class InputError(Exception):
    pass


def load_diagram(source: str) -> LinkDiagram:
    """Parse ``source`` as a path to a PD file, or else as inline PD text."""
    text = source
    if source and os.path.isfile(source):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from exc
    return parse_pd(text)


def _emit(payload, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_compute(args) -> int:
    d = load_diagram(args.pd)
    want = ["bracket", "jones", "khovanov"] if args.invariant == "all" else [args.invariant]
    payload, lines = {"pd": d.to_pd()}, []
    if "bracket" in want:
        b = bracket(d)
        payload["bracket"] = {"text": str(b), "terms": b.to_json()}
        lines.append(str(b) if len(want) == 1 else f"bracket: {b}")
    if "jones" in want:
        v = jones(d)
        payload["jones"] = {"text": str(v), "terms": v.to_json()}
        lines.append(str(v) if len(want) == 1 else f"jones: {v}")
    if "khovanov" in want:
        h = homology(d, workers=args.workers)
        payload["khovanov"] = {"dims": h.to_json(), "polynomial": str(kh_polynomial(h))}
        if len(want) > 1:
            lines.append(f"khovanov: {kh_polynomial(h)}")
        lines.append(h.grid())
    _emit(payload, args.json, "\n".join(lines))
    return 0


def cmd_analyze(args) -> int:
    d = load_diagram(args.pd)
    h = homology(d, workers=args.workers)
    report = analyze(d, h)
    if args.json:
        _emit(report, True, "")
        return 0
    lines = [
        f"pd: {report['pd']}",
        f"jones: {report['jones']}",
        f"signature: {report['signature']}",
        h.grid(),
        f"thin: {report['thin']}",
        f"differential gaps: {report['differential_gaps']}",
        f"quantum gaps: {report['quantum_gaps']}",
        f"breadths: {report['breadths']}",
        f"lee: {report['lee']}",
        f"knight move: {report['knight_move']}",
        f"profile: {report['profile']}",
    ]
    if "reconstructed_jones" in report:
        lines.append(f"reconstructed jones: {report['reconstructed_jones']} "
                     f"(matches: {report['reconstruction_matches']})")
    print("\n".join(lines))
    return 0


def cmd_check_qa(args) -> int:
    d = load_diagram(args.pd)
    rep = obstruction_report(d, workers=args.workers)
    cert = qa_certify(d, budget=args.budget)
    payload = {"obstructions": rep.to_json(), "certificate": cert.to_json()}
    lines = [f"{c.check}: {c.status}" + (f"  {c.witness}" if c.status != "satisfied" else "")
             for c in rep.checks]
    lines.append(f"verdict: {rep.verdict}")
    lines.append(f"certifier: {cert.status} after {cert.nodes_searched} nodes")
    _emit(payload, args.json, "\n".join(lines))
    return 1 if rep.verdict == NOT_QA else 0


def cmd_kanenobu(args) -> int:
    rep = kanenobu_verdict(args.p, args.q)
    text = "\n".join([
        f"K({args.p},{args.q}) jones: {rep.jones}",
        f"gaps: {[g.to_json() for g in rep.gaps]}",
        f"det: {rep.det}",
        f"verdict: {rep.verdict}",
    ])
    _emit(rep.to_json(), args.json, text)
    return 1 if rep.verdict == NOT_QA else 0


def cmd_corpus(args) -> int:
    from .corpus import run_acceptance

    outcomes = run_acceptance()
    _emit([o.to_json() for o in outcomes], args.json, "\n".join(o.line() for o in outcomes))
    return 0 if all(o.passed for o in outcomes) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qalink", description="Jones polynomial, Khovanov homology "
                                     "and quasi-alternating obstructions from PD codes")
    sub = parser.add_subparsers(dest="command", required=True)

    def pd_args(p):
        p.add_argument("--pd", required=True, help="PD file path or inline text such as 'X(1,4,2,5) ...'")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--workers", type=int, default=None, help="processes for homology (default serial)")

    p = sub.add_parser("compute", help="bracket, Jones polynomial or Khovanov homology")
    pd_args(p)
    p.add_argument("--invariant", choices=["bracket", "jones", "khovanov", "all"], default="all")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("analyze", help="diagonal profile, gaps, breadths, knight moves")
    pd_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check-qa", help="obstruction report plus certificate search")
    pd_args(p)
    p.add_argument("--budget", type=int, default=10_000, help="certifier node budget")
    p.set_defaults(func=cmd_check_qa)

    p = sub.add_parser("kanenobu", help="gap criterion for the Kanenobu knot K(p,q)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_kanenobu)

    p = sub.add_parser("corpus", help="bundled fixture sweep")
    p.add_argument("action", choices=["run"])
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be at least 1")
    try:
        return args.func(args)
    except (PDError, InputError, CrossingLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
