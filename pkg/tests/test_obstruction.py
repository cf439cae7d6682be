import dataclasses
from itertools import product

import pytest

from qalink.diagram import parse_pd
from qalink.generate import braid_closure, torus2
from qalink.khovanov import BigradedDims
from qalink.laurent import HalfLaurent
from qalink.obstruction import (NO_OBSTRUCTION, NOT_QA, CertNode, QACertificate, det_bound_check,
                                kanenobu_jones, kanenobu_verdict, obstruction_report, qa_certify,
                                report_from_invariants, validate_certificate)
from qalink.skein import jones


def test_trefoil_report(trefoil):
    rep = obstruction_report(trefoil)
    assert rep.verdict == NO_OBSTRUCTION
    assert len(rep.checks) == 7
    assert all(c.status == "satisfied" for c in rep.checks)


def test_kanenobu_report():
    rep = report_from_invariants(kanenobu_jones(4, 4))
    assert rep.verdict == NOT_QA
    assert rep["jones_gaps"].status == "violated"
    assert rep["thinness"].status == "inapplicable"


def test_artificial_differential_gap():
    # thin for sigma = 0 but with an empty stretch of two columns
    h = BigradedDims({(0, -1): 1, (0, 1): 1, (3, 5): 1, (4, 9): 1})
    rep = report_from_invariants(HalfLaurent.constant(1), h, 0, {0: 2})
    assert rep["differential_gaps"].status == "violated"
    assert rep["differential_gaps"].witness == [{"start": 1, "length": 2, "step": 1}]
    assert rep.verdict == NOT_QA


def test_report_json_fields(trefoil):
    data = obstruction_report(trefoil).to_json()
    assert set(data) == {"verdict", "checks"}
    assert all(set(c) == {"check", "status", "witness"} for c in data["checks"])


def test_kanenobu_examples():
    assert kanenobu_verdict(4, 4).verdict == NOT_QA
    assert kanenobu_verdict(3, 3).verdict == "no_verdict"
    r = kanenobu_verdict(0, 0)
    assert r.verdict == "no_verdict" and r.gaps == [] and r.det == 25


def test_kanenobu_sweep():
    for p, q in product(range(-12, 13), repeat=2):
        s = abs(p + q)
        if s <= 12:
            assert (kanenobu_verdict(p, q).verdict == NOT_QA) == (s > 6)
            assert kanenobu_verdict(p, q).det == 25


def test_kanenobu_base_is_double_figure_eight():
    # K(0,0) is 4_1 # 4_1
    d = braid_closure([1, -2, 1, -2, 3, -4, 3, -4])
    assert jones(d) == kanenobu_jones(0, 0)


def test_det_bound(fx, trefoil):
    assert det_bound_check(jones(trefoil)) == (3, 3, True)
    assert det_bound_check(HalfLaurent.constant(1)) == (1, 1, True)
    lhs, det, holds = det_bound_check(kanenobu_jones(4, 4))
    assert (lhs, det, holds) == (7, 25, True)
    for d in fx.values():
        assert det_bound_check(jones(d))[2]


def test_certify_examples(trefoil):
    cert = qa_certify(parse_pd("U1"))
    assert cert.status == "certified" and cert.root.is_leaf
    cert = qa_certify(torus2(2))
    assert cert.root.det == 2 and [c.det for c in cert.root.children] == [1, 1]
    cert = qa_certify(trefoil)
    assert cert.root.det == 3 and sorted(c.det for c in cert.root.children) == [1, 2]
    assert validate_certificate(cert, trefoil) == []


def test_certify_fixtures(fx):
    for name, d in fx.items():
        cert = qa_certify(d, budget=10_000)
        assert cert.status == "certified", name
        assert validate_certificate(cert, d) == []
        assert obstruction_report(d).verdict == NO_OBSTRUCTION


def _monotone(node):
    for child in node.children:
        assert child.det < node.det
        _monotone(child)


def test_certificate_monotone(fx):
    _monotone(qa_certify(fx["8_18"]).root)


def test_validator_catches_tampering(trefoil):
    cert = qa_certify(trefoil)
    bad_det = dataclasses.replace(cert.root, det=4)
    assert validate_certificate(QACertificate(bad_det, 0))
    left, right = cert.root.children
    swapped = dataclasses.replace(cert.root, children=(right, left))
    assert validate_certificate(QACertificate(swapped, 0))
    fake_leaf = CertNode("U2", 1)
    assert validate_certificate(QACertificate(fake_leaf, 0))


def test_certifier_budget_and_split_links():
    cert = qa_certify(braid_closure([1, -2] * 4), budget=2)
    assert cert.status == "indeterminate" and "budget" in cert.reason
    assert qa_certify(parse_pd("U2")).status == "indeterminate"
    with pytest.raises(ValueError):
        qa_certify(parse_pd("U1"), budget=0)
