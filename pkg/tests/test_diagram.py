import json

import pytest
from hypothesis import given, settings, strategies as st

from qalink.diagram import LinkDiagram, PDError, parse_pd, planar_code, simplify
from qalink.generate import braid_closure, torus2, twist

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def test_parse_trefoil(trefoil):
    assert len(trefoil) == 3
    assert trefoil.n_components == 1


def test_parse_unknot():
    d = parse_pd("U1")
    assert len(d) == 0 and d.n_components == 1


@pytest.mark.parametrize("text", ["X(1,2,3)", "", "   ", "X(1,2,3,4)", "X(1,1,2,3) X(2,3,4,5)",
                                  "X(a,b,c,d)", "Y(1,2,3,4)"])
def test_parse_errors(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_parse_separators_and_brackets():
    a = parse_pd(TREFOIL)
    b = parse_pd("X[1,4,2,5]; X[3,6,4,1], X[5,2,6,3]")
    assert a == b


@pytest.mark.parametrize("text", ["X(1,5,2,4) X(3,6,4,1) X(5,2,6,3)", "X(5,6,5,6)"])
def test_nonplanar_rejected(text):
    # every label twice and strands close, but one crossing is listed clockwise
    with pytest.raises(PDError, match="planar"):
        parse_pd(text)


def test_crossing_counts(trefoil):
    assert trefoil.crossing_counts() == (3, 0, -3)
    assert parse_pd("U1").crossing_counts() == (0, 0, 0)
    assert trefoil.mirror().crossing_counts() == (0, 3, 3)


def test_components():
    assert parse_pd(TREFOIL + " U1").n_components == 2
    assert parse_pd("X(4,1,3,2) X(2,3,1,4)").n_components == 2


def test_linking(fx):
    assert fx["hopf+"].linking_matrix() == [[0, 1], [1, 0]]
    assert fx["hopf-"].linking_matrix() == [[0, -1], [-1, 0]]
    assert parse_pd("U2").linking_matrix() == [[0, 0], [0, 0]]
    assert fx["trefoil"].linking_matrix() == [[0]]


def test_orientation_override(fx):
    d = parse_pd("X(4,1,3,2) X(2,3,1,4) O(1)")
    assert d.signs == (1, 1)
    assert d.linking_matrix() == [[0, 1], [1, 0]]
    assert parse_pd(d.to_pd()) == d
    with pytest.raises(PDError):
        parse_pd("X(4,1,3,2) X(2,3,1,4) O(9)")


def test_smooth_trefoil(trefoil):
    for c in range(3):
        res = trefoil.smooth(c)
        assert len(res.zero) == len(res.one) == 2
        # negative crossing: the B-smoothing keeps the orientation and is the Hopf link
        assert res.oriented == 1
        assert res.one.n_components == 2 and res.zero.n_components == 1
        assert res.e == -2


def test_smooth_positive_hopf(fx):
    for c in range(2):
        res = fx["hopf+"].smooth(c)
        assert res.oriented == 0 and res.sign == 1
        assert len(res.zero) == len(res.one) == 1
        assert res.zero.n_components == res.one.n_components == 1


def test_smooth_kink():
    d = parse_pd("X(1,2,2,1)")
    res = d.smooth(0)
    assert len(res.zero) == len(res.one) == 0
    assert {res.zero.n_components, res.one.n_components} == {1, 2}


def test_smooth_bad_id(trefoil):
    with pytest.raises(IndexError):
        trefoil.smooth(3)


def test_mirror(trefoil):
    assert trefoil.mirror().mirror() == trefoil
    assert trefoil.mirror().writhe == 3
    assert parse_pd("U1").mirror() == parse_pd("U1")


def test_json_round_trip(fx):
    for d in fx.values():
        data = json.loads(json.dumps(d.to_json()))
        back = LinkDiagram.from_json(data)
        assert back == d.normalized()
        assert parse_pd(data["pd"]) == back if d.crossings else True


def test_generators():
    assert torus2(2).n_components == 2
    t3 = torus2(3)
    assert t3.n_components == 1 and len(t3) == 3
    tre = parse_pd(TREFOIL)
    assert twist(tre, 0, 1, "vertical") == tre
    assert len(twist(tre, 0, 4, "horizontal")) == 6
    with pytest.raises(ValueError):
        torus2(0)
    with pytest.raises(ValueError):
        twist(tre, 0, 0)


def test_braid_closure_free_strand():
    d = braid_closure([1, 1], 3)
    assert d.free_loops == 1 and d.n_components == 3


def test_simplify_removes_kinks_and_bigons():
    assert len(simplify(parse_pd("X(1,2,2,1)"))) == 0
    # the 2-crossing unknot left by smoothing the trefoil
    res = parse_pd(TREFOIL).smooth(0)
    s = simplify(res.zero)
    assert len(s) == 0 and s.n_components == 1
    assert len(simplify(parse_pd(TREFOIL))) == 3


def test_planar_code_relabel_invariant(trefoil):
    relabel = {e: 100 - e for e in range(1, 7)}
    moved = [tuple(relabel[e] for e in cr) for cr in reversed(trefoil.crossings)]
    assert planar_code(moved) == planar_code(trefoil.crossings)
    assert planar_code(trefoil.mirror().crossings) != planar_code(trefoil.crossings)


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=8)


@settings(max_examples=60, deadline=None)
@given(words)
def test_signs_and_components(word):
    d = braid_closure(word, 4)
    x, y, w = d.crossing_counts()
    assert x + y == len(d) and w == y - x
    count, owner = d.components()
    assert count == len(set(owner.values())) + d.free_loops
    lk = d.linking_matrix()
    assert all(lk[i][j] == lk[j][i] for i in range(count) for j in range(count))
    assert all(lk[i][i] == 0 for i in range(count))
    assert d.mirror().mirror() == d
    for c in range(len(d)):
        res = d.smooth(c)
        assert len(res.zero) == len(res.one) == len(d) - 1
