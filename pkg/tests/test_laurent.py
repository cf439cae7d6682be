from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qalink.laurent import (GapRecord, HalfLaurent, breadth, determinant_eval, gap_between,
                            gaps_from_support, gaps_of)

TREFOIL_V = HalfLaurent({-4: -1, -3: 1, -1: 1})


def poly(terms, var="t"):
    return HalfLaurent(terms, var)


def test_ring_examples():
    assert poly({0: 1, 1: 1}, "A") + poly({1: -1}, "A") == 1
    assert poly({-1: 1, 1: 1}, "q") * poly({-2: 1}, "q") == poly({-3: 1, -1: 1}, "q")


def test_substitution_to_q():
    out = TREFOIL_V.subs(Fraction(1, 2), 1, sign=-1, var="q")
    assert out == poly({-8: -1, -6: 1, -2: 1}, "q")


def test_substitution_signs_odd_powers():
    # t^(1/2) -> -q sends t^(-5/2) to -q^-5
    v = poly({Fraction(-5, 2): 1})
    assert v.subs(Fraction(1, 2), 1, sign=-1, var="q") == poly({-5: -1}, "q")


def test_substitution_off_lattice():
    with pytest.raises(ValueError):
        poly({1: 1}).subs(2, 1)
    with pytest.raises(ValueError):
        poly({1: 1}).subs(1, Fraction(1, 4))


def test_text_form():
    assert str(TREFOIL_V) == "-t^-4 + t^-3 + t^-1"
    assert str(poly({Fraction(-5, 2): -1, Fraction(-1, 2): -1})) == "-t^(-5/2) - t^(-1/2)"
    assert str(poly({})) == "0"
    assert str(poly({0: 3, 1: -2})) == "3 - 2t"


def test_json_round_trip():
    v = poly({Fraction(-5, 2): -1, 3: 4})
    assert HalfLaurent.from_json(v.to_json()) == v


def test_determinant_examples():
    assert determinant_eval(TREFOIL_V) == 3
    assert determinant_eval(HalfLaurent.constant(1)) == 1
    assert determinant_eval(poly({Fraction(-1, 2): -1, Fraction(-5, 2): -1})) == 2


def test_determinant_rejects_mixed_lattice():
    with pytest.raises(ValueError):
        determinant_eval(poly({0: 1, Fraction(1, 2): 1}))


def test_breadth_examples():
    assert breadth(TREFOIL_V) == 3
    assert breadth(HalfLaurent.constant(1)) == 0
    assert breadth(poly({-8: -1, -6: 1, -2: 1}, "q")) == 6
    with pytest.raises(ValueError):
        breadth(poly({}))


def test_gaps_examples():
    assert gaps_of(TREFOIL_V) == [GapRecord(Fraction(-2), 1, Fraction(1))]
    assert gaps_of(poly({0: 1, 1: 1})) == []
    (g,) = gaps_of(poly({0: 1, 4: 1}))
    assert g.length == 3 and g.start == 1 and g.stop == 3


def test_gaps_off_lattice():
    with pytest.raises(ValueError):
        gaps_from_support([0, 1, 2], 2)


def test_gap_between_examples():
    assert gap_between(poly({-4: 1}, "A"), poly({4: 1}, "A")).length == 7
    assert gap_between(poly({0: 1}, "A"), poly({4: 1}, "A")).length == 3
    assert gap_between(poly({0: 1, 2: 1}, "A"), poly({1: 1}, "A")) is None
    assert gap_between(poly({0: 1}), poly({1: 1})) is None


small = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=5).map(lambda d: HalfLaurent(d))


@given(small, small, small)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == 0


@given(st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=5))
def test_breadth_multiplicative(a, b):
    f, g = HalfLaurent(a), HalfLaurent(b)
    if f.is_zero() or g.is_zero():
        return
    assert breadth(f * g) == breadth(f) + breadth(g)


@given(st.dictionaries(st.integers(-6, 6), st.integers(-3, 3).filter(bool), min_size=1, max_size=6))
def test_gap_flanks_nonzero(terms):
    f = HalfLaurent(terms)
    for g in gaps_of(f):
        assert f.coeff(g.start - 1) != 0 and f.coeff(g.stop + 1) != 0
        assert all(f.coeff(g.start + k) == 0 for k in range(g.length))


@given(st.dictionaries(st.integers(-6, 6), st.integers(-3, 3), max_size=6))
def test_determinant_mirror_invariant(terms):
    # squares of polynomials evaluate to perfect squares, so they are valid inputs
    f = HalfLaurent(terms)
    v = f * f.invert_variable()
    assert determinant_eval(v) == determinant_eval(v.invert_variable())
