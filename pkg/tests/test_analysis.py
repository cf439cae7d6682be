import pytest
from hypothesis import given, settings, strategies as st

from qalink.analysis import (KnightMoveError, breadths, coefficients_b, diagonal_profile,
                             differential_gaps, knight_move_decompose, lee_dims, lee_dims_of,
                             lee_polynomial, lower_diagonal_a, quantum_gaps, reconstruct_jones,
                             thinness)
from qalink.diagram import parse_pd
from qalink.generate import braid_closure
from qalink.goeritz import goeritz_data, inertia, signature
from qalink.khovanov import BigradedDims, TwoVarPoly, homology, kh_polynomial
from qalink.laurent import gaps_of
from qalink.skein import jones

TABLE1 = BigradedDims({(-3, -9): 1, (-2, -5): 1, (0, -3): 1, (0, -1): 1})


def test_signature_examples(fx, trefoil):
    assert signature(trefoil) == 2
    assert signature(parse_pd("U1")) == 0
    assert signature(trefoil.mirror()) == -2
    assert signature(fx["hopf+"]) == -1
    assert signature(fx["figure_eight"]) == 0
    for n in range(1, 8):
        assert signature(fx[f"torus2_{n}"]) == -(n - 1)


def _sigma_both(d):
    out = []
    for shade in (True, False):
        m, mu = goeritz_data(d.crossings, d.signs, shade)
        p, n, _ = inertia(m)
        out.append(mu - (p - n))
    return out


def test_signature_independent_of_colouring(fx):
    for d in fx.values():
        if d.crossings:
            a, b = _sigma_both(d)
            assert a == b


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=9))
def test_signature_random_braids(word):
    d = braid_closure(word, 3)
    if len(d.split_groups) == 1 and not d.free_loops:
        a, b = _sigma_both(d)
        assert a == b == signature(d)
    assert signature(d.mirror()) == -signature(d)


def test_inertia():
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[2, 1], [1, 2]]) == (2, 0, 0)
    assert inertia([[1, 1], [1, 1]]) == (1, 0, 1)
    assert inertia([]) == (0, 0, 0)


def test_thinness():
    assert thinness(TABLE1, 2) == (True, [])
    assert thinness(homology(parse_pd("U1")), 0)[0]
    bad = BigradedDims({(0, -1): 1, (0, 1): 1, (1, 5): 1})
    ok, cells = thinness(bad, 0)
    assert not ok and cells == [(1, 5)]


def test_gaps(fx):
    (g,) = differential_gaps(TABLE1)
    assert g.start == -1 and g.length == 1
    (g,) = quantum_gaps(TABLE1)
    assert g.start == -7 and g.length == 1
    u = homology(parse_pd("U1"))
    assert differential_gaps(u) == [] and quantum_gaps(u) == []
    assert differential_gaps(homology(fx["figure_eight"])) == []
    assert all(g.length == 1 for g in quantum_gaps(homology(fx["torus2_7"])))
    with pytest.raises(ValueError):
        differential_gaps(BigradedDims())


def test_breadths():
    assert breadths(TABLE1) == (3, 8, True)
    assert breadths(homology(parse_pd("U1"))) == (0, 2, True)
    assert breadths(BigradedDims({(0, 0): 1, (1, 12): 1}))[2] is False


def test_lee_dims(fx):
    assert lee_dims(1, [[0]]) == {0: 2}
    assert lee_dims(2, [[0, 1], [1, 0]]) == {0: 2, 2: 2}
    assert lee_dims(2, [[0, 0], [0, 0]]) == {0: 4}
    for d in fx.values():
        lee = lee_dims_of(d)
        assert sum(lee.values()) == 2 ** d.n_components
        assert all(i % 2 == 0 and v % 2 == 0 for i, v in lee.items())


def test_lee_polynomial():
    assert lee_polynomial(2, 1, [[0]]) == TwoVarPoly({(0, -3): 1, (0, -1): 1})
    assert lee_polynomial(0, 1, [[0]]) == TwoVarPoly({(0, -1): 1, (0, 1): 1})
    assert lee_polynomial(-1, 2, [[0, 1], [1, 0]]) == TwoVarPoly({(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1})


def test_knight_move_trefoil():
    km = knight_move_decompose(TABLE1, {0: 2}, 2)
    assert km.pawn == {(0, -3): 1, (0, -1): 1}
    assert km.pairs == (((-3, -9), (-2, -5), 1),)
    assert str(km.kh_prime) == "T^-3"


def test_knight_move_unknot_and_figure_eight(fx):
    km = knight_move_decompose(homology(parse_pd("U1")), {0: 2}, 0)
    assert km.kh_prime.is_zero()
    d = fx["figure_eight"]
    km = knight_move_decompose(homology(d), lee_dims_of(d), 0)
    assert len(km.pairs) == 2 and all(c > 0 for _, c in km.kh_prime.items())


def test_knight_move_failures():
    with pytest.raises(KnightMoveError):
        knight_move_decompose(TABLE1, {0: 2}, 0)
    broken = BigradedDims({(-3, -9): 1, (0, -3): 1, (0, -1): 1})
    with pytest.raises(KnightMoveError):
        knight_move_decompose(broken, {0: 2}, 2)


def test_lower_diagonal_a(fx):
    assert lower_diagonal_a(TABLE1, {0: 2}) == [1, 0, 0, 0]
    assert lower_diagonal_a(homology(parse_pd("U1")), {0: 2}) == [0]
    d = fx["hopf+"]
    h = homology(d)
    assert lower_diagonal_a(h, lee_dims_of(d)) == [0, 0, 0]


def test_coefficients_b(fx):
    prof = diagonal_profile(TABLE1, 2, {0: 2})
    assert coefficients_b(prof, {0: 2}) == {-8: -1, -6: 1, -4: 0, -2: 1}
    u = diagonal_profile(homology(parse_pd("U1")), 0, {0: 2})
    assert coefficients_b(u, {0: 2}) == {0: 1}
    for d in fx.values():
        lee = lee_dims_of(d)
        prof = diagonal_profile(homology(d), signature(d), lee)
        for j, b in coefficients_b(prof, lee).items():
            if b == 0:
                assert prof.b_terms[j] == (0, 0)


def test_reconstruct_jones(fx, trefoil):
    prof = diagonal_profile(TABLE1, 2, {0: 2})
    assert str(reconstruct_jones(prof, {0: 2})) == "-t^-4 + t^-3 + t^-1"
    u = diagonal_profile(homology(parse_pd("U1")), 0, {0: 2})
    assert reconstruct_jones(u, {0: 2}) == 1
    for d in fx.values():
        lee = lee_dims_of(d)
        prof = diagonal_profile(homology(d), signature(d), lee)
        assert reconstruct_jones(prof, lee) == jones(d)


def test_qa_fixture_properties(fx):
    for name, d in fx.items():
        h, sigma, lee = homology(d), signature(d), lee_dims_of(d)
        assert thinness(h, sigma)[0], name
        knight_move_decompose(h, lee, sigma)
        assert breadths(h)[2]
        assert all(g.length == 1 for g in differential_gaps(h) + quantum_gaps(h))
        # gap lengths in homology and in the Jones polynomial agree
        assert sorted(g.length for g in differential_gaps(h)) == sorted(g.length for g in gaps_of(jones(d)))
        # extremal cells sit on the expected diagonals
        assert h[(h.i_min, h.j_min)] and h.j_min - 2 * h.i_min == -sigma - 1
        assert h[(h.i_max, h.j_max)] and h.j_max - 2 * h.i_max == -sigma + 1
        # the Lee pawn reproduces the closed-form Lee polynomial
        km = knight_move_decompose(h, lee, sigma)
        count, _ = d.components()
        assert TwoVarPoly(dict(km.pawn.items())) == lee_polynomial(sigma, count, d.linking_matrix())
