import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgr.apartment import AffineRoot
from twistgr.iwahori_weyl import IWError, act, affine_weyl_group, reflection, simple_reflections

TYPES = ["A1~1", "A2~1", "A2~2", "C2~1", "G2~1", "A3~2", "A4~2", "D4~3"]


def test_generators():
    assert len(simple_reflections("A1~1")) == 2
    W = affine_weyl_group("A2~2")
    assert W.n_gens == 2
    assert {(w.gradient, w.level) for w in W.walls} == {((1,), 0), ((-2,), Fraction(1, 2))}
    assert act(W.s(1), (Fraction(1, 8),)) == (Fraction(-1, 8),)


@pytest.mark.parametrize("type_id", TYPES)
def test_involutions(type_id):
    W = affine_weyl_group(type_id)
    for g in W.gens:
        assert (g * g).is_identity
        assert W.length(g) == 1


def test_lengths():
    W = affine_weyl_group("A1~1")
    assert W.length(W.e) == 0
    t = W.translation((1,))
    assert W.length(t) == 2 and W.reduced_word(t) == (0, 1)
    assert W.length(W.from_word([0, 1, 0])) == 3


def test_bruhat_examples():
    W = affine_weyl_group("A1~1")
    s0, s1 = W.s(0), W.s(1)
    assert W.bruhat_leq(s0, s1 * s0) and W.bruhat_leq(s1, s1 * s0)
    assert not W.bruhat_leq(s0 * s1, s1 * s0)


@pytest.mark.parametrize("type_id", ["A1~1", "A2~1", "A2~2", "C2~1"])
def test_bruhat_is_a_partial_order(type_id):
    W = affine_weyl_group(type_id)
    elems = W.elements_up_to(4 if type_id != "A1~1" else 5)
    for u, w in itertools.product(elems, repeat=2):
        assert W.bruhat_leq(W.e, w)
        if W.bruhat_leq(u, w) and W.bruhat_leq(w, u):
            assert u == w
        assert W.bruhat_leq(u, w) == W.bruhat_leq_lifting(u, w)
        assert W.richardson_nonempty(u, w) == W.bruhat_leq(u, w)


def test_poincare_series():
    assert [len(affine_weyl_group("A2~1").elements_of_length(k)) for k in range(5)] == [1, 3, 6, 9, 12]
    assert [len(affine_weyl_group("C2~1").elements_of_length(k)) for k in range(5)] == [1, 3, 5, 8, 11]
    assert [len(affine_weyl_group("A2~2").elements_of_length(k)) for k in range(5)] == [1, 2, 2, 2, 2]


def test_I_w_examples():
    W = affine_weyl_group("A1~1")
    assert W.I_w(W.e) == set()
    assert W.I_w(W.s(0)) == {AffineRoot((-1,), Fraction(1))}


@pytest.mark.parametrize("type_id", ["A1~1", "A2~1", "A2~2"])
def test_I_w_cardinality(type_id):
    W = affine_weyl_group(type_id)
    n = W.n_gens
    facets = [None] + [c for k in range(1, n) for c in itertools.combinations(range(n), k)]
    for f in facets:
        for w in W.coset_reps(6, f):
            assert len(W.I_w(w, f)) == W.length(w)
    with pytest.raises(IWError):
        W.I_w(W.s(1), (0,))


def test_picard_rank():
    W = affine_weyl_group("A1~1")
    assert W.picard_rank(W.e) == 0
    assert W.picard_rank(W.s(0) * W.s(1)) == 2
    G = affine_weyl_group("A2~1")
    elems = G.elements_up_to(5)
    for u, w in itertools.product(elems, repeat=2):
        if G.bruhat_leq(u, w):
            assert G.picard_rank(u) <= G.picard_rank(w)


def test_admissible_sets():
    W = affine_weyl_group("A1~1")
    assert W.admissible_set((0,)) == [W.e]
    adm = W.admissible_set((1,))
    assert len(adm) == 5
    assert set(adm) == {W.e, W.s(0), W.s(1), W.translation((1,)), W.translation((-1,))}
    assert len(W.hasse_edges(adm)) == 6


@pytest.mark.parametrize("type_id,mu", [("A2~1", (1, 1)), ("A2~1", (1, 2)), ("C2~1", (1, 1)), ("A2~2", (Fraction(1, 2),))])
def test_admissible_sets_are_lower(type_id, mu):
    W = affine_weyl_group(type_id)
    for facet in [None, (0,), tuple(range(1, W.n_gens))]:
        adm = set(W.admissible_set(mu, facet))
        for x in adm:
            assert W.quotient_lower_interval(x, facet) <= adm


def test_non_lattice_coweight_is_rejected():
    with pytest.raises(IWError):
        affine_weyl_group("A2~2").translation((Fraction(1, 3),))


def test_schubert_intersection_examples():
    W = affine_weyl_group("A1~1")
    s0, s1 = W.s(0), W.s(1)
    assert W.schubert_intersection([s0 * s1, s1 * s0]).maxima == (s0, s1)
    w = W.from_word([0, 1, 0])
    assert W.schubert_intersection([w]).maxima == (w,)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), max_size=6), st.lists(st.integers(0, 2), max_size=6))
def test_schubert_intersection_property(a, b, c):
    W = affine_weyl_group("A2~1")
    ws = [W.from_word(x) for x in (a, b, c)]
    res = W.schubert_intersection(ws)
    common = W.lower_interval(ws[0]) & W.lower_interval(ws[1]) & W.lower_interval(ws[2])
    assert frozenset().union(*(W.lower_interval(v) for v in res.maxima)) == common
    assert not any(x != y and W.bruhat_leq(x, y) for x in res.maxima for y in res.maxima)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_length_and_reduced_words(type_id, data):
    W = affine_weyl_group(type_id)
    word = data.draw(st.lists(st.integers(0, W.n_gens - 1), max_size=7))
    w = W.from_word(word)
    rw = W.reduced_word(w)
    assert W.from_word(rw) == w and len(rw) == W.length(w) <= len(word)
    assert W.length(w.inverse()) == W.length(w)
    assert len(W.inversions(w)) == W.length(w)


def test_reflection_fixes_its_wall():
    r = reflection("A2~2", (-2,), Fraction(1, 2))
    assert r((Fraction(1, 4),)) == (Fraction(1, 4),)
    assert (r * r).is_identity
