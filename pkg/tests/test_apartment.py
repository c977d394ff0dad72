from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgr.apartment import (
    AffineRoot,
    ApartmentError,
    Facet,
    affine_roots,
    alcove_faces,
    f_omega,
    facet_of,
    flip_levels,
    fundamental_alcove,
    in_closed_alcove,
    levi_datum,
    nonpositive_subset,
    opposition,
    parahoric_subset,
    residual_roots,
    wall_roots,
)
from twistgr.root_data import catalogue, evaluate, relative_datum

half = Fraction(1, 2)
TYPES = ["A1~1", "A2~1", "C2~1", "G2~1", "A2~2", "A3~2", "A4~2", "D4~3", "Res2A1"]


def test_origin_gives_zero_function():
    for t in ["A1~1", "A2~1", "A3~2", "Res2A1"]:
        f = f_omega([(0,) * relative_datum(t).rank], t)
        assert set(f.values()) == {0}
        assert sorted(residual_roots(f)) == sorted(relative_datum(t).roots)


def test_a1_barycenter():
    f = f_omega([(half,)], "A1~1")
    assert f[(1,)] == 0 and f[(-1,)] == 1
    assert residual_roots(f) == []


def test_a2_twisted_origin():
    f = f_omega([(0,)], "A2~2")
    assert f[(1,)] == f[(-1,)] == 0
    assert f[(2,)] == f[(-2,)] == half
    assert sorted(residual_roots(f)) == [(-1,), (1,)]


def test_parahoric_subset_of_a1_alcove():
    got = parahoric_subset(fundamental_alcove("A1~1"), "A1~1", level_bound=3)
    real = {r for r in got if r.is_real}
    want = {AffineRoot((1,), Fraction(n)) for n in range(0, 4)} | {AffineRoot((-1,), Fraction(n)) for n in range(1, 4)}
    assert real == want
    assert {r.level for r in got if not r.is_real} == {1, 2, 3}


def test_origin_facets():
    p = parahoric_subset(facet_of("A1~1", [0]), "A1~1")
    assert AffineRoot((1,), Fraction(0)) in p and AffineRoot((-1,), Fraction(0)) in p
    q = parahoric_subset(facet_of("A2~2", [0]), "A2~2")
    assert AffineRoot((1,), Fraction(0)) in q and AffineRoot((-1,), Fraction(0)) in q
    assert AffineRoot((2,), Fraction(0)) not in q and AffineRoot((-2,), Fraction(0)) not in q


def test_opposition():
    origin = Facet(((Fraction(0),),))
    assert opposition(origin) == origin
    alc = fundamental_alcove("A2~1")
    anti = opposition(alc)
    d = relative_datum("A2~1")
    bary = anti.barycenter
    assert all(evaluate(a, bary) < 0 for a in d.positive_roots)


@pytest.mark.parametrize("type_id", TYPES)
def test_opposition_on_faces(type_id):
    d = relative_datum(type_id)
    for f in alcove_faces(d):
        assert opposition(opposition(f)) == f
        assert parahoric_subset(opposition(f), d) == flip_levels(nonpositive_subset(f, d))


def test_levi_data():
    assert levi_datum(fundamental_alcove("A2~1"), "A2~1").roots == ()
    lv = levi_datum(facet_of("A1~1", [0]), "A1~1")
    assert lv.roots == ((-1,), (1,)) and set(lv.shifts.values()) == {0}
    lv = levi_datum(facet_of("A2~2", [1]), "A2~2")
    assert lv.roots == ((-2,), (2,))
    assert lv.shifts == {(2,): -half, (-2,): half}
    assert lv.weyl_order == 2


@pytest.mark.parametrize("type_id", TYPES)
def test_walls_bound_the_alcove(type_id):
    d = relative_datum(type_id)
    alc = fundamental_alcove(d)
    for w in wall_roots(d):
        assert w(alc.barycenter) > 0
        assert w.level in d.level_set(w.gradient)
        assert sum(1 for v in alc.vertices if w(v) == 0) == d.rank


@pytest.mark.parametrize("type_id", TYPES)
def test_residual_rank_at_vertices(type_id):
    d = relative_datum(type_id)
    for i in range(d.rank + 1):
        lv = levi_datum(facet_of(d, [i]), d)
        assert lv.weyl_order >= 1
        for a in lv.roots:
            assert lv.shifts[a] + lv.shifts[tuple(-x for x in a)] == 0


def test_sets_outside_an_alcove_are_rejected():
    with pytest.raises(ApartmentError):
        parahoric_subset([(Fraction(0),), (Fraction(1),)], "A2~2")
    assert not in_closed_alcove("A1~1", [(Fraction(-1, 3),), (Fraction(1, 3),)])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A1~1", "A2~2", "Res2A1", "A2~1", "A3~2"]), st.data())
def test_f_omega_is_minimal(type_id, data):
    d = relative_datum(type_id)
    x = tuple(data.draw(st.fractions(min_value=-2, max_value=2, max_denominator=5)) for _ in range(d.rank))
    f = f_omega([x], d)
    for a, k in f.items():
        assert evaluate(a, x) + k >= 0
        assert evaluate(a, x) + k - d.level_set(a).step < 0
    for a in d.roots:
        b = tuple(2 * c for c in a)
        if d.is_root(b):
            assert f[a] + f[a] <= f[b] + d.level_set(b).step


@pytest.mark.parametrize("type_id", catalogue(3))
def test_affine_roots_symmetric(type_id):
    rs = set(affine_roots(type_id, 2))
    assert all(-r in rs for r in rs)
