from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistgr.demazure_km import affine_roots_from_loop_model, loop_model
from twistgr.rank_one_models import valuation_level_set
from twistgr.root_data import (
    DIVISIBLE,
    MULTIPLIABLE,
    ND_NM,
    DiagramAutomorphism,
    RootDataError,
    affine_simple_roots,
    alcove_vertices,
    catalogue,
    evaluate,
    fold,
    lattice_gcd,
    parse_type,
    relative_cartan,
    relative_datum,
    root_label,
    root_system,
    special_points,
)

half = Fraction(1, 2)


def test_fold_sl3():
    d = fold(root_system("A", 2), DiagramAutomorphism((1, 0)))
    assert sorted(d.roots) == [(-2,), (-1,), (1,), (2,)]
    assert d.classify((1,)) == MULTIPLIABLE
    assert d.classify((2,)) == DIVISIBLE
    assert not d.is_reduced()


def test_fold_swap_of_two_sl2():
    d = relative_datum("Res2A1")
    assert sorted(d.roots) == [(-1,), (1,)]
    assert d.extension_degree((1,)) == 2


def test_fold_sl4_gives_c2():
    d = relative_datum("A3~2")
    assert d.rank == 2 and d.is_reduced()
    assert len(d.roots) == 8
    assert all(d.classify(a) == ND_NM for a in d.roots)
    cart = relative_cartan(d)
    assert sorted([cart[0][1], cart[1][0]]) == [-2, -1]


def test_level_sets():
    assert str(relative_datum("A1~1").level_set((1,))) == "Z"
    d = relative_datum("A2~2")
    for a in [(1,), (-1,)]:
        assert d.level_set(a).offset == 0 and d.level_set(a).step == half
    for a in [(2,), (-2,)]:
        assert d.level_set(a).offset == half and d.level_set(a).step == 1
    r = relative_datum("Res2A1").level_set((1,))
    assert r.offset == 0 and r.step == half


def test_level_sets_against_valuations():
    for t in ["A1~1", "Res2A1", "A2~2", "A3~2", "A4~2"]:
        d = relative_datum(t)
        for a in d.positive_roots:
            assert valuation_level_set(d, a) == d.level_set(a), (t, a)


def test_level_sets_against_loop_model():
    alg = loop_model("A2~2", 2)
    lr = affine_roots_from_loop_model(alg)
    assert sorted(lr.real[(2,)]) == [Fraction(-3, 2), -half, half, Fraction(3, 2)]
    assert sorted(lr.real[(1,)]) == [Fraction(k, 2) for k in range(-4, 5)]


def test_special_points():
    sp = {s.kind: s for s in special_points(relative_datum("A2~2"))}
    assert sorted(sp["nd"].residual) == [(-1,), (1,)]
    assert sorted(sp["nm"].residual) == [(-2,), (2,)]
    a1 = special_points(relative_datum("A1~1"))[0]
    assert a1.point == (0,) and sorted(a1.residual) == [(-1,), (1,)]


def test_alcove_of_a2_twisted():
    d = relative_datum("A2~2")
    verts = alcove_vertices(d)
    assert verts == [(0,), (Fraction(1, 4),)]
    # length 1/2 measured by the divisible root 2a
    assert evaluate((2,), verts[1]) - evaluate((2,), verts[0]) == half
    assert len(affine_simple_roots(d)) == 2


def test_parse_type():
    assert str(parse_type("A2^(2)")) == "A2~2"
    assert str(parse_type("A1~")) == "A1~1"
    assert parse_type("A3~2").kac_name == "A_3^(2)"
    for bad in ["bogus", "A2~5", "E7~2", "Res3A1"]:
        with pytest.raises(RootDataError):
            parse_type(bad)


def test_root_label_and_gcd():
    assert root_label((1, 2)) == "a+2b"
    assert root_label((-1, 0)) == "-a"
    assert lattice_gcd([half, Fraction(1, 3)]) == Fraction(1, 6)


@pytest.mark.parametrize("type_id", catalogue())
def test_root_system_axioms(type_id):
    d = relative_datum(type_id)
    roots = set(d.roots)
    for a in d.roots:
        assert tuple(-x for x in a) in roots
        for b in d.roots:
            assert d.reflect(a, b) in roots
            assert d.pairing(b, a).denominator == 1
    assert len(d.positive_roots) * 2 == len(d.roots)
    assert len(affine_simple_roots(d)) == d.rank + 1


@pytest.mark.parametrize("type_id", catalogue())
def test_level_set_progressions(type_id):
    d = relative_datum(type_id)
    for a in d.roots:
        ls = d.level_set(a)
        assert 0 <= ls.offset < ls.step
        neg = tuple(-x for x in a)
        assert d.level_set(neg) == ls


@given(st.sampled_from(catalogue(4)), st.fractions(min_value=-5, max_value=5, max_denominator=6))
def test_least_above_is_tight(type_id, x):
    d = relative_datum(type_id)
    for a in d.positive_roots:
        ls = d.level_set(a)
        y = ls.least_above(x)
        assert y >= x and y in ls and y - ls.step < x
