from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgr.demazure_km import (
    DemazureOperators,
    KacMoodyError,
    WeightCharacter,
    affine_gcm,
    affine_roots_from_loop_model,
    central_charge_matrix,
    coefficient_ratios,
    demazure_character,
    divided_power_integrality,
    gcm_from_form,
    gcm_from_loop_model,
    loop_model,
    span_test,
)
from twistgr.iwahori_weyl import affine_weyl_group
from twistgr.root_data import catalogue, relative_datum


def test_untwisted_a1_loop_model():
    alg = loop_model("A1~1", 2)
    assert set(alg.level_dimensions().values()) == {3}
    lr = affine_roots_from_loop_model(alg)
    assert sorted(lr.real[(1,)]) == [-2, -1, 0, 1, 2]
    assert set(lr.imaginary.values()) == {1}


def test_twisted_a2_loop_model():
    alg = loop_model("A2~2", 2)
    dims = alg.level_dimensions()
    for n, k in dims.items():
        assert k == (3 if n.denominator == 1 else 5)
    lr = affine_roots_from_loop_model(alg)
    assert set(lr.real[(1,)]) == {Fraction(k, 2) for k in range(-4, 5)}
    assert set(lr.real[(2,)]) == {Fraction(k, 2) for k in (-3, -1, 1, 3)}
    assert all(m == 1 for lv in lr.real.values() for m in lv.values())


def test_jacobi_identity_in_the_loop_model():
    assert loop_model("A2~2", 3).jacobi_defects() == []
    assert loop_model("A1~1", 3).jacobi_defects() == []


@pytest.mark.parametrize("type_id", catalogue(4))
def test_imaginary_multiplicities(type_id):
    d = relative_datum(type_id)
    lr = affine_roots_from_loop_model(loop_model(type_id, 1))
    assert lr.imaginary[Fraction(1)] == d.rank
    period = sum(lr.imaginary.get(Fraction(j, d.e), 0) for j in range(1, d.e)) + d.rank
    assert period == d.system.rank


def test_gcm_examples():
    g, _ = affine_gcm("A1~1")
    assert g.matrix == ((2, -2), (-2, 2))
    g, real = affine_gcm("A2~2")
    assert {g.matrix[0][1], g.matrix[1][0]} == {-4, -1}
    assert real.check()


@pytest.mark.parametrize("type_id", catalogue())
def test_gcm_is_affine(type_id):
    g, real = affine_gcm(type_id)
    assert g.is_valid() and g.is_affine()
    assert all(m > 0 for m in g.marks) and all(c > 0 for c in g.comarks)
    assert g == gcm_from_form(type_id)
    assert real.check()


@pytest.mark.parametrize("type_id", ["A2~2", "A3~2", "A4~2", "D4~3", "G2~1", "Res2A1"])
def test_gcm_from_brackets_matches_form(type_id):
    assert gcm_from_loop_model(loop_model(type_id, 1)) == gcm_from_form(type_id)


def test_span_examples():
    a2 = loop_model("A2~2", 2)
    assert span_test(a2, "Q").passed
    rep = span_test(a2, "F2")
    assert not rep.passed
    assert rep.missing and all(level.denominator == 2 for level, _ in rep.missing)
    assert span_test(loop_model("A1~1", 2), "F2").passed
    assert span_test(a2, "F3").passed
    with pytest.raises(KacMoodyError):
        span_test(a2, "F5")


def test_divided_powers():
    alg = loop_model("A1~1", 0)
    e = next(b for b in alg.basis if b.gradient == (1,))
    h = next(b for b in alg.basis if not b.is_real)
    v = alg.bracket(alg.vec(e), alg.bracket(alg.vec(e), alg.vec(h)))
    coords = alg.decompose(v)
    assert all((c / 2).denominator == 1 for c in coords.values())
    assert divided_power_integrality(loop_model("A2~2", 3), 4).passed
    rep = divided_power_integrality(alg, 0)
    assert rep.passed and rep.checked == 0


def test_demazure_strings():
    _, real = affine_gcm("A1~1")
    lam = real.fundamental_weight(0)
    a0 = real.roots[0]
    assert demazure_character("A1~1", [0], lam) == WeightCharacter({lam: 1, tuple(x - y for x, y in zip(lam, a0)): 1})
    assert demazure_character("A1~1", [1], lam) == WeightCharacter({lam: 1})
    with pytest.raises(KacMoodyError):
        demazure_character("A1~1", [0], (-1, 0, 0))


@pytest.mark.parametrize("type_id", ["A1~1", "A2~2", "A2~1"])
def test_demazure_word_independence(type_id):
    W = affine_weyl_group(type_id)
    _, real = affine_gcm(type_id)
    for w in W.elements_up_to(4):
        for i in range(real.gcm.size):
            lam = real.fundamental_weight(i)
            chars = [demazure_character(type_id, word, lam) for word in W.reduced_words(w)]
            assert all(c == chars[0] for c in chars)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A1~1", "A2~2", "C2~1"]), st.data())
def test_demazure_idempotent(type_id, data):
    _, real = affine_gcm(type_id)
    ops = DemazureOperators(real)
    terms = data.draw(st.dictionaries(st.tuples(*[st.integers(-3, 3)] * real.rank), st.integers(-3, 3).filter(bool), max_size=4))
    chi = WeightCharacter(terms)
    i = data.draw(st.integers(0, real.gcm.size - 1))
    once = ops.apply(i, chi)
    assert ops.apply(i, once) == once


def test_demazure_character_of_length_two_element():
    _, real = affine_gcm("A1~1")
    lam = real.fundamental_weight(0)
    chi = demazure_character("A1~1", [1, 0], lam)
    assert chi.mass == len(chi.support()) == 4
    assert chi.terms[lam] == 1


def test_central_charge_a1():
    cc = central_charge_matrix("A1~1")
    assert cc.matrix == ((-1,), (1,))
    assert cc.charges == (1, 1)


@pytest.mark.parametrize("type_id", catalogue())
def test_central_charge(type_id):
    cc = central_charge_matrix(type_id)
    assert cc.cokernel_free_rank_one and cc.projection_unimodular and not cc.mixed_signs
    g, _ = affine_gcm(type_id)
    assert cc.charges == g.comarks


def test_coefficient_ratios_a2():
    cr = coefficient_ratios("A2~2")
    assert sorted(cr.ratios) == [1, 2]
    assert cr.balanced
    with pytest.raises(KacMoodyError):
        coefficient_ratios("A2~1")


@pytest.mark.parametrize("type_id", [t for t in catalogue() if relative_datum(t).e > 1])
def test_coefficient_ratios_balanced(type_id):
    cr = coefficient_ratios(type_id)
    assert cr.in_range and cr.balanced
    assert len({r * g for r, g in zip(cr.ratios, cr.degrees)}) == 1
