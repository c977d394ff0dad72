"""The eleven acceptance criteria, each at its stated bound.

Every test records a ``PASS``/``FAIL`` line that is printed in the terminal
summary, and also echoes it to stdout (visible with ``-s``).
"""
from contextlib import contextmanager
from fractions import Fraction

from conftest import ACCEPTANCE_LINES

from twistgr import checks
from twistgr.demazure_km import (
    central_charge_matrix,
    coefficient_ratios,
    divided_power_integrality,
    loop_model,
    span_test,
)
from twistgr.iwahori_weyl import affine_weyl_group
from twistgr.rank_one_models import CS, TITS, integrality_audit
from twistgr.root_data import catalogue, relative_datum


@contextmanager
def criterion(n, text):
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_criterion_01_steinberg_sign():
    with criterion(1, "SL3 involution signs eps(a) = eps(b) = 1, eps(a+b) = -1"):
        r = checks.check_steinberg_signs()
        assert r.passed
        assert r.details == {"(1, 0)": 1, "(0, 1)": 1, "(1, 1)": -1}


def test_criterion_02_sl2_exchange():
    with criterion(2, "SL2 exchange exact on 100 random rational pairs"):
        r = checks.check_sl2_exchange(samples=100, seed=0)
        assert r.passed and r.details["samples"] == 100


def test_criterion_03_su3_exchange_and_integrality():
    with criterion(3, "SU3 exchange; Tits coordinates free of 2, CS control shows a 2-denominator"):
        assert checks.check_su3_exchange(samples=100, seed=0).passed
        assert checks.check_tits_integrality(TITS).passed
        control = integrality_audit("A2~2", (1,), CS)
        assert not control.passed
        assert control.witnesses and all(("/2" in w or "/4" in w) for _, w in control.witnesses)
        assert not checks.check_tits_integrality(CS).passed


def test_criterion_04_pluriel_group():
    with criterion(4, "pluriel group law, inverse, flavor_iso homomorphism, mod-2 commutation"):
        r = checks.check_pluriel(samples=100, seed=0)
        assert r.passed, r.details
        assert r.details["multipliable_pairs"] > 0


def test_criterion_05_affine_roots_cross_oracle():
    with criterion(5, "loop model weights = level sets for every type of rank <= 4, N = 5"):
        types = catalogue(4)
        assert len(types) >= 20
        r = checks.check_affine_roots(level_bound=5, types=types)
        assert r.passed, r.details
        dims = loop_model("A2~2", 2).level_dimensions()
        assert all(v == (3 if k.denominator == 1 else 5) for k, v in dims.items())
        assert {k.denominator for k in dims} == {1, 2}


def test_criterion_06_coxeter():
    with criterion(6, "|I_w| = l(w) for l <= 6; word-independent Bruhat order; Richardson = Bruhat"):
        r = checks.check_coxeter(length_bound=6, types=("A1~1", "A2~1", "A2~2"))
        assert r.passed, r.details


def test_criterion_07_admissible():
    with criterion(7, "Adm(a^vee) in A1~1 has the 5 expected elements; admissible sets are lower sets"):
        W = affine_weyl_group("A1~1")
        adm = set(W.admissible_set((1,)))
        assert adm == {W.e, W.s(0), W.s(1), W.translation((1,)), W.translation((-1,))}
        r = checks.check_admissible(length_bound=6)
        assert r.passed, r.details
        assert all(r.details[t] for t in r.details)


def test_criterion_08_schubert():
    with criterion(8, "intersection of lower intervals = union over the antichain, up to length 5"):
        r = checks.check_schubert(length_bound=5)
        assert r.passed, r.details


def test_criterion_09_span_dichotomy():
    with criterion(9, "span over Q always; over F2 fails exactly for non-reduced types at half-integers; divided powers"):
        failing = []
        for t in catalogue():
            alg = loop_model(t, 2)
            assert span_test(alg, "Q").passed
            rep = span_test(alg, "F2")
            if not rep.passed:
                failing.append(t)
                assert set(rep.deficiency) == {Fraction(k, 2) for k in (-3, -1, 1, 3)}
                assert all(level.denominator == 2 for level, _ in rep.missing)
        assert sorted(failing) == sorted(t for t in catalogue() if not relative_datum(t).is_reduced())
        assert {"A2~2", "A4~2", "A6~2"} <= set(failing)
        assert checks.check_span().passed
        for t in checks.DIVIDED_POWER_TYPES:
            assert divided_power_integrality(loop_model(t, 3), 4).passed, t


def test_criterion_10_demazure():
    with criterion(10, "Demazure characters word-independent for l <= 4; D_i idempotent on 50 characters"):
        r = checks.check_demazure(length_bound=4, samples=50, seed=0, types=("A1~1", "A2~2"))
        assert r.passed, r.details


def test_criterion_11_central_charge():
    with criterion(11, "coroot matrix: cokernel Z, unimodular projection; twisted ratios in {1, e}, balanced"):
        r = checks.check_central_charge()
        assert r.passed, r.details
        for t in catalogue():
            cc = central_charge_matrix(t)
            assert cc.cokernel_free_rank_one and cc.projection_unimodular
            e = relative_datum(t).e
            if e > 1:
                cr = coefficient_ratios(t)
                assert set(cr.ratios) <= {1, e} and cr.balanced
