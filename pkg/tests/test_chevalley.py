import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgr.chevalley import (
    build_chevalley,
    datum_chevalley,
    relative_commutator,
    sl_matrices,
    steinberg_signs,
    tits_exponents,
)
from twistgr.exact_algebra import ExactMatrix, QuadraticNumber
from twistgr.rank_one_models import commutator_oracle, m_element
from twistgr.root_data import (
    DIVISIBLE,
    DiagramAutomorphism,
    FiniteRootSystem,
    catalogue,
    relative_datum,
    root_system,
)

SIMPLE_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]


def test_sl2_weyl_element():
    mats = sl_matrices(build_chevalley(root_system("A", 1)))
    assert mats[(1,)] == ExactMatrix([[0, 1], [0, 0]])
    assert m_element("A1~1", (1,), (1,)) == ExactMatrix([[0, 1], [-1, 0]])
    assert m_element("A1~1", (-1,), (1,)) == ExactMatrix([[0, 1], [-1, 0]])


def test_sl3_structure_constants_are_units():
    cs = build_chevalley(root_system("A", 2))
    assert cs.N and all(abs(n) == 1 for n in cs.N.values())


def test_rank_zero():
    cs = build_chevalley(FiniteRootSystem([]))
    assert cs.N == {} and cs.basis() == []


@pytest.mark.parametrize("letter,n", SIMPLE_TYPES)
def test_chevalley_axioms(letter, n):
    cs = build_chevalley(root_system(letter, n))
    assert cs.string_check()
    assert cs.jacobi_defects() == []
    s = cs.system
    for a, b in itertools.product(s.roots, repeat=2):
        if s.is_root(tuple(x + y for x, y in zip(a, b))):
            assert cs.structure_constant(a, b) == -cs.structure_constant(b, a)


def test_steinberg_signs_sl3():
    signs = steinberg_signs(build_chevalley(root_system("A", 2)), DiagramAutomorphism((1, 0)))
    assert (signs[(1, 0)], signs[(0, 1)], signs[(1, 1)]) == (1, 1, -1)


def test_trivial_automorphism_has_trivial_signs():
    for letter, n in SIMPLE_TYPES:
        signs = steinberg_signs(build_chevalley(root_system(letter, n)), DiagramAutomorphism.identity(n))
        assert set(signs.eps.values()) == {1}


def test_sl4_involution_signs():
    d = relative_datum("A3~2")
    signs = steinberg_signs(datum_chevalley("A3~2"), d.auto)
    assert set(signs.eps.values()) == {1}


@pytest.mark.parametrize("type_id", [t for t in catalogue() if relative_datum(t).e > 1])
def test_steinberg_condition(type_id):
    """Signs differ from 1 only on roots whose Galois average is divisible."""
    d = relative_datum(type_id)
    signs = steinberg_signs(datum_chevalley(type_id), d.auto)
    for r, eps in signs.eps.items():
        if eps != 1:
            assert d.auto.act(r) == r
            assert d.classify(d.restriction[r]) == DIVISIBLE


def test_tits_exponents():
    te = tits_exponents(relative_datum("A2~2"))
    assert te.absolute[(1, 0)] == 1 and te.absolute[(0, 1)] == 0 and te.absolute[(1, 1)] == 1
    assert te.chi_plus == {(1,): 1, (-1,): 0}
    for t in ["A1~1", "A3~2", "D4~3", "Res2A1"]:
        te = tits_exponents(relative_datum(t))
        assert set(te.relative.values()) <= {0} and not te.chi_plus


def _integral_args(draw, mult):
    if mult:
        u = QuadraticNumber(draw(st.integers(-5, 5)), draw(st.integers(-5, 5)), 3)
        return (u, QuadraticNumber(0, draw(st.integers(-5, 5)), 3))
    return (QuadraticNumber(draw(st.integers(-5, 5)), draw(st.integers(-5, 5)), 3),)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_bc2_commutators_against_matrices(data):
    d = relative_datum("A4~2")
    nd = [a for a in d.roots if d.classify(a) != DIVISIBLE]
    pairs = [(a, b) for a, b in itertools.permutations(nd, 2) if tuple(-x for x in a) != b]
    a, b = data.draw(st.sampled_from(pairs))
    arg_a = _integral_args(data.draw, d.classify(a) != "nd-nm")
    arg_b = _integral_args(data.draw, d.classify(b) != "nd-nm")
    lhs, rhs = commutator_oracle(d, a, arg_a, b, arg_b)
    assert lhs == rhs
    assert relative_commutator(d, a, arg_a, b, arg_b) is not None


def test_commutator_of_multipliable_pair_is_twice_a_product():
    d = relative_datum("A4~2")
    u, v = QuadraticNumber(1, 2, 3), QuadraticNumber(0, 1, 3)
    u2, v2 = QuadraticNumber(-3, 1, 3), QuadraticNumber(0, -2, 3)
    terms = relative_commutator(d, (0, 1), (u, v), (-1, -1), (u2, v2))
    assert terms == [((-1, 0), (-2 * u * u2,))]


def test_commutator_of_two_nd_roots_lands_in_divisible_part():
    d = relative_datum("A4~2")
    r, r2 = QuadraticNumber(2, 1, 3), QuadraticNumber(1, -1, 3)
    [(c, (u, v))] = relative_commutator(d, (1, 0), (r,), (1, 2), (r2,))
    assert c == (1, 1) and u == 0
    assert v == r2.conj() * r - r.conj() * r2
    assert v + v.conj() == 0
