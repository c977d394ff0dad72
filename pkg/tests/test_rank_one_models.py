from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from twistgr.exact_algebra import ExactMatrix, QuadraticNumber, conj
from twistgr.rank_one_models import (
    CS,
    TITS,
    PlurielElement,
    RankOneError,
    WallError,
    char2_degeneration_check,
    coroot_element,
    exchange,
    exchange_from_matrix,
    exchange_product,
    flavor_iso,
    flavor_iso_inverse,
    integrality_audit,
    m_element,
    norm,
    pluriel_identity,
    pluriel_inverse,
    pluriel_mul,
    root_element,
    sl2_coroot,
    sl2_x,
    su3_coroot,
    su3_embed,
    su3_exchange_symbolic,
)

q = st.fractions(min_value=-10, max_value=10, max_denominator=8)
scalars = st.builds(lambda a, b: QuadraticNumber(a, b, 3), q, q)


@st.composite
def tits_points(draw):
    return PlurielElement(draw(scalars), QuadraticNumber(0, draw(q), 3), TITS)


@st.composite
def cs_points(draw):
    u = draw(scalars)
    return PlurielElement(u, norm(u) * Fraction(1, 2) + QuadraticNumber(0, draw(q), 3), CS)


# pluriel group

@given(tits_points())
def test_neutral_and_inverse(p):
    assert pluriel_mul(pluriel_identity(), p) == p
    inv = pluriel_inverse(p)
    assert (inv.u, inv.v) == (-p.u, -p.v)
    assert pluriel_mul(p, inv) == pluriel_identity()


@settings(max_examples=100)
@given(tits_points(), tits_points(), tits_points())
def test_associativity(p, q_, r):
    assert pluriel_mul(pluriel_mul(p, q_), r) == pluriel_mul(p, pluriel_mul(q_, r))


@given(cs_points(), cs_points(), cs_points())
def test_cs_group_law(p, q_, r):
    assert pluriel_mul(pluriel_mul(p, q_), r) == pluriel_mul(p, pluriel_mul(q_, r))
    assert pluriel_mul(p, pluriel_inverse(p)) == pluriel_identity(CS)


def test_constraints_are_enforced():
    with pytest.raises(RankOneError):
        PlurielElement(QuadraticNumber(1, 0, 3), QuadraticNumber(1, 0, 3), TITS)
    with pytest.raises(RankOneError):
        PlurielElement(1, 0, CS)


def test_flavor_iso_on_u_only():
    u = QuadraticNumber(2, 1, 3)
    img = flavor_iso(PlurielElement(u, 0, TITS))
    assert img.u == u and img.v == norm(u) * Fraction(1, 2)


@settings(max_examples=50)
@given(tits_points(), tits_points())
def test_flavor_iso_is_a_homomorphism(p, q_):
    assert flavor_iso(pluriel_mul(p, q_)) == pluriel_mul(flavor_iso(p), flavor_iso(q_))
    assert flavor_iso_inverse(flavor_iso(p)) == p


def test_flavor_iso_needs_two_invertible():
    with pytest.raises(RankOneError):
        flavor_iso(PlurielElement(1, 0, TITS, 2))


# matrices

def test_su3_embed_shape():
    assert su3_embed(PlurielElement(0, 0, CS)).is_identity()
    r = QuadraticNumber(1, 2, 3)
    s = norm(r) * Fraction(1, 2) + QuadraticNumber(0, 5, 3)
    m = su3_embed(PlurielElement(r, s, CS))
    assert (m[0, 1], m[0, 2], m[1, 2]) == (r, s, conj(r))
    assert m[1, 0] == m[2, 0] == m[2, 1] == 0


@given(cs_points(), cs_points())
def test_su3_embed_is_a_homomorphism(p, q_):
    assert su3_embed(p) @ su3_embed(q_) == su3_embed(pluriel_mul(p, q_))
    assert su3_embed(p, -1) @ su3_embed(q_, -1) == su3_embed(pluriel_mul(p, q_), -1)


def test_sl2_weyl_element_conjugates_torus():
    lam = Fraction(5, 3)
    for r in [Fraction(1), Fraction(-2, 7)]:
        m = m_element("A1~1", (1,), (r,))
        assert m @ sl2_coroot(lam) @ m.inverse() == sl2_coroot(1 / lam)


def test_su3_weyl_element_normalizes_torus():
    m = m_element("A2~2", (1,), (1, 0))
    diag = ExactMatrix.diagonal([QuadraticNumber(2, 1, 3), QuadraticNumber(3, 0, 3), QuadraticNumber(1, -1, 3)])
    c = m @ diag @ m.inverse()
    assert all(c[i, j] == 0 for i in range(3) for j in range(3) if i != j)
    assert sum(1 for row in m for x in row if x != 0) == 3


@given(tits_points())
def test_su3_weyl_element_is_monomial(p):
    if p.u == 0 and p.v == 0:
        return
    try:
        m = m_element("A2~2", (1,), (p.u, p.v))
    except RankOneError:
        return
    assert [sum(1 for x in row if x != 0) for row in m] == [1, 1, 1]


# exchange

def test_sl2_exchange_example():
    res = exchange("A1~1", (1,), (1,), (2,))
    assert res.torus == -1
    assert res.neg_out == (-2,) and res.pos_out == (-1,)
    lhs = sl2_x(1) @ sl2_x(2, -1)
    assert lhs == ExactMatrix([[-1, 1], [-2, 1]])
    assert lhs == sl2_x(-2, -1) @ sl2_coroot(-1) @ sl2_x(-1)


@given(q)
def test_sl2_trivial_exchange(r):
    res = exchange("A1~1", (1,), (r,), (0,))
    assert res.torus == 1 and res.neg_out == (0,) and res.pos_out == (r,)


def test_wall_is_detected():
    with pytest.raises(WallError):
        exchange("A1~1", (1,), (Fraction(1, 2),), (2,))


@settings(max_examples=60, deadline=None)
@given(tits_points(), tits_points())
def test_su3_exchange_matches_matrices(p, q_):
    a = (1,)
    try:
        res = exchange("A2~2", a, (p.u, p.v), (q_.u, q_.v))
    except WallError:
        return
    m = root_element("A2~2", a, (p.u, p.v)) @ root_element("A2~2", (-1,), (q_.u, q_.v))
    assert m == exchange_product("A2~2", a, res)
    assert exchange_from_matrix("su3", m) == res


@settings(max_examples=30, deadline=None)
@given(cs_points(), cs_points())
def test_su3_exchange_in_cs_coordinates(p, q_):
    try:
        res = exchange("A2~2", (1,), (p.u, p.v), (q_.u, q_.v), CS)
    except WallError:
        return
    m = root_element("A2~2", (1,), (p.u, p.v), CS) @ root_element("A2~2", (-1,), (q_.u, q_.v), CS)
    assert m == exchange_product("A2~2", (1,), res, CS)


def test_su3_symbolic_first_output():
    f = su3_exchange_symbolic()
    u, uc, v, u2, uc2, v2 = f["symbols"]
    t = 1 - 2 * u * u2 + (-v + u * uc) * (v2 + u2 * uc2)
    assert sp.simplify(f["t"] - t) == 0
    assert sp.simplify(f["neg.u"] - (u2 - uc * (v2 + u2 * uc2)) / t) == 0


def test_coroot_elements():
    lam = QuadraticNumber(2, 1, 3)
    assert su3_coroot(lam) == ExactMatrix.diagonal([lam, conj(lam) / lam, 1 / conj(lam)])
    assert coroot_element("A2~2", (1,), lam) == su3_coroot(lam)
    assert coroot_element("A1~1", (-1,), Fraction(3)) == sl2_coroot(Fraction(1, 3))


# integrality

def test_tits_integrality():
    assert integrality_audit("A2~2", (1,), TITS).passed


def test_cs_control_has_denominator_two():
    rep = integrality_audit("A2~2", (1,), CS)
    assert not rep.passed
    assert any("/2" in w or "/4" in w for _, w in rep.witnesses)


def test_sl2_audit_passes_in_both_flavors():
    assert integrality_audit("A1~1", (1,), TITS).passed
    assert integrality_audit("A1~1", (1,), CS).passed


def test_characteristic_two_degeneration():
    assert all(char2_degeneration_check().values())
