"""Matrix models of the rank-one groups and the identities they satisfy.

Two models are used.

* ``SL_2`` for a non-multipliable root: ``x_a(r) = [[1, r], [0, 1]]`` and
  ``x_-a(r) = [[1, 0], [-r, 1]]``.  For a restriction of scalars the
  scalars live in the bigger field; the formulas are per orbit.
* ``SU_3`` for a multipliable root.  In CS coordinates

      x_a(r, s)  = [[1, r, s], [0, 1, sigma(r)], [0, 0, 1]]
      x_-a(r, s) = [[1, 0, 0], [-r, 1, 0], [sigma(s), -sigma(r), 1]]

  with ``s + sigma(s) = r sigma(r)``.  Tits coordinates ``(u, v)`` have
  ``v + sigma(v) = 0`` and go through ``psi(u, v) = (u, (N(u) - v) / 2)``
  after rescaling by 2 (coordinates ``u``) and 4 (coordinates ``v``) on the
  positive root.

Scalars are anything with field operations and ``conj`` (see
:func:`twistgr.exact_algebra.conj`): rationals, :class:`QuadraticNumber`,
:class:`TwistedLaurentScalar`.  The symbolic audits use sympy with
``sigma`` realised as a substitution of paired symbols.

Besides the rank-one models the module evaluates relative root groups of the
quasi-split unitary groups inside ``SL_n`` (used as the oracle for the
relative commutator formulas and for the Steinberg signs of ``sl_n``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import sympy as sp

from .exact_algebra import ExactMatrix, QuadraticNumber, TwistedLaurentScalar, conj
from .root_data import (
    DIVISIBLE,
    MULTIPLIABLE,
    ND_NM,
    RelativeRootDatum,
    Root,
    cartan_matrix,
    neg,
    relative_datum,
)

TITS = "Tits"
CS = "CS"


class RankOneError(ValueError):
    """Bad input for a rank-one model."""


class WallError(RankOneError):
    """The divisor vanishes: the point is off the big cell."""


def _is_zero(x: Any) -> bool:
    if isinstance(x, sp.Basic):
        return sp.simplify(x) == 0
    return not x


def norm(x: Any) -> Any:
    return x * conj(x)


# --------------------------------------------------------------------------
# the involution of SL_n

def involution_matrix(n: int) -> ExactMatrix:
    """``J`` with ``J[k, n-1-k] = (-1)^k``."""
    return ExactMatrix([[(-1) ** i if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])


def sl_involution(m: ExactMatrix) -> ExactMatrix:
    """The pinned outer automorphism ``M -> J M^{-T} J^{-1}`` (no Galois action)."""
    j = involution_matrix(m.rows)
    return j @ m.inverse().transpose() @ j.inverse()


def frobenius(m: ExactMatrix) -> ExactMatrix:
    """The Galois-twisted involution whose fixed points form ``SU_n``."""
    return sl_involution(m).map(conj)


def _lie_involution(x: ExactMatrix) -> ExactMatrix:
    j = involution_matrix(x.rows)
    return (j @ x.transpose() @ j.inverse()).scale(-1)


def steinberg_signs_from_matrices(cs) -> dict[Root, int]:
    """Signs ``eps[a]`` with ``theta(X_a) = eps[a] X_{theta a}`` read off matrices.

    ``cs`` must be a Chevalley system of type ``A_n``; ``theta`` reverses the
    Dynkin diagram.
    """
    from .chevalley import sl_matrices

    sysm = cs.system
    if sysm.cartan != cartan_matrix("A", sysm.rank):
        raise RankOneError("matrix involution only for type A")
    mats = sl_matrices(cs)
    out: dict[Root, int] = {}
    for a, x in mats.items():
        image = _lie_involution(x)
        target = mats[tuple(reversed(a))]
        ratio = None
        for row_i, row_t in zip(image, target):
            for p, q in zip(row_i, row_t):
                if q:
                    ratio = Fraction(p) / Fraction(q)
                    break
            if ratio is not None:
                break
        if ratio not in (1, -1) or image != target.scale(ratio):
            raise RankOneError(f"involution does not map X_{a} to a multiple of X_theta(a)")
        out[a] = int(ratio)
    return out


# --------------------------------------------------------------------------
# the pluriel group

@dataclass(frozen=True)
class PlurielElement:
    """Point of the two-parameter unipotent group.

    ``flavor`` is ``"Tits"`` (``v + sigma(v) = 0``) or ``"CS"`` (``v`` is the
    second CS coordinate ``s`` with ``s + sigma(s) = u sigma(u)``).
    ``characteristic`` records the characteristic of the scalars when it is
    positive; only 0 and 2 matter here.
    """

    u: Any
    v: Any
    flavor: str = TITS
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.flavor not in (TITS, CS):
            raise RankOneError(f"unknown flavor {self.flavor!r}")
        defect = self.v + conj(self.v) - (norm(self.u) if self.flavor == CS else 0)
        if self.characteristic:
            ok = _reduce_mod(defect, self.characteristic) == 0
        else:
            ok = _is_zero(defect)
        if not ok:
            raise RankOneError(f"{self.flavor} constraint violated by {self!r}")

    @property
    def r(self) -> Any:
        return self.u

    @property
    def s(self) -> Any:
        return self.v


def _reduce_mod(x: Any, p: int) -> Any:
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise RankOneError("denominator divisible by the characteristic")
        return x.numerator * pow(x.denominator, -1, p) % p
    if isinstance(x, int):
        return x % p
    raise RankOneError("only rational scalars can be reduced")


def _check_same(p: PlurielElement, q: PlurielElement) -> None:
    if p.flavor != q.flavor:
        raise RankOneError("flavor mismatch")


def pluriel_mul(p: PlurielElement, q: PlurielElement) -> PlurielElement:
    _check_same(p, q)
    if p.flavor == TITS:
        v = p.v + q.v + conj(p.u) * q.u - p.u * conj(q.u)
    else:
        v = p.v + q.v + p.u * conj(q.u)
    return PlurielElement(p.u + q.u, v, p.flavor, p.characteristic)


def pluriel_inverse(p: PlurielElement) -> PlurielElement:
    if p.flavor == TITS:
        return PlurielElement(-p.u, -p.v, TITS, p.characteristic)
    return PlurielElement(-p.u, conj(p.v), CS, p.characteristic)


def pluriel_identity(flavor: str = TITS) -> PlurielElement:
    return PlurielElement(0, 0, flavor)


def _half(x: Any) -> Any:
    return x * Fraction(1, 2) if not isinstance(x, sp.Basic) else x / 2


def flavor_iso(p: PlurielElement) -> PlurielElement:
    """Tits to CS: ``(u, v) -> (u, (u sigma(u) - v) / 2)``."""
    if p.flavor != TITS:
        raise RankOneError("flavor_iso expects Tits coordinates")
    if p.characteristic == 2:
        raise RankOneError("2 is not invertible: the CS model degenerates in characteristic 2")
    return PlurielElement(p.u, _half(norm(p.u) - p.v), CS)


def flavor_iso_inverse(p: PlurielElement) -> PlurielElement:
    """CS to Tits: ``(r, s) -> (r, r sigma(r) - 2 s)``."""
    if p.flavor != CS:
        raise RankOneError("flavor_iso_inverse expects CS coordinates")
    return PlurielElement(p.u, norm(p.u) - 2 * p.v, TITS, p.characteristic)


def s_value(u: Any, v: Any) -> Any:
    """``s(u, v) = v + u sigma(u)``."""
    return v + norm(u)


# --------------------------------------------------------------------------
# matrices

def su3_embed(p: PlurielElement, sign: int = 1) -> ExactMatrix:
    """The unipotent matrix of ``x_a(r, s)`` (``sign=1``) or ``x_-a(r, s)``.

    Tits input is converted with :func:`flavor_iso` (no rescaling).
    """
    q = flavor_iso(p) if p.flavor == TITS else p
    r, s = q.u, q.v
    if sign > 0:
        return ExactMatrix([[1, r, s], [0, 1, conj(r)], [0, 0, 1]])
    return ExactMatrix([[1, 0, 0], [-r, 1, 0], [conj(s), -conj(r), 1]])


def sl2_x(r: Any, sign: int = 1) -> ExactMatrix:
    if sign > 0:
        return ExactMatrix([[1, r], [0, 1]])
    return ExactMatrix([[1, 0], [-r, 1]])


def sl2_coroot(lam: Any) -> ExactMatrix:
    return ExactMatrix([[lam, 0], [0, 1 / lam if not isinstance(lam, int) else Fraction(1, lam)]])


def su3_coroot(lam: Any) -> ExactMatrix:
    """``(2a)^vee(lam) = diag(lam, sigma(lam)/lam, 1/sigma(lam))``."""
    inv = _inv(lam)
    return ExactMatrix.diagonal([lam, conj(lam) * inv, _inv(conj(lam))])


def _inv(x: Any) -> Any:
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def _rank_one_kind(datum: RelativeRootDatum, a: Sequence[int]) -> tuple[str, int, Root]:
    """``("sl2" | "su3", sign, positive root)`` for a non-divisible root."""
    a = tuple(a)
    cls = datum.classify(a)
    sign = 1 if datum.is_positive(a) else -1
    base = a if sign > 0 else neg(a)
    if cls == DIVISIBLE:
        raise RankOneError("use the multipliable root a with x_a(0, v) for divisible roots")
    return ("su3" if cls == MULTIPLIABLE else "sl2"), sign, base


def _datum(datum: RelativeRootDatum | str) -> RelativeRootDatum:
    return relative_datum(datum) if isinstance(datum, str) else datum


def tits_to_cs(u: Any, v: Any, sign: int) -> tuple[Any, Any]:
    """CS coordinates of ``x^T_{+-a}(u, v)``."""
    if sign > 0:
        u, v = 2 * u, 4 * v
    return u, _half(norm(u) - v)


def cs_to_tits(r: Any, s: Any, sign: int) -> tuple[Any, Any]:
    u, v = r, norm(r) - 2 * s
    if sign > 0:
        return _half(u), _half(_half(v))
    return u, v


def root_element(datum: RelativeRootDatum | str, a: Sequence[int], args: Sequence[Any], flavor: str = TITS) -> ExactMatrix:
    """Matrix of ``x_a(args)`` in the rank-one model of ``a``.

    ``args`` is ``(r,)`` for a non-multipliable root and ``(u, v)`` for a
    multipliable one.  For a divisible ``2a`` pass ``a`` with ``(0, v)``.
    """
    d = _datum(datum)
    kind, sign, _ = _rank_one_kind(d, a)
    if kind == "sl2":
        (r,) = args
        return sl2_x(r, sign)
    u, v = args
    if flavor == TITS:
        u, v = tits_to_cs(u, v, sign)
    elif flavor != CS:
        raise RankOneError(f"unknown flavor {flavor!r}")
    return su3_embed(PlurielElement(u, v, CS), sign)


def coroot_element(datum: RelativeRootDatum | str, a: Sequence[int], lam: Any) -> ExactMatrix:
    """``a^vee(lam)``; for a multipliable ``a`` this is ``(2a)^vee(lam)``."""
    d = _datum(datum)
    kind, sign, _ = _rank_one_kind(d, a)
    if kind == "sl2":
        return sl2_coroot(lam if sign > 0 else _inv(lam))
    return su3_coroot(lam if sign > 0 else _inv(conj(lam)))


def m_element(datum: RelativeRootDatum | str, a: Sequence[int], args: Sequence[Any], flavor: str = TITS) -> ExactMatrix:
    """``m_a = x_a(.) x_-a(args) x_a(.)``, a monomial matrix.

    For ``SL_2``: ``m_a(r) = x_a(1/r) x_-a(r) x_a(1/r)``.  For ``SU_3`` in
    Tits coordinates, with ``s = s(u, v)`` and ``s' = s(u, -v)``::

        m_a(u, v) = x_a(sigma(u)/s', w) x_-a(u, v) x_a(sigma(u)/s, w),
        w = -v / (s s').

    The same expression with the signs of the roots swapped gives ``m_-a``.
    """
    d = _datum(datum)
    kind, sign, base = _rank_one_kind(d, a)
    if kind == "sl2":
        (r,) = args
        if _is_zero(r):
            raise RankOneError("m_a(r) needs r invertible")
        ri = _inv(r)
        return sl2_x(ri, sign) @ sl2_x(r, -sign) @ sl2_x(ri, sign)
    if flavor == CS:
        u, v = cs_to_tits(args[0], args[1], -sign)
    else:
        u, v = args
    s1, s2 = s_value(u, v), s_value(u, -v)
    if _is_zero(s1) or _is_zero(s2):
        raise RankOneError("m_a(u, v) needs s(u, v) invertible")
    # the same shape works for -a: conjugate by m_a(1, 0)
    w = -v * _inv(s1 * s2)
    outer1 = (conj(u) * _inv(s2), w)
    outer2 = (conj(u) * _inv(s1), w)
    pos, negr = base, neg(base)
    first, mid = (pos, negr) if sign > 0 else (negr, pos)
    return (
        root_element(d, first, outer1)
        @ root_element(d, mid, (u, v))
        @ root_element(d, first, outer2)
    )


# --------------------------------------------------------------------------
# group words

@dataclass(frozen=True)
class Generator:
    """``kind`` is ``"x"``, ``"m"`` or ``"h"`` (torus element ``a^vee(lam)``)."""

    kind: str
    root: Root
    args: tuple


@dataclass
class GroupWord:
    datum: RelativeRootDatum
    generators: list[Generator] = field(default_factory=list)
    flavor: str = TITS

    def x(self, a: Sequence[int], *args: Any) -> GroupWord:
        self.generators.append(Generator("x", tuple(a), args))
        return self

    def m(self, a: Sequence[int], *args: Any) -> GroupWord:
        self.generators.append(Generator("m", tuple(a), args))
        return self

    def h(self, a: Sequence[int], lam: Any) -> GroupWord:
        self.generators.append(Generator("h", tuple(a), (lam,)))
        return self


def evaluate_word(word: GroupWord) -> ExactMatrix:
    d = word.datum
    kind, _, _ = _rank_one_kind(d, word.generators[0].root) if word.generators else ("sl2", 1, ())
    out = ExactMatrix.identity(3 if kind == "su3" else 2)
    for g in word.generators:
        if g.kind == "x":
            mat = root_element(d, g.root, g.args, word.flavor)
        elif g.kind == "m":
            mat = m_element(d, g.root, g.args, word.flavor)
        elif g.kind == "h":
            mat = coroot_element(d, g.root, g.args[0])
        else:
            raise RankOneError(f"unknown generator {g.kind!r}")
        out = out @ mat
    return out


# --------------------------------------------------------------------------
# exchange

@dataclass(frozen=True)
class ExchangeResult:
    """``x_a(pos) x_-a(neg) = x_-a(neg_out) a^vee(torus) x_a(pos_out)``.

    For ``SU_3`` the torus factor is ``(2a)^vee(torus)``.  ``divisor`` is the
    function whose vanishing defines the wall; it equals ``torus``.
    """

    kind: str
    neg_out: tuple
    torus: Any
    pos_out: tuple
    divisor: Any


def sl2_divisor(r: Any, r2: Any) -> Any:
    return 1 - r * r2


def su3_divisor(u: Any, v: Any, u2: Any, v2: Any) -> Any:
    """``t = 1 - 2 u u' + s(u, sigma v) s(u', v')`` in Tits coordinates."""
    return 1 - 2 * u * u2 + s_value(u, -v) * s_value(u2, v2)


def _su3_exchange_tits(u, v, u2, v2):
    t = su3_divisor(u, v, u2, v2)
    if _is_zero(t):
        raise WallError("1 - 2uu' + s(u, sigma v) s(u', v') vanishes")
    ti, tci = _inv(t), _inv(conj(t))
    big = s_value(u2, v2)
    nu = (u2 - conj(u) * big) * ti
    nv = big * ti - norm(nu)
    pu = (u - conj(u2) * s_value(u, -v)) * ti
    pv = s_value(u, v) * tci - norm(pu)
    return (nu, nv), t, (pu, pv)


def exchange(datum: RelativeRootDatum | str, a: Sequence[int], pos_args: Sequence[Any], neg_args: Sequence[Any], flavor: str = TITS) -> ExchangeResult:
    """Closed formulas for the big-cell exchange of a positive root ``a``."""
    d = _datum(datum)
    kind, sign, _ = _rank_one_kind(d, a)
    if sign < 0:
        raise RankOneError("exchange is stated for a positive root")
    if kind == "sl2":
        (r,), (r2,) = pos_args, neg_args
        t = sl2_divisor(r, r2)
        if _is_zero(t):
            raise WallError("1 - r r' vanishes")
        ti = _inv(t)
        return ExchangeResult(kind, (r2 * ti,), t, (r * ti,), t)
    if flavor == CS:
        u, v = cs_to_tits(pos_args[0], pos_args[1], 1)
        u2, v2 = cs_to_tits(neg_args[0], neg_args[1], -1)
    elif flavor == TITS:
        (u, v), (u2, v2) = pos_args, neg_args
    else:
        raise RankOneError(f"unknown flavor {flavor!r}")
    nout, t, pout = _su3_exchange_tits(u, v, u2, v2)
    if flavor == CS:
        nout, pout = tits_to_cs(*nout, -1), tits_to_cs(*pout, 1)
    return ExchangeResult(kind, tuple(nout), t, tuple(pout), t)


def exchange_product(datum: RelativeRootDatum | str, a: Sequence[int], res: ExchangeResult, flavor: str = TITS) -> ExactMatrix:
    """Matrix of ``x_-a(neg_out) a^vee(torus) x_a(pos_out)``."""
    d = _datum(datum)
    return (
        root_element(d, neg(tuple(a)), res.neg_out, flavor)
        @ coroot_element(d, a, res.torus)
        @ root_element(d, a, res.pos_out, flavor)
    )


def _div(x: Any, y: Any) -> Any:
    return x * _inv(y)


def exchange_from_matrix(kind: str, m: Any, flavor: str = TITS, conj_fn: Callable[[Any], Any] = conj) -> ExchangeResult:
    """Read the exchange off a matrix ``m`` by an LDU decomposition.

    This is the oracle for the closed formulas; ``m`` may be an
    :class:`ExactMatrix` or a sympy matrix (then pass a symbolic ``conj_fn``).
    """
    t = m[0, 0]
    if _is_zero(t):
        raise WallError("upper-left entry vanishes")
    if kind == "sl2":
        return ExchangeResult(kind, (-_div(m[1, 0], t),), t, (_div(m[0, 1], t),), t)
    l21, l31 = _div(m[1, 0], t), _div(m[2, 0], t)
    u12, u13 = _div(m[0, 1], t), _div(m[0, 2], t)
    r_neg, s_neg = -l21, conj_fn(l31)
    r_pos, s_pos = u12, u13
    if flavor == TITS:
        nr = norm_with(conj_fn)
        neg_out = (r_neg, nr(r_neg) - 2 * s_neg)
        pos_out = (_half(r_pos), _half(_half(nr(r_pos) - 2 * s_pos)))
    else:
        neg_out, pos_out = (r_neg, s_neg), (r_pos, s_pos)
    return ExchangeResult(kind, neg_out, t, pos_out, t)


def norm_with(conj_fn: Callable[[Any], Any]) -> Callable[[Any], Any]:
    return lambda x: x * conj_fn(x)


# --------------------------------------------------------------------------
# symbolic audits

class SymbolicConj:
    """Galois action on sympy expressions built from paired symbols.

    ``pairs`` swaps each ``x`` with its conjugate symbol; ``odd`` symbols are
    trace-zero (``sigma(v) = -v``).
    """

    def __init__(self, pairs: Sequence[tuple[sp.Symbol, sp.Symbol]] = (), odd: Sequence[sp.Symbol] = ()) -> None:
        self.map: dict = {}
        for x, y in pairs:
            self.map[x] = y
            self.map[y] = x
        for v in odd:
            self.map[v] = -v

    def __call__(self, e: Any) -> Any:
        return sp.sympify(e).xreplace(self.map)


def _sym_symbols():
    u, uc, v, u2, uc2, v2 = sp.symbols("u uc v u2 uc2 v2")
    return u, uc, v, u2, uc2, v2


def _sym_su3(r, s, rc, sign, cj):
    if sign > 0:
        return sp.Matrix([[1, r, s], [0, 1, rc], [0, 0, 1]])
    return sp.Matrix([[1, 0, 0], [-r, 1, 0], [cj(s), -rc, 1]])


@dataclass
class AuditReport:
    """Outcome of an integrality audit.

    ``passed`` means every output lies in ``Z[arguments, conjugates]``
    localised at the divisor and its conjugate.  ``witnesses`` lists
    ``(output, monomial)`` pairs with a denominator outside that ring.
    """

    type_id: str
    root: Root
    flavor: str
    passed: bool
    outputs: dict[str, str]
    witnesses: list[tuple[str, str]]


def _integral_over(expr: Any, gens: Sequence[sp.Symbol], divisors: Sequence[sp.Poly]) -> str | None:
    """``None`` if ``expr`` is an integer polynomial over the divisors, else a witness."""
    num, den = sp.fraction(sp.cancel(sp.together(expr)))
    den_p = sp.Poly(den, *gens, domain="QQ")
    for dv in divisors:
        while den_p.total_degree() > 0:
            q, r = sp.div(den_p, dv)
            if not r.is_zero:
                break
            den_p = q
    if den_p.total_degree() > 0:
        return f"denominator {den_p.as_expr()}"
    c = den_p.as_expr()
    poly = sp.Poly(sp.expand(num / c), *gens, domain="QQ")
    for monom, coeff in poly.terms():
        if not coeff.is_integer:
            term = sp.Mul(coeff, *[g ** k for g, k in zip(gens, monom)])
            return str(term)
    return None


def integrality_audit(datum: RelativeRootDatum | str, a: Sequence[int], flavor: str = TITS) -> AuditReport:
    """Expand the exchange symbolically and look for denominators of 2.

    Tits flavor uses the Tits-modified root groups.  The CS control uses the
    same ``(u, v)`` coordinates through ``psi`` without the powers of 2.
    """
    d = _datum(datum)
    kind, sign, base = _rank_one_kind(d, a)
    if sign < 0:
        raise RankOneError("audit a positive root")
    if kind == "sl2":
        r, r2 = sp.symbols("r r2")
        gens = (r, r2)
        m = sp.Matrix([[1, r], [0, 1]]) * sp.Matrix([[1, 0], [-r2, 1]])
        res = exchange_from_matrix("sl2", m, flavor, lambda x: x)
        outs = {"t": res.torus, "neg.r": res.neg_out[0], "pos.r": res.pos_out[0]}
        t = sp.Poly(res.torus, *gens, domain="QQ")
        divisors = [t.primitive()[1]]
    else:
        u, uc, v, u2, uc2, v2 = _sym_symbols()
        gens = (u, uc, v, u2, uc2, v2)
        cj = SymbolicConj([(u, uc), (u2, uc2)], [v, v2])
        if flavor == TITS:
            p = (2 * u, 2 * uc, 2 * u * uc - 2 * v)
            q = (u2, uc2, (u2 * uc2 - v2) / 2)
        elif flavor == CS:
            p = (u, uc, (u * uc - v) / 2)
            q = (u2, uc2, (u2 * uc2 - v2) / 2)
        else:
            raise RankOneError(f"unknown flavor {flavor!r}")
        m = _sym_su3(p[0], p[2], p[1], 1, cj) * _sym_su3(q[0], q[2], q[1], -1, cj)
        res = exchange_from_matrix("su3", m, CS, cj)
        (rn, sn), (rp, sp_) = res.neg_out, res.pos_out
        if flavor == TITS:
            neg_uv = (rn, rn * cj(rn) - 2 * sn)
            pos_uv = (rp / 2, (rp * cj(rp) - 2 * sp_) / 4)
        else:
            neg_uv = (rn, rn * cj(rn) - 2 * sn)
            pos_uv = (rp, rp * cj(rp) - 2 * sp_)
        outs = {"t": res.torus, "neg.u": neg_uv[0], "neg.v": neg_uv[1], "pos.u": pos_uv[0], "pos.v": pos_uv[1]}
        num_t = sp.fraction(sp.cancel(sp.together(sp.expand(res.torus))))[0]
        tp = sp.Poly(num_t, *gens, domain="QQ").primitive()[1]
        divisors = [tp, sp.Poly(cj(tp.as_expr()), *gens, domain="QQ")]
    witnesses = []
    shown = {}
    for name, e in outs.items():
        e = sp.factor(sp.cancel(e))
        shown[name] = str(e)
        w = _integral_over(e, gens, divisors)
        if w is not None:
            witnesses.append((name, w))
    return AuditReport(d.type_id, tuple(base), flavor, not witnesses, shown, witnesses)


def su3_exchange_symbolic() -> dict[str, Any]:
    """Closed-form Tits exchange with symbolic arguments (sympy)."""
    u, uc, v, u2, uc2, v2 = _sym_symbols()
    cj = SymbolicConj([(u, uc), (u2, uc2)], [v, v2])
    s = lambda x, xc, y: y + x * xc
    t = 1 - 2 * u * u2 + s(u, uc, -v) * s(u2, uc2, v2)
    nu = (u2 - uc * s(u2, uc2, v2)) / t
    nv = s(u2, uc2, v2) / t - nu * cj(nu)
    pu = (u - uc2 * s(u, uc, -v)) / t
    pv = s(u, uc, v) / cj(t) - pu * cj(pu)
    return {"t": t, "neg.u": nu, "neg.v": nv, "pos.u": pu, "pos.v": pv, "conj": cj, "symbols": (u, uc, v, u2, uc2, v2)}


def char2_degeneration_check() -> dict[str, bool]:
    """Characteristic-2 degeneration of the Tits exchange.

    With trivial Galois action and modulo 2 the divisor becomes
    ``1 + s(u, v) s(u', v')`` and the ``s``-values of the outputs follow the
    ``SL_2`` exchange applied to ``(s(u, v), s(u', v'))``.
    """
    f = su3_exchange_symbolic()
    u, uc, v, u2, uc2, v2 = f["symbols"]
    trivial = {uc: u, uc2: u2}
    s1, s2 = v + u * uc, v2 + u2 * uc2
    t = sp.expand(f["t"].xreplace(trivial))
    sl2_t = sp.expand((1 + s1 * s2).xreplace(trivial))
    diff = sp.Poly(t - sl2_t, u, v, u2, v2)
    divisor_ok = all(c % 2 == 0 for c in diff.coeffs())
    # s(U', V') = s(u', v') / t holds identically, hence also mod 2
    cj = f["conj"]
    neg_s = sp.simplify(f["neg.v"] + f["neg.u"] * cj(f["neg.u"]) - s2 / f["t"]) == 0
    pos_s = sp.simplify(f["pos.v"] + f["pos.u"] * cj(f["pos.u"]) - s1 / cj(f["t"])) == 0
    return {"divisor": divisor_ok, "neg_s": neg_s, "pos_s": pos_s}


# --------------------------------------------------------------------------
# valuations

def valuation_level_set(datum: RelativeRootDatum | str, a: Sequence[int], bound: int = 3):
    """``Gamma'_a`` from the valuation of root-group elements.

    ``phi_a(x_a(r)) = omega(r)`` and ``phi_a(x_a(r, s)) = omega(s) / 2``
    evaluated on monomial arguments; for a multipliable root only the
    optimal points (maximal ``phi_a`` on the coset modulo ``U_2a``) count.
    """
    from .root_data import _progression

    d = _datum(datum)
    a = tuple(a)
    cls = d.classify(a)
    e = max(d.e, 1)
    values = []
    if cls == ND_NM:
        ea = d.extension_degree(a)
        for k in range(-bound * ea, bound * ea + 1):
            r = TwistedLaurentScalar.t_power(Fraction(k, ea), e)
            m = sl2_x(r, 1 if d.is_positive(a) else -1)
            entry = m[0, 1] if d.is_positive(a) else -m[1, 0]
            values.append(entry.valuation())
        return _progression(values)
    half = Fraction(1, 2)
    trace_zero = [TwistedLaurentScalar.t_power(Fraction(j, 2), 2) for j in range(-2 * bound - 1, 2 * bound + 2) if j % 2]
    if cls == DIVISIBLE:
        for z in trace_zero:
            m = su3_embed(PlurielElement(TwistedLaurentScalar.const(0, 2), z, CS))
            values.append(m[0, 2].valuation())
        return _progression(values)
    for k in range(-2 * bound, 2 * bound + 1):
        r = TwistedLaurentScalar.t_power(Fraction(k, 2), 2)
        base_s = r * r.conj() * half
        best = None
        for z in [TwistedLaurentScalar.const(0, 2)] + trace_zero:
            m = su3_embed(PlurielElement(r, base_s + z, CS))
            phi = m[0, 2].valuation() / 2
            best = phi if best is None else max(best, phi)
        values.append(best)
    return _progression(values)


# --------------------------------------------------------------------------
# relative root groups inside SL_n

def _type_a_parent(d: RelativeRootDatum) -> bool:
    sysm = d.system
    return sysm.rank > 0 and sysm.cartan == cartan_matrix("A", sysm.rank) and d.auto.order <= 2


def relative_root_matrix(datum: RelativeRootDatum | str, a: Sequence[int], args: Sequence[Any], flavor: str = TITS) -> ExactMatrix:
    """``x_a(args)`` as a product of absolute root groups of ``SL_n``.

    Non-multipliable: ``y_g(r) y_{sigma g}(sigma r)``; multipliable:
    ``y_b(sigma r) y_{a+b}(N_{a,b} s) y_a(r)`` for the lifts ``(a, b)``.
    Tits coordinates are converted with the exponents of
    :func:`twistgr.chevalley.tits_exponents`.
    """
    from .chevalley import datum_chevalley, root_group_matrix, sl_matrices, tits_exponents

    d = _datum(datum)
    if not _type_a_parent(d):
        raise RankOneError("the SL_n model needs an absolute system of type A")
    cs = datum_chevalley(d.type_id)
    mats = sl_matrices(cs)
    a = tuple(a)
    cls = d.classify(a)
    if cls == DIVISIBLE:
        return relative_root_matrix(d, tuple(x // 2 for x in a), (0, args[0]), flavor)
    te = tits_exponents(d) if flavor == TITS else None
    lifts = d.lifts[a]
    if cls == ND_NM:
        (r,) = args
        if te is not None:
            r = r * Fraction(2) ** te.relative.get(a, 0)
        out = ExactMatrix.identity(d.system.rank + 1)
        c = r
        for g in lifts:
            out = out @ root_group_matrix(mats, g, c)
            c = conj(c)
        return out
    u, v = args
    if te is not None:
        r, s = tits_to_cs(u, v, 1 if te.chi_plus[a] else -1)
    else:
        r, s = u, v
    al, be = lifts
    top = tuple(x + y for x, y in zip(al, be))
    nab = cs.structure_constant(al, be)
    return root_group_matrix(mats, be, conj(r)) @ root_group_matrix(mats, top, nab * s) @ root_group_matrix(mats, al, r)


# --------------------------------------------------------------------------
# relative commutator formulas

def cj(x: Any) -> Any:
    return conj(x)


# Commutators [x_a, x_b] = g h g^-1 h^-1 for the quasi-split unitary group in
# five variables (relative type BC_2, simple roots c1 nd-nm, c2 multipliable),
# in Tits coordinates.  Each value is the ordered product of x_c(...).
_BC2_TABLE: dict[tuple[Root, Root], Callable[..., list]] = {
    ((1, 0), (0, 1)): lambda r, u2, v2: [((1, 1), (-r * u2, cj(r) * r * v2)), ((1, 2), (-r * (cj(u2) * u2 + v2),))],
    ((1, 0), (1, 2)): lambda r, r2: [((1, 1), (0, cj(r2) * r - cj(r) * r2))],
    ((1, 0), (-1, -1)): lambda r, u2, v2: [((0, -1), (r * u2, cj(r) * r * v2)), ((-1, -2), (cj(r) * (v2 - cj(u2) * u2),))],
    ((1, 0), (-1, -2)): lambda r, r2: [((0, -1), (0, r2 * r - cj(r2) * cj(r)))],
    ((0, 1), (1, 0)): lambda u, v, r2: [((1, 1), (r2 * u, -cj(r2) * r2 * v)), ((1, 2), (r2 * (cj(u) * u + v),))],
    ((0, 1), (1, 1)): lambda u, v, u2, v2: [((1, 2), (2 * cj(u) * u2,))],
    ((0, 1), (-1, -1)): lambda u, v, u2, v2: [((-1, 0), (-2 * u * u2,))],
    ((0, 1), (-1, -2)): lambda u, v, r2: [((-1, -1), (-cj(u) * r2, cj(r2) * r2 * v)), ((-1, 0), (r2 * (cj(u) * u - v),))],
    ((1, 1), (0, 1)): lambda u, v, u2, v2: [((1, 2), (-2 * cj(u2) * u,))],
    ((1, 1), (-1, 0)): lambda u, v, r2: [((0, 1), (-r2 * u, -cj(r2) * r2 * v)), ((1, 2), (cj(r2) * (cj(u) * u - v),))],
    ((1, 1), (0, -1)): lambda u, v, u2, v2: [((1, 0), (2 * u * u2,))],
    ((1, 1), (-1, -2)): lambda u, v, r2: [((0, -1), (cj(r2) * cj(u), cj(r2) * r2 * v)), ((1, 0), (cj(r2) * (cj(u) * u - v),))],
    ((1, 2), (1, 0)): lambda r, r2: [((1, 1), (0, cj(r2) * r - cj(r) * r2))],
    ((1, 2), (-1, 0)): lambda r, r2: [((0, 1), (0, cj(r2) * cj(r) - r2 * r))],
    ((1, 2), (0, -1)): lambda r, u2, v2: [((1, 1), (cj(u2) * r, -cj(r) * r * v2)), ((1, 0), (r * (v2 - cj(u2) * u2),))],
    ((1, 2), (-1, -1)): lambda r, u2, v2: [((0, 1), (-cj(r) * cj(u2), -cj(r) * r * v2)), ((-1, 0), (cj(r) * (v2 - cj(u2) * u2),))],
    ((-1, 0), (1, 1)): lambda r, u2, v2: [((0, 1), (r * u2, cj(r) * r * v2)), ((1, 2), (cj(r) * (v2 - cj(u2) * u2),))],
    ((-1, 0), (1, 2)): lambda r, r2: [((0, 1), (0, r2 * r - cj(r2) * cj(r)))],
    ((-1, 0), (0, -1)): lambda r, u2, v2: [((-1, -1), (-r * u2, cj(r) * r * v2)), ((-1, -2), (-r * (cj(u2) * u2 + v2),))],
    ((-1, 0), (-1, -2)): lambda r, r2: [((-1, -1), (0, cj(r2) * r - cj(r) * r2))],
    ((0, -1), (1, 1)): lambda u, v, u2, v2: [((1, 0), (-2 * u * u2,))],
    ((0, -1), (1, 2)): lambda u, v, r2: [((1, 1), (-cj(u) * r2, cj(r2) * r2 * v)), ((1, 0), (r2 * (cj(u) * u - v),))],
    ((0, -1), (-1, 0)): lambda u, v, r2: [((-1, -1), (r2 * u, -cj(r2) * r2 * v)), ((-1, -2), (r2 * (cj(u) * u + v),))],
    ((0, -1), (-1, -1)): lambda u, v, u2, v2: [((-1, -2), (2 * cj(u) * u2,))],
    ((-1, -1), (1, 0)): lambda u, v, r2: [((0, -1), (-r2 * u, -cj(r2) * r2 * v)), ((-1, -2), (cj(r2) * (cj(u) * u - v),))],
    ((-1, -1), (0, 1)): lambda u, v, u2, v2: [((-1, 0), (2 * u * u2,))],
    ((-1, -1), (1, 2)): lambda u, v, r2: [((0, 1), (cj(r2) * cj(u), cj(r2) * r2 * v)), ((-1, 0), (cj(r2) * (cj(u) * u - v),))],
    ((-1, -1), (0, -1)): lambda u, v, u2, v2: [((-1, -2), (-2 * cj(u2) * u,))],
    ((-1, -2), (1, 0)): lambda r, r2: [((0, -1), (0, cj(r2) * cj(r) - r2 * r))],
    ((-1, -2), (0, 1)): lambda r, u2, v2: [((-1, -1), (cj(u2) * r, -cj(r) * r * v2)), ((-1, 0), (r * (v2 - cj(u2) * u2),))],
    ((-1, -2), (1, 1)): lambda r, u2, v2: [((0, -1), (-cj(r) * cj(u2), -cj(r) * r * v2)), ((1, 0), (cj(r) * (v2 - cj(u2) * u2),))],
    ((-1, -2), (-1, 0)): lambda r, r2: [((-1, -1), (0, cj(r2) * r - cj(r) * r2))],
}


def _is_bc2_unitary(d: RelativeRootDatum) -> bool:
    return d.system.cartan == cartan_matrix("A", 4) and d.auto.order == 2


def commutator_formula(datum: RelativeRootDatum | str, a: Sequence[int], arg_a: Sequence[Any], b: Sequence[int], arg_b: Sequence[Any]) -> list[tuple[Root, tuple]]:
    """``[x_a(arg_a), x_b(arg_b)]`` as an ordered list of ``(c, args)``.

    Supported: split simply-laced types (``x_{a+b}(N_{a,b} r r')``) and the
    quasi-split unitary group of rank 2 with relative type ``BC_2``.
    """
    from .chevalley import datum_chevalley

    d = _datum(datum)
    a, b = tuple(a), tuple(b)
    for c in (a, b):
        if d.classify(c) == DIVISIBLE:
            raise RankOneError("divisible roots are handled through x_{c/2}(0, v)")
    if _proportional(a, b):
        raise RankOneError("commutator of proportional roots")
    if _is_bc2_unitary(d):
        f = _BC2_TABLE.get((a, b))
        return [] if f is None else [(c, tuple(x)) for c, x in f(*arg_a, *arg_b)]
    if d.e == 1 and d.system.is_simply_laced():
        ab = tuple(x + y for x, y in zip(a, b))
        if not d.is_root(ab):
            return []
        n = datum_chevalley(d.type_id).structure_constant(a, b)
        return [(ab, (n * arg_a[0] * arg_b[0],))]
    raise RankOneError(f"no commutator table for {d.type_id}")


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    from .root_data import _proportional as prop

    return prop(a, b)


def commutator_oracle(datum: RelativeRootDatum | str, a: Sequence[int], arg_a: Sequence[Any], b: Sequence[int], arg_b: Sequence[Any]) -> tuple[ExactMatrix, ExactMatrix]:
    """``(g h g^-1 h^-1, product of the formula)`` as matrices in ``SL_n``."""
    d = _datum(datum)
    g = relative_root_matrix(d, a, arg_a)
    h = relative_root_matrix(d, b, arg_b)
    lhs = g @ h @ g.inverse() @ h.inverse()
    rhs = ExactMatrix.identity(d.system.rank + 1)
    for c, args in commutator_formula(d, a, arg_a, b, arg_b):
        rhs = rhs @ relative_root_matrix(d, c, args)
    return lhs, rhs


# --------------------------------------------------------------------------
# random arguments

def random_rational(rng: random.Random, size: int = 9) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_scalar(rng: random.Random, d: int = 3, size: int = 9) -> QuadraticNumber:
    """Random element of ``Q(sqrt d)``, i.e. of ``Q(t^(1/2))`` at ``t = d``."""
    return QuadraticNumber(random_rational(rng, size), random_rational(rng, size), d)


def random_pluriel(rng: random.Random, flavor: str = TITS, d: int = 3, size: int = 9) -> PlurielElement:
    u = random_scalar(rng, d, size)
    odd = QuadraticNumber(0, random_rational(rng, size), d)
    if flavor == TITS:
        return PlurielElement(u, odd, TITS)
    return PlurielElement(u, norm(u) * Fraction(1, 2) + odd, CS)


def random_args(datum: RelativeRootDatum | str, a: Sequence[int], rng: random.Random, d: int = 3) -> tuple:
    dd = _datum(datum)
    cls = dd.classify(tuple(a))
    if cls == MULTIPLIABLE:
        p = random_pluriel(rng, TITS, d)
        return (p.u, p.v)
    if dd.e == 1:
        return (random_rational(rng),)
    return (random_scalar(rng, d),)
