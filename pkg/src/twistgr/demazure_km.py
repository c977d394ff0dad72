"""Kac--Moody side: the twisted loop algebra, affine Cartan matrices,
integrality audits, Demazure characters and central charges.

The loop model is the fixed-point algebra of ``tau = sigma (x) gamma`` on
``g (x) K[t^(+-1/e)]`` where ``sigma`` is the pinned diagram automorphism and
``gamma`` sends ``t^(1/e)`` to ``zeta_e t^(1/e)``.  Elements are dicts keyed
by ``(key, k)`` meaning ``key (x) t^(k/e)``; ``key`` is an absolute root or the
index of a simple coroot.  Basis vectors are orbit sums rescaled by the Tits
powers of 2, so that for non-reduced types the integral form is the one whose
relative root groups are the Tits-modified ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

import sympy

from .chevalley import _raw_signs, datum_chevalley, tits_exponents
from .exact_algebra import ZetaNumber, is_integral
from .root_data import (
    MULTIPLIABLE,
    RelativeRootDatum,
    Root,
    affine_simple_roots,
    neg,
    relative_datum,
    special_points,
)


class KacMoodyError(ValueError):
    pass


def _datum(datum: RelativeRootDatum | str) -> RelativeRootDatum:
    return relative_datum(datum) if isinstance(datum, str) else datum


def _vadd(out: dict, key: Any, c: Any) -> None:
    v = out.get(key, 0) + c
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


# --------------------------------------------------------------------------
# the loop model

@dataclass(frozen=True)
class LoopBasisElement:
    """``orbit sum of key (x) t^(k/e)`` with its weight ``(gradient, level)``."""

    key: Any
    k: int
    gradient: Root
    level: Fraction
    vector: tuple

    @property
    def is_real(self) -> bool:
        return not isinstance(self.key, int)

    @property
    def weight(self) -> tuple[Root, Fraction]:
        return (self.gradient, self.level)


class GradedLoopAlgebra:
    """Basis of the fixed-point loop algebra up to ``|level| <= N``.

    Elements beyond the truncation are built on demand, so brackets and
    decompositions never run out of basis.
    """

    def __init__(self, datum: RelativeRootDatum | str, N: int = 3) -> None:
        if N > 10:
            raise KacMoodyError("truncation above 10 not supported")
        self.datum = _datum(datum)
        d = self.datum
        self.N = N
        self.e = d.e
        self.cs = datum_chevalley(d.type_id)
        self.system = d.system
        self.auto = d.auto
        self.eps = _raw_signs(self.cs, self.auto)
        self.zero_root = tuple(0 for _ in range(d.rank))
        if self.e == 3:
            self._zeta_pows = [ZetaNumber(1), ZetaNumber(0, 1), ZetaNumber(-1, -1)]
        elif self.e == 2:
            self._zeta_pows = [Fraction(1), Fraction(-1)]
        else:
            self._zeta_pows = [Fraction(1)]
        texp = tits_exponents(d)
        self._orbit_rep: dict[Any, Any] = {}
        self._scale: dict[Any, Fraction] = {}
        for r in self.system.roots:
            orb = self.auto.orbit(r)
            self._orbit_rep[r] = min(orb)
            self._scale[r] = Fraction(2) ** max(texp.absolute[g] for g in orb)
        for i in range(self.system.rank):
            orb = self._index_orbit(i)
            self._orbit_rep[i] = orb[0]
            self._scale[i] = Fraction(1)
        self._cache: dict[tuple[Any, int], LoopBasisElement | None] = {}
        self.basis: list[LoopBasisElement] = []
        reps = sorted({self._orbit_rep[r] for r in self.system.roots}) + sorted({self._orbit_rep[i] for i in range(self.system.rank)})
        for k in range(-self.e * N, self.e * N + 1):
            for key in reps:
                el = self.element(key, k)
                if el is not None:
                    self.basis.append(el)

    def _index_orbit(self, i: int) -> list[int]:
        orb = [i]
        j = self.auto.perm[i]
        while j != i:
            orb.append(j)
            j = self.auto.perm[j]
        return sorted(orb)

    def zeta(self, k: int) -> Any:
        return self._zeta_pows[k % self.e]

    def tau(self, v: Mapping) -> dict:
        """One step of ``sigma (x) gamma``."""
        out: dict = {}
        for (key, k), c in v.items():
            if isinstance(key, int):
                img, sgn = self.auto.perm[key], 1
            else:
                img, sgn = self.auto.act(key), self.eps[key]
            _vadd(out, (img, k), c * sgn * self.zeta(k))
        return out

    def is_fixed(self, v: Mapping) -> bool:
        return self.tau(v) == {x: c for x, c in v.items() if c != 0}

    def element(self, key: Any, k: int) -> LoopBasisElement | None:
        """Basis vector for the orbit of ``key`` at level ``k/e``, or ``None``."""
        rep = self._orbit_rep[key]
        if (rep, k) in self._cache:
            return self._cache[(rep, k)]
        total: dict = {}
        term = {(rep, k): Fraction(1)}
        for _ in range(self.e):
            for x, c in term.items():
                _vadd(total, x, c)
            term = self.tau(term)
        el = None
        if total:
            c0 = total[(rep, k)]
            s = self._scale[rep]
            vec = tuple(sorted(((x, c * s / c0) for x, c in total.items()), key=lambda t: repr(t[0])))
            grad = self.zero_root if isinstance(rep, int) else self.datum.restriction[rep]
            el = LoopBasisElement(rep, k, grad, Fraction(k, self.e), vec)
        self._cache[(rep, k)] = el
        return el

    # brackets

    def bracket(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for (x, k), c in u.items():
            for (y, l), d in v.items():
                for z, n in self.cs.bracket_basis(x, y).items():
                    _vadd(out, (z, k + l), c * d * n)
        return out

    def decompose(self, v: Mapping, check: bool = True) -> dict[tuple[Any, int], Any]:
        """Coordinates of a fixed vector in the orbit basis."""
        out: dict = {}
        for (key, k), c in v.items():
            if self._orbit_rep[key] != key:
                continue
            el = self.element(key, k)
            if el is None:
                raise KacMoodyError(f"component on an empty orbit {key}, {k}")
            out[(key, k)] = c / self._scale[key]
        if check:
            rebuilt: dict = {}
            for (key, k), c in out.items():
                for x, y in self.element(key, k).vector:
                    _vadd(rebuilt, x, c * y)
            diff = dict(rebuilt)
            for x, c in v.items():
                _vadd(diff, x, -c)
            if diff:
                raise KacMoodyError("vector is not fixed by tau")
        return out

    def vec(self, el: LoopBasisElement) -> dict:
        return dict(el.vector)

    def structure_constants(self, a: LoopBasisElement, b: LoopBasisElement) -> dict:
        return self.decompose(self.bracket(self.vec(a), self.vec(b)))

    def by_weight(self) -> dict[tuple[Root, Fraction], list[LoopBasisElement]]:
        out: dict = {}
        for el in self.basis:
            out.setdefault(el.weight, []).append(el)
        return out

    def level_dimensions(self) -> dict[Fraction, int]:
        out: dict = {}
        for el in self.basis:
            out[el.level] = out.get(el.level, 0) + 1
        return out

    def jacobi_defects(self, limit: int | None = None) -> list[tuple]:
        """Basis triples within the truncation violating Jacobi."""
        bad = []
        els = self.basis if limit is None else self.basis[:limit]
        for a, b, c in itertools.combinations(els, 3):
            x, y, z = self.vec(a), self.vec(b), self.vec(c)
            tot: dict = {}
            for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                for key, val in self.bracket(p, self.bracket(q, r)).items():
                    _vadd(tot, key, val)
            if tot:
                bad.append((a, b, c))
        return bad


def loop_model(datum: RelativeRootDatum | str, N: int = 3) -> GradedLoopAlgebra:
    return GradedLoopAlgebra(datum, N)


@dataclass(frozen=True)
class LoopRoots:
    """Weights of the loop model with multiplicities."""

    real: dict[Root, dict[Fraction, int]]
    imaginary: dict[Fraction, int]


def affine_roots_from_loop_model(algebra: GradedLoopAlgebra) -> LoopRoots:
    real: dict = {}
    imag: dict = {}
    for el in algebra.basis:
        if el.is_real:
            lv = real.setdefault(el.gradient, {})
            lv[el.level] = lv.get(el.level, 0) + 1
        elif el.level != 0:
            imag[el.level] = imag.get(el.level, 0) + 1
    return LoopRoots(real, imag)


# --------------------------------------------------------------------------
# generalized Cartan matrices

def _kernel_vector(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    m = sympy.Matrix(rows)
    ns = m.nullspace()
    if len(ns) != 1:
        raise KacMoodyError(f"expected corank 1, got {len(ns)}")
    v = ns[0]
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    matrix: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.matrix)

    def is_valid(self) -> bool:
        a = self.matrix
        n = self.size
        for i in range(n):
            if a[i][i] != 2:
                return False
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    return False
        return True

    def is_affine(self) -> bool:
        a = sympy.Matrix(self.matrix)
        return (
            a.rank() == self.size - 1
            and all(x > 0 for x in self.marks)
            and all(x > 0 for x in self.comarks)
            and all(v == 0 for v in a * sympy.Matrix(self.marks))
        )


@dataclass(frozen=True)
class IntegralRealization:
    """``P^vee`` with basis ``alpha_0^vee .. alpha_r^vee, d``; ``P`` its dual.

    ``roots[j]`` lists ``<x, alpha_j>`` for ``x`` running over the basis of ``P^vee``.
    """

    gcm: GeneralizedCartanMatrix
    roots: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.roots[0])

    def pairing(self, i: int, j: int) -> int:
        """``<alpha_i^vee, alpha_j>``."""
        return self.roots[j][i]

    def fundamental_weight(self, i: int) -> tuple[int, ...]:
        return tuple(int(k == i) for k in range(self.rank))

    @property
    def delta(self) -> tuple[int, ...]:
        out = [0] * self.rank
        for m, a in zip(self.gcm.marks, self.roots):
            out = [x + m * y for x, y in zip(out, a)]
        return tuple(out)

    def check(self) -> bool:
        a = self.gcm.matrix
        n = self.gcm.size
        ok = all(self.pairing(i, j) == a[i][j] for i in range(n) for j in range(n))
        # roots independent in P and Q^vee a direct summand of P^vee
        ok &= sympy.Matrix(self.roots).rank() == n
        return ok


def gcm_from_form(datum: RelativeRootDatum | str) -> GeneralizedCartanMatrix:
    """``a_ij = 2 (b_i, b_j) / (b_i, b_i)`` on the gradients of the alcove walls."""
    d = _datum(datum)
    grads = [b for b, _ in affine_simple_roots(d)]
    rows = []
    for bi in grads:
        row = []
        for bj in grads:
            v = 2 * d.form(bi, bj) / d.form(bi, bi)
            if v.denominator != 1:
                raise KacMoodyError("non-integral Cartan entry")
            row.append(int(v))
        rows.append(tuple(row))
    return _gcm(rows)


def _gcm(rows: Sequence[Sequence[int]]) -> GeneralizedCartanMatrix:
    rows = tuple(tuple(r) for r in rows)
    marks = _kernel_vector(rows)
    comarks = _kernel_vector([list(c) for c in zip(*rows)])
    return GeneralizedCartanMatrix(rows, marks, comarks)


def gcm_from_loop_model(algebra: GradedLoopAlgebra) -> GeneralizedCartanMatrix:
    """Pairings read off ``[[X_i, X_-i], X_j]`` in the loop model."""
    d = algebra.datum
    simple = affine_simple_roots(d)
    xs, ys = [], []
    weights = algebra.by_weight()
    for b, n in simple:
        pos = weights.get((b, n)) or _find(algebra, b, n)
        negs = weights.get((neg(b), -n)) or _find(algebra, neg(b), -n)
        if len(pos) != 1 or len(negs) != 1:
            raise KacMoodyError("simple affine root space is not one-dimensional")
        xs.append(pos[0])
        ys.append(negs[0])
    hs = [algebra.bracket(algebra.vec(x), algebra.vec(y)) for x, y in zip(xs, ys)]
    c = []
    for h in hs:
        row = []
        for x in xs:
            coords = algebra.decompose(algebra.bracket(h, algebra.vec(x)))
            row.append(coords.get((x.key, x.k), 0))
        c.append(row)
    rows = []
    for i, row in enumerate(c):
        if c[i][i] == 0:
            raise KacMoodyError("degenerate coroot")
        out = []
        for v in row:
            q = 2 * v / c[i][i]
            if isinstance(q, ZetaNumber):
                if q.b != 0:
                    raise KacMoodyError("non-rational Cartan entry")
                q = q.a
            q = Fraction(q)
            if q.denominator != 1:
                raise KacMoodyError("non-integral Cartan entry")
            out.append(int(q))
        rows.append(out)
    return _gcm(rows)


def _find(algebra: GradedLoopAlgebra, b: Root, n: Fraction) -> list[LoopBasisElement]:
    k = n * algebra.e
    if k.denominator != 1:
        return []
    return [el for el in (algebra.element(r, int(k)) for r in algebra.datum.lifts.get(b, ())) if el is not None and el.gradient == b]


def affine_gcm(datum: RelativeRootDatum | str) -> tuple[GeneralizedCartanMatrix, IntegralRealization]:
    """Affine Cartan matrix computed in the loop model, with its realization."""
    d = _datum(datum)
    alg = _small_model(d.type_id)
    gcm = gcm_from_loop_model(alg)
    n = gcm.size
    roots = tuple(tuple(gcm.matrix[i][j] for i in range(n)) + (int(j == 0),) for j in range(n))
    return gcm, IntegralRealization(gcm, roots)


@lru_cache(maxsize=None)
def _small_model(type_id: str) -> GradedLoopAlgebra:
    return GradedLoopAlgebra(type_id, 1)


# --------------------------------------------------------------------------
# span test and divided powers

def _int_coords(c: Any) -> list[Fraction]:
    if isinstance(c, ZetaNumber):
        return [c.a, c.b]
    return [Fraction(c)]


def _rank(rows: list[list[Fraction]], p: int | None) -> int:
    """Rank over Q (``p is None``) or over F_p of integral rows."""
    if p is None:
        m = [list(r) for r in rows]
    else:
        m = []
        for r in rows:
            if any(x.denominator % p == 0 for x in r):
                raise KacMoodyError("row is not p-integral")
            m.append([int(x.numerator * pow(x.denominator, -1, p)) % p for x in r])
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pv if p is None else m[i][col] * pow(pv, -1, p) % p
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])] if p is None else [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass
class SpanReport:
    type_id: str
    field: str
    passed: bool
    missing: list[tuple[Fraction, tuple]] = field(default_factory=list)
    deficiency: dict = field(default_factory=dict)


FIELDS = {"Q": None, "F2": 2, "F3": 3}


def span_test(algebra: GradedLoopAlgebra, coefficient_field: str = "Q") -> SpanReport:
    """Cartan part of the subalgebra generated by the real root spaces.

    Over ``Z[zeta]`` the lattice is viewed as a free Z-module on ``X`` and
    ``zeta X``; reduction mod ``p`` is taken of that Z-module.
    """
    f = coefficient_field.upper().replace("_", "")
    if f not in FIELDS:
        raise KacMoodyError(f"unknown field {coefficient_field!r}")
    p = FIELDS[f]
    e = algebra.e
    weights = algebra.by_weight()
    cartan: dict[int, list[LoopBasisElement]] = {}
    for el in algebra.basis:
        if not el.is_real:
            cartan.setdefault(el.k, []).append(el)
    mults = [ZetaNumber(1), ZetaNumber(0, 1)] if e == 3 else [1]
    real = [el for el in algebra.basis if el.is_real]
    missing = []
    deficiency = {}
    for k, hs in sorted(cartan.items()):
        index = {(h.key, h.k): i for i, h in enumerate(hs)}
        width = len(hs) * (2 if e == 3 else 1)
        rows = []
        for x in real:
            partners = weights.get((neg(x.gradient), Fraction(k - x.k, e)), [])
            for y in partners:
                coords = algebra.decompose(algebra.bracket(algebra.vec(x), algebra.vec(y)))
                for m in mults:
                    row = [Fraction(0)] * width
                    for key, c in coords.items():
                        vals = _int_coords(c * m)
                        i = index[key]
                        for j, v in enumerate(vals):
                            row[i * len(vals) + j] = v
                    rows.append(row)
        r = _rank(rows, p) if rows else 0
        if r < width:
            deficiency[Fraction(k, e)] = width - r
            for h in hs:
                for m in mults:
                    probe = rows + [[Fraction(0)] * width]
                    vals = _int_coords(Fraction(1) * m if e != 3 else m)
                    i = index[(h.key, h.k)]
                    for j, v in enumerate(vals):
                        probe[-1][i * len(vals) + j] = v
                    if _rank(probe, p) > r:
                        missing.append((Fraction(k, e), h.key))
                        break
    return SpanReport(algebra.datum.type_id, f, not deficiency, missing, deficiency)


@dataclass
class DividedPowerReport:
    type_id: str
    k_max: int
    passed: bool
    checked: int
    failures: list[tuple] = field(default_factory=list)


def divided_power_integrality(algebra: GradedLoopAlgebra, k_max: int = 4, roots: Iterable[LoopBasisElement] | None = None) -> DividedPowerReport:
    """``ad(x)^k / k!`` on the basis, for real basis vectors ``x`` and ``k <= k_max``."""
    if not 0 <= k_max <= 6:
        raise KacMoodyError("k_max must lie in 0..6")
    xs = [el for el in (roots if roots is not None else algebra.basis) if el.is_real]
    failures = []
    checked = 0
    for x in xs:
        xv = algebra.vec(x)
        for y in algebra.basis:
            v = algebra.vec(y)
            for k in range(1, k_max + 1):
                v = algebra.bracket(xv, v)
                if not v:
                    break
                checked += 1
                coords = algebra.decompose(v, check=False)
                fact = math.factorial(k)
                if not all(is_integral(c / fact if not isinstance(c, ZetaNumber) else c * Fraction(1, fact)) for c in coords.values()):
                    failures.append((x.weight, y.weight, k))
    return DividedPowerReport(algebra.datum.type_id, k_max, not failures, checked, failures)


# --------------------------------------------------------------------------
# Demazure characters

Weight = tuple[int, ...]


@dataclass
class WeightCharacter:
    """Finite ``Z``-combination of weights in the basis dual to ``(alpha^vee, d)``."""

    terms: dict[Weight, int]

    def __add__(self, other: WeightCharacter) -> WeightCharacter:
        out = dict(self.terms)
        for w, c in other.terms.items():
            _vadd(out, w, c)
        return WeightCharacter(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightCharacter) and self.terms == other.terms

    @property
    def mass(self) -> int:
        return sum(self.terms.values())

    def support(self) -> list[Weight]:
        return sorted(self.terms)


class DemazureOperators:
    def __init__(self, realization: IntegralRealization) -> None:
        self.real = realization
        self.n = realization.gcm.size

    def alpha(self, i: int) -> Weight:
        return self.real.roots[i]

    def apply(self, i: int, chi: WeightCharacter) -> WeightCharacter:
        """``D_i f = (f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})``."""
        a = self.alpha(i)
        out: dict = {}
        for lam, c in chi.terms.items():
            n = lam[i]
            if n >= 0:
                for k in range(n + 1):
                    _vadd(out, tuple(x - k * y for x, y in zip(lam, a)), c)
            elif n <= -2:
                for k in range(1, -n):
                    _vadd(out, tuple(x + k * y for x, y in zip(lam, a)), -c)
        return WeightCharacter(out)

    def reflect(self, i: int, lam: Weight) -> Weight:
        n = lam[i]
        return tuple(x - n * y for x, y in zip(lam, self.alpha(i)))


def demazure_character(datum: RelativeRootDatum | str, word: Sequence[int], weight: Sequence[int]) -> WeightCharacter:
    """``D_{i_1} ... D_{i_n} (e^lambda)`` for dominant ``lambda``."""
    if len(word) > 8:
        raise KacMoodyError("word longer than 8")
    _, real = affine_gcm(datum)
    lam = tuple(int(x) for x in weight)
    if len(lam) != real.rank:
        raise KacMoodyError(f"weight needs {real.rank} coordinates")
    if any(lam[i] < 0 for i in range(real.gcm.size)):
        raise KacMoodyError("weight is not dominant")
    ops = DemazureOperators(real)
    chi = WeightCharacter({lam: 1})
    for i in reversed(list(word)):
        if not 0 <= i < real.gcm.size:
            raise KacMoodyError(f"no simple reflection {i}")
        chi = ops.apply(i, chi)
    return chi


def delta_level(realization: IntegralRealization, weight: Weight) -> Fraction:
    """Coefficient of ``delta`` in ``weight`` (``delta`` has ``d``-value ``marks[0]``)."""
    return Fraction(weight[-1], realization.gcm.marks[0])


def root_lattice_coordinates(realization: IntegralRealization, weight: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Coordinates of ``weight`` in the simple roots, if it lies in their span."""
    m = sympy.Matrix(realization.roots).T
    sol = m.gauss_jordan_solve(sympy.Matrix(list(weight)))[0] if m.rank() == m.shape[1] else None
    if sol is None:
        return None
    return tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in sol)


# --------------------------------------------------------------------------
# central charge

def distinguished_node(datum: RelativeRootDatum | str) -> int:
    """Index of the alcove vertex of ``nm`` type if there is one, else 0."""
    d = _datum(datum)
    for sp in special_points(d):
        if sp.kind == "nm":
            return sp.vertex
    return 0


@dataclass(frozen=True)
class CentralCharge:
    """Matrix of ``X^*(S) -> (+) Z L_s``: row ``s`` is ``a_s^vee`` in the dual basis."""

    type_id: str
    matrix: tuple[tuple[int, ...], ...]
    invariant_factors: tuple[int, ...]
    distinguished: int
    projection_det: int
    charges: tuple[int, ...]
    mixed_signs: bool

    @property
    def cokernel_free_rank_one(self) -> bool:
        return all(x == 1 for x in self.invariant_factors)

    @property
    def projection_unimodular(self) -> bool:
        return abs(self.projection_det) == 1


def central_charge_matrix(datum: RelativeRootDatum | str) -> CentralCharge:
    """Iwahori case.  The charge functional is the positive generator of the
    cokernel; ``mixed_signs`` reports any node it cannot make non-negative."""
    from sympy.matrices.normalforms import smith_normal_form

    d = _datum(datum)
    rows = tuple(d.coroot_in_orbit_basis(b) for b, _ in affine_simple_roots(d))
    m = sympy.Matrix(rows)
    snf = smith_normal_form(m, domain=sympy.ZZ)
    factors = tuple(abs(int(snf[i, i])) for i in range(min(snf.shape)))
    s0 = distinguished_node(d)
    minor = sympy.Matrix([r for i, r in enumerate(rows) if i != s0])
    det = int(minor.det()) if minor.shape[0] else 1
    charges = _kernel_vector([list(c) for c in zip(*rows)])
    return CentralCharge(d.type_id, rows, factors, s0, det, charges, any(x < 0 for x in charges))


# --------------------------------------------------------------------------
# coefficient ratios

def _wall_step(d: RelativeRootDatum, b: Root) -> Fraction:
    """Spacing of the walls orthogonal to ``b``, measured by ``b`` itself."""
    from .root_data import lattice_gcd

    vals = []
    for a in d.roots:
        ratio = None
        for x, y in zip(a, b):
            if y != 0:
                ratio = Fraction(x, y)
                break
        if ratio is None or any(Fraction(x) != ratio * y for x, y in zip(a, b)):
            continue
        ls = d.level_set(a)
        vals += [ls.offset / ratio, ls.step / ratio]
    return lattice_gcd(vals)


def schubert_line_degrees(datum: RelativeRootDatum | str) -> tuple[int, ...]:
    """Degree of the map of Schubert lines at each node towards the split partner.

    Non-reduced systems: ``e`` on multipliable gradients (``(u, v) -> u^2 + v``),
    1 otherwise.  Reduced non-simply-laced systems: ``e`` on short gradients.
    Simply-laced relative systems (restrictions of scalars): the extension degree.
    """
    d = _datum(datum)
    grads = [b for b, _ in affine_simple_roots(d)]
    if not d.is_reduced():
        return tuple(d.e if d.classify(b) == MULTIPLIABLE else 1 for b in grads)
    lengths = {d.form(a, a) for a in d.roots}
    if len(lengths) == 1:
        return tuple(d.extension_degree(b) for b in grads)
    short = min(lengths)
    return tuple(d.e if d.form(b, b) == short else 1 for b in grads)


@dataclass(frozen=True)
class CoefficientRatios:
    type_id: str
    e: int
    comarks: tuple[int, ...]
    partner_comarks: tuple[int, ...]
    ratios: tuple[Fraction, ...]
    degrees: tuple[int, ...]

    @property
    def in_range(self) -> bool:
        return all(r in (1, self.e) for r in self.ratios)

    @property
    def balanced(self) -> bool:
        return all(r * g == self.e for r, g in zip(self.ratios, self.degrees))


def coefficient_ratios(datum: RelativeRootDatum | str) -> CoefficientRatios:
    """Comarks of the twisted diagram against those of the diagram whose
    simple affine functions are the primitive wall equations ``b_s / g_s``."""
    d = _datum(datum)
    if d.e == 1:
        raise KacMoodyError("coefficient ratios need a twisted type")
    simple = affine_simple_roots(d)
    gcm = gcm_from_form(d)
    steps = [_wall_step(d, b) for b, _ in simple]
    n = len(simple)
    partner = [[int(Fraction(gcm.matrix[i][j]) * steps[i] / steps[j]) for j in range(n)] for i in range(n)]
    pg = _gcm(partner)
    ratios = tuple(Fraction(c, pc) for c, pc in zip(gcm.comarks, pg.comarks))
    return CoefficientRatios(d.type_id, d.e, gcm.comarks, pg.comarks, ratios, schubert_line_degrees(d))


__all__ = [
    "CentralCharge",
    "CoefficientRatios",
    "DemazureOperators",
    "DividedPowerReport",
    "GeneralizedCartanMatrix",
    "GradedLoopAlgebra",
    "IntegralRealization",
    "KacMoodyError",
    "LoopBasisElement",
    "LoopRoots",
    "SpanReport",
    "WeightCharacter",
    "affine_gcm",
    "affine_roots_from_loop_model",
    "central_charge_matrix",
    "coefficient_ratios",
    "delta_level",
    "demazure_character",
    "distinguished_node",
    "divided_power_integrality",
    "gcm_from_form",
    "gcm_from_loop_model",
    "loop_model",
    "root_lattice_coordinates",
    "schubert_line_degrees",
    "span_test",
]
