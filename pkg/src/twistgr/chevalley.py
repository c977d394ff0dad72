"""Chevalley bases, Chevalley--Steinberg signs and the Tits modification.

Simply-laced Lie algebras use the Frenkel--Kac sign cocycle.  The other
simple types are obtained by folding a simply-laced algebra along a diagram
automorphism (B from D, C from A, F from E6, G from D4), which also yields
integral structure constants.

Conventions: ``[e_a, e_b] = N_{a,b} e_{a+b}``, ``[e_a, e_-a] = -h_a`` and
``[h_i, e_b] = <b, alpha_i^vee> e_b``.  For ``sl_2`` this means
``e_a = E12`` and ``e_-a = -E21``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

from .exact_algebra import ExactMatrix
from .root_data import (
    MULTIPLIABLE,
    ND_NM,
    DiagramAutomorphism,
    FiniteRootSystem,
    RelativeRootDatum,
    Root,
    RootDataError,
    _twist_perm,
    add,
    cartan_matrix,
    components,
    fold,
    neg,
    root_system,
)

Key = Any  # root tuple for e_root, int i for h_i
Vec = dict


class ChevalleyError(RuntimeError):
    """An internal consistency check failed."""


def _vadd(out: dict, key: Key, c: Any) -> None:
    if not c:
        return
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def vec_scale(v: Mapping, c: Any) -> Vec:
    return {k: x * c for k, x in v.items()} if c else {}


def vec_sum(*vs: Mapping) -> Vec:
    out: dict = {}
    for v in vs:
        for k, x in v.items():
            _vadd(out, k, x)
    return out


class ChevalleySystem:
    """A Chevalley basis ``{X_a} u {h_i}`` with structure constants ``N``.

    ``flips`` records the signs ``c_a`` relative to the canonical basis the
    system was derived from: ``X_a = c_a e_a`` with ``c_{-a} = c_a``.
    """

    def __init__(self, system: FiniteRootSystem, N: Mapping[tuple[Root, Root], int], flips: Mapping[Root, int] | None = None) -> None:
        self.system = system
        self.N = dict(N)
        self.flips = {r: 1 for r in system.roots}
        if flips:
            self.flips.update(flips)
        self._coroots = {r: system.coroot(r) for r in system.roots}

    # Lie algebra

    def structure_constant(self, a: Root, b: Root) -> int:
        return self.N.get((tuple(a), tuple(b)), 0)

    def bracket_basis(self, x: Key, y: Key) -> Vec:
        sysm = self.system
        if isinstance(x, int) and isinstance(y, int):
            return {}
        if isinstance(x, int):
            return {y: sysm.pair_coroot(y, x)} if sysm.pair_coroot(y, x) else {}
        if isinstance(y, int):
            c = sysm.pair_coroot(x, y)
            return {x: -c} if c else {}
        s = add(x, y)
        if not any(s):
            return {i: -c for i, c in enumerate(self._coroots[x]) if c}
        n = self.N.get((x, y))
        return {s: n} if n else {}

    def bracket(self, u: Mapping, v: Mapping) -> Vec:
        out: dict = {}
        for k1, c1 in u.items():
            for k2, c2 in v.items():
                for k, c in self.bracket_basis(k1, k2).items():
                    _vadd(out, k, c1 * c2 * c)
        return out

    def basis(self) -> list[Key]:
        return list(self.system.roots) + list(range(self.system.rank))

    def ad_exp(self, x: Mapping, v: Mapping, t: Any = 1) -> Vec:
        """``exp(t ad x)(v)`` for nilpotent ``x``."""
        out = dict(v)
        term = dict(v)
        k = 0
        while term:
            k += 1
            term = vec_scale(self.bracket(x, term), Fraction(1, k) * t)
            out = vec_sum(out, term)
            if k > 8:
                raise ChevalleyError("ad x is not nilpotent")
        return out

    def ad_n(self, a: Root, v: Mapping, sign: int = 1) -> Vec:
        """``Ad(n_a)(v)`` with ``n_a = y_a(1) y_-a(1) y_a(1)``."""
        xa = {tuple(a): 1}
        xm = {neg(a): 1}
        v = self.ad_exp(xa, v)
        v = self.ad_exp(xm, v)
        return self.ad_exp(xa, v)

    def weyl_sign(self, a: Root, b: Root) -> int:
        """``eps_{a,b}`` with ``Ad(n_a) X_b = eps_{a,b} X_{s_a b}``."""
        a, b = tuple(a), tuple(b)
        img = self.ad_n(a, {b: 1})
        target = self.system.reflect(a, b)
        if set(img) != {target} or img[target] not in (1, -1):
            raise ChevalleyError(f"n_{a} does not permute root vectors")
        return int(img[target])

    def jacobi_defects(self, triples: Iterable[tuple[Key, Key, Key]] | None = None) -> list[tuple[Key, Key, Key]]:
        basis = self.basis()
        if triples is None:
            triples = itertools.combinations(basis, 3)
        bad = []
        for x, y, z in triples:
            t = vec_sum(
                self.bracket({x: 1}, self.bracket({y: 1}, {z: 1})),
                self.bracket({y: 1}, self.bracket({z: 1}, {x: 1})),
                self.bracket({z: 1}, self.bracket({x: 1}, {y: 1})),
            )
            if t:
                bad.append((x, y, z))
        return bad

    def string_check(self) -> bool:
        """``|N_{a,b}| = p + 1`` with ``p`` maximal such that ``b - p a`` is a root."""
        for (a, b), n in self.N.items():
            p = 0
            while self.system.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
                p += 1
            if abs(n) != p + 1:
                return False
        return True

    def reflip(self, flips: Mapping[Root, int]) -> ChevalleySystem:
        """Rescale ``X_a -> c_a X_a`` (``c_{-a} = c_a``) and return the new system."""
        c = {r: 1 for r in self.system.roots}
        for r, s in flips.items():
            c[tuple(r)] = s
            c[neg(r)] = s
        N = {(a, b): c[a] * c[b] * c[add(a, b)] * n for (a, b), n in self.N.items()}
        total = {r: self.flips[r] * c[r] for r in self.system.roots}
        return ChevalleySystem(self.system, N, total)

    def __repr__(self) -> str:
        return f"ChevalleySystem({self.system.name})"


# --------------------------------------------------------------------------
# construction

def frenkel_kac(system: FiniteRootSystem) -> ChevalleySystem:
    """Chevalley basis of a simply-laced system from the Frenkel--Kac cocycle."""
    if not system.is_simply_laced():
        raise RootDataError("Frenkel--Kac signs need a simply-laced system")
    n = system.rank
    a = system.cartan
    m = [[1 if i == j or (i < j and a[i][j] == -1) else 0 for j in range(n)] for i in range(n)]

    def eps(x: Root, y: Root) -> int:
        s = sum(x[i] * y[j] * m[i][j] for i in range(n) for j in range(n) if x[i] and y[j])
        return -1 if s % 2 else 1

    N = {}
    for x in system.roots:
        for y in system.roots:
            s = add(x, y)
            if system.is_root(s):
                N[(x, y)] = eps(x, y)
    return ChevalleySystem(system, N)


def _parent_of(letter: str, n: int) -> tuple[str, int, int]:
    """Simply-laced type, rank and automorphism order folding onto ``letter n``."""
    if letter == "B":
        return "D", n + 1, 2
    if letter == "C":
        return "A", 2 * n - 1, 2
    if letter == "F":
        return "E", 6, 2
    return "D", 4, 3


def _match_cartan(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Permutation ``p`` with ``a[p[i]][p[j]] = b[i][j]``."""
    n = len(b)
    for p in itertools.permutations(range(n)):
        if all(a[p[i]][p[j]] == b[i][j] for i in range(n) for j in range(n)):
            return p
    raise ChevalleyError("Cartan matrices are not isomorphic")


def _folded(letter: str, n: int) -> ChevalleySystem:
    target = root_system(letter, n)
    pl, pn, r = _parent_of(letter, n)
    parent = root_system(pl, pn)
    auto = DiagramAutomorphism(_twist_perm(pl, pn, r))
    datum = fold(parent, auto, r)
    base = frenkel_kac(parent)
    cs = chevalley_steinberg_system(base, auto)
    from .root_data import relative_cartan

    perm = _match_cartan(relative_cartan(datum), target.cartan)

    def to_target(a: Root) -> Root:
        return tuple(a[perm[i]] for i in range(n))

    rel_of = {to_target(a): a for a in datum.roots}
    if set(rel_of) != set(target.roots):
        raise ChevalleyError("folded roots do not match the target system")

    def orbit_vector(t: Root) -> Vec:
        a = rel_of[t]
        rep = datum.lifts[a][0]
        return {g: 1 for g in auto.orbit(rep)}

    vecs = {t: orbit_vector(t) for t in target.roots}
    N = {}
    for x in target.roots:
        for y in target.roots:
            s = add(x, y)
            if not target.is_root(s):
                continue
            br = cs.bracket(vecs[x], vecs[y])
            ref = vecs[s]
            k = next(iter(ref))
            coeff = br.get(k, 0)
            if vec_sum(br, vec_scale(ref, -coeff)):
                raise ChevalleyError("bracket of orbit sums is not an orbit sum")
            N[(x, y)] = int(coeff)
    out = ChevalleySystem(target, N)
    # [E_a, E_-a] must be -h_a in the target coroot basis
    for t in target.positive_roots:
        br = cs.bracket(vecs[t], vecs[neg(t)])
        want = target.coroot(t)
        for i, orb in enumerate(datum.simple_orbits):
            j = perm.index(i)
            for k in orb:
                if br.get(k, 0) != -want[j]:
                    raise ChevalleyError("folded coroots are inconsistent")
    return out


@lru_cache(maxsize=None)
def _build_cached(cartan: tuple[tuple[int, ...], ...], name: str) -> ChevalleySystem:
    system = FiniteRootSystem(cartan, name)
    if system.is_simply_laced():
        return frenkel_kac(system)
    comps = components(cartan)
    if len(comps) != 1:
        raise RootDataError("reducible non-simply-laced systems are not supported")
    for letter in "BCFG":
        for n in range(2, 9):
            try:
                if cartan_matrix(letter, n) == cartan:
                    return _folded(letter, n)
            except RootDataError:
                continue
    raise RootDataError("unrecognised non-simply-laced Cartan matrix")


def build_chevalley(system: FiniteRootSystem) -> ChevalleySystem:
    """Deterministic Chevalley system for a root system of rank at most 8."""
    if system.rank == 0:
        return ChevalleySystem(system, {})
    cs = _build_cached(system.cartan, system.name)
    if cs.system is not system:
        cs = ChevalleySystem(system, cs.N, cs.flips)
    return cs


# --------------------------------------------------------------------------
# type A matrices

def sl_matrices(cs: ChevalleySystem) -> dict[Root, ExactMatrix]:
    """Matrices ``X_a`` in the standard representation of ``sl_{n+1}``.

    Simple ones are ``E_{i,i+1}`` and ``-E_{i+1,i}``; the rest follow from
    ``X_{a_i + d} = [X_{a_i}, X_d] / N_{a_i,d}``.
    """
    sysm = cs.system
    if any(sysm.cartan[i] != cartan_matrix("A", sysm.rank)[i] for i in range(sysm.rank)):
        raise RootDataError("standard matrices exist only for type A")
    n = sysm.rank + 1
    out: dict[Root, ExactMatrix] = {}
    for i, s in enumerate(sysm.simple_roots()):
        c = cs.flips[s]
        out[s] = ExactMatrix.unit(n, i, i + 1, c) - ExactMatrix.identity(n)
        out[neg(s)] = ExactMatrix.unit(n, i + 1, i, -c) - ExactMatrix.identity(n)
    for r in sysm.positive_roots:
        if r in out:
            continue
        for i, s in enumerate(sysm.simple_roots()):
            d = tuple(x - y for x, y in zip(r, s))
            if d in out and sysm.is_root(d):
                for sign in (1, -1):
                    xs, xd = out[tuple(sign * x for x in s)], out[tuple(sign * x for x in d)]
                    nval = cs.structure_constant(tuple(sign * x for x in s), tuple(sign * x for x in d))
                    out[tuple(sign * x for x in r)] = (xs @ xd - xd @ xs).scale(Fraction(1, nval))
                break
    return out


def root_group_matrix(mats: Mapping[Root, ExactMatrix], a: Root, r: Any) -> ExactMatrix:
    """``y_a(r) = I + r X_a`` (``X_a`` squares to zero in type A)."""
    x = mats[tuple(a)]
    n = x.rows
    return ExactMatrix.identity(n) + x.map(lambda z: z * r if z else 0)


# --------------------------------------------------------------------------
# Chevalley--Steinberg signs

@dataclass
class SteinbergSigns:
    """``eps[a]`` with ``sigma(y_a(r)) = y_{sigma a}(eps[a] r)``."""

    auto: DiagramAutomorphism
    eps: dict[Root, int]

    def __getitem__(self, a: Root) -> int:
        return self.eps[tuple(a)]


def _raw_signs(cs: ChevalleySystem, auto: DiagramAutomorphism) -> dict[Root, int]:
    sysm = cs.system
    if not auto.preserves(sysm):
        raise RootDataError("automorphism does not preserve the Cartan matrix")
    eps: dict[Root, int] = {}
    for s in sysm.simple_roots():
        eps[s] = cs.flips[s] * cs.flips[auto.act(s)]
        eps[neg(s)] = eps[s]
    for r in sysm.positive_roots:
        if r in eps:
            continue
        for sgn in (1, -1):
            rr = tuple(sgn * x for x in r)
            for s in sysm.simple_roots():
                ss = tuple(sgn * x for x in s)
                d = tuple(x - y for x, y in zip(rr, ss))
                if d in eps:
                    # sigma [X_s, X_d] = eps_s eps_d [X_{ss}, X_{sd}]
                    n0 = cs.structure_constant(ss, d)
                    n1 = cs.structure_constant(auto.act(ss), auto.act(d))
                    eps[rr] = eps[ss] * eps[d] * n1 // n0
                    break
    return eps


def steinberg_signs(cs: ChevalleySystem, auto: DiagramAutomorphism, check_matrix: bool = True) -> SteinbergSigns:
    """Signs of the pinned automorphism on the root groups of ``cs``.

    The signs are computed through the Lie algebra.  In type A with the
    standard involution they are recomputed from the matrix involution and the
    two tables must agree.
    """
    eps = _raw_signs(cs, auto)
    sysm = cs.system
    if check_matrix and sysm.is_irreducible() and sysm.cartan == cartan_matrix("A", sysm.rank) and auto.order == 2:
        from .rank_one_models import steinberg_signs_from_matrices

        other = steinberg_signs_from_matrices(cs)
        if other != eps:
            raise ChevalleyError("Lie-algebra and matrix Steinberg signs disagree")
    return SteinbergSigns(auto, eps)


def _is_divisible_average(sysm: FiniteRootSystem, auto: DiagramAutomorphism, r: Root) -> bool:
    """Whether the orbit average of a fixed root ``r`` is twice another average."""
    for s in sysm.roots:
        orb = auto.orbit(s)
        total = tuple(sum(o[i] for o in orb) for i in range(sysm.rank))
        if len(orb) > 1 and all(2 * t == x * len(orb) for t, x in zip(total, r)):
            return True
    return False


def chevalley_steinberg_system(cs: ChevalleySystem, auto: DiagramAutomorphism) -> ChevalleySystem:
    """Re-sign ``cs`` along Galois orbits so that the Steinberg condition holds.

    Signs are pinned deterministically: along each orbit ``g, sigma g, ...`` of
    the canonical representative (first in root order) set
    ``X_{sigma^j g} = sigma^j(X_g)``.
    """
    sysm = cs.system
    eps = _raw_signs(cs, auto)
    flips: dict[Root, int] = {}
    done: set[Root] = set()
    for r in sysm.positive_roots:
        if r in done:
            continue
        orb = auto.orbit(r)
        done.update(orb)
        c = 1
        flips[orb[0]] = 1
        for j in range(1, len(orb)):
            c *= eps[orb[j - 1]]
            flips[orb[j]] = c
        mu = c * eps[orb[-1]]
        if len(orb) > 1 and mu != 1:
            raise ChevalleyError("Steinberg condition unsatisfiable on a non-trivial orbit")
    out = cs.reflip(flips)
    new = _raw_signs(out, auto)
    for r in sysm.roots:
        if new[r] != 1:
            if auto.act(r) != r or not _is_divisible_average(sysm, auto, r if any(x > 0 for x in r) else neg(r)):
                raise ChevalleyError(f"sign -1 on {r} whose average is not divisible")
    return out


@lru_cache(maxsize=None)
def datum_chevalley(type_id: str) -> ChevalleySystem:
    """Chevalley--Steinberg system of the absolute group of a catalogue type."""
    from .root_data import relative_datum

    d = relative_datum(type_id)
    return chevalley_steinberg_system(build_chevalley(d.system), d.auto)


# --------------------------------------------------------------------------
# Tits modification

@dataclass
class TitsExponents:
    """Powers of 2 in the Tits modification.

    ``absolute[alpha] = <varpi_gamma^vee, alpha>``; ``relative[a]`` is
    ``<varpi_{2c}^vee, a>`` for nd-nm ``a``; ``chi_plus[a]`` is 1 on positive
    multipliable roots and 0 on negative ones.
    """

    first_type: tuple[int, ...]
    absolute: dict[Root, int]
    relative: dict[Root, int]
    chi_plus: dict[Root, int]


def first_type_lifts(datum: RelativeRootDatum) -> tuple[int, ...]:
    """Indices of the chosen lifts of the multipliable simple roots."""
    out = []
    for i, orb in enumerate(datum.simple_orbits):
        s = tuple(1 if k == i else 0 for k in range(datum.rank))
        if datum.classify(s) == MULTIPLIABLE:
            out.append(orb[0])
    return tuple(out)


def tits_exponents(datum: RelativeRootDatum) -> TitsExponents:
    first = first_type_lifts(datum)
    mult_simple = [i for i in range(datum.rank) if datum.classify(tuple(1 if k == i else 0 for k in range(datum.rank))) == MULTIPLIABLE]
    absolute = {r: sum(r[i] for i in first) for r in datum.system.roots}
    relative = {}
    chi = {}
    for a in datum.roots:
        cls = datum.classify(a)
        if cls == ND_NM:
            k = sum(a[i] for i in mult_simple)
            if k % 2:
                raise ChevalleyError("odd multipliable coefficient on an nd-nm root")
            relative[a] = k // 2
        elif cls == MULTIPLIABLE:
            chi[a] = 1 if datum.is_positive(a) else 0
    return TitsExponents(first, absolute, relative, chi)


def relative_commutator(datum: RelativeRootDatum, a: Root, arg_a: Any, b: Root, arg_b: Any):
    """Expansion of ``[x_a(arg_a), x_b(arg_b)]`` in Tits coordinates."""
    from .rank_one_models import commutator_formula

    return commutator_formula(datum, a, arg_a, b, arg_b)
