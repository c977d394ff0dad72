"""Finite root systems, diagram automorphisms and their foldings.

Roots of the absolute system ``H`` are integer tuples in the basis of simple
roots.  A relative root is stored by its coordinates in the basis of relative
simple roots (the averages of simple-root orbits); those coordinates are
integers, and twice a multipliable root is again a root.

Level sets are computed from valuations of explicit Laurent monomials, not
tabulated.  The loop-algebra model in :mod:`twistgr.demazure_km` gives an
independent route to the same sets.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .exact_algebra import TwistedLaurentScalar

Root = tuple[int, ...]

ND_NM = "nd-nm"
MULTIPLIABLE = "multipliable"
DIVISIBLE = "divisible"


class RootDataError(ValueError):
    """Unknown type, bad root or unsupported input."""


# --------------------------------------------------------------------------
# Cartan matrices

def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(letter: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix ``a_ij = <alpha_i^vee, alpha_j>`` with Bourbaki labels."""
    letter = letter.upper()
    if letter == "A" and n >= 1:
        a = _chain(n)
    elif letter == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
    elif letter == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
    elif letter == "D" and n >= 3:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "E" and n in (6, 7, 8):
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif letter == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2
    elif letter == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    else:
        raise RootDataError(f"no Cartan type {letter}{n}")
    return tuple(tuple(r) for r in a)


def block_diagonal(*blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(r) for r in out)


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """Squared half-lengths ``d_i`` with ``d_i a_ij`` symmetric, short roots of length 2."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and a[i][j] != 0 and d[j] is None:
                    # d_i a_ij = d_j a_ji
                    d[j] = d[i] * a[i][j] / a[j][i]
                    comp.append(j)
                    stack.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    return [x for x in d]  # type: ignore[misc]


# --------------------------------------------------------------------------
# finite root systems

class FiniteRootSystem:
    """Root system given by a (possibly reducible) Cartan matrix.

    The invariant form is normalised so that short roots in each component
    have squared length 2; for simply-laced types this is the usual form.
    """

    def __init__(self, cartan: Sequence[Sequence[int]], name: str = "") -> None:
        self.cartan = tuple(tuple(int(x) for x in r) for r in cartan)
        self.rank = len(self.cartan)
        self.name = name
        for i, row in enumerate(self.cartan):
            if len(row) != self.rank or row[i] != 2:
                raise RootDataError("Cartan matrix must be square with 2 on the diagonal")
            for j, x in enumerate(row):
                if j != i and (x > 0 or (x == 0) != (self.cartan[j][i] == 0)):
                    raise RootDataError("invalid off-diagonal Cartan entry")
        d = _symmetrizer(self.cartan)
        self.half_lengths = tuple(d)
        self.gram = tuple(tuple(d[i] * self.cartan[i][j] for j in range(self.rank)) for i in range(self.rank))
        self.positive_roots = self._generate()
        self.roots = self.positive_roots + tuple(neg(r) for r in self.positive_roots)
        self._root_set = frozenset(self.roots)

    def _generate(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        ordered = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    # p = how far beta - k alpha_i stays a root
                    p = 0
                    probe = list(beta)
                    while True:
                        probe[i] -= 1
                        if tuple(probe) in found:
                            p += 1
                        else:
                            break
                    q = p - self.pair_coroot(beta, i)
                    if q > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
                            ordered.append(up)
            layer = nxt
        ordered.sort(key=lambda r: (sum(r), [-x for x in r]))
        return tuple(ordered)

    def pair_coroot(self, beta: Sequence[int | Fraction], i: int):
        """``<beta, alpha_i^vee>``."""
        return sum(c * self.cartan[i][j] for j, c in enumerate(beta))

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return sum(
            (x[i] * y[j] * self.gram[i][j] for i in range(self.rank) for j in range(self.rank) if x[i] and y[j]),
            Fraction(0),
        )

    def is_root(self, r: Sequence[int]) -> bool:
        return tuple(r) in self._root_set

    def is_positive(self, r: Sequence[int]) -> bool:
        return any(x > 0 for x in r)

    def simple_roots(self) -> list[Root]:
        return [tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank)]

    def coroot(self, r: Sequence[int]) -> tuple[int, ...]:
        """``r^vee`` in the basis of simple coroots."""
        rr = self.form(r, r)
        out = []
        for i, c in enumerate(r):
            x = Fraction(c) * 2 * self.half_lengths[i] / rr
            if x.denominator != 1:
                raise RootDataError(f"{r} is not a root")
            out.append(int(x))
        return tuple(out)

    def pairing(self, beta: Sequence[int], alpha: Sequence[int]) -> int:
        """``<beta, alpha^vee>``."""
        return int(2 * self.form(beta, alpha) / self.form(alpha, alpha))

    def reflect(self, alpha: Sequence[int], beta: Sequence[int]) -> Root:
        k = self.pairing(beta, alpha)
        return tuple(b - k * a for a, b in zip(alpha, beta))

    def fundamental_coweight_pairing(self, i: int, beta: Sequence[int]) -> int:
        """``<varpi_i^vee, beta>``, the i-th coordinate of beta."""
        return beta[i]

    def highest_root(self) -> Root:
        if not self.is_irreducible():
            raise RootDataError("highest root of a reducible system")
        return max(self.positive_roots, key=sum)

    def is_irreducible(self) -> bool:
        return len(components(self.cartan)) == 1

    def is_simply_laced(self) -> bool:
        return all(x in (0, -1) for i, r in enumerate(self.cartan) for j, x in enumerate(r) if i != j)

    def __repr__(self) -> str:
        return f"FiniteRootSystem({self.name or self.cartan})"


def neg(r: Sequence) -> tuple:
    return tuple(-x for x in r)


def add(r: Sequence, s: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(r, s))


def components(cartan: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(cartan)
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


@lru_cache(maxsize=None)
def root_system(letter: str, n: int) -> FiniteRootSystem:
    return FiniteRootSystem(cartan_matrix(letter, n), f"{letter}{n}")


# --------------------------------------------------------------------------
# diagram automorphisms

@dataclass(frozen=True)
class DiagramAutomorphism:
    """Permutation of the simple roots preserving the Cartan matrix."""

    perm: tuple[int, ...]

    @property
    def order(self) -> int:
        k, p = 1, self.perm
        ident = tuple(range(len(p)))
        cur = p
        while cur != ident:
            cur = tuple(p[i] for i in cur)
            k += 1
        return k

    def preserves(self, system: FiniteRootSystem) -> bool:
        a, p = system.cartan, self.perm
        return len(p) == system.rank and all(a[p[i]][p[j]] == a[i][j] for i in range(len(p)) for j in range(len(p)))

    def act(self, r: Sequence) -> tuple:
        out = [0] * len(r)
        for i, c in enumerate(r):
            out[self.perm[i]] = c
        return tuple(out)

    def orbit(self, r: Sequence) -> list[tuple]:
        out = [tuple(r)]
        cur = self.act(r)
        while cur != out[0]:
            out.append(cur)
            cur = self.act(cur)
        return out

    @classmethod
    def identity(cls, n: int) -> DiagramAutomorphism:
        return cls(tuple(range(n)))


# --------------------------------------------------------------------------
# relative root data

@dataclass(frozen=True)
class LevelSet:
    """Arithmetic progression ``offset + step*Z`` with ``0 <= offset < step``."""

    offset: Fraction
    step: Fraction

    def __contains__(self, x: Fraction | int) -> bool:
        return ((Fraction(x) - self.offset) / self.step).denominator == 1

    def elements(self, lo: Fraction | int, hi: Fraction | int) -> list[Fraction]:
        """Members of the progression in the closed interval ``[lo, hi]``."""
        lo, hi = Fraction(lo), Fraction(hi)
        k = -((-(lo - self.offset)) // self.step)  # ceil
        out = []
        x = self.offset + k * self.step
        while x <= hi:
            out.append(x)
            x += self.step
        return out

    def least_above(self, x: Fraction | int) -> Fraction:
        """Smallest member ``>= x``."""
        x = Fraction(x)
        k = -((-(x - self.offset)) // self.step)
        return self.offset + k * self.step

    def smallest_positive(self) -> Fraction:
        v = self.least_above(0)
        return v if v > 0 else v + self.step

    def __str__(self) -> str:
        def q(x: Fraction) -> str:
            return str(x) if x.denominator == 1 else f"({x})"

        step = "Z" if self.step == 1 else f"{q(self.step)}Z"
        return step if self.offset == 0 else f"{q(self.offset)} + {step}"


@dataclass
class RelativeRootDatum:
    """The folding of ``(H, sigma)``.

    ``roots`` are integer coordinates in the relative simple roots.  For each
    relative root ``orbit_of`` lists the absolute roots averaging to it.
    """

    type_id: str
    system: FiniteRootSystem
    auto: DiagramAutomorphism
    e: int
    simple_orbits: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    lifts: dict[Root, tuple[Root, ...]]
    averages: dict[Root, tuple[Fraction, ...]]
    restriction: dict[Root, Root] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_orbits)

    def is_root(self, a: Sequence[int]) -> bool:
        return tuple(a) in self.lifts

    def _check(self, a: Sequence[int]) -> Root:
        a = tuple(a)
        if a not in self.lifts:
            raise RootDataError(f"{a} is not a relative root of {self.type_id}")
        return a

    def classify(self, a: Sequence[int]) -> str:
        a = self._check(a)
        if tuple(2 * x for x in a) in self.lifts:
            return MULTIPLIABLE
        if all(x % 2 == 0 for x in a) and tuple(x // 2 for x in a) in self.lifts:
            return DIVISIBLE
        return ND_NM

    def is_reduced(self) -> bool:
        return all(self.classify(a) == ND_NM for a in self.roots)

    def extension_degree(self, a: Sequence[int]) -> int:
        """``e_a``: size of the Galois orbit of a lift of ``a``."""
        a = self._check(a)
        return len(self.auto.orbit(self.lifts[a][0]))

    def is_positive(self, a: Sequence[int]) -> bool:
        return any(x > 0 for x in a)

    def form(self, a: Sequence, b: Sequence) -> Fraction:
        """Invariant form on relative roots, induced from ``H`` on averages."""
        return self.system.form(self.to_absolute(a), self.to_absolute(b))

    def to_absolute(self, a: Sequence) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.system.rank
        for c, orb in zip(a, self.simple_orbits):
            for i in orb:
                out[i] += Fraction(c) / len(orb)
        return tuple(out)

    def simple_roots(self) -> list[Root]:
        return [tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank)]

    def coroot(self, a: Sequence) -> tuple[Fraction, ...]:
        """``a^vee = 2a/(a,a)`` in coordinates of the relative simple roots."""
        aa = self.form(a, a)
        return tuple(Fraction(2 * x) / aa for x in a)

    def pairing(self, b: Sequence, a: Sequence) -> Fraction:
        """``<b, a^vee>``."""
        return 2 * self.form(b, a) / self.form(a, a)

    def reflect(self, a: Sequence, b: Sequence) -> Root:
        k = self.pairing(b, a)
        if k.denominator != 1:
            raise RootDataError("reflection leaves the root lattice")
        return tuple(int(y - k * x) for x, y in zip(a, b))

    def coroot_in_orbit_basis(self, a: Sequence[int]) -> tuple[int, ...]:
        """The coroot of ``a`` in the basis of orbit sums of simple coroots of H.

        This is the cocharacter of the maximal split torus induced by ``a``.
        """
        a = self._check(a)
        cls = self.classify(a)
        lift = self.lifts[a]
        h = self.system
        if cls == MULTIPLIABLE:
            pair = lift[0]
            total = [0] * h.rank
            for g in self.auto.orbit(pair):
                total = [x + 2 * y for x, y in zip(total, h.coroot(g))]
        else:
            total = [0] * h.rank
            for g in self.auto.orbit(lift[0]):
                total = [x + y for x, y in zip(total, h.coroot(g))]
        out = []
        for orb in self.simple_orbits:
            vals = {total[i] for i in orb}
            if len(vals) != 1:
                raise RootDataError("coroot is not Galois invariant")
            out.append(vals.pop())
        return tuple(out)

    @cached_property
    def level_sets(self) -> dict[Root, LevelSet]:
        return {a: valuation_level_set(self, a) for a in self.roots}

    def level_set(self, a: Sequence[int]) -> LevelSet:
        return self.level_sets[self._check(a)]

    def __repr__(self) -> str:
        return f"RelativeRootDatum({self.type_id}, rank={self.rank})"


def fold(system: FiniteRootSystem, auto: DiagramAutomorphism, e: int | None = None, type_id: str = "") -> RelativeRootDatum:
    """Relative root system formed by the averages of Galois orbits."""
    if not auto.preserves(system):
        raise RootDataError("automorphism does not preserve the Cartan matrix")
    order = auto.order
    e = order if e is None else e
    if e % order:
        raise RootDataError("the twist order must be a multiple of the automorphism order")
    seen: set[int] = set()
    simple_orbits = []
    for i in range(system.rank):
        if i in seen:
            continue
        orb = []
        j = i
        while j not in orb:
            orb.append(j)
            j = auto.perm[j]
        seen.update(orb)
        simple_orbits.append(tuple(sorted(orb)))
    lifts: dict[Root, list[Root]] = {}
    averages: dict[Root, tuple[Fraction, ...]] = {}
    restriction: dict[Root, Root] = {}
    for r in system.roots:
        orb = auto.orbit(r)
        avg = tuple(sum(Fraction(o[i]) for o in orb) / len(orb) for i in range(system.rank))
        # coordinate along the orbit O of simple roots is |O| times the
        # common coefficient of its members
        rel = []
        for so in simple_orbits:
            c = avg[so[0]] * len(so)
            if c.denominator != 1:
                raise RootDataError("non-integral relative coordinates")
            rel.append(int(c))
        rel = tuple(rel)
        restriction[r] = rel
        lifts.setdefault(rel, []).append(r)
        averages[rel] = avg
    rel_roots = sorted(lifts, key=lambda a: (sum(abs(x) for x in a), [-x for x in a]))
    pos = tuple(a for a in rel_roots if any(x > 0 for x in a))
    negs = tuple(neg(a) for a in pos)
    return RelativeRootDatum(
        type_id=type_id or system.name,
        system=system,
        auto=auto,
        e=e,
        simple_orbits=tuple(simple_orbits),
        roots=pos + negs,
        positive_roots=pos,
        lifts={a: tuple(v) for a, v in lifts.items()},
        averages=averages,
        restriction=restriction,
    )


def classify_root(datum: RelativeRootDatum, a: Sequence[int]) -> str:
    return datum.classify(a)


# --------------------------------------------------------------------------
# level sets from valuations

def _monomial_valuations(m: int, e: int, bound: int, trace_zero: bool) -> list[Fraction]:
    """Valuations of monomials ``t^(k/m)`` in ``Q[t^(+-1/e)]``.

    With ``trace_zero`` only the monomials killed by ``1 + sigma`` count,
    where sigma generates the Galois group of ``t^(1/m)`` over ``t``.
    """
    out = []
    gamma = e // m
    for k in range(-bound * m, bound * m + 1):
        x = TwistedLaurentScalar.t_power(Fraction(k, m), e)
        if trace_zero:
            if x + x.galois_act(gamma) != 0:
                continue
        out.append(x.valuation())
    return out


def _progression(values: Iterable[Fraction]) -> LevelSet:
    vals = sorted(set(values))
    if len(vals) < 2:
        raise RootDataError("too few valuations to read off a progression")
    step = vals[1] - vals[0]
    for x, y in zip(vals, vals[1:]):
        if y - x != step:
            raise RootDataError("valuations are not an arithmetic progression")
    return LevelSet(vals[0] % step, step)


def valuation_level_set(datum: RelativeRootDatum, a: Sequence[int], bound: int = 3) -> LevelSet:
    """``Gamma'_a`` read off from valuations of root-group coordinates.

    * nd-nm: ``phi_a(x_a(r)) = omega(r)`` with ``r`` in ``Z[t^(+-1/e_a)]``;
    * multipliable: ``phi_a(x_a(r,s)) = omega(s)/2`` where the optimal ``s`` is
      ``N(r)/2`` up to a trace-zero correction, so only ``omega(r)`` matters;
    * divisible: ``phi_{2a}(x_a(0,s)) = omega(s)`` with ``s`` of trace zero.
    """
    cls = datum.classify(a)
    e = datum.e
    if cls == DIVISIBLE:
        half = tuple(x // 2 for x in a)
        m = datum.extension_degree(half)
        return _progression(_monomial_valuations(m, e, bound, trace_zero=True))
    m = datum.extension_degree(a)
    vals = _monomial_valuations(m, e, bound, trace_zero=False)
    if cls == MULTIPLIABLE:
        vals = [TwistedLaurentScalar.t_power(v, e).norm_trace(1)[0].valuation() / 2 for v in vals]
    return _progression(vals)


def level_sets(datum: RelativeRootDatum) -> dict[Root, LevelSet]:
    return dict(datum.level_sets)


# --------------------------------------------------------------------------
# type identifiers and the catalogue

@dataclass(frozen=True)
class AffineType:
    """Parsed affine type identifier."""

    letter: str
    n: int
    r: int
    restriction: bool = False

    @property
    def twisted(self) -> bool:
        return self.r > 1 and not self.restriction

    def __str__(self) -> str:
        if self.restriction:
            return f"Res{self.r}{self.letter}{self.n}"
        return f"{self.letter}{self.n}~{self.r}"

    @property
    def kac_name(self) -> str:
        if self.restriction:
            return f"Res_{self.r} {self.letter}_{self.n}"
        return f"{self.letter}_{self.n}^({self.r})"


_ID = re.compile(r"^\s*([A-Ga-g])(\d+)\s*(?:~\s*(\d*)|\^\s*\(?\s*(\d+)\s*\)?)?\s*$")
_RES = re.compile(r"^\s*Res\s*_?\s*(\d)\s*([A-Ga-g])(\d+)\s*$", re.IGNORECASE)

SUPPORTED_TWISTS = {
    ("A", 2): lambda n: n >= 2,
    ("D", 2): lambda n: n >= 4,
    ("E", 2): lambda n: n == 6,
    ("D", 3): lambda n: n == 4,
}


def parse_type(type_id: str) -> AffineType:
    """Parse ``"A2~2"``, ``"A2^(2)"``, ``"A1~1"``, ``"A1~"``, ``"B3"`` or ``"Res2A1"``."""
    m = _RES.match(type_id)
    if m:
        r, letter, n = int(m.group(1)), m.group(2).upper(), int(m.group(3))
        if r != 2:
            raise RootDataError("only quadratic restriction of scalars is supported")
        cartan_matrix(letter, n)
        return AffineType(letter, n, r, restriction=True)
    m = _ID.match(type_id)
    if not m:
        raise RootDataError(f"cannot parse type identifier {type_id!r}")
    letter, n = m.group(1).upper(), int(m.group(2))
    r_txt = m.group(3) if m.group(3) is not None else m.group(4)
    r = int(r_txt) if r_txt else 1
    cartan_matrix(letter, n)
    if r == 1:
        return AffineType(letter, n, 1)
    check = SUPPORTED_TWISTS.get((letter, r))
    if check is None or not check(n):
        raise RootDataError(f"no twisted affine type {letter}{n}^({r})")
    return AffineType(letter, n, r)


def _twist_perm(letter: str, n: int, r: int) -> tuple[int, ...]:
    if letter == "A":
        return tuple(n - 1 - i for i in range(n))
    if letter == "D" and r == 2:
        return tuple(range(n - 2)) + (n - 1, n - 2)
    if letter == "D" and r == 3:
        return (2, 1, 3, 0)
    if letter == "E":
        return (5, 1, 4, 3, 2, 0)
    raise RootDataError(f"no diagram automorphism for {letter}{n}^({r})")


@lru_cache(maxsize=None)
def relative_datum(type_id: str) -> RelativeRootDatum:
    """Folded root datum of a catalogue type."""
    t = parse_type(type_id)
    name = str(t)
    if t.restriction:
        base = cartan_matrix(t.letter, t.n)
        h = FiniteRootSystem(block_diagonal(base, base), f"{t.letter}{t.n}x{t.letter}{t.n}")
        perm = tuple(range(t.n, 2 * t.n)) + tuple(range(t.n))
        return fold(h, DiagramAutomorphism(perm), 2, name)
    h = root_system(t.letter, t.n)
    if t.r == 1:
        return fold(h, DiagramAutomorphism.identity(t.n), 1, name)
    return fold(h, DiagramAutomorphism(_twist_perm(t.letter, t.n, t.r)), t.r, name)


def catalogue(max_rank: int = 6) -> list[str]:
    """Supported type identifiers with relative rank at most ``max_rank``."""
    names = [f"A{n}~1" for n in range(1, 7)]
    names += [f"B{n}~1" for n in range(2, 7)]
    names += [f"C{n}~1" for n in range(2, 7)]
    names += [f"D{n}~1" for n in range(4, 7)]
    names += ["E6~1", "F4~1", "G2~1"]
    names += ["A3~2", "A5~2", "D4~2", "D5~2", "D6~2", "E6~2", "D4~3"]
    names += ["A2~2", "A4~2", "A6~2"]
    names += ["Res2A1", "Res2A2"]
    return [x for x in names if relative_datum(x).rank <= max_rank]


# --------------------------------------------------------------------------
# affine simple roots, alcove vertices and special points

def affine_simple_roots(datum: RelativeRootDatum) -> list[tuple[Root, Fraction]]:
    """Simple affine roots ``(gradient, level)`` of the fundamental alcove.

    The alcove is ``a_i(x) > 0`` together with ``b(x) < m_b`` for the positive
    root ``b`` whose normalised vector ``b / m_b`` is highest, ``m_b`` being
    the least positive level of ``-b``.  Node 0 is the non-finite one.
    """
    best = None
    best_vec = None
    for b in datum.positive_roots:
        m = datum.level_set(neg(b)).smallest_positive()
        vec = tuple(Fraction(x) / m for x in b)
        if best_vec is None or all(x >= y for x, y in zip(vec, best_vec)):
            best, best_vec = (b, m), vec
    for b in datum.positive_roots:
        m = datum.level_set(neg(b)).smallest_positive()
        if not all(x >= Fraction(y) / m for x, y in zip(best_vec, b)):
            raise RootDataError("no highest normalised root; reducible system?")
    b, m = best
    out = [(neg(b), m)]
    out += [(s, Fraction(0)) for s in datum.simple_roots()]
    for s, lv in out:
        if lv not in datum.level_set(s):
            raise RootDataError("simple affine root with inadmissible level")
    return out


def alcove_vertices(datum: RelativeRootDatum) -> list[tuple[Fraction, ...]]:
    """Vertices ``v_0..v_r`` in coordinates ``x_i = a_i(x)``; ``v_0`` is the origin."""
    (b, m), *_ = affine_simple_roots(datum)
    hb = neg(b)
    r = datum.rank
    verts = [tuple(Fraction(0) for _ in range(r))]
    for i in range(r):
        verts.append(tuple(m / hb[i] if k == i else Fraction(0) for k in range(r)))
    return verts


def evaluate(a: Sequence, x: Sequence) -> Fraction:
    """``a(x)`` for a relative root ``a`` and a point in simple-root coordinates."""
    return sum((Fraction(c) * y for c, y in zip(a, x)), Fraction(0))


def residual_at(datum: RelativeRootDatum, x: Sequence) -> list[Root]:
    """Gradients of affine roots vanishing at ``x``."""
    return [a for a in datum.roots if -evaluate(a, x) in datum.level_set(a)]


def is_special(datum: RelativeRootDatum, x: Sequence) -> bool:
    res = residual_at(datum, x)
    for a in datum.positive_roots:
        if not any(_proportional(a, b) for b in res):
            return False
    return True


def _proportional(a: Sequence, b: Sequence) -> bool:
    ratio = None
    for x, y in zip(a, b):
        if x == 0 and y == 0:
            continue
        if x == 0 or y == 0:
            return False
        q = Fraction(y, x)
        if ratio is None:
            ratio = q
        elif q != ratio:
            return False
    return True


@dataclass(frozen=True)
class SpecialPoint:
    vertex: int
    point: tuple[Fraction, ...]
    residual: tuple[Root, ...]
    kind: str  # "nd", "nm" or "split"


def special_points(datum: RelativeRootDatum) -> list[SpecialPoint]:
    """Special vertices of the fundamental alcove with their residual systems."""
    if datum.rank > 6:
        raise RootDataError("rank above 6 not supported")
    nd = {a for a in datum.roots if datum.classify(a) != DIVISIBLE}
    nm = {a for a in datum.roots if datum.classify(a) != MULTIPLIABLE}
    out = []
    for i, v in enumerate(alcove_vertices(datum)):
        if not is_special(datum, v):
            continue
        res = tuple(residual_at(datum, v))
        rs = set(res)
        if nd == nm and rs == nd:
            kind = "split"
        elif rs == nd:
            kind = "nd"
        elif rs == nm:
            kind = "nm"
        else:
            kind = "other"
        out.append(SpecialPoint(i, v, res, kind))
    return out


def root_label(a: Sequence[int], names: str = "abcdefgh") -> str:
    """Human-readable name like ``2a+b`` or ``-a``."""
    if len(a) == 1:
        c = a[0]
        if c == 0:
            return "0"
        return {1: "a", -1: "-a"}.get(c, f"{c}a")
    parts = []
    for c, nm in zip(a, names):
        if c == 0:
            continue
        coef = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{coef}{nm}")
    return "".join(parts) or "0"


def relative_cartan(datum: RelativeRootDatum) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix of the relative simple roots (a non-reduced system uses ``a``, not ``2a``)."""
    s = datum.simple_roots()
    return tuple(tuple(int(datum.pairing(s[j], s[i])) for j in range(datum.rank)) for i in range(datum.rank))


def lattice_gcd(values: Iterable[Fraction]) -> Fraction:
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = lcm(*[v.denominator for v in vals])
    g = 0
    for v in vals:
        g = gcd(g, int(v * den))
    return Fraction(g, den)


def all_pairs(xs: Sequence) -> Iterable[tuple]:
    return itertools.combinations(xs, 2)
