"""The affine Weyl group of a simply connected relative datum as a Coxeter group.

Elements are affine maps ``x -> M x + c`` on the apartment written in
simple-root coordinates.  Lengths count the walls separating the fundamental
alcove from its image, which is exact and needs no truncation.  Facets of the
fundamental alcove are named by the set of vertex indices they contain; wall
``i`` is opposite vertex ``i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .apartment import AffineRoot
from .root_data import (
    RelativeRootDatum,
    affine_simple_roots,
    alcove_vertices,
    evaluate,
    relative_datum,
)


class IWError(ValueError):
    pass


Matrix = tuple[tuple[Fraction, ...], ...]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(len(b[0]))) for i in range(len(a)))


def _mat_vec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def _mat_inv(a: Matrix) -> Matrix:
    n = len(a)
    m = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


@dataclass(frozen=True)
class IWElement:
    """``x -> linear @ x + translation`` in simple-root coordinates."""

    linear: Matrix
    translation: tuple[Fraction, ...]

    @classmethod
    def identity(cls, rank: int) -> IWElement:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank)), tuple(Fraction(0) for _ in range(rank)))

    def __call__(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(y + c for y, c in zip(_mat_vec(self.linear, [Fraction(v) for v in x]), self.translation))

    def __mul__(self, other: IWElement) -> IWElement:
        return IWElement(_mat_mul(self.linear, other.linear), tuple(y + c for y, c in zip(_mat_vec(self.linear, other.translation), self.translation)))

    def inverse(self) -> IWElement:
        inv = _mat_inv(self.linear)
        return IWElement(inv, tuple(-y for y in _mat_vec(inv, self.translation)))

    @property
    def is_identity(self) -> bool:
        return self == IWElement.identity(len(self.translation))

    @property
    def is_translation(self) -> bool:
        return self.linear == IWElement.identity(len(self.translation)).linear

    def act_root(self, alpha: AffineRoot) -> AffineRoot:
        """``(w alpha)(x) = alpha(w^-1 x)``."""
        inv = self.inverse()
        grad = tuple(sum((Fraction(alpha.gradient[i]) * inv.linear[i][j] for i in range(len(inv.linear))), Fraction(0)) for j in range(len(inv.linear)))
        if any(g.denominator != 1 for g in grad):
            raise IWError("image gradient is not integral")
        return AffineRoot(tuple(int(g) for g in grad), alpha.level + evaluate(alpha.gradient, inv.translation))

    def opposite(self) -> IWElement:
        """Conjugate by ``x -> -x``."""
        return IWElement(self.linear, tuple(-c for c in self.translation))


def _datum(datum: RelativeRootDatum | str) -> RelativeRootDatum:
    return relative_datum(datum) if isinstance(datum, str) else datum


def reflection(datum: RelativeRootDatum | str, a: Sequence[int], level: Fraction | int = 0) -> IWElement:
    """Reflection in the wall ``a(x) + level = 0``."""
    d = _datum(datum)
    r = d.rank
    v = [d.pairing(s, a) for s in d.simple_roots()]
    lin = tuple(tuple(Fraction(int(i == j)) - v[i] * a[j] for j in range(r)) for i in range(r))
    return IWElement(lin, tuple(-Fraction(level) * v[i] for i in range(r)))


def translation(datum: RelativeRootDatum | str, coweight: Sequence) -> IWElement:
    """``t_lambda`` for ``lambda`` given in the basis of relative simple coroots."""
    d = _datum(datum)
    simple = d.simple_roots()
    shift = tuple(sum((Fraction(c) * d.pairing(simple[i], simple[j]) for j, c in enumerate(coweight)), Fraction(0)) for i in range(d.rank))
    return IWElement(IWElement.identity(d.rank).linear, shift)


class AffineWeylGroup:
    """Coxeter machine for one supported type."""

    def __init__(self, datum: RelativeRootDatum | str) -> None:
        self.datum = _datum(datum)
        d = self.datum
        self.rank = d.rank
        self.walls = [AffineRoot(b, n) for b, n in affine_simple_roots(d)]
        self.gens = [reflection(d, w.gradient, w.level) for w in self.walls]
        self.vertices = alcove_vertices(d)
        n = len(self.vertices)
        self.base_point = tuple(sum(c) / n for c in zip(*self.vertices))
        self.e = IWElement.identity(self.rank)
        self._length: dict[IWElement, int] = {}
        self._word: dict[IWElement, tuple[int, ...]] = {}
        self._lower: dict[IWElement, frozenset] = {}
        self._strata: list[list[IWElement]] = [[self.e]]
        self._word[self.e] = ()

    # basic

    @property
    def n_gens(self) -> int:
        return len(self.gens)

    def s(self, i: int) -> IWElement:
        return self.gens[i]

    def from_word(self, word: Iterable[int]) -> IWElement:
        out = self.e
        for i in word:
            out = out * self.gens[i]
        return out

    def separating_roots(self, p: Sequence, q: Sequence) -> list[AffineRoot]:
        """Real affine roots positive at ``p`` and negative at ``q``."""
        out = []
        d = self.datum
        for a in d.roots:
            ap, aq = evaluate(a, p), evaluate(a, q)
            if aq >= ap:
                continue
            for n in d.level_set(a).elements(-ap, -aq):
                if ap + n > 0 > aq + n:
                    out.append(AffineRoot(a, n))
        return out

    def inversions(self, w: IWElement) -> list[AffineRoot]:
        """Positive real affine roots negative on ``w A``."""
        return self.separating_roots(self.base_point, w(self.base_point))

    def length(self, w: IWElement) -> int:
        if w not in self._length:
            self._length[w] = len(self.inversions(w))
        return self._length[w]

    def left_descents(self, w: IWElement) -> list[int]:
        q = w(self.base_point)
        return [i for i, a in enumerate(self.walls) if a(q) < 0]

    def right_descents(self, w: IWElement) -> list[int]:
        return self.left_descents(w.inverse())

    def reduced_word(self, w: IWElement) -> tuple[int, ...]:
        if w in self._word:
            return self._word[w]
        desc = self.left_descents(w)
        if not desc:
            raise IWError("element is not in the affine Weyl group")
        i = desc[0]
        word = (i,) + self.reduced_word(self.gens[i] * w)
        self._word[w] = word
        return word

    def reduced_words(self, w: IWElement) -> list[tuple[int, ...]]:
        """All reduced words of ``w``."""
        if w.is_identity:
            return [()]
        out = []
        for i in self.right_descents(w):
            out += [u + (i,) for u in self.reduced_words(w * self.gens[i])]
        return sorted(out)

    def is_element(self, w: IWElement) -> bool:
        try:
            self.reduced_word(w)
        except IWError:
            return False
        return True

    # enumeration

    def elements_of_length(self, k: int) -> list[IWElement]:
        while len(self._strata) <= k:
            prev = self._strata[-1]
            seen = set()
            nxt = []
            target = len(self._strata)
            for w in prev:
                for i, g in enumerate(self.gens):
                    x = w * g
                    if x in seen or self.length(x) != target:
                        continue
                    seen.add(x)
                    self._word.setdefault(x, self._word[w] + (i,) if w in self._word else self.reduced_word(w) + (i,))
                    nxt.append(x)
            nxt.sort(key=self.reduced_word)
            self._strata.append(nxt)
        return list(self._strata[k])

    def elements_up_to(self, k: int) -> list[IWElement]:
        return [w for j in range(k + 1) for w in self.elements_of_length(j)]

    # Bruhat order

    def lower_interval(self, w: IWElement) -> frozenset:
        """``{u <= w}`` as the set of products of subwords of one reduced word."""
        if w not in self._lower:
            acc = {self.e}
            for i in self.reduced_word(w):
                acc |= {x * self.gens[i] for x in acc}
            self._lower[w] = frozenset(acc)
        return self._lower[w]

    def bruhat_leq(self, u: IWElement, w: IWElement) -> bool:
        return u in self.lower_interval(w)

    @lru_cache(maxsize=None)
    def bruhat_leq_lifting(self, u: IWElement, w: IWElement) -> bool:
        """Independent oracle through the lifting property."""
        if w.is_identity:
            return u.is_identity
        i = self.left_descents(w)[0]
        s = self.gens[i]
        if i in self.left_descents(u):
            return self.bruhat_leq_lifting(s * u, s * w)
        return self.bruhat_leq_lifting(u, s * w)

    # parabolic quotients

    def parabolic_generators(self, facet: Iterable[int] | None) -> list[int]:
        """Indices of the simple reflections fixing the facet."""
        if facet is None:
            return []
        J = set(facet)
        if not J or any(i < 0 or i >= self.n_gens for i in J):
            raise IWError(f"bad facet {sorted(J)}")
        return [i for i in range(self.n_gens) if i not in J]

    def min_rep(self, w: IWElement, facet: Iterable[int] | None = None) -> IWElement:
        gens = self.parabolic_generators(facet)
        while True:
            for i in gens:
                x = w * self.gens[i]
                if self.length(x) < self.length(w):
                    w = x
                    break
            else:
                return w

    def is_min_rep(self, w: IWElement, facet: Iterable[int] | None = None) -> bool:
        return all(self.length(w * self.gens[i]) > self.length(w) for i in self.parabolic_generators(facet))

    def coset_reps(self, k: int, facet: Iterable[int] | None = None) -> list[IWElement]:
        """Minimal coset representatives of length at most ``k``."""
        facet = None if facet is None else tuple(facet)
        return [w for w in self.elements_up_to(k) if self.is_min_rep(w, facet)]

    def quotient_lower_interval(self, w: IWElement, facet: Iterable[int] | None = None) -> frozenset:
        facet = None if facet is None else tuple(facet)
        return frozenset(self.min_rep(x, facet) for x in self.lower_interval(w))

    def I_w(self, w: IWElement, facet: Iterable[int] | None = None) -> set[AffineRoot]:
        """Positive real affine roots ``alpha`` with ``w^-1 alpha`` negative on ``f``.

        For the minimal representative this has ``l(w)`` elements; roots of
        ``w Phi_{f,0}`` are positive and therefore never contribute.
        """
        facet = None if facet is None else tuple(facet)
        if not self.is_min_rep(w, facet):
            raise IWError("I_w needs the minimal representative of w W_f")
        verts = self.vertices if facet is None else [self.vertices[i] for i in facet]
        images = [w(v) for v in verts]
        p = self.base_point
        out = set()
        d = self.datum
        for a in d.roots:
            ap = evaluate(a, p)
            vals = [evaluate(a, y) for y in images]
            for n in d.level_set(a).elements(-ap, -max(vals)):
                if ap + n > 0 and min(vals) + n < 0:
                    out.add(AffineRoot(a, n))
        return out

    def richardson_nonempty(self, w: IWElement, v: IWElement) -> bool:
        return self.bruhat_leq(w, v)

    def picard_rank(self, w: IWElement, facet: Iterable[int] | None = None) -> int:
        """Number of length-one cosets below ``w``."""
        fixed = set(self.parabolic_generators(facet))
        return sum(1 for i in range(self.n_gens) if i not in fixed and self.bruhat_leq(self.gens[i], w))

    # translations and admissible sets

    def finite_orbit(self, coweight: Sequence) -> list[tuple[Fraction, ...]]:
        d = self.datum
        simple = d.simple_roots()
        start = tuple(Fraction(c) for c in coweight)
        seen = {start}
        queue = deque([start])
        while queue:
            lam = queue.popleft()
            for j, s in enumerate(simple):
                k = sum((c * d.pairing(s, simple[i]) for i, c in enumerate(lam)), Fraction(0))
                nxt = tuple(c - k if i == j else c for i, c in enumerate(lam))
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return sorted(seen)

    def dominant(self, coweight: Sequence) -> tuple[Fraction, ...]:
        d = self.datum
        simple = d.simple_roots()
        for lam in self.finite_orbit(coweight):
            if all(sum((c * d.pairing(s, simple[i]) for i, c in enumerate(lam)), Fraction(0)) >= 0 for s in simple):
                return lam
        raise IWError("no dominant representative")

    def translation(self, coweight: Sequence) -> IWElement:
        t = translation(self.datum, coweight)
        if not self.is_element(t):
            raise IWError(f"{tuple(str(c) for c in coweight)} is outside the translation lattice")
        return t

    def admissible_set(self, coweight: Sequence, facet: Iterable[int] | None = None) -> list[IWElement]:
        """``{w W_f : w <= t_lambda for some lambda in W . mu}``, sorted by length then word."""
        facet = None if facet is None else tuple(facet)
        mu = self.dominant(coweight)
        out: set[IWElement] = set()
        for lam in self.finite_orbit(mu):
            out |= self.quotient_lower_interval(self.translation(lam), facet)
        return sorted(out, key=lambda w: (self.length(w), self.reduced_word(w)))

    def hasse_edges(self, elems: Sequence[IWElement]) -> list[tuple[int, int]]:
        """Covering relations ``u < w`` with ``l(w) = l(u) + 1`` among ``elems``."""
        out = []
        for i, u in enumerate(elems):
            for j, w in enumerate(elems):
                if self.length(w) == self.length(u) + 1 and self.bruhat_leq(u, w):
                    out.append((i, j))
        return out

    def schubert_intersection(self, ws: Sequence[IWElement], facet: Iterable[int] | None = None) -> SchubertIntersection:
        if not ws:
            raise IWError("need at least one element")
        facet = None if facet is None else tuple(facet)
        common = set(self.quotient_lower_interval(ws[0], facet))
        for w in ws[1:]:
            common &= self.quotient_lower_interval(w, facet)
        maxima = [x for x in common if not any(y != x and self.bruhat_leq(x, y) for y in common)]
        maxima.sort(key=lambda w: (self.length(w), self.reduced_word(w)))
        return SchubertIntersection(tuple(maxima), frozenset(common))

    def word_str(self, w: IWElement) -> str:
        word = self.reduced_word(w)
        return "e" if not word else "".join(f"s{i}" for i in word)


@dataclass(frozen=True)
class SchubertIntersection:
    """Maximal elements ``v_k`` of an intersection of lower intervals."""

    maxima: tuple[IWElement, ...]
    members: frozenset


@lru_cache(maxsize=None)
def affine_weyl_group(type_id: str) -> AffineWeylGroup:
    return AffineWeylGroup(type_id)


def simple_reflections(type_id: str) -> list[IWElement]:
    return list(affine_weyl_group(type_id).gens)


def act(w: IWElement, x: Sequence) -> tuple[Fraction, ...]:
    return w(x)


__all__ = [
    "AffineWeylGroup",
    "IWElement",
    "IWError",
    "SchubertIntersection",
    "act",
    "affine_weyl_group",
    "reflection",
    "simple_reflections",
    "translation",
]
