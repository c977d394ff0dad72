"""The standard apartment.

Points are written in the coordinates ``x_i = a_i(x)`` given by the relative
simple roots, so an affine root ``a + n`` is the affine function
``x -> sum_i a[i] * x[i] + n``.  The fundamental alcove and its walls come
from :func:`twistgr.root_data.affine_simple_roots`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .root_data import (
    DIVISIBLE,
    RelativeRootDatum,
    Root,
    RootDataError,
    affine_simple_roots,
    alcove_vertices,
    evaluate,
    neg,
    relative_datum,
)

Point = tuple[Fraction, ...]


class ApartmentError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AffineRoot:
    """``a + n``; an all-zero gradient means an imaginary root."""

    gradient: Root
    level: Fraction

    @property
    def is_real(self) -> bool:
        return any(self.gradient)

    def __call__(self, x: Sequence) -> Fraction:
        return evaluate(self.gradient, x) + self.level

    def __neg__(self) -> AffineRoot:
        return AffineRoot(neg(self.gradient), -self.level)

    def __str__(self) -> str:
        from .root_data import root_label

        g = root_label(self.gradient) if self.is_real else "0"
        return f"{g}{'+' if self.level >= 0 else '-'}{abs(self.level)}"


def _datum(datum: RelativeRootDatum | str) -> RelativeRootDatum:
    return relative_datum(datum) if isinstance(datum, str) else datum


def _points(omega: Iterable[Sequence]) -> tuple[Point, ...]:
    pts = tuple(tuple(Fraction(c) for c in p) for p in omega)
    if not pts:
        raise ApartmentError("bounded set must be non-empty")
    return pts


def imaginary_step(datum: RelativeRootDatum | str) -> Fraction:
    """Least positive level of an imaginary root: ``1 / (largest orbit size)``."""
    d = _datum(datum)
    sizes = [len(d.auto.orbit(tuple(1 if k == i else 0 for k in range(d.system.rank)))) for i in range(d.system.rank)]
    return Fraction(1, max(sizes)) if sizes else Fraction(1)


def affine_roots(datum: RelativeRootDatum | str, level_bound: int | Fraction) -> list[AffineRoot]:
    """Real and imaginary affine roots with ``|level| <= level_bound``."""
    d = _datum(datum)
    out = []
    for a in d.roots:
        for n in d.level_set(a).elements(-level_bound, level_bound):
            out.append(AffineRoot(a, n))
    step = imaginary_step(d)
    zero = tuple(0 for _ in range(d.rank))
    k = 1
    while k * step <= level_bound:
        out += [AffineRoot(zero, k * step), AffineRoot(zero, -k * step)]
        k += 1
    return sorted(out)


# --------------------------------------------------------------------------
# concave functions

def f_omega(omega: Iterable[Sequence], datum: RelativeRootDatum | str) -> dict[Root, Fraction]:
    """``f(a) = min { k in Gamma'_a : a(x) + k >= 0 for all x in omega }``."""
    d = _datum(datum)
    pts = _points(omega)
    out = {}
    for a in d.roots:
        lo = min(evaluate(a, x) for x in pts)
        out[a] = d.level_set(a).least_above(-lo)
    return out


def residual_roots(f: dict[Root, Fraction]) -> list[Root]:
    """``{a : f(a) + f(-a) = 0}``."""
    return [a for a in f if f[a] + f[neg(a)] == 0]


# --------------------------------------------------------------------------
# facets

@dataclass(frozen=True)
class Facet:
    """A facet given by the vertices of its closure."""

    vertices: tuple[Point, ...]

    @property
    def barycenter(self) -> Point:
        n = len(self.vertices)
        return tuple(sum(c) / n for c in zip(*self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


def fundamental_alcove(datum: RelativeRootDatum | str) -> Facet:
    return Facet(tuple(alcove_vertices(_datum(datum))))


def facet_of(datum: RelativeRootDatum | str, vertex_indices: Iterable[int]) -> Facet:
    """The face of the fundamental alcove spanned by the given vertices."""
    verts = alcove_vertices(_datum(datum))
    idx = sorted(set(vertex_indices))
    if not idx or any(i < 0 or i >= len(verts) for i in idx):
        raise ApartmentError(f"bad vertex indices {idx}")
    return Facet(tuple(verts[i] for i in idx))


def alcove_faces(datum: RelativeRootDatum | str) -> list[Facet]:
    """All faces of the closure of the fundamental alcove."""
    n = len(alcove_vertices(_datum(datum)))
    return [facet_of(datum, c) for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]


def _walls_between(d: RelativeRootDatum, pts: Sequence[Point]) -> bool:
    """Whether some affine root is strictly positive and strictly negative on ``pts``."""
    for a in d.roots:
        vals = [evaluate(a, x) for x in pts]
        lo, hi = min(vals), max(vals)
        for n in d.level_set(a).elements(-hi, -lo):
            if lo + n < 0 < hi + n:
                return True
    return False


def in_closed_alcove(datum: RelativeRootDatum | str, omega: Iterable[Sequence]) -> bool:
    return not _walls_between(_datum(datum), _points(omega))


def parahoric_subset(facet: Facet | Iterable[Sequence], datum: RelativeRootDatum | str, level_bound: int | Fraction = 3) -> set[AffineRoot]:
    """Affine roots non-negative on the facet, truncated at ``|level| <= level_bound``.

    Imaginary roots with positive level are included.
    """
    d = _datum(datum)
    pts = facet.vertices if isinstance(facet, Facet) else _points(facet)
    if _walls_between(d, pts):
        raise ApartmentError("the set is not contained in a closed alcove")
    out = set()
    for r in affine_roots(d, level_bound):
        if r.is_real:
            if all(r(x) >= 0 for x in pts):
                out.add(r)
        elif r.level > 0:
            out.add(r)
    return out


def nonpositive_subset(facet: Facet, datum: RelativeRootDatum | str, level_bound: int | Fraction = 3) -> set[AffineRoot]:
    """``Phi_{f, <= 0}``: real roots non-positive on ``f`` and imaginary roots of negative level."""
    d = _datum(datum)
    out = set()
    for r in affine_roots(d, level_bound):
        if r.is_real:
            if all(r(x) <= 0 for x in facet.vertices):
                out.add(r)
        elif r.level < 0:
            out.add(r)
    return out


def opposition(facet: Facet) -> Facet:
    """``x -> -x``.  With ``t -> t^-1`` on levels this exchanges the
    non-negative and non-positive parts of the parahoric subsets."""
    return Facet(tuple(tuple(-c for c in v) for v in facet.vertices))


def flip_levels(roots: Iterable[AffineRoot]) -> set[AffineRoot]:
    """The effect of ``t -> t^-1``: ``a + n -> a - n``."""
    return {AffineRoot(r.gradient, -r.level) for r in roots}


# --------------------------------------------------------------------------
# Levi data

@dataclass(frozen=True)
class LeviDatum:
    roots: tuple[Root, ...]
    shifts: dict
    weyl_order: int


def _weyl_order(d: RelativeRootDatum, roots: Sequence[Root]) -> int:
    """Order of the group generated by the reflections in ``roots`` (acting on roots)."""
    if not roots:
        return 1
    rs = sorted(set(roots))
    gens = []
    for a in rs:
        gens.append(tuple(rs.index(d.reflect(a, b)) for b in rs))
    ident = tuple(range(len(rs)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


def levi_datum(facet: Facet, datum: RelativeRootDatum | str) -> LeviDatum:
    """Residual system of ``facet`` with the level shifts ``a -> f(a)``."""
    d = _datum(datum)
    f = f_omega(facet.vertices, d)
    res = tuple(sorted(residual_roots(f)))
    return LeviDatum(res, {a: f[a] for a in res}, _weyl_order(d, res))


def wall_roots(datum: RelativeRootDatum | str) -> list[AffineRoot]:
    """The simple affine roots of the fundamental alcove as :class:`AffineRoot`."""
    return [AffineRoot(b, n) for b, n in affine_simple_roots(_datum(datum))]


def is_divisible_root(datum: RelativeRootDatum | str, a: Root) -> bool:
    return _datum(datum).classify(a) == DIVISIBLE


__all__ = [
    "AffineRoot",
    "ApartmentError",
    "Facet",
    "LeviDatum",
    "RootDataError",
    "affine_roots",
    "alcove_faces",
    "f_omega",
    "facet_of",
    "flip_levels",
    "fundamental_alcove",
    "imaginary_step",
    "in_closed_alcove",
    "levi_datum",
    "nonpositive_subset",
    "opposition",
    "parahoric_subset",
    "residual_roots",
    "wall_roots",
]
