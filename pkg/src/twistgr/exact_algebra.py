"""Exact scalars and matrices.

The main type is :class:`TwistedLaurentScalar`, an element of
``Q(zeta_e)[t^(+-1/e)]`` for ``e`` in ``{1, 2, 3}``.  The Galois group of
``Q(zeta_e, t^(1/e)) / Q(zeta_e, t)`` is cyclic of order ``e``; its generator
sends ``t^(1/e)`` to ``zeta_e * t^(1/e)``.

Two helper fields are provided for random specialisation:

* :class:`ZetaNumber` for ``Q(zeta_3)``, with ``zeta^2 = -1 - zeta``;
* :class:`QuadraticNumber` for ``Q(sqrt(d))``, with conjugation as Galois action.

Nothing here uses floating point.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

Rational = int | Fraction


def _frac(x: Rational) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {type(x).__name__}")


class ZetaNumber:
    """Element ``a + b*zeta`` of ``Q(zeta_3)``."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational = 0, b: Rational = 0) -> None:
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x: Any) -> ZetaNumber:
        if isinstance(x, ZetaNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} into Q(zeta_3)")

    def __add__(self, other: Any) -> ZetaNumber:
        try:
            o = ZetaNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return ZetaNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> ZetaNumber:
        return ZetaNumber(-self.a, -self.b)

    def __sub__(self, other: Any) -> ZetaNumber:
        try:
            o = ZetaNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return ZetaNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Any) -> ZetaNumber:
        return -self + other

    def __mul__(self, other: Any) -> ZetaNumber:
        try:
            o = ZetaNumber.coerce(other)
        except TypeError:
            return NotImplemented
        # (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2,  z^2 = -1 - z
        bd = self.b * o.b
        return ZetaNumber(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conj(self) -> ZetaNumber:
        # zeta -> zeta^2 = -1 - zeta
        return ZetaNumber(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> ZetaNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(zeta_3)")
        c = self.conj()
        return ZetaNumber(c.a / n, c.b / n)

    def __truediv__(self, other: Any) -> ZetaNumber:
        return self * ZetaNumber.coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> ZetaNumber:
        return ZetaNumber.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> ZetaNumber:
        if n < 0:
            return self.inverse() ** (-n)
        out = ZetaNumber(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, ZetaNumber):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}z)"


def root_of_unity(e: int, k: int = 1) -> Rational | ZetaNumber:
    """Return ``zeta_e^k``."""
    k %= e
    if e == 1 or k == 0:
        return 1
    if e == 2:
        return -1
    if e == 3:
        return ZetaNumber(0, 1) if k == 1 else ZetaNumber(-1, -1)
    raise ValueError(f"twist order must be 1, 2 or 3, got {e}")


def is_integral(c: Any) -> bool:
    if isinstance(c, int):
        return True
    if isinstance(c, Fraction):
        return c.denominator == 1
    if isinstance(c, ZetaNumber):
        return c.is_integral()
    raise TypeError(type(c).__name__)


def _is_zero(c: Any) -> bool:
    return c == 0


class TwistedLaurentScalar:
    """Exact element of ``Q(zeta_e)[t^(+-1/e)]``.

    ``coefficients`` maps exponents (fractions with denominator dividing ``e``)
    to coefficients; zero coefficients are dropped.
    """

    __slots__ = ("_c", "e")

    def __init__(self, coefficients: Mapping[Rational, Any] | None = None, e: int = 1) -> None:
        if e not in (1, 2, 3):
            raise ValueError(f"twist order must be 1, 2 or 3, got {e}")
        self.e = e
        c: dict[Fraction, Any] = {}
        for k, v in (coefficients or {}).items():
            k = _frac(k)
            if e % k.denominator:
                raise ValueError(f"exponent {k} not in (1/{e})Z")
            if isinstance(v, ZetaNumber) and v.b == 0:
                v = v.a
            if isinstance(v, ZetaNumber) and e != 3:
                raise ValueError("zeta_3 coefficients need twist order 3")
            if not _is_zero(v):
                c[k] = c[k] + v if k in c else v
                if _is_zero(c[k]):
                    del c[k]
        self._c = c

    @property
    def coefficients(self) -> dict[Fraction, Any]:
        return dict(self._c)

    # constructors

    @classmethod
    def const(cls, c: Any, e: int = 1) -> TwistedLaurentScalar:
        return cls({0: c}, e)

    @classmethod
    def t_power(cls, q: Rational, e: int = 1, coeff: Any = 1) -> TwistedLaurentScalar:
        return cls({q: coeff}, e)

    @classmethod
    def zeta(cls, e: int) -> TwistedLaurentScalar:
        return cls({0: root_of_unity(e)}, e)

    def _coerce(self, other: Any) -> TwistedLaurentScalar:
        if isinstance(other, TwistedLaurentScalar):
            if other.e != self.e:
                raise ValueError(f"mismatched twist orders {self.e} and {other.e}")
            return other
        if isinstance(other, (int, Fraction, ZetaNumber)):
            return TwistedLaurentScalar({0: other}, self.e)
        raise TypeError(type(other).__name__)

    # ring structure

    def __add__(self, other: Any) -> TwistedLaurentScalar:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for k, v in o._c.items():
            c[k] = c[k] + v if k in c else v
        return TwistedLaurentScalar(c, self.e)

    __radd__ = __add__

    def __neg__(self) -> TwistedLaurentScalar:
        return TwistedLaurentScalar({k: -v for k, v in self._c.items()}, self.e)

    def __sub__(self, other: Any) -> TwistedLaurentScalar:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> TwistedLaurentScalar:
        return (-self) + other

    def __mul__(self, other: Any) -> TwistedLaurentScalar:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        c: dict[Fraction, Any] = {}
        for (k1, v1), (k2, v2) in itertools.product(self._c.items(), o._c.items()):
            k = k1 + k2
            p = v1 * v2
            c[k] = c[k] + p if k in c else p
        return TwistedLaurentScalar(c, self.e)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TwistedLaurentScalar:
        if n < 0:
            return self.inverse() ** (-n)
        out = TwistedLaurentScalar({0: 1}, self.e)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_unit(self) -> bool:
        """Units of the Laurent ring over a field: nonzero monomials."""
        return len(self._c) == 1

    def inverse(self) -> TwistedLaurentScalar:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        (k, v), = self._c.items()
        inv = v.inverse() if isinstance(v, ZetaNumber) else Fraction(1) / v
        return TwistedLaurentScalar({-k: inv}, self.e)

    def __truediv__(self, other: Any) -> TwistedLaurentScalar:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> TwistedLaurentScalar:
        return self._coerce(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ZetaNumber)):
            other = TwistedLaurentScalar({0: other}, self.e)
        if not isinstance(other, TwistedLaurentScalar):
            return NotImplemented
        return self.e == other.e and self._c == other._c

    def __hash__(self) -> int:
        if not self._c:
            return hash(0)
        if set(self._c) == {Fraction(0)}:
            return hash(self._c[Fraction(0)])
        return hash((self.e, frozenset(self._c.items())))

    def __bool__(self) -> bool:
        return bool(self._c)

    # structure

    def exponents(self) -> list[Fraction]:
        return sorted(self._c)

    def valuation(self) -> Fraction:
        """t-adic valuation with the normalisation ``omega(t) = 1``."""
        if not self._c:
            raise ValueError("valuation of zero")
        return min(self._c)

    def is_constant(self) -> bool:
        return set(self._c) <= {Fraction(0)}

    def constant(self) -> Any:
        return self._c.get(Fraction(0), 0)

    def in_subring(self, d: int) -> bool:
        """Whether all exponents lie in ``(1/d)Z``."""
        return all(d % k.denominator == 0 for k in self._c)

    def galois_act(self, gamma: int = 1) -> TwistedLaurentScalar:
        """Apply ``t^(1/e) -> zeta_e^gamma t^(1/e)``; coefficients are fixed."""
        c = {}
        for k, v in self._c.items():
            c[k] = v * root_of_unity(self.e, int(k * self.e) * gamma)
        return TwistedLaurentScalar(c, self.e)

    def conj(self) -> TwistedLaurentScalar:
        return self.galois_act(1)

    def norm_trace(self, d: int = 1) -> tuple[TwistedLaurentScalar, TwistedLaurentScalar]:
        """Norm and trace down to ``Q(zeta_e)[t^(+-1/d)]`` for ``d | e``."""
        return norm_trace(self, d)

    def specialize(self, root_value: Any) -> Any:
        """Substitute a value for ``t^(1/e)``.

        ``root_value`` can be anything supporting ``*`` and integer powers, for
        instance a :class:`QuadraticNumber` ``sqrt(d)`` when ``e = 2``.
        """
        total: Any = 0
        for k, v in self._c.items():
            total = total + v * root_value ** int(k * self.e)
        return total

    def map_coefficients(self, f: Callable[[Any], Any]) -> TwistedLaurentScalar:
        return TwistedLaurentScalar({k: f(v) for k, v in self._c.items()}, self.e)

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            if k == 0:
                parts.append(f"{v}")
            else:
                parts.append(f"{v}*t^({k})")
        return " + ".join(parts)


def mul(p: TwistedLaurentScalar, q: TwistedLaurentScalar) -> TwistedLaurentScalar:
    if p.e != q.e:
        raise ValueError(f"mismatched twist orders {p.e} and {q.e}")
    return p * q


def galois_act(gamma: int, p: TwistedLaurentScalar) -> TwistedLaurentScalar:
    return p.galois_act(gamma)


def norm_trace(p: TwistedLaurentScalar, d: int = 1) -> tuple[TwistedLaurentScalar, TwistedLaurentScalar]:
    """Norm and trace of ``p`` over the subring ``Q(zeta_e)[t^(+-1/d)]``.

    The relative Galois group consists of the ``gamma`` with ``d | gamma``.
    """
    if p.e % d:
        raise ValueError(f"{d} does not divide the twist order {p.e}")
    conjugates = [p.galois_act(g) for g in range(0, p.e, d)]
    norm = TwistedLaurentScalar({0: 1}, p.e)
    trace = TwistedLaurentScalar({}, p.e)
    for c in conjugates:
        norm = norm * c
        trace = trace + c
    return norm, trace


class QuadraticNumber:
    """Element ``a + b*sqrt(d)`` of ``Q(sqrt(d))`` with ``d`` a non-square.

    ``conj`` is the non-trivial Galois automorphism.  This is the field used
    when ``t`` is specialised to ``d`` and ``t^(1/2)`` to ``sqrt(d)``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: Rational = 2) -> None:
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = _frac(d)

    def _coerce(self, other: Any) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        raise TypeError(type(other).__name__)

    def __add__(self, other: Any) -> QuadraticNumber:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticNumber:
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other: Any) -> QuadraticNumber:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: Any) -> QuadraticNumber:
        return -self + other

    def __mul__(self, other: Any) -> QuadraticNumber:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def conj(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> QuadraticNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(sqrt d)")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Any) -> QuadraticNumber:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> QuadraticNumber:
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QuadraticNumber:
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.d}))"


def conj(x: Any) -> Any:
    """Galois conjugate; rationals are fixed."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.conj()


class ExactMatrix:
    """Dense matrix over any exact commutative ring.

    Entries may be ints, Fractions, :class:`TwistedLaurentScalar`,
    :class:`QuadraticNumber` or sympy expressions.  The zero and one used for
    new matrices are plain ints, which every supported ring absorbs.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence[Any]]) -> None:
        self._e = tuple(tuple(r) for r in entries)
        self.rows = len(self._e)
        self.cols = len(self._e[0]) if self._e else 0
        if self.rows == 0 or self.cols == 0:
            raise ValueError("empty matrix")
        if any(len(r) != self.cols for r in self._e):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag: Sequence[Any]) -> ExactMatrix:
        n = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, value: Any = 1) -> ExactMatrix:
        """``I + value * E_ij`` (0-based indices)."""
        rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        rows[i][j] = rows[i][j] + value
        return cls(rows)

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> list[list[Any]]:
        return [list(r) for r in self._e]

    def __iter__(self) -> Iterator[tuple[Any, ...]]:
        return iter(self._e)

    def map(self, f: Callable[[Any], Any]) -> ExactMatrix:
        return ExactMatrix([[f(x) for x in r] for r in self._e])

    def transpose(self) -> ExactMatrix:
        return ExactMatrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def scale(self, c: Any) -> ExactMatrix:
        return self.map(lambda x: c * x)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self._e:
            row = []
            for j in range(other.cols):
                acc: Any = 0
                for k in range(self.cols):
                    a = r[k]
                    if _is_zero(a):
                        continue
                    b = other._e[k][j]
                    if _is_zero(b):
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    __mul__ = __matmul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(_is_zero(a - b) for r, s in zip(self._e, other._e) for a, b in zip(r, s))

    def __hash__(self) -> int:
        return hash(self._e)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix([[self._e[i][j] for j in cols] for i in rows])

    def det(self) -> Any:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 1:
            return self._e[0][0]
        if n == 2:
            return self._e[0][0] * self._e[1][1] - self._e[0][1] * self._e[1][0]
        # Laplace expansion along the first row; matrices here are small
        total: Any = 0
        for j in range(n):
            a = self._e[0][j]
            if _is_zero(a):
                continue
            sub = self.minor(range(1, n), [c for c in range(n) if c != j]).det()
            total = total + (a * sub if j % 2 == 0 else -(a * sub))
        return total

    def adjugate(self) -> ExactMatrix:
        n = self.rows
        if n == 1:
            return ExactMatrix([[1]])
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                c = self.minor([r for r in range(n) if r != j], [k for k in range(n) if k != i]).det()
                out[i][j] = c if (i + j) % 2 == 0 else -c
        return ExactMatrix(out)

    def inverse(self) -> ExactMatrix:
        d = self.det()
        if _is_zero(d):
            raise ZeroDivisionError("singular matrix")
        if d == 1:
            return self.adjugate()
        if isinstance(d, (int, Fraction)):
            inv = Fraction(1) / d
        else:
            inv = 1 / d
        return self.adjugate().map(lambda x: x * inv)

    def is_identity(self) -> bool:
        return self == ExactMatrix.identity(self.rows)

    def __repr__(self) -> str:
        return "ExactMatrix(" + repr([list(r) for r in self._e]) + ")"


def commutator(g: ExactMatrix, h: ExactMatrix) -> ExactMatrix:
    """``g h g^-1 h^-1``."""
    return g @ h @ g.inverse() @ h.inverse()


def product(mats: Iterable[ExactMatrix], n: int) -> ExactMatrix:
    out = ExactMatrix.identity(n)
    for m in mats:
        out = out @ m
    return out
