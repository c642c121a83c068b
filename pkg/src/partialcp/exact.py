"""Exact scalars and small dense matrices.

Gaussian rationals carry every coefficient used by the library.  Laurent
polynomials over them stand in for the continuous functions on the circle
that appear in representations of cycle orbits; the generator ``z`` is
unitary, so ``z.conjugate() == z**-1``.

Matrices are tuples of row tuples.  The helpers below are ring-generic: any
entry type with ``+``, ``*``, ``==`` against ``0`` and ``conjugate()`` works,
and ints, Fractions, :class:`Gaussian` and :class:`Laurent` can be mixed.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Tuple

Matrix = Tuple[Tuple[object, ...], ...]


_EXACT = (int, Fraction)


def _rational(x) -> bool:
    # exact-type test first: ABC checks dominate the cost of small-number arithmetic
    return type(x) in _EXACT or isinstance(x, Rational)


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _make(re, im) -> "Gaussian":
    g = object.__new__(Gaussian)
    g.re = _norm(re)
    g.im = _norm(im)
    return g


class Gaussian:
    """A number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if not _rational(re) or not _rational(im):
            raise TypeError(f"Gaussian parts must be rational, got {re!r}, {im!r}")
        self.re = _norm(re)
        self.im = _norm(im)

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, Rational):
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError(f"refusing inexact complex value {x!r}")
            return cls(int(x.real), int(x.imag))
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def conjugate(self) -> "Gaussian":
        return _make(self.re, -self.im)

    def __add__(self, other):
        if type(other) is Gaussian:
            return _make(self.re + other.re, self.im + other.im)
        if _rational(other):
            return _make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is Gaussian:
            return _make(self.re - other.re, self.im - other.im)
        if _rational(other):
            return _make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if _rational(other):
            return _make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if type(other) is Gaussian:
            a, b, c, d = self.re, self.im, other.re, other.im
            return _make(a * c - b * d, a * d + b * c)
        if _rational(other):
            return _make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _rational(other):
            if other == 0:
                raise ZeroDivisionError("Gaussian division by zero")
            return _make(Fraction(self.re) / other, Fraction(self.im) / other)
        if type(other) is Gaussian:
            n = other.re * other.re + other.im * other.im
            if n == 0:
                raise ZeroDivisionError("Gaussian division by zero")
            num = self * other.conjugate()
            return _make(Fraction(num.re) / n, Fraction(num.im) / n)
        return NotImplemented

    def __rtruediv__(self, other):
        if _rational(other):
            return Gaussian(other) / self
        return NotImplemented

    def __eq__(self, other):
        if type(other) is Gaussian:
            return self.re == other.re and self.im == other.im
        if _rational(other):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"Gaussian({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = Gaussian(0, 1)


class Laurent:
    """Finite Laurent polynomial ``sum c_k z**k`` with Gaussian coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            if c != 0:
                clean[int(k)] = Gaussian.coerce(c)
        self._terms = clean

    @classmethod
    def z(cls, power: int = 1) -> "Laurent":
        return cls({power: 1})

    @classmethod
    def coerce(cls, x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return cls({0: x})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def conjugate(self) -> "Laurent":
        return Laurent({-k: c.conjugate() for k, c in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, (Laurent, Gaussian, Rational)):
            return NotImplemented
        other = Laurent.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Laurent, Gaussian, Rational)):
            return NotImplemented
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (Laurent, Gaussian, Rational)):
            return NotImplemented
        other = Laurent.coerce(other)
        out: dict = {}
        for j, a in self._terms.items():
            for k, b in other._terms.items():
                out[j + k] = out.get(j + k, 0) + a * b
        return Laurent(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (Gaussian, Rational)):
            other = Laurent.coerce(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if set(self._terms) == {0}:
            return hash(self._terms[0])
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"Laurent({ {k: str(c) for k, c in sorted(self._terms.items())} })"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items()):
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            coef = str(c)
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({coef}){mono}")
            else:
                parts.append(coef)
        return " + ".join(parts)


# -- dense matrices ---------------------------------------------------------

def as_matrix(rows: Iterable[Iterable[object]]) -> Matrix:
    m = tuple(tuple(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def unit(n: int, i: int, j: int) -> Matrix:
    """Matrix unit ``E_ij`` of size ``n``."""
    return tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(n)) for r in range(n))


def shape(a: Matrix) -> Tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if shape(a)[1] != shape(b)[0]:
        raise ValueError(f"shape mismatch {shape(a)} @ {shape(b)}")
    cols = list(zip(*b)) if b else []
    out = []
    for row in a:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    s = s + x * y
            out_row.append(s)
        out.append(tuple(out_row))
    return tuple(out)


def madd(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch {shape(a)} + {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def msub(a: Matrix, b: Matrix) -> Matrix:
    return madd(a, mscale(-1, b))


def mscale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def adjoint(a: Matrix) -> Matrix:
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a)) if a else ()


def mpow(a: Matrix, k: int) -> Matrix:
    """Nonnegative power; ``a**0`` is the identity."""
    if k < 0:
        raise ValueError("negative matrix power")
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def mequal(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for r, s in zip(a, b) for x, y in zip(r, s))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    off = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * off + tuple(r) + (0,) * (n - off - len(r)))
        off += len(b)
    return tuple(rows)


def embed(a: Matrix, n: int, offset: int) -> Matrix:
    """Place square ``a`` at diagonal position ``offset`` inside an ``n x n`` zero matrix."""
    d = len(a)
    rows = [[0] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            rows[offset + i][offset + j] = a[i][j]
    return tuple(tuple(r) for r in rows)


def fmt_matrix(a: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in a) + "]"
