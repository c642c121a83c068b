"""Exact *-algebras of matrices over the Gaussian rationals.

``saturate`` closes a finite generating set under adjoints, products and
linear span; ``wedderburn`` splits the result into full matrix blocks by
factoring the minimal polynomial of a separating central element over Q.
Everything is exact: row reduction is over ``Q(i)`` and no floating point is
used.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

import sympy

from .exact import Gaussian, Matrix, as_matrix

Sparse = Dict[Tuple[int, int], object]
_X = sympy.Symbol("x")


class WedderburnError(ArithmeticError):
    """The center could not be split into idempotents over ``Q(i)``."""


# -- sparse helpers -----------------------------------------------------------

def to_sparse(m: Matrix) -> Sparse:
    return {(i, j): x for i, row in enumerate(m) for j, x in enumerate(row) if x != 0}


def to_dense(s: Sparse, n: int) -> Matrix:
    rows = [[0] * n for _ in range(n)]
    for (i, j), x in s.items():
        rows[i][j] = x
    return tuple(tuple(r) for r in rows)


def sp_mul(a: Sparse, b: Sparse) -> Sparse:
    by_row: Dict[int, list] = {}
    for (k, j), y in b.items():
        by_row.setdefault(k, []).append((j, y))
    out: Sparse = {}
    for (i, k), x in a.items():
        for j, y in by_row.get(k, ()):
            key = (i, j)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def sp_adjoint(a: Sparse) -> Sparse:
    return {(j, i): x.conjugate() for (i, j), x in a.items()}


def sp_lincomb(terms: Iterable[Tuple[object, Sparse]]) -> Sparse:
    out: Sparse = {}
    for c, v in terms:
        if c == 0:
            continue
        for k, x in v.items():
            out[k] = out.get(k, 0) + c * x
    return {k: v for k, v in out.items() if v != 0}


def sp_sub(a: Sparse, b: Sparse) -> Sparse:
    return sp_lincomb(((1, a), (-1, b)))


def _inv(x):
    if isinstance(x, Gaussian):
        return 1 / x
    return Fraction(1) / x


class Echelon:
    """Fully reduced row echelon basis of a subspace, with sparse rows.

    When ``track`` is set every stored row remembers how it was built from the
    inserted vectors, so a dependent vector comes back with its coefficients.
    """

    def __init__(self, track: bool = False):
        self.rows: Dict[object, dict] = {}
        self.combos: Dict[object, dict] = {}
        self.track = track
        self._count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict) -> Tuple[dict, dict]:
        v = {k: x for k, x in v.items() if x != 0}
        combo: dict = {}
        for p in [k for k in v if k in self.rows]:
            c = v.get(p, 0)
            if c == 0:
                continue
            for k, x in self.rows[p].items():
                nv = v.get(k, 0) - c * x
                if nv == 0:
                    v.pop(k, None)
                else:
                    v[k] = nv
            if self.track:
                for k, x in self.combos[p].items():
                    combo[k] = combo.get(k, 0) + c * x
        return v, combo

    def add(self, v: dict) -> bool:
        """Insert ``v``; returns ``False`` if it was already in the span."""
        idx = self._count
        self._count += 1
        r, combo = self.reduce(v)
        if not r:
            self.last_combo = combo
            return False
        p = min(r, key=_sort_key)
        s = _inv(r[p])
        r = {k: x * s for k, x in r.items()}
        track = {}
        if self.track:
            track = {k: -x * s for k, x in combo.items()}
            track[idx] = track.get(idx, 0) + s
        for q, row in self.rows.items():
            c = row.get(p, 0)
            if c == 0:
                continue
            for k, x in r.items():
                nv = row.get(k, 0) - c * x
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv
            if self.track:
                tq = self.combos[q]
                for k, x in track.items():
                    nv = tq.get(k, 0) - c * x
                    if nv == 0:
                        tq.pop(k, None)
                    else:
                        tq[k] = nv
        self.rows[p] = r
        self.last_row = dict(r)
        if self.track:
            self.combos[p] = track
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def canonical(self) -> frozenset:
        """Basis-independent fingerprint of the span (the RREF rows)."""
        return frozenset(
            (p, frozenset(row.items())) for p, row in self.rows.items()
        )


def _sort_key(k):
    return k if isinstance(k, tuple) else (k,)


def nullspace(rows: Sequence[dict], nvars: int) -> List[dict]:
    """Basis of ``{c : sum_j row[j] c_j = 0 for every row}`` (sparse dicts)."""
    ech = Echelon()
    for r in rows:
        if r:
            ech.add(r)
    pivots = set(ech.rows)
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        vec = {free: 1}
        for p, row in ech.rows.items():
            c = row.get(free, 0)
            if c != 0:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve(rows: Sequence[dict], rhs: Sequence[object], nvars: int) -> dict | None:
    """One solution of ``rows · c = rhs`` or ``None`` when inconsistent."""
    aug = nvars
    ech = Echelon()
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b != 0:
            v[aug] = b
        if v:
            ech.add(v)
    if aug in ech.rows:
        return None
    return {p: row[aug] for p, row in ech.rows.items() if row.get(aug, 0) != 0}


# -- saturation -----------------------------------------------------------------

@dataclass(frozen=True)
class MatrixStarAlgebra:
    """A *-closed algebra of ``ambient_dim`` square matrices.

    ``basis`` is linearly independent (reduced echelon rows when built by
    :func:`saturate`); ``generators`` is the *-closed set it came from."""

    ambient_dim: int
    basis: Tuple[Matrix, ...]
    generators: Tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _sparse_basis(self) -> List[Sparse]:
        return [to_sparse(b) for b in self.basis]

    @cached_property
    def _echelon(self) -> Echelon:
        ech = Echelon()
        for b in self._sparse_basis():
            ech.add(b)
        return ech

    def echelon(self) -> Echelon:
        """Reduced basis of the span; shared, so callers must not add to it."""
        return self._echelon

    def contains(self, m: Matrix) -> bool:
        return self.echelon().contains(to_sparse(m))

    def same_span(self, other: "MatrixStarAlgebra") -> bool:
        return (
            self.ambient_dim == other.ambient_dim
            and self.echelon().canonical() == other.echelon().canonical()
        )

    def closure_residual(self) -> int:
        """Number of basis adjoints and pairwise products outside the span (0 when closed)."""
        ech = self.echelon()
        sb = self._sparse_basis()
        bad = sum(1 for b in sb if not ech.contains(sp_adjoint(b)))
        for x, y in itertools.product(sb, repeat=2):
            if not ech.contains(sp_mul(x, y)):
                bad += 1
        return bad


def saturate(generators: Sequence[Matrix], ambient_dim: int | None = None) -> MatrixStarAlgebra:
    """Smallest *-algebra containing ``generators``.

    Adjoints are added first; then every spanning element is multiplied on
    the right by every generator until nothing new appears.  Words in a
    *-closed generating set span the generated algebra, so this reaches the
    same fixed point as closing under all pairwise products.
    """
    mats = [as_matrix(g) for g in generators]
    if not mats:
        if ambient_dim is None:
            raise ValueError("need at least one generator or an ambient dimension")
        return MatrixStarAlgebra(ambient_dim, (), ())
    n = len(mats[0]) if ambient_dim is None else ambient_dim
    for g in mats:
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError("generators must be square matrices of one size")
    sparse = [to_sparse(g) for g in mats]
    gens: List[Sparse] = []
    gen_ech = Echelon()
    for g in sparse + [sp_adjoint(g) for g in sparse]:
        if gen_ech.add(dict(g)):
            gens.append(g)
    # queue reduced rows rather than raw words: same span, far smaller entries
    ech = Echelon()
    queue: deque = deque()
    for g in gens:
        if ech.add(dict(g)):
            queue.append(ech.last_row)
    cap = n * n
    while queue and len(ech) < cap:
        x = queue.popleft()
        for g in gens:
            p = sp_mul(x, g)
            if p and ech.add(p):
                queue.append(ech.last_row)
    rows = [ech.rows[p] for p in sorted(ech.rows, key=_sort_key)]
    return MatrixStarAlgebra(
        n,
        tuple(to_dense(r, n) for r in rows),
        tuple(to_dense(g, n) for g in gens),
    )


# -- Wedderburn decomposition -------------------------------------------------

def _combine(coeffs: dict, basis: Sequence[Sparse]) -> Sparse:
    return sp_lincomb((c, basis[j]) for j, c in coeffs.items())


def _entry_rows(products: Sequence[Sparse]) -> Dict[Tuple[int, int], dict]:
    """Turn ``products[j]`` into equations indexed by matrix entry."""
    rows: Dict[Tuple[int, int], dict] = {}
    for j, p in enumerate(products):
        for key, x in p.items():
            rows.setdefault(key, {})[j] = x
    return rows


def _unit(basis: List[Sparse], gens: List[Sparse]) -> Sparse:
    # gens is *-closed, so e g = g for all g already forces g e = g
    rows, rhs = [], []
    for g in gens:
        eq = _entry_rows([sp_mul(b, g) for b in basis])
        for key in sorted(set(eq) | set(g)):
            rows.append(eq.get(key, {}))
            rhs.append(g.get(key, 0))
    sol = solve(rows, rhs, len(basis))
    if sol is None:
        raise WedderburnError("algebra has no unit; it is not semisimple")
    return _combine(sol, basis)


def _center(basis: List[Sparse], gens: List[Sparse]) -> List[Sparse]:
    rows = []
    for g in gens:
        comms = [sp_sub(sp_mul(b, g), sp_mul(g, b)) for b in basis]
        rows.extend(_entry_rows(comms).values())
    return [_combine(v, basis) for v in nullspace(rows, len(basis))]


def _candidates(center: List[Sparse]):
    herm = []
    for z in center:
        zs = sp_adjoint(z)
        herm.append(sp_lincomb(((1, z), (1, zs))))
        herm.append(sp_lincomb(((Gaussian(0, 1), z), (Gaussian(0, -1), zs))))
    herm = [h for h in herm if h]
    yield from herm
    k = len(herm)
    for weights in (
        [j + 1 for j in range(k)],
        [3 ** j for j in range(k)],
        [7 ** j for j in range(k)],
        [(-2) ** j + 5 * j for j in range(k)],
    ):
        yield sp_lincomb(zip(weights, herm))
    rng = random.Random(20260101)
    for _ in range(40):
        yield sp_lincomb(zip([rng.randint(-9, 9) for _ in range(k)], herm))


def _min_poly(c: Sparse, unit: Sparse, limit: int) -> List[object] | None:
    """Monic minimal polynomial coefficients (low degree first) of ``c``."""
    ech = Echelon(track=True)
    power = unit
    for k in range(limit + 2):
        if not ech.add(dict(power)):
            combo = ech.last_combo
            return [-combo.get(j, 0) for j in range(k)] + [1]
        power = sp_mul(power, c)
    return None


def _rational_poly(coeffs: List[object]) -> sympy.Poly:
    """A Hermitian element has a real, hence rational, minimal polynomial."""
    real = []
    for x in coeffs:
        g = Gaussian.coerce(x)
        if not g.is_real():
            raise WedderburnError("minimal polynomial of a Hermitian element is not real")
        q = Fraction(g.re)
        real.append(sympy.Rational(q.numerator, q.denominator))
    return sympy.Poly(list(reversed(real)), _X, domain="QQ")


def _evaluate(poly: sympy.Poly, c: Sparse, unit: Sparse) -> Sparse:
    acc: Sparse = {}
    for a in poly.all_coeffs():
        q = Fraction(int(a.p), int(a.q))
        acc = sp_lincomb(((1, sp_mul(acc, c)), (q, unit)))
    return acc


def central_summands(alg: MatrixStarAlgebra) -> List[Tuple[Matrix, int]]:
    """Minimal central projections of ``alg`` over ``Q(i)``, each paired with
    the number of simple complex summands it covers.

    The minimal polynomial of a separating Hermitian central element factors
    over Q; an irreducible factor of degree ``e`` cuts out a summand whose
    complexification is ``e`` Galois-conjugate matrix blocks of equal size.
    """
    if alg.dim == 0:
        return []
    basis = alg._sparse_basis()
    gens = [to_sparse(g) for g in alg.generators]
    unit = _unit(basis, gens)
    center = _center(basis, gens)
    r = len(center)
    if r == 1:
        return [(to_dense(unit, alg.ambient_dim), 1)]
    for c in _candidates(center):
        coeffs = _min_poly(c, unit, r)
        if coeffs is None or len(coeffs) - 1 != r:
            continue
        poly = _rational_poly(coeffs)
        _, factors = poly.factor_list()
        if any(mult > 1 for _, mult in factors):
            raise WedderburnError("central element is not diagonalizable; algebra is not semisimple")
        out = []
        for f, _ in factors:
            rest = poly.quo(f)
            # rest * (rest^-1 mod f) is 1 mod f and 0 mod every other factor
            e = (rest * rest.invert(f)).rem(poly)
            out.append((to_dense(_evaluate(e, c, unit), alg.ambient_dim), f.degree()))
        return out
    raise WedderburnError("no separating central element found among candidates")


def central_idempotents(alg: MatrixStarAlgebra) -> List[Matrix]:
    """Minimal central projections of ``alg`` (exact, defined over ``Q(i)``)."""
    return [e for e, _ in central_summands(alg)]


def wedderburn(alg: MatrixStarAlgebra) -> List[int]:
    """Sizes ``n_i`` of the simple complex summands ``M_{n_i}``, ascending."""
    sizes = []
    basis = alg._sparse_basis()
    for e, copies in central_summands(alg):
        es = to_sparse(e)
        ech = Echelon()
        for b in basis:
            p = sp_mul(es, b)
            if p:
                ech.add(p)
        d, rem = divmod(len(ech), copies)
        n = math.isqrt(d)
        if rem or n * n != d:
            raise WedderburnError(
                f"summand of dimension {len(ech)} is not {copies} equal full matrix blocks"
            )
        sizes += [n] * copies
    if sum(n * n for n in sizes) != alg.dim:
        raise WedderburnError("block dimensions do not add up to the algebra dimension")
    return sorted(sizes)
