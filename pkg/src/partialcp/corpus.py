"""Example systems, exhaustive enumeration, and the translation-by-pi example.

The infinite examples are represented by their size-``N`` truncations.  For
the translation example on ``C_0(R)`` the relevant points are ``q + m*pi``
with ``q`` rational; equality and the disjointness statement are decided
exactly from the integer ``m`` components, and only metric questions (gaps)
use certified rational enclosures of pi.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterator, List, Optional, Sequence, Tuple

from .algebra import BlockAlgebra
from .partial import OrbitKind, PartialInjection, PartialSystem, orbits

ENUMERATION_CAP = 4


# -- named systems ----------------------------------------------------------------

def shift(n: int, dim: int = 1, prefix: str = "") -> PartialSystem:
    """``σ_n`` on ``C^n`` (tensored with ``M_dim``): ``1 -> 2 -> ... -> n``."""
    if n < 1:
        raise ValueError("shift length must be positive")
    ids = [f"{prefix}{i}" for i in range(1, n + 1)]
    return PartialSystem.build([(b, dim) for b in ids], zip(ids, ids[1:]))


def cycle(k: int, dim: int = 1, prefix: str = "") -> PartialSystem:
    if k < 1:
        raise ValueError("cycle length must be positive")
    ids = [f"{prefix}{i}" for i in range(1, k + 1)]
    return PartialSystem.build([(b, dim) for b in ids], zip(ids, ids[1:] + ids[:1]))


def c0_shift_truncated(n: int) -> PartialSystem:
    """First ``n`` coordinates of the forward shift on ``c_0``."""
    return shift(n, prefix="x")


def direct_sum_shifts(n: int) -> PartialSystem:
    """``σ_1 ⊕ ... ⊕ σ_n`` realized on the coordinates ``x_{k,l}``, ``k + l <= n + 1``.

    The map sends coordinate ``(k, l)`` with ``l >= 2`` to ``(k + 1, l - 1)``,
    so each antidiagonal ``k + l = s`` is a chain of length ``s - 1``.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    cells = [(k, s - k) for s in range(2, n + 2) for k in range(1, s)]
    name = lambda k, l: f"x{k},{l}"  # noqa: E731
    pairs = [(name(k, l), name(k + 1, l - 1)) for k, l in cells if l >= 2]
    return PartialSystem.build([(name(k, l), 1) for k, l in cells], pairs)


def direct_sum_ladder(n_total: int, n: int) -> frozenset:
    """Coordinates ``x_{k,l}`` with ``k + l >= n + 1`` inside the truncation."""
    return frozenset(
        f"x{k},{s - k}" for s in range(2, n_total + 2) for k in range(1, s) if s >= n + 1
    )


def random_system(seed: int, size: int, density: float = 0.5, dims: Sequence[int] = (1, 2)) -> PartialSystem:
    """Restriction of a random dimension-preserving bijection to a random subset."""
    if size < 0 or not 0 <= density <= 1:
        raise ValueError("need size >= 0 and 0 <= density <= 1")
    rng = random.Random(seed)
    ids = [str(i) for i in range(1, size + 1)]
    dim = {b: rng.choice(list(dims)) for b in ids}
    pairs = []
    for d in sorted(set(dim.values())):
        cls = [b for b in ids if dim[b] == d]
        img = cls[:]
        rng.shuffle(img)
        for s, t in zip(cls, img):
            if rng.random() < density:
                pairs.append((s, t))
    return PartialSystem.build([(b, dim[b]) for b in ids], pairs)


NAMED = {
    "shift_n": lambda n, dim=1: shift(int(n), int(dim)),
    "cycle_k": lambda k, dim=1: cycle(int(k), int(dim)),
    "c0_shift_truncated_N": lambda N: c0_shift_truncated(int(N)),
    "direct_sum_shifts_N": lambda N: direct_sum_shifts(int(N)),
    "random": lambda seed, size, density=0.5: random_system(int(seed), int(size), float(density)),
}


def named_system(name: str, **params) -> PartialSystem:
    try:
        make = NAMED[name]
    except KeyError:
        raise ValueError(f"unknown system {name!r}; choose from {sorted(NAMED)}") from None
    return make(**params)


def disjoint_union(*systems: PartialSystem, prefixes: Sequence[str] | None = None) -> PartialSystem:
    """Direct sum; block ids get a per-summand prefix to keep them distinct."""
    prefixes = prefixes or [f"{chr(ord('a') + i)}" for i in range(len(systems))]
    blocks, pairs = [], []
    for p, s in zip(prefixes, systems):
        blocks += [(f"{p}{b}", d) for b, d in s.algebra.blocks]
        pairs += [(f"{p}{x}", f"{p}{y}") for x, y in s.map.pairs]
    return PartialSystem.build(blocks, pairs)


# -- enumeration ------------------------------------------------------------------------

def canonical_form(system: PartialSystem) -> Tuple[Tuple[str, int, int], ...]:
    """Relabeling invariant: the sorted orbit types."""
    return tuple(sorted((o.kind.value, o.length, o.block_dim) for o in orbits(system)))


def _orbit_types(k: int, smallest: Tuple[str, int] = ("", 0)) -> Iterator[List[Tuple[str, int]]]:
    """Multisets of (kind, length) with total length ``k``, listed in nondecreasing order."""
    if k == 0:
        yield []
        return
    for length in range(1, k + 1):
        for kind in ("chain", "cycle"):
            if (length, kind) < (smallest[1], smallest[0]):
                continue
            for rest in _orbit_types(k - length, (kind, length)):
                yield [(kind, length)] + rest


def _from_types(types: List[Tuple[str, int]]) -> PartialSystem:
    blocks, pairs = [], []
    nxt = 1
    for kind, length in types:
        ids = [str(i) for i in range(nxt, nxt + length)]
        nxt += length
        blocks += [(b, 1) for b in ids]
        pairs += list(zip(ids, ids[1:]))
        if kind == "cycle":
            pairs.append((ids[-1], ids[0]))
    return PartialSystem.build(blocks, pairs)


def enumerate_systems(max_blocks: int, cap: int = ENUMERATION_CAP, labeled: bool = False) -> Iterator[PartialSystem]:
    """Every partial injection on ``1..k`` points, ``1 <= k <= max_blocks``, all dims 1.

    By default one representative per relabeling class; ``labeled=True``
    yields every labeled partial injection instead.
    """
    if max_blocks > cap:
        raise ValueError(f"max_blocks={max_blocks} exceeds the enumeration cap {cap}")
    for k in range(1, max_blocks + 1):
        if labeled:
            yield from _labeled(k)
        else:
            for types in _orbit_types(k):
                yield _from_types(types)


def _labeled(k: int) -> Iterator[PartialSystem]:
    ids = [str(i) for i in range(1, k + 1)]
    blocks = [(b, 1) for b in ids]
    for r in range(k + 1):
        for dom in itertools.combinations(ids, r):
            for img in itertools.permutations(ids, r):
                yield PartialSystem(BlockAlgebra(tuple(blocks)), PartialInjection(tuple(zip(dom, img))))


# -- exact pi arithmetic -------------------------------------------------------------

def _arctan_inv_bounds(x: int, bits: int) -> Tuple[Fraction, Fraction]:
    """Certified bounds on ``arctan(1/x)`` from consecutive partial sums of the
    alternating series."""
    eps = Fraction(1, 1 << (bits + 4))
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        nxt = total + (term if k % 2 == 0 else -term)
        if term < eps:
            return (min(total, nxt), max(total, nxt))
        total = nxt
        k += 1


@lru_cache(maxsize=None)
def pi_bounds(bits: int = 128) -> Tuple[Fraction, Fraction]:
    """Rationals ``lo < pi < hi`` with ``hi - lo < 2**-bits`` (Machin's formula)."""
    a_lo, a_hi = _arctan_inv_bounds(5, bits + 4)
    b_lo, b_hi = _arctan_inv_bounds(239, bits + 4)
    return (16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo)


@total_ordering
@dataclass(frozen=True)
class PiRational:
    """The real number ``q + m*pi`` with ``q`` rational and ``m`` an integer.

    Since pi is irrational, two such numbers are equal exactly when both parts
    agree.
    """

    q: Fraction
    m: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "m", int(self.m))

    def __add__(self, other: "PiRational") -> "PiRational":
        return PiRational(self.q + other.q, self.m + other.m)

    def __neg__(self) -> "PiRational":
        return PiRational(-self.q, -self.m)

    def __sub__(self, other: "PiRational") -> "PiRational":
        return self + (-other)

    def shift(self, k: int) -> "PiRational":
        return PiRational(self.q, self.m + k)

    def enclosure(self, bits: int = 128) -> Tuple[Fraction, Fraction]:
        lo, hi = pi_bounds(bits)
        if self.m >= 0:
            return (self.q + self.m * lo, self.q + self.m * hi)
        return (self.q + self.m * hi, self.q + self.m * lo)

    def sign(self) -> int:
        if self.m == 0:
            return (self.q > 0) - (self.q < 0)
        bits = 64
        while bits <= 1 << 16:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2
        raise ArithmeticError(f"could not separate {self} from 0")

    def __lt__(self, other: "PiRational") -> bool:
        return (self - other).sign() < 0

    def __str__(self):
        if self.m == 0:
            return str(self.q)
        return f"{self.q}{'+' if self.m > 0 else '-'}{abs(self.m)}π"


def harmonic(j: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, j + 1)), Fraction(0))


@dataclass(frozen=True)
class SiebenSet:
    """``{0} ∪ {±H_j : j <= depth}`` translated by ``offset * pi``."""

    depth: int
    offset: int = 0

    @property
    def elements(self) -> Tuple[PiRational, ...]:
        out = [PiRational(Fraction(0), self.offset)]
        h = Fraction(0)
        for j in range(1, self.depth + 1):
            h += Fraction(1, j)
            out.append(PiRational(h, self.offset))
            out.append(PiRational(-h, self.offset))
        return tuple(out)

    def __len__(self):
        return 2 * self.depth + 1


@dataclass(frozen=True)
class DisjointnessReport:
    n: int
    left_components: Tuple[int, ...]
    right_components: Tuple[int, ...]
    components_disjoint: bool
    sample_depth: int
    sample_disjoint: bool
    degenerate_overlap: bool

    @property
    def proved(self) -> bool:
        return self.components_disjoint and self.sample_disjoint and self.degenerate_overlap

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "left_pi_components": list(self.left_components),
            "right_pi_components": list(self.right_components),
            "components_disjoint": self.components_disjoint,
            "sample_depth": self.sample_depth,
            "sample_disjoint": self.sample_disjoint,
            "degenerate_overlap_nonempty": self.degenerate_overlap,
            "proved": self.proved,
            "scope": "all truncation depths (argument uses only the pi components)",
        }


def sieben_disjointness(n: int, sample_depth: int = 6) -> DisjointnessReport:
    """``(S+π) ∪ ... ∪ (S+nπ)`` misses ``S ∪ (S-π) ∪ ... ∪ (S-(n-1)π)``.

    Every element of ``S`` has pi component 0, so the left side only has
    components ``1..n`` and the right side only ``-(n-1)..0``.  That argument
    is independent of the truncation depth; an explicit intersection at
    ``sample_depth`` is computed as well.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    base = SiebenSet(sample_depth).elements
    left_sets = [{x.shift(k) for x in base} for k in range(1, n + 1)]
    right_sets = [{x.shift(-k) for x in base} for k in range(0, n)]
    left_m = tuple(sorted({x.m for s in left_sets for x in s}))
    right_m = tuple(sorted({x.m for s in right_sets for x in s}))
    left = set().union(*left_sets)
    right = set().union(*right_sets)
    s0 = set(base)
    return DisjointnessReport(
        n=n,
        left_components=left_m,
        right_components=right_m,
        components_disjoint=not set(left_m) & set(right_m),
        sample_depth=sample_depth,
        sample_disjoint=not left & right,
        degenerate_overlap=({x.shift(0) for x in base} & {x.shift(-0) for x in base}) == s0 and bool(s0),
    )


@dataclass(frozen=True)
class GapInterval:
    lo: Fraction
    hi: Fraction
    points: int
    bits: int

    def as_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "lo_float": float(self.lo),
            "hi_float": float(self.hi),
            "points_in_window": self.points,
            "precision_bits": self.bits,
        }


class _Ambiguous(Exception):
    pass


def _gap_at(n_terms: int, window: Fraction, translates: int, bits: int) -> GapInterval:
    scale = 1 << bits
    lo_pi, hi_pi = pi_bounds(bits + 8)
    pl = (lo_pi.numerator * scale) // lo_pi.denominator
    ph = -((-hi_pi.numerator * scale) // hi_pi.denominator)
    # outward-rounded scaled harmonic numbers
    h = [(0, 0)]
    for k in range(1, n_terms + 1):
        a, b = h[-1]
        h.append((a + scale // k, b - ((-scale) // k)))
    base = [(0, 0)] + [(a, b) for a, b in h[1:]] + [(-b, -a) for a, b in h[1:]]
    r = window * scale
    pts = []
    for n in range(1, translates + 1):
        for a, b in base:
            lo, hi = a + n * pl, b + n * ph
            if hi < -r or lo > r:
                continue
            if lo < -r or hi > r:
                raise _Ambiguous
            pts.append((lo, hi))
    pts.sort()
    seq = [(-r, -r)] + pts + [(r, r)]
    best_lo = best_hi = None
    for (xl, xh), (yl, yh) in zip(seq, seq[1:]):
        if yl <= xh and (xl, xh) != (yl, yh):
            if not (xl == xh == yl == yh):
                raise _Ambiguous
        g_lo, g_hi = yl - xh, yh - xl
        best_lo = g_lo if best_lo is None else max(best_lo, g_lo)
        best_hi = g_hi if best_hi is None else max(best_hi, g_hi)
    return GapInterval(Fraction(best_lo) / scale, Fraction(best_hi) / scale, len(pts), bits)


def sieben_density_gap(n_terms: int, window, translates: int, bits: int = 128) -> GapInterval:
    """Certified enclosure of the largest gap of ``∪_{0<n<=M} (S_N + nπ)`` in ``[-R, R]``.

    The window endpoints count as points, so an empty window reports ``2R``.
    Precision is raised automatically if some point cannot be ordered.
    """
    if n_terms < 0 or translates < 0:
        raise ValueError("parameters must be nonnegative")
    window = Fraction(window)
    if window < 0:
        raise ValueError("window radius must be nonnegative")
    while bits <= 4096:
        try:
            return _gap_at(n_terms, window, translates, bits)
        except _Ambiguous:
            bits *= 2
    raise ArithmeticError("could not order points even at 4096 bits")


def density_series(settings: Sequence[Tuple[int, object, int]], bits: int = 128) -> List[GapInterval]:
    """Gap enclosures for several ``(n_terms, window, translates)`` at one shared precision."""
    while True:
        out = [sieben_density_gap(n, r, m, bits) for n, r, m in settings]
        top = max((g.bits for g in out), default=bits)
        if all(g.bits == top for g in out):
            return out
        bits = top


def is_nonincreasing(gaps: Sequence[GapInterval]) -> bool:
    return all(b.lo <= a.lo and b.hi <= a.hi for a, b in zip(gaps, gaps[1:]))
