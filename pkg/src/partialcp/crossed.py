"""The crossed product ``A x_f Z`` as a Z-graded *-algebra.

Elements are finite sums ``sum_n a_n m^n`` with ``a_n`` supported on ``D_n``;
``m`` is only a degree marker.  Concrete matrices come from covariant
representations built orbit by orbit: a chain of ``L`` blocks of size ``d``
acts on ``C^{L d}`` with ``u`` the block shift, and a cycle does the same
with the Laurent generator ``z`` in the wrap-around entry.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Tuple

from .algebra import BlockId, IdealSet
from .exact import (
    Laurent,
    Matrix,
    adjoint,
    as_matrix,
    embed,
    identity,
    is_zero,
    madd,
    matmul,
    mequal,
    mpow,
    unit,
    zeros,
)
from .partial import (
    CheckReport,
    Orbit,
    OrbitKind,
    PartialSystem,
    _require_invariant,
    power_range,
    orbit_system,
    orbits,
    power,
    quotient,
    restrict,
)

BlockElement = Dict[BlockId, Matrix]


# -- block-supported elements of A ------------------------------------------------

def _clean(a: Mapping[BlockId, Matrix]) -> BlockElement:
    return {b: as_matrix(m) for b, m in a.items() if not is_zero(m)}


def _bmul(a: BlockElement, b: BlockElement) -> BlockElement:
    return _clean({k: matmul(a[k], b[k]) for k in a if k in b})


def _bstar(a: BlockElement) -> BlockElement:
    return {k: adjoint(m) for k, m in a.items()}


def _badd(a: BlockElement, b: BlockElement) -> BlockElement:
    out = dict(a)
    for k, m in b.items():
        out[k] = madd(out[k], m) if k in out else m
    return _clean(out)


def _bmove(f, a: BlockElement) -> BlockElement:
    """Transport along a partial injection; ``a`` must live on its domain."""
    return {f(k): m for k, m in a.items()}


class GradedElement:
    """Finitely supported ``{degree: {block: matrix}}``."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[int, Mapping[BlockId, Matrix]] | None = None):
        comps = {}
        for n, a in (components or {}).items():
            a = _clean(a)
            if a:
                comps[int(n)] = a
        self.components: Dict[int, BlockElement] = comps

    @classmethod
    def monomial(cls, block: BlockId, matrix, degree: int = 0) -> "GradedElement":
        return cls({degree: {block: matrix}})

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.components))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        out = {n: dict(a) for n, a in self.components.items()}
        for n, a in other.components.items():
            out[n] = _badd(out.get(n, {}), a)
        return GradedElement(out)

    def scale(self, c) -> "GradedElement":
        return GradedElement(
            {n: {b: tuple(tuple(c * x for x in r) for r in m) for b, m in a.items()}
             for n, a in self.components.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        if set(self.components) != set(other.components):
            return False
        for n, a in self.components.items():
            b = other.components[n]
            if set(a) != set(b) or not all(mequal(a[k], b[k]) for k in a):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        parts = []
        for n in self.degrees:
            for b, m in self.components[n].items():
                parts.append(f"[{b}]{m}·m^{n}")
        return "GradedElement(" + " + ".join(parts) + ")"


def check_support(system: PartialSystem, x: GradedElement) -> None:
    alg = system.algebra
    for n, a in x.components.items():
        dn = power_range(system, n)
        for b, m in a.items():
            if b not in dn:
                raise ValueError(f"degree {n} component has block {b} outside D_{n} = {dn}")
            d = alg.dim_of(b)
            if len(m) != d or any(len(r) != d for r in m):
                raise ValueError(f"block {b} needs a {d}x{d} matrix")


def graded_multiply(system: PartialSystem, x: GradedElement, y: GradedElement) -> GradedElement:
    """``(xy)_n = sum_k f^k(f^-k(x_k) y_{n-k})``."""
    check_support(system, x)
    check_support(system, y)
    out: Dict[int, BlockElement] = {}
    for k, xk in x.components.items():
        pulled = _bmove(power(system, -k), xk)
        push = power(system, k)
        for j, yj in y.components.items():
            term = _bmove(push, _bmul(pulled, yj))
            if term:
                out[k + j] = _badd(out.get(k + j, {}), term)
    return GradedElement(out)


def graded_adjoint(system: PartialSystem, x: GradedElement) -> GradedElement:
    """``(x*)_n = f^n((x_{-n})*)``."""
    check_support(system, x)
    out = {}
    for k, xk in x.components.items():
        out[-k] = _bmove(power(system, -k), _bstar(xk))
    return GradedElement(out)


def graded_basis(system: PartialSystem, n: int) -> List[GradedElement]:
    """Matrix-unit basis of the degree-``n`` spectral subspace ``D_n m^n``."""
    alg = system.algebra
    out = []
    for b in power_range(system, n).ordered:
        d = alg.dim_of(b)
        for i in range(d):
            for j in range(d):
                out.append(GradedElement.monomial(b, unit(d, i, j), n))
    return out


def spectral_dims(system: PartialSystem, window: int | None = None) -> Dict[int, int]:
    """Degree ``n`` ↦ dimension of ``D_n m^n`` for ``|n| <= window``.

    The default window is the block count; beyond it the values are constant.
    """
    w = max(len(system.algebra), 1) if window is None else window
    return {n: power_range(system, n).dim for n in range(-w, w + 1)}


# -- structure descriptors --------------------------------------------------------

class SummandKind(str, enum.Enum):
    FINITE_MATRIX = "finite_matrix"
    CIRCLE_FIBERED = "circle_fibered"
    REPEATED_COUNTABLY = "repeated_countably"


@dataclass(frozen=True, order=True)
class Summand:
    kind: SummandKind
    matrix_size: int

    def __str__(self):
        return f"{self.kind.value}({self.matrix_size})"


@dataclass(frozen=True)
class StructureDescriptor:
    """Multiset of summands describing an algebra up to isomorphism.

    ``stable`` marks a descriptor of ``B ⊗ K``; stabilization forgets matrix
    sizes, so stable descriptors store every size as 1.
    """

    summands: Tuple[Summand, ...] = ()
    stable: bool = False

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @classmethod
    def of(cls, *pairs, stable: bool = False) -> "StructureDescriptor":
        return cls(tuple(Summand(SummandKind(k), int(n)) for k, n in pairs), stable)

    def __add__(self, other: "StructureDescriptor") -> "StructureDescriptor":
        if self.stable != other.stable:
            raise ValueError("cannot add stable and unstable descriptors")
        return StructureDescriptor(self.summands + other.summands, self.stable)

    def __len__(self):
        return len(self.summands)

    def counts(self) -> Counter:
        return Counter(self.summands)

    def retag(self, kind: SummandKind) -> "StructureDescriptor":
        return StructureDescriptor(
            tuple(Summand(kind, s.matrix_size) for s in self.summands), self.stable
        )

    def stabilized(self) -> "StructureDescriptor":
        return StructureDescriptor(
            tuple(Summand(s.kind, 1) for s in self.summands), True
        )

    def spectrum_size(self):
        """Cardinality of the primitive ideal space: an int, or ``math.inf``
        (countably infinite) / ``"continuum"``."""
        if any(s.kind is SummandKind.CIRCLE_FIBERED for s in self.summands):
            return "continuum"
        if any(s.kind is SummandKind.REPEATED_COUNTABLY for s in self.summands):
            return math.inf
        return len(self.summands)

    def finite_dim(self) -> int | None:
        if all(s.kind is SummandKind.FINITE_MATRIX for s in self.summands) and not self.stable:
            return sum(s.matrix_size ** 2 for s in self.summands)
        return None

    def as_list(self) -> List[dict]:
        return [{"kind": s.kind.value, "matrix_size": s.matrix_size} for s in self.summands]

    def __str__(self):
        body = "{" + ", ".join(str(s) for s in self.summands) + "}"
        return body + " ⊗ K" if self.stable else body


def orbit_structure(orbit: Orbit) -> Summand:
    size = orbit.length * orbit.block_dim
    if orbit.kind is OrbitKind.CHAIN:
        return Summand(SummandKind.FINITE_MATRIX, size)
    return Summand(SummandKind.CIRCLE_FIBERED, size)


def structure(system: PartialSystem) -> StructureDescriptor:
    """Chains of ``L`` blocks of size ``d`` give ``M_{Ld}``; cycles give ``C(T, M_{kd})``."""
    return StructureDescriptor(tuple(orbit_structure(o) for o in orbits(system)))


def algebra_structure(system: PartialSystem) -> StructureDescriptor:
    """Descriptor of ``A`` itself (one finite matrix summand per block)."""
    return StructureDescriptor(
        tuple(Summand(SummandKind.FINITE_MATRIX, d) for _, d in system.algebra.blocks)
    )


def restrict_crossed_product(
    system: PartialSystem, ideal: IdealSet
) -> Tuple[StructureDescriptor, Dict[int, int]]:
    """``I x Z`` as an ideal of ``A x Z``: its descriptor and the dimensions of
    ``I D_n m^n`` degree by degree."""
    sub = restrict(system, ideal)
    w = max(len(system.algebra), 1)
    dims = {n: (ideal & power_range(system, n)).dim for n in range(-w, w + 1)}
    return structure(sub), dims


def quotient_crossed_product(system: PartialSystem, ideal: IdealSet) -> StructureDescriptor:
    return structure(quotient(system, ideal))


def graded_additivity(system: PartialSystem, ideal: IdealSet) -> CheckReport:
    """Degreewise ``dim(A x Z)_n = dim(I x Z)_n + dim((A/I) x Z)_n``."""
    _require_invariant(system, ideal)
    w = max(len(system.algebra), 1) + 1
    whole = spectral_dims(system, w)
    _, part = restrict_crossed_product(system, ideal)
    sub = spectral_dims(restrict(system, ideal), w)
    rest = spectral_dims(quotient(system, ideal), w)
    for n in range(-w, w + 1):
        if n in part and part[n] != sub[n]:
            return CheckReport("graded_additivity", False, n, f"degree {n}: ideal formula {part[n]} != restriction {sub[n]}")
        if whole[n] != sub[n] + rest[n]:
            return CheckReport(
                "graded_additivity", False, n,
                f"degree {n}: {whole[n]} != {sub[n]} + {rest[n]}",
            )
    return CheckReport("graded_additivity", True, 2 * w + 1)


# -- covariant representations ------------------------------------------------------

@dataclass(frozen=True)
class CovariantRep:
    """``(pi, u)`` for one orbit.  ``slots[b]`` is the offset of block ``b``."""

    system: PartialSystem
    orbit: Orbit
    slots: Dict[BlockId, int]
    space_dim: int
    u: Matrix

    @property
    def laurent(self) -> bool:
        return self.orbit.kind is OrbitKind.CYCLE

    def pi(self, a: Mapping[BlockId, Matrix]) -> Matrix:
        out = zeros(self.space_dim)
        for b, m in a.items():
            if b not in self.slots:
                raise ValueError(f"block {b} is not in this orbit")
            out = madd(out, embed(as_matrix(m), self.space_dim, self.slots[b]))
        return out

    def projection(self, ideal: Iterable[BlockId]) -> Matrix:
        alg = self.system.algebra
        return self.pi({b: identity(alg.dim_of(b)) for b in ideal if b in self.slots})

    def u_power(self, n: int) -> Matrix:
        if n >= 0:
            return mpow(self.u, n)
        return mpow(adjoint(self.u), -n)

    def check(self) -> CheckReport:
        """Range/source projections, covariance, ``u^n u^-n = pi(p_n)`` and *-homomorphism."""
        sysm = self.system
        alg = sysm.algebra
        u, us = self.u, adjoint(self.u)
        name = f"covariant_rep({self.orbit})"
        checked = 0
        hit = set()
        for b in alg.ids:
            d = alg.dim_of(b)
            hit.update(range(self.slots[b], self.slots[b] + d))
        if hit != set(range(self.space_dim)):
            return CheckReport(name, False, 0, "pi is degenerate")
        if not mequal(matmul(u, us), self.projection(power_range(sysm, 1))):
            return CheckReport(name, False, 1, "u u* != pi(p_1)")
        if not mequal(matmul(us, u), self.projection(power_range(sysm, -1))):
            return CheckReport(name, False, 2, "u* u != pi(p_-1)")
        checked = 2
        f = sysm.map
        for b in alg.ids:
            d = alg.dim_of(b)
            units = [unit(d, i, j) for i in range(d) for j in range(d)]
            for e in units:
                for e2 in units:
                    checked += 1
                    lhs = matmul(self.pi({b: e}), self.pi({b: e2}))
                    if not mequal(lhs, self.pi({b: matmul(e, e2)})):
                        return CheckReport(name, False, checked, "pi not multiplicative")
                if not mequal(adjoint(self.pi({b: e})), self.pi({b: adjoint(e)})):
                    return CheckReport(name, False, checked, "pi not *-preserving")
                if b in f:
                    checked += 1
                    lhs = matmul(matmul(u, self.pi({b: e})), us)
                    if not mequal(lhs, self.pi({f(b): e})):
                        return CheckReport(name, False, checked, f"covariance fails on block {b}")
        for n in range(-self.orbit.length - 1, self.orbit.length + 2):
            checked += 1
            lhs = matmul(self.u_power(n), self.u_power(-n))
            if not mequal(lhs, self.projection(power_range(sysm, n))):
                return CheckReport(name, False, checked, f"u^{n} u^{-n} != pi(p_{n})")
        return CheckReport(name, True, checked)


def standard_rep(system: PartialSystem, orbit: Orbit) -> CovariantRep:
    sub = orbit_system(system, orbit)
    d = orbit.block_dim
    length = orbit.length
    size = length * d
    slots = {b: j * d for j, b in enumerate(orbit.blocks)}
    rows = [[0] * size for _ in range(size)]
    for j in range(length - 1):
        for r in range(d):
            rows[(j + 1) * d + r][j * d + r] = 1
    if orbit.kind is OrbitKind.CYCLE:
        z = Laurent.z()
        for r in range(d):
            rows[r][(length - 1) * d + r] = z
    return CovariantRep(sub, orbit, slots, size, tuple(tuple(r) for r in rows))


def represent(system: PartialSystem, rep: CovariantRep, x: GradedElement) -> Matrix:
    """``(pi x u)(x) = sum_n pi(x_n) u^n``."""
    check_support(system, x)
    out = zeros(rep.space_dim)
    for n, a in x.components.items():
        stray = [b for b in a if b not in rep.slots]
        if stray:
            raise ValueError(f"blocks {stray} lie outside the orbit {rep.orbit}")
        out = madd(out, matmul(rep.pi(a), rep.u_power(n)))
    return out


def orbit_generators(rep: CovariantRep) -> List[Matrix]:
    """``u`` plus images of *-generators of each block (``E_11`` and the ``E_{i,i+1}``)."""
    alg = rep.system.algebra
    gens = []
    for b in rep.orbit.blocks:
        d = alg.dim_of(b)
        gens.append(rep.pi({b: unit(d, 0, 0)}))
        for i in range(d - 1):
            gens.append(rep.pi({b: unit(d, i, i + 1)}))
    gens.append(rep.u)
    return gens


@dataclass(frozen=True)
class OracleResult:
    orbit: Orbit
    predicted: Summand
    oracle_blocks: Tuple[int, ...] | None
    oracle_dim: int | None

    @property
    def skipped(self) -> bool:
        return self.oracle_blocks is None

    @property
    def matches(self) -> bool:
        if self.skipped:
            return True
        return (
            self.oracle_blocks == (self.predicted.matrix_size,)
            and self.oracle_dim == self.predicted.matrix_size ** 2
        )

    def as_dict(self) -> dict:
        return {
            "orbit": str(self.orbit),
            "predicted": str(self.predicted),
            "oracle_blocks": None if self.skipped else list(self.oracle_blocks),
            "oracle_dim": self.oracle_dim,
            "matches": self.matches,
            "skipped": self.skipped,
        }


def oracle_check(system: PartialSystem) -> List[OracleResult]:
    """Saturate ``C*(pi, u)`` for every chain orbit and split it; cycle orbits
    carry Laurent coefficients and are skipped."""
    from .star import saturate, wedderburn

    out = []
    for orbit in orbits(system):
        predicted = orbit_structure(orbit)
        if orbit.kind is OrbitKind.CYCLE:
            out.append(OracleResult(orbit, predicted, None, None))
            continue
        rep = standard_rep(system, orbit)
        alg = saturate(orbit_generators(rep))
        out.append(OracleResult(orbit, predicted, tuple(wedderburn(alg)), alg.dim))
    return out
