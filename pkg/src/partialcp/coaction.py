"""The dual coaction of Z on ``A x_f Z`` and what it says about duality.

A coaction of Z is handled through its grading.  When the map has no
automorphic core the dual coaction is inner, implemented by the partition of
unity ``q_n`` built from the ``D_n``, so the double crossed product is the
crossed product tensored with ``c_0(Z)``; comparing that with ``A ⊗ K`` orbit
by orbit decides whether crossed product duality can hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .algebra import IdealSet, sum_all
from .crossed import (
    StructureDescriptor,
    Summand,
    SummandKind,
    algebra_structure,
    graded_additivity,
    graded_adjoint,
    graded_basis,
    graded_multiply,
    spectral_dims,
    structure,
)
from .partial import (
    CheckReport,
    Orbit,
    OrbitKind,
    PartialSystem,
    apply,
    automorphic_core,
    limit_range,
    power_range,
    is_invariant,
    layer_system,
    ladder_ideal,
    orbit_system,
    orbits,
    quotient,
    restrict,
)


class NotCompletelyNonautomorphicError(ValueError):
    def __init__(self, core: IdealSet):
        self.core = core
        super().__init__(
            f"the dual coaction is only shown inner when D_inf D_-inf = 0; "
            f"here the automorphic core is {core}"
        )


def _require_cna(system: PartialSystem) -> None:
    core = automorphic_core(system)
    if not core.is_zero():
        raise NotCompletelyNonautomorphicError(core)


@dataclass(frozen=True)
class DualCoactionReport:
    dims: Dict[int, int]
    basis_counts_match: bool
    degree_additive: bool
    adjoint_negates: bool
    pairs_checked: int

    @property
    def passed(self) -> bool:
        return self.basis_counts_match and self.degree_additive and self.adjoint_negates

    def support(self) -> Dict[int, int]:
        return {n: d for n, d in self.dims.items() if d}

    def as_dict(self) -> dict:
        return {
            "spectral_dims": {str(n): d for n, d in self.support().items()},
            "basis_counts_match": self.basis_counts_match,
            "degree_additive": self.degree_additive,
            "adjoint_negates": self.adjoint_negates,
            "pairs_checked": self.pairs_checked,
            "passed": self.passed,
        }


def dual_coaction_check(system: PartialSystem, max_pairs: int = 20000) -> DualCoactionReport:
    """Confirm the grading by powers of ``m`` is a coaction grading: the
    degree-``n`` piece has the dimension of ``D_n``, products add degrees and
    the adjoint negates them.  Product pairs beyond ``max_pairs`` are skipped."""
    w = max(len(system.algebra), 1)
    dims = spectral_dims(system, w)
    bases = {n: graded_basis(system, n) for n in dims}
    counts_ok = all(len(bases[n]) == dims[n] for n in dims)
    additive = True
    negates = True
    pairs = 0
    for n, bn in bases.items():
        for x in bn:
            xs = graded_adjoint(system, x)
            if xs.degrees not in ((), (-n,)):
                negates = False
        for k, bk in bases.items():
            for x in bn:
                for y in bk:
                    if pairs >= max_pairs:
                        break
                    pairs += 1
                    prod = graded_multiply(system, x, y)
                    if prod.degrees not in ((), (n + k,)):
                        additive = False
    return DualCoactionReport(dims, counts_ok, additive, negates, pairs)


@dataclass(frozen=True)
class PartitionOfUnity:
    """``q[k]`` for the nonempty members; every other ``q_k`` is zero."""

    system: PartialSystem
    q: Dict[int, IdealSet]

    def __getitem__(self, k: int) -> IdealSet:
        return self.q.get(k, self.system.algebra.zero())

    def verify(self) -> CheckReport:
        sysm = self.system
        name = "inner_partition"
        seen = set()
        for k, qk in sorted(self.q.items()):
            if seen & qk.members:
                return CheckReport(name, False, k, f"q_{k} overlaps earlier members")
            seen |= qk.members
        if seen != set(sysm.algebra.ids):
            return CheckReport(name, False, len(self.q), "q_k do not cover every block")
        w = len(sysm.algebra) + 2
        checked = 0
        for k in range(-w, w + 1):
            checked += 1
            lhs = apply(sysm, 1, self[k] & power_range(sysm, -1))
            rhs = self[k + 1] & power_range(sysm, 1)
            if lhs != rhs:
                return CheckReport(name, False, checked, f"m q_{k} != q_{k + 1} m: {lhs} vs {rhs}")
        return CheckReport(name, True, checked)

    def as_dict(self) -> dict:
        return {str(k): [str(b) for b in v.ordered] for k, v in sorted(self.q.items())}


def inner_partition(system: PartialSystem) -> PartitionOfUnity:
    """``q_n = p_inf (p_{n+1} - p_n)`` for ``n < 0`` and ``p_n - p_{n+1}`` for ``n >= 0``."""
    _require_cna(system)
    d_plus = limit_range(system, 1)
    w = len(system.algebra) + 1
    q = {}
    for n in range(-w, w + 1):
        d = lambda k: power_range(system, k)  # noqa: E731
        if n < 0:
            qn = d_plus & (d(n + 1) - d(n))
        else:
            qn = d(n) - d(n + 1)
        if not qn.is_zero():
            q[n] = qn
    return PartitionOfUnity(system, q)


def inner_crossed_product(system: PartialSystem) -> StructureDescriptor:
    """``(A x Z) x Z ≅ (A x Z) ⊗ c_0(Z)``: every summand repeated countably."""
    _require_cna(system)
    return structure(system).retag(SummandKind.REPEATED_COUNTABLY)


def _spectrum_text(x) -> str:
    if x == math.inf:
        return "countably infinite"
    if x == "continuum":
        return "a continuum"
    return f"{x} point" + ("" if x == 1 else "s")


@dataclass(frozen=True)
class OrbitVerdict:
    orbit: Orbit
    holds: bool
    lhs: StructureDescriptor
    rhs: StructureDescriptor
    witness: str

    def as_dict(self) -> dict:
        return {
            "orbit": str(self.orbit),
            "kind": self.orbit.kind.value,
            "blocks": [str(b) for b in self.orbit.blocks],
            "length": self.orbit.length,
            "block_dim": self.orbit.block_dim,
            "holds": self.holds,
            "lhs": self.lhs.as_list(),
            "lhs_stable": self.lhs.stable,
            "rhs": self.rhs.as_list(),
            "rhs_stable": self.rhs.stable,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class LayerVerdict:
    """Comparison on the subquotient ``I_n / I_{n+1}``."""

    n: int
    layer: IdealSet
    lhs: StructureDescriptor
    rhs: StructureDescriptor

    @property
    def holds(self) -> bool:
        return self.lhs.stabilized() == self.rhs

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "layer": [str(b) for b in self.layer.ordered],
            "lhs": self.lhs.as_list(),
            "rhs": self.rhs.as_list(),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class DualityVerdict:
    per_orbit: Tuple[OrbitVerdict, ...]
    layers: Tuple[LayerVerdict, ...] = field(default=())

    @property
    def global_holds(self) -> bool:
        return all(v.holds for v in self.per_orbit)

    def as_dict(self) -> dict:
        return {
            "global_holds": self.global_holds,
            "per_orbit": [v.as_dict() for v in self.per_orbit],
            "layers": [v.as_dict() for v in self.layers],
        }


def orbit_verdict(system: PartialSystem, orbit: Orbit) -> OrbitVerdict:
    sub = orbit_system(system, orbit)
    rhs = algebra_structure(sub).stabilized()
    if orbit.kind is OrbitKind.CYCLE:
        # a genuine automorphism: Takai duality applies
        return OrbitVerdict(orbit, True, rhs, rhs, "automorphism orbit")
    lhs = inner_crossed_product(sub)
    holds = lhs.stabilized() == rhs
    # stabilization preserves the primitive ideal space, so differing spectra rule out an isomorphism
    witness = (
        f"spectrum {_spectrum_text(rhs.spectrum_size())} "
        f"vs {_spectrum_text(lhs.spectrum_size())}"
    )
    return OrbitVerdict(orbit, holds, lhs, rhs, witness)


def duality_verdict(system: PartialSystem) -> DualityVerdict:
    per_orbit = tuple(orbit_verdict(system, o) for o in orbits(system))
    layers = []
    longest = max((o.length for o in orbits(system).chains), default=0)
    for n in range(2, longest + 1):
        beta = layer_system(system, n)
        if not beta.algebra.blocks:
            continue
        layer = ladder_ideal(system, n) - ladder_ideal(system, n + 1)
        layers.append(
            LayerVerdict(
                n,
                layer,
                inner_crossed_product(beta),
                algebra_structure(beta).stabilized(),
            )
        )
    return DualityVerdict(per_orbit, tuple(layers))


@dataclass(frozen=True)
class IsolatedQuotientReport:
    ideal: IdealSet
    quotient_map_empty: bool
    quotient_descriptor: StructureDescriptor
    double_descriptor: StructureDescriptor
    expected_double: StructureDescriptor
    additivity: CheckReport

    @property
    def passed(self) -> bool:
        return (
            self.quotient_map_empty
            and self.double_descriptor == self.expected_double
            and self.additivity.passed
        )

    def as_dict(self) -> dict:
        return {
            "ideal": [str(b) for b in self.ideal.ordered],
            "quotient_map_empty": self.quotient_map_empty,
            "quotient_crossed_product": self.quotient_descriptor.as_list(),
            "double_crossed_product": self.double_descriptor.as_list(),
            "expected": self.expected_double.as_list(),
            "passed": self.passed,
        }


def isolated_quotient_check(system: PartialSystem) -> IsolatedQuotientReport:
    """With ``I = D_-1 + D_1`` the quotient map is empty, so the quotient of the
    double crossed products is ``A/I ⊗ c_0(Z)``."""
    ideal = power_range(system, -1) | power_range(system, 1)
    q = quotient(system, ideal)
    expected = StructureDescriptor(
        tuple(
            Summand(SummandKind.REPEATED_COUNTABLY, system.algebra.dim_of(b))
            for b in system.algebra.ids
            if b not in ideal
        )
    )
    qdesc = structure(q)
    return IsolatedQuotientReport(
        ideal=ideal,
        quotient_map_empty=len(q.map) == 0 and qdesc == algebra_structure(q),
        quotient_descriptor=qdesc,
        double_descriptor=inner_crossed_product(q),
        expected_double=expected,
        additivity=graded_additivity(system, ideal),
    )


@dataclass(frozen=True)
class ThreeWayDecomposition:
    i1: IdealSet
    i2: IdealSet
    i3: IdealSet

    def verify(self, system: PartialSystem) -> CheckReport:
        name = "three_way_decomposition"
        parts = (self.i1, self.i2, self.i3)
        for a in range(3):
            for b in range(a + 1, 3):
                if not (parts[a] & parts[b]).is_zero():
                    return CheckReport(name, False, a, f"I_{a + 1} and I_{b + 1} overlap")
        if not sum_all(system.algebra, parts).is_full():
            return CheckReport(name, False, 3, "I_1 + I_2 + I_3 != A")
        for j, part in enumerate(parts, 1):
            if not is_invariant(system, part):
                return CheckReport(name, False, j, f"I_{j} is not invariant")
            rep = inner_partition(restrict(system, part)).verify()
            if not rep.passed:
                return CheckReport(name, False, j, f"I_{j}: {rep.counterexample}")
        return CheckReport(name, True, 3)


def three_way_decomposition(system: PartialSystem) -> ThreeWayDecomposition:
    _require_cna(system)
    alg = system.algebra
    d = lambda k: power_range(system, k)  # noqa: E731
    d_plus = limit_range(system, 1)
    d_minus = limit_range(system, -1)
    w = len(alg) + 1
    i1 = sum_all(alg, [d_plus & (d(n + 1) - d(n)) for n in range(-w, 0)])
    i2 = sum_all(alg, [d_minus & (d(n - 1) - d(n)) for n in range(1, w + 1)])
    rest = alg.full() - (d_plus | d_minus)
    i3 = sum_all(
        alg,
        [
            rest & (d(1 - n) - d(-n)) & (d(k - 1) - d(k))
            for n in range(1, w + 1)
            for k in range(1, w + 1)
        ],
    )
    return ThreeWayDecomposition(i1, i2, i3)
