"""Partial automorphisms of block algebras.

A partial automorphism of ``A = ⊕ M_{d_b}`` is an isomorphism between two
ideals.  Up to inner automorphisms of the individual blocks (which change
none of the structure computed here) it is a partial injection ``f`` on the
block ids that only pairs blocks of equal dimension.  ``D_n`` is the range of
``f**n``; for negative ``n`` that is the domain of ``f**|n|``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from .algebra import BlockAlgebra, BlockId, IdealSet, ideal_complement_in, sum_all


class InvalidSystemError(ValueError):
    """The map does not describe a partial automorphism of the algebra."""


class NotInvariantError(ValueError):
    def __init__(self, ideal: IdealSet, block: BlockId, image: BlockId):
        self.ideal = ideal
        self.block = block
        self.image = image
        super().__init__(
            f"ideal {ideal} is not invariant: block {block} is sent to {image}, "
            f"which lies outside it"
        )


@dataclass(frozen=True, eq=False)
class PartialInjection:
    """Finite partial injection given by its ``(source, target)`` pairs."""

    pairs: Tuple[Tuple[BlockId, BlockId], ...] = ()

    def __post_init__(self):
        pairs = tuple((s, t) for s, t in self.pairs)
        fwd: Dict = {}
        back: Dict = {}
        for s, t in pairs:
            if s in fwd:
                raise InvalidSystemError(f"map not functional at source {s}")
            if t in back:
                raise InvalidSystemError(f"map not injective at target {t}")
            fwd[s] = t
            back[t] = s
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "_fwd", fwd)

    @classmethod
    def identity(cls, ids: Iterable[BlockId]) -> "PartialInjection":
        return cls(tuple((b, b) for b in ids))

    def __call__(self, block):
        return self._fwd[block]

    def get(self, block, default=None):
        return self._fwd.get(block, default)

    def __contains__(self, block) -> bool:
        return block in self._fwd

    def __len__(self):
        return len(self.pairs)

    def as_dict(self) -> dict:
        return dict(self._fwd)

    @property
    def domain(self) -> frozenset:
        return frozenset(self._fwd)

    @property
    def range(self) -> frozenset:
        return frozenset(self._fwd.values())

    def inverse(self) -> "PartialInjection":
        return PartialInjection(tuple((t, s) for s, t in self.pairs))

    def compose(self, inner: "PartialInjection") -> "PartialInjection":
        """``self ∘ inner``, defined wherever ``inner`` lands in ``self``'s domain."""
        return PartialInjection(
            tuple((s, self._fwd[t]) for s, t in inner.pairs if t in self._fwd)
        )

    def image(self, blocks: Iterable[BlockId]) -> frozenset:
        return frozenset(self._fwd[b] for b in blocks if b in self._fwd)

    def __eq__(self, other):
        if not isinstance(other, PartialInjection):
            return NotImplemented
        return self._fwd == other._fwd

    def __hash__(self):
        return hash(frozenset(self.pairs))


@dataclass(frozen=True)
class PartialSystem:
    """A block algebra together with a partial automorphism of it."""

    algebra: BlockAlgebra
    map: PartialInjection = field(default_factory=PartialInjection)

    def __post_init__(self):
        m = self.map
        if not isinstance(m, PartialInjection):
            m = PartialInjection(tuple(m))
            object.__setattr__(self, "map", m)
        alg = self.algebra
        for s, t in m.pairs:
            for b in (s, t):
                if b not in alg:
                    raise InvalidSystemError(f"map refers to unknown block {b}")
            if alg.dim_of(s) != alg.dim_of(t):
                raise InvalidSystemError(
                    f"map pairs block {s} (dim {alg.dim_of(s)}) with block {t} "
                    f"(dim {alg.dim_of(t)})"
                )

    @classmethod
    def build(cls, blocks, pairs=()) -> "PartialSystem":
        """``blocks`` as accepted by :meth:`BlockAlgebra.of`, plus ``(src, dst)`` pairs."""
        return cls(BlockAlgebra.of(blocks), PartialInjection(tuple(pairs)))

    @property
    def size(self) -> int:
        return len(self.algebra)

    def power_range(self, n: int) -> IdealSet:
        return power_range(self, n)

    @property
    def domain(self) -> IdealSet:
        return self.algebra.ideal(self.map.domain)

    @property
    def range(self) -> IdealSet:
        return self.algebra.ideal(self.map.range)

    def is_total_bijection(self) -> bool:
        return len(self.map) == len(self.algebra)

    def __str__(self):
        blocks = ", ".join(f"{b}:{d}" for b, d in self.algebra.blocks)
        arrows = ", ".join(f"{s}->{t}" for s, t in self.map.pairs)
        return f"PartialSystem([{blocks}]; {arrows})"


def zero_system() -> PartialSystem:
    return PartialSystem(BlockAlgebra(()))


def inverse(system: PartialSystem) -> PartialSystem:
    return PartialSystem(system.algebra, system.map.inverse())


@lru_cache(maxsize=1 << 16)
def power(system: PartialSystem, n: int) -> PartialInjection:
    """``f**n`` with ``f**0`` the identity on all blocks and ``f**-n = (f**-1)**n``."""
    if n == 0:
        return PartialInjection.identity(system.algebra.ids)
    step = system.map if n > 0 else system.map.inverse()
    out = step
    for _ in range(abs(n) - 1):
        out = step.compose(out)
    return out


@lru_cache(maxsize=1 << 16)
def power_range(system: PartialSystem, n: int) -> IdealSet:
    return system.algebra.ideal(power(system, n).range)


def apply(system: PartialSystem, n: int, ideal: IdealSet) -> IdealSet:
    """Image of ``ideal ∩ D_{-n}`` under ``f**n``."""
    return system.algebra.ideal(power(system, n).image(ideal.members))


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    counterexample: Optional[str] = None

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


def verify_map_ideals(system: PartialSystem, bound: int) -> CheckReport:
    """Check ``f^n(D_k ∩ D_{-n}) = D_{n+k} ∩ D_n`` for ``|n|, |k| <= bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    checked = 0
    for n in range(-bound, bound + 1):
        for k in range(-bound, bound + 1):
            lhs = apply(system, n, power_range(system, k) & power_range(system, -n))
            rhs = power_range(system, n + k) & power_range(system, n)
            checked += 1
            if lhs != rhs:
                return CheckReport(
                    "map_ideals", False, checked, f"n={n}, k={k}: {lhs} != {rhs}"
                )
    return CheckReport("map_ideals", True, checked)


def limit_range(system: PartialSystem, sign: int = 1) -> IdealSet:
    """``D_∞`` (sign +1) or ``D_-∞`` (sign -1).

    The ``D_n`` shrink strictly until they stabilize, so the block count is a
    safe exponent.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return power_range(system, sign * max(len(system.algebra), 1))


def _invariance_violation(system: PartialSystem, ideal: IdealSet):
    for n in (1, -1):
        step = power(system, n)
        for b in ideal.ordered:
            if b in step:
                t = step(b)
                if t not in ideal:
                    return b, t
    return None


def is_invariant(system: PartialSystem, ideal: IdealSet) -> bool:
    return _invariance_violation(system, ideal) is None


def check_invariant_equal(system: PartialSystem, ideal: IdealSet, bound: int | None = None) -> bool:
    """``f^n(B ∩ D_{-n}) = B ∩ D_n`` for ``|n| <= bound`` (default: block count + 1)."""
    bound = len(system.algebra) + 1 if bound is None else bound
    return all(
        apply(system, n, ideal & power_range(system, -n)) == ideal & power_range(system, n)
        for n in range(-bound, bound + 1)
    )


def _require_invariant(system: PartialSystem, ideal: IdealSet) -> None:
    if ideal.parent != system.algebra:
        raise ValueError("ideal does not belong to this system's algebra")
    bad = _invariance_violation(system, ideal)
    if bad is not None:
        raise NotInvariantError(ideal, *bad)


def restrict(system: PartialSystem, ideal: IdealSet) -> PartialSystem:
    _require_invariant(system, ideal)
    keep = ideal.members
    pairs = tuple((s, t) for s, t in system.map.pairs if s in keep)
    return PartialSystem(system.algebra.sub(keep), PartialInjection(pairs))


def quotient(system: PartialSystem, ideal: IdealSet) -> PartialSystem:
    _require_invariant(system, ideal)
    gone = ideal.members
    rest = [b for b in system.algebra.ids if b not in gone]
    pairs = tuple(
        (s, t) for s, t in system.map.pairs if s not in gone and t not in gone
    )
    return PartialSystem(system.algebra.sub(rest), PartialInjection(pairs))


def lift(system: PartialSystem, ideal: IdealSet) -> IdealSet:
    """Re-express an ideal of a restricted or quotient system inside ``system``."""
    return system.algebra.ideal(ideal.members)


@dataclass(frozen=True)
class WoldDecomposition:
    core: IdealSet
    forward_part: IdealSet
    backward_part: IdealSet
    finite_part: IdealSet

    def parts(self) -> Tuple[IdealSet, IdealSet, IdealSet, IdealSet]:
        return (self.core, self.forward_part, self.backward_part, self.finite_part)


def wold(system: PartialSystem) -> WoldDecomposition:
    d_plus = limit_range(system, 1)
    d_minus = limit_range(system, -1)
    core = d_plus & d_minus
    forward = d_minus - core
    backward = d_plus - core
    finite = system.algebra.full() - (d_plus | d_minus)
    return WoldDecomposition(core, forward, backward, finite)


def automorphic_core(system: PartialSystem) -> IdealSet:
    return limit_range(system, 1) & limit_range(system, -1)


@dataclass(frozen=True)
class Classification:
    nilpotent: bool
    nilpotency_index: Optional[int]
    forward_shift: bool
    backward_shift: bool
    completely_nonautomorphic: bool
    automorphism: bool
    nilpotency_conditions_agree: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def nilpotency_conditions_agree(system: PartialSystem, bound: int | None = None) -> bool:
    """The four vanishing conditions agree for every ``0 < n <= bound``."""
    bound = len(system.algebra) + 1 if bound is None else bound
    d = lambda n: power_range(system, n)  # noqa: E731
    for n in range(1, bound + 1):
        flags = {
            d(n).is_zero(),
            d(-n).is_zero(),
            (d(n - 1) & d(-1)).is_zero(),
            (d(1 - n) & d(1)).is_zero(),
        }
        if len(flags) != 1:
            return False
    return True


def classify(system: PartialSystem) -> Classification:
    size = len(system.algebra)
    index = next(
        (n for n in range(1, size + 2) if power_range(system, n).is_zero()), None
    )
    full = system.algebra.full()
    all_neg_full = power_range(system, -1) == full
    all_pos_full = power_range(system, 1) == full
    return Classification(
        nilpotent=index is not None,
        nilpotency_index=index,
        forward_shift=all_neg_full and limit_range(system, 1).is_zero(),
        backward_shift=all_pos_full and limit_range(system, -1).is_zero(),
        completely_nonautomorphic=automorphic_core(system).is_zero(),
        automorphism=system.is_total_bijection(),
        nilpotency_conditions_agree=nilpotency_conditions_agree(system),
    )


def ladder_ideal(system: PartialSystem, n: int) -> IdealSet:
    """``I_n = D_{1-n} + D_{2-n}D_1 + ... + D_{n-1}``."""
    if n < 2:
        raise ValueError("ladder ideals are defined for n >= 2")
    terms = [power_range(system, j - n) & power_range(system, j - 1) for j in range(1, n + 1)]
    return sum_all(system.algebra, terms)


@dataclass(frozen=True)
class SubquotientStructure:
    """Shift structure of the layer ``I_n / I_{n+1}``.

    ``witness[(b, j)]`` is the block carrying copy ``j`` (1-based) of base
    block ``b``.
    """

    n: int
    base: IdealSet
    layer: IdealSet
    witness: Dict[Tuple[BlockId, int], BlockId]
    quotient_base: IdealSet

    def verify(self, system: PartialSystem) -> CheckReport:
        name = f"subquotient(n={self.n})"
        targets = list(self.witness.values())
        if len(set(targets)) != len(targets):
            return CheckReport(name, False, len(targets), "witness not injective")
        if set(targets) != set(self.layer.members):
            return CheckReport(
                name, False, len(targets), f"witness image != layer {self.layer}"
            )
        f = system.map
        for (b, j), blk in self.witness.items():
            if j < self.n:
                nxt = self.witness[(b, j + 1)]
                if f.get(blk) != nxt:
                    return CheckReport(
                        name, False, len(targets),
                        f"copy {j} of {b} at {blk} does not map to copy {j + 1}",
                    )
            elif blk in f and f(blk) in self.layer:
                return CheckReport(
                    name, False, len(targets), f"last copy {blk} maps inside the layer"
                )
        if self.quotient_base.members != self.base.members:
            return CheckReport(
                name, False, len(targets),
                f"base {self.base} != D_(n-1) of the layer system {self.quotient_base}",
            )
        return CheckReport(name, True, len(targets))


def layer_system(system: PartialSystem, n: int) -> PartialSystem:
    """The quotient partial automorphism ``β_n`` of ``I_n / I_{n+1}``."""
    upper = ladder_ideal(system, n)
    lower = ladder_ideal(system, n + 1)
    inner = restrict(system, upper)
    return quotient(inner, inner.algebra.ideal(lower.members))


def subquotient_structure(system: PartialSystem, n: int) -> SubquotientStructure:
    if n < 2:
        raise ValueError("subquotient structure is defined for n >= 2")
    d = lambda k: power_range(system, k)  # noqa: E731
    base = d(n - 1) - (d(n) | (d(n - 1) & d(-1)))
    layer = ideal_complement_in(ladder_ideal(system, n), ladder_ideal(system, n + 1))
    back = power(system, 1 - n)
    witness = {}
    for b in base.ordered:
        first = back(b)
        for j in range(1, n + 1):
            witness[(b, j)] = power(system, j - 1)(first)
    beta = layer_system(system, n)
    qbase = power_range(beta, n - 1)
    return SubquotientStructure(n, base, layer, witness, system.algebra.ideal(qbase.members))


@dataclass(frozen=True)
class StabilizationReport:
    negative_index: int
    positive_index: int
    constant_below: bool
    constant_above: bool
    invariant_implies_constant: bool
    symmetric: bool
    restricts_to_automorphism: bool
    equals_core: bool

    @property
    def passed(self) -> bool:
        return all((
            self.constant_below,
            self.constant_above,
            self.invariant_implies_constant,
            self.symmetric,
            self.restricts_to_automorphism,
            self.equals_core,
        ))

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["passed"] = self.passed
        return out


def eventually_constant_checks(system: PartialSystem) -> StabilizationReport:
    size = len(system.algebra)
    far = size + 2
    d = lambda k: power_range(system, k)  # noqa: E731
    # D_n stabilizes within `size` steps, so both searches terminate inside the window
    neg = max(j for j in range(-far, 1) if d(j) == d(j - 1))
    pos = min(j for j in range(0, far + 1) if d(j) == d(j + 1))

    def constant_from(n: int, step: int) -> bool:
        return all(d(k) == d(n) for k in range(n, n + step * (far + 1), step))

    constant_below = all(constant_from(j, -1) for j in range(-far, 1) if d(j) == d(j - 1))
    constant_above = all(constant_from(j, 1) for j in range(0, far + 1) if d(j) == d(j + 1))
    inv_ok = all(
        d(n - 1) == d(n)
        for n in range(-far, 0)
        if apply(system, 1, d(n)) <= d(n)
    )
    stable = d(neg)
    sub = restrict(system, stable) if is_invariant(system, stable) else None
    return StabilizationReport(
        negative_index=neg,
        positive_index=pos,
        constant_below=constant_below,
        constant_above=constant_above,
        invariant_implies_constant=inv_ok,
        symmetric=neg == -pos,
        restricts_to_automorphism=sub is not None and sub.is_total_bijection(),
        equals_core=stable == automorphic_core(system),
    )


def tensor_with_block(system: PartialSystem, d: int) -> PartialSystem:
    """``(M_d ⊗ A, ι ⊗ α)``: block dimensions scale by ``d``, the map is unchanged."""
    if d < 1:
        raise ValueError("tensor factor must be a positive integer")
    return PartialSystem(system.algebra.scaled(d), system.map)


class OrbitKind(str, enum.Enum):
    CHAIN = "chain"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Orbit:
    kind: OrbitKind
    blocks: Tuple[BlockId, ...]
    block_dim: int

    @property
    def length(self) -> int:
        return len(self.blocks)

    def ideal(self, system: PartialSystem) -> IdealSet:
        return system.algebra.ideal(self.blocks)

    def __str__(self):
        arrow = "->".join(str(b) for b in self.blocks)
        if self.kind is OrbitKind.CYCLE:
            arrow += f"->{self.blocks[0]}"
        return f"{self.kind.value}({arrow}; dim {self.block_dim})"


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: Tuple[Orbit, ...]

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self):
        return len(self.orbits)

    @property
    def chains(self) -> Tuple[Orbit, ...]:
        return tuple(o for o in self.orbits if o.kind is OrbitKind.CHAIN)

    @property
    def cycles(self) -> Tuple[Orbit, ...]:
        return tuple(o for o in self.orbits if o.kind is OrbitKind.CYCLE)


def orbits(system: PartialSystem) -> OrbitDecomposition:
    f = system.map
    ran = f.range
    seen = set()
    out = []
    alg = system.algebra
    for b in alg.ids:
        if b in ran:
            continue
        chain = [b]
        while chain[-1] in f:
            chain.append(f(chain[-1]))
        seen.update(chain)
        out.append(Orbit(OrbitKind.CHAIN, tuple(chain), alg.dim_of(b)))
    for b in alg.ids:
        if b in seen:
            continue
        cyc = [b]
        nxt = f(b)
        while nxt != b:
            cyc.append(nxt)
            nxt = f(nxt)
        seen.update(cyc)
        out.append(Orbit(OrbitKind.CYCLE, tuple(cyc), alg.dim_of(b)))
    return OrbitDecomposition(tuple(out))


def orbit_system(system: PartialSystem, orbit: Orbit) -> PartialSystem:
    return restrict(system, orbit.ideal(system))


def ideal_window(system: PartialSystem, extra: int = 1) -> range:
    """Degrees ``-N-extra .. N+extra`` with ``N`` the block count."""
    n = len(system.algebra) + extra
    return range(-n, n + 1)
