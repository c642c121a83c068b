"""Finite-dimensional C*-algebras as lists of matrix blocks.

Every ideal of ``M_{d_1} + ... + M_{d_k}`` is a sum of whole blocks, so an
ideal, its central support projection and a quotient by it are all carried by
a subset of block ids.  Products of ideals are intersections, sums are unions,
and quotients / projection differences are set differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence, Tuple

BlockId = Hashable


class IncompatibleAlgebrasError(ValueError):
    """Two ideals that do not live in the same algebra were combined."""


@dataclass(frozen=True)
class BlockAlgebra:
    """Direct sum of full matrix algebras ``M_dim``, one per block id.

    The zero algebra is the empty block list.
    """

    blocks: Tuple[Tuple[BlockId, int], ...] = ()

    def __post_init__(self):
        blocks = tuple((b, d) for b, d in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = set()
        for b, d in blocks:
            if b in seen:
                raise ValueError(f"duplicate block id {b!r}")
            seen.add(b)
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise ValueError(f"block {b!r} has invalid dimension {d!r}")
        object.__setattr__(self, "_dims", dict(blocks))

    @classmethod
    def of(cls, spec: Iterable) -> "BlockAlgebra":
        """Build from ``[(id, dim), ...]`` or a mapping ``{id: dim}``."""
        if hasattr(spec, "items"):
            spec = spec.items()
        return cls(tuple(spec))

    @property
    def ids(self) -> Tuple[BlockId, ...]:
        return tuple(b for b, _ in self.blocks)

    def dim_of(self, block: BlockId) -> int:
        return self._dims[block]

    def __contains__(self, block) -> bool:
        return block in self._dims

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[BlockId]:
        return iter(self.ids)

    @property
    def total_dim(self) -> int:
        return sum(d * d for _, d in self.blocks)

    def ideal(self, members: Iterable[BlockId] = ()) -> "IdealSet":
        return IdealSet(self, frozenset(members))

    def full(self) -> "IdealSet":
        return IdealSet(self, frozenset(self.ids))

    def zero(self) -> "IdealSet":
        return IdealSet(self, frozenset())

    def sub(self, members: Iterable[BlockId]) -> "BlockAlgebra":
        """The block algebra of an ideal (or quotient), keeping input order."""
        keep = set(members)
        missing = keep - set(self.ids)
        if missing:
            raise ValueError(f"unknown blocks {sorted(map(str, missing))}")
        return BlockAlgebra(tuple((b, d) for b, d in self.blocks if b in keep))

    def scaled(self, factor: int) -> "BlockAlgebra":
        """Tensor with ``M_factor``: every block dimension is multiplied."""
        return BlockAlgebra(tuple((b, d * factor) for b, d in self.blocks))

    def order(self, members: Iterable[BlockId]) -> Tuple[BlockId, ...]:
        keep = set(members)
        return tuple(b for b in self.ids if b in keep)


@dataclass(frozen=True)
class IdealSet:
    """An ideal of ``parent`` given by the blocks it contains.

    The same object doubles as the central projection supporting the ideal
    (the 0/1 indicator of ``members``).
    """

    parent: BlockAlgebra
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        stray = [b for b in members if b not in self.parent]
        if stray:
            raise ValueError(f"blocks {stray!r} are not in the parent algebra")

    @property
    def dim(self) -> int:
        return sum(self.parent.dim_of(b) ** 2 for b in self.members)

    @property
    def ordered(self) -> Tuple[BlockId, ...]:
        return self.parent.order(self.members)

    def is_zero(self) -> bool:
        return not self.members

    def is_full(self) -> bool:
        return len(self.members) == len(self.parent)

    def __contains__(self, block) -> bool:
        return block in self.members

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "IdealSet") -> bool:
        _check_parent(self, other)
        return self.members <= other.members

    def __ge__(self, other: "IdealSet") -> bool:
        return other <= self

    def __and__(self, other: "IdealSet") -> "IdealSet":
        return ideal_product(self, other)

    def __or__(self, other: "IdealSet") -> "IdealSet":
        return ideal_sum(self, other)

    def __sub__(self, other: "IdealSet") -> "IdealSet":
        """Set difference without the containment precondition."""
        _check_parent(self, other)
        return IdealSet(self.parent, self.members - other.members)

    def complement(self) -> "IdealSet":
        return self.parent.full() - self

    def __str__(self):
        return "{" + ",".join(str(b) for b in self.ordered) + "}"


def _check_parent(i: IdealSet, j: IdealSet) -> None:
    if i.parent != j.parent:
        raise IncompatibleAlgebrasError("ideals belong to different algebras")


def ideal_product(i: IdealSet, j: IdealSet) -> IdealSet:
    """``IJ``, which for closed ideals of a C*-algebra is ``I ∩ J``."""
    _check_parent(i, j)
    return IdealSet(i.parent, i.members & j.members)


def ideal_sum(i: IdealSet, j: IdealSet) -> IdealSet:
    _check_parent(i, j)
    return IdealSet(i.parent, i.members | j.members)


def ideal_complement_in(i: IdealSet, j: IdealSet) -> IdealSet:
    """Blocks of ``I/J``; equally the support of ``p_I - p_J``.  Requires ``J ⊆ I``."""
    _check_parent(i, j)
    if not j.members <= i.members:
        extra = j.parent.order(j.members - i.members)
        raise ValueError(f"{j} is not contained in {i} (offending blocks {list(extra)})")
    return IdealSet(i.parent, i.members - j.members)


def sum_all(parent: BlockAlgebra, ideals: Sequence[IdealSet]) -> IdealSet:
    out = parent.zero()
    for x in ideals:
        out = ideal_sum(out, x)
    return out
