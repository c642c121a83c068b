import pytest
from hypothesis import given
from hypothesis import strategies as st

from partialcp.algebra import (
    BlockAlgebra,
    IncompatibleAlgebrasError,
    ideal_complement_in,
    ideal_product,
    ideal_sum,
    sum_all,
)

ALG = BlockAlgebra.of([("a", 1), ("b", 2), ("c", 1), ("d", 3)])
subsets = st.sets(st.sampled_from(ALG.ids)).map(ALG.ideal)


def test_validation():
    with pytest.raises(ValueError):
        BlockAlgebra.of([("a", 1), ("a", 2)])
    with pytest.raises(ValueError):
        BlockAlgebra.of([("a", 0)])


def test_dimensions():
    assert ALG.total_dim == 1 + 4 + 1 + 9
    assert ALG.ideal({"b", "d"}).dim == 13


@given(subsets, subsets, subsets)
def test_lattice_laws(i, j, k):
    assert ideal_product(i, j) == ideal_product(j, i)
    assert ideal_product(i, ideal_sum(j, k)) == ideal_sum(ideal_product(i, j), ideal_product(i, k))
    assert ideal_product(i, i) == i
    assert sum_all(ALG, [i, j, k]) == i | j | k


@given(subsets, subsets)
def test_complement(i, j):
    small = i & j
    rest = ideal_complement_in(i, small)
    assert (rest & small).is_zero() and (rest | small) == i
    if not j <= i:
        with pytest.raises(ValueError):
            ideal_complement_in(i, j)


def test_mixed_parents_rejected():
    other = BlockAlgebra.of([("a", 1)])
    with pytest.raises(IncompatibleAlgebrasError):
        ideal_product(ALG.full(), other.full())
