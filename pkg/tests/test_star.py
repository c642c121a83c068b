import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_generators
from partialcp.exact import Gaussian, adjoint, identity, matmul, mequal, unit
from partialcp.star import (
    Echelon,
    central_idempotents,
    central_summands,
    nullspace,
    saturate,
    solve,
    wedderburn,
)


def _complex(gens):
    mats = [np.array([[complex(x.re, x.im) if isinstance(x, Gaussian) else complex(x) for x in r]
                      for r in g]) for g in gens]
    return mats + [m.conj().T for m in mats]


def float_algebra_basis(gens):
    """Orthonormal basis (flattened) of the span of all words in gens and their adjoints."""
    mats = _complex(gens)
    n = mats[0].shape[0]
    basis = np.zeros((0, n * n), dtype=complex)
    frontier = mats
    while frontier:
        new = []
        for m in frontier:
            v = m.ravel()
            resid = v - basis.T @ (basis.conj() @ v) if len(basis) else v
            if np.linalg.norm(resid) > 1e-9 * max(1.0, np.linalg.norm(v)):
                basis = np.vstack([basis, resid / np.linalg.norm(resid)])
                new.append(m)
        frontier = [a @ g for a in new for g in mats]
    return basis, mats, n


def float_algebra_dim(gens):
    return len(float_algebra_basis(gens)[0])


def float_center_dim(gens):
    """Dimension of the center: elements of the span commuting with every generator."""
    basis, mats, n = float_algebra_basis(gens)
    if len(basis) == 0:
        return 0
    blocks = [np.array([(b.reshape(n, n) @ g - g @ b.reshape(n, n)).ravel() for b in basis]).T
              for g in mats]
    system = np.vstack(blocks)
    return len(basis) - np.linalg.matrix_rank(system, tol=1e-8)


def test_full_matrix_from_one_unit():
    alg = saturate([unit(2, 0, 0), unit(2, 1, 0)])
    assert alg.dim == 4 and wedderburn(alg) == [2]


def test_diagonal_and_identity():
    assert wedderburn(saturate([identity(3)])) == [1]
    diag = ((1, 0, 0), (0, 2, 0), (0, 0, 2))
    assert wedderburn(saturate([diag])) == [1, 1]


def test_idempotents_are_central_projections():
    gens = [((1, 0, 0), (0, 0, 1), (0, 1, 0)), ((0, 0, 0), (0, 1, 0), (0, 0, 0))]
    alg = saturate(gens)
    idems = central_idempotents(alg)
    assert wedderburn(alg) == [1, 2]
    for e in idems:
        assert mequal(matmul(e, e), e) and mequal(adjoint(e), e)
        assert all(mequal(matmul(e, g), matmul(g, e)) for g in alg.basis)


def test_center_split_only_over_a_real_field():
    # eigenvalues (1 ± sqrt 5)/2: one rational central projection covering two 1x1 blocks
    g = ((1, 1), (1, 0))
    alg = saturate([g])
    assert [copies for _, copies in central_summands(alg)] == [2]
    assert wedderburn(alg) == [1, 1]


def test_empty_generators():
    assert saturate([], ambient_dim=3).dim == 0
    assert wedderburn(saturate([], ambient_dim=3)) == []
    with pytest.raises(ValueError):
        saturate([])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_nullspace_and_solve(rows):
    vecs = [{j: x for j, x in enumerate(r) if x} for r in rows]
    for v in nullspace(vecs, 4):
        for r in rows:
            assert sum(r[j] * v.get(j, 0) for j in range(4)) == 0
    a = np.array(rows, dtype=float)
    assert len(nullspace(vecs, 4)) == 4 - np.linalg.matrix_rank(a)
    rhs = [sum(r) for r in rows]  # c = (1,1,1,1) is a solution
    sol = solve(vecs, rhs, 4)
    assert sol is not None
    for r, b in zip(rows, rhs):
        assert sum(r[j] * sol.get(j, 0) for j in range(4)) == b


def test_echelon_tracks_combination():
    e = Echelon(track=True)
    e.add({0: 1, 1: 2})
    e.add({1: 1})
    assert not e.add({0: 3, 1: 7})
    assert e.last_combo == {0: 3, 1: 1}


@pytest.mark.parametrize("seed", range(25))
def test_saturation_matches_float_rank(seed):
    gens = random_generators(random.Random(seed), max_ambient=5)
    alg = saturate(gens, ambient_dim=len(gens[0]))
    assert alg.dim == float_algebra_dim(gens)
    sizes = wedderburn(alg)
    assert sum(n * n for n in sizes) == alg.dim
    assert len(sizes) == float_center_dim(gens)
