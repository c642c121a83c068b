"""End-to-end acceptance criteria.  Each test prints one PASS/FAIL line."""

import json
import math
import random
import time
from contextlib import contextmanager

import pytest

from conftest import random_generators
from partialcp.cli import main
from partialcp.coaction import duality_verdict
from partialcp.corpus import enumerate_systems, shift
from partialcp.crossed import StructureDescriptor, oracle_check, spectral_dims, structure
from partialcp.exact import Gaussian
from partialcp.partial import tensor_with_block
from partialcp.star import saturate, wedderburn
from partialcp.suite import run_suite
from partialcp.sysfile import to_text


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def _run(number, label):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {label}")
    return _run


def cli_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_1_shift_crossed_product(criterion, capsys, tmp_path):
    with criterion(1, "sigma_n for n=2..6: descriptor {finite_matrix(n)}, oracle one block of size n, dim n^2, under 5 s"):
        t0 = time.perf_counter()
        for n in range(2, 7):
            path = tmp_path / f"sigma{n}.txt"
            path.write_text(to_text(shift(n)))
            code, out = cli_json(capsys, "crossed-product", str(path), "--verify")
            rep = out["report"]
            assert code == 0 and rep["verified"]
            assert rep["descriptor"] == [{"kind": "finite_matrix", "matrix_size": n}]
            (oracle,) = rep["oracle"]
            assert oracle["oracle_blocks"] == [n] and oracle["oracle_dim"] == n * n
        assert time.perf_counter() - t0 < 5.0


def test_2_graded_dimensions(criterion):
    with criterion(2, "sigma_n spectral dims are n-|k| and sum to n^2"):
        for n in range(1, 9):
            dims = spectral_dims(shift(n), window=n + 2)
            for k, d in dims.items():
                assert d == (n - abs(k) if abs(k) < n else 0)
            assert sum(dims.values()) == n * n


def test_3_exhaustive_suite(criterion):
    with criterion(3, "every property holds on all partial injections of <= 4 blocks, under 60 s"):
        expected = sum(
            math.comb(k, r) * math.perm(k, r) for k in range(1, 5) for r in range(k + 1)
        )
        t0 = time.perf_counter()
        res = run_suite(enumerate_systems(4, labeled=True))
        elapsed = time.perf_counter() - t0
        assert res.systems == expected == 252
        assert res.passed, res.failures[:5]
        assert elapsed < 60.0


def test_4_duality_failure_witness(criterion):
    with criterion(4, "each chain orbit of length n: repeated_countably(n*d) vs n stable points"):
        for n in range(1, 7):
            for d in (1, 2, 3):
                (v,) = duality_verdict(tensor_with_block(shift(n), d)).per_orbit
                assert v.lhs == StructureDescriptor.of(("repeated_countably", n * d))
                assert v.rhs == StructureDescriptor.of(*[("finite_matrix", 1)] * n, stable=True)
                assert v.rhs.spectrum_size() == n and v.lhs.spectrum_size() == math.inf
                assert v.lhs.stabilized() != v.rhs and not v.holds


def test_5_tensor_with_matrix_block(criterion):
    with criterion(5, "sigma_3 tensor M_d for d=2,3: {finite_matrix(3d)} confirmed by the oracle"):
        for d in (2, 3):
            s = tensor_with_block(shift(3), d)
            assert structure(s) == StructureDescriptor.of(("finite_matrix", 3 * d))
            (r,) = oracle_check(s)
            assert r.oracle_blocks == (3 * d,) and r.oracle_dim == 9 * d * d


def test_6_sieben(criterion, capsys):
    with criterion(6, "sieben --n 50 proves disjointness; max-gap enclosure non-increasing over 3 settings"):
        code, out = cli_json(capsys, "sieben", "--n", "50", "--density", "2", "3")
        rep = out["report"]
        assert code == 0
        assert rep["disjointness"]["proved"] and rep["disjointness"]["components_disjoint"]
        settings = rep["density"]["settings"]
        assert len(settings) >= 3
        assert [s["terms"] for s in settings] == sorted(s["terms"] for s in settings)
        assert rep["density"]["nonincreasing"]
        his = [s["hi_float"] for s in settings]
        assert all(b <= a for a, b in zip(his, his[1:]))


def _exact(m):
    return all(isinstance(x, (int, Gaussian)) or type(x).__name__ == "Fraction" for r in m for x in r)


def test_7_star_engine(criterion):
    with criterion(7, "100 random generator sets: saturation idempotent, residual 0, sum n_i^2 = dim"):
        rng = random.Random(7)
        for _ in range(100):
            gens = random_generators(rng, max_ambient=6)
            alg = saturate(gens)
            assert all(_exact(b) for b in alg.basis)
            again = saturate(alg.basis, ambient_dim=alg.ambient_dim)
            assert again.dim == alg.dim and again.same_span(alg)
            assert alg.closure_residual() == 0
            sizes = wedderburn(alg)
            assert sum(n * n for n in sizes) == alg.dim
