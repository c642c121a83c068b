import pytest
from hypothesis import given, settings

from conftest import systems
from partialcp.corpus import c0_shift_truncated, direct_sum_ladder, direct_sum_shifts, shift
from partialcp.partial import (
    InvalidSystemError,
    NotInvariantError,
    PartialSystem,
    apply,
    automorphic_core,
    classify,
    limit_range,
    eventually_constant_checks,
    power_range,
    inverse,
    is_invariant,
    ladder_ideal,
    orbits,
    power,
    quotient,
    restrict,
    subquotient_structure,
    tensor_with_block,
    verify_map_ideals,
    wold,
    zero_system,
)


def naive_d(system, n):
    """Range of the n-fold composite, computed by walking the raw pairs."""
    step = dict(system.map.pairs)
    if n < 0:
        step = {t: s for s, t in step.items()}
    out = set()
    for b in system.algebra.ids:
        x = b
        for _ in range(abs(n)):
            if x not in step:
                x = None
                break
            x = step[x]
        if x is not None:
            out.add(x)
    return out


def test_sigma3_table(sigma3):
    table = {n: set(power_range(sigma3, n).members) for n in range(-3, 4)}
    assert table == {-3: set(), -2: {"1"}, -1: {"1", "2"}, 0: {"1", "2", "3"},
                     1: {"2", "3"}, 2: {"3"}, 3: set()}
    c = classify(sigma3)
    assert c.nilpotent and c.nilpotency_index == 3 and c.completely_nonautomorphic
    assert not c.automorphism and not c.forward_shift


def test_cycle_is_automorphism(cycle2):
    c = classify(cycle2)
    assert c.automorphism and not c.nilpotent and not c.completely_nonautomorphic
    assert automorphic_core(cycle2).is_full()


def test_cycle_chain_stabilizes_at_two(cycle_chain):
    rep = eventually_constant_checks(cycle_chain)
    assert rep.passed
    assert (rep.negative_index, rep.positive_index) == (-2, 2)
    assert limit_range(cycle_chain, 1).members == {"a1"}


def test_zero_and_empty_map():
    z = zero_system()
    assert classify(z).nilpotency_index == 1
    empty = PartialSystem.build([("a", 2), ("b", 1)])
    assert power_range(empty, 1).is_zero() and power_range(empty, 0).is_full()


def test_invalid_systems():
    with pytest.raises(InvalidSystemError, match="injective"):
        PartialSystem.build([("a", 1), ("b", 1)], [("a", "b"), ("b", "b")])
    with pytest.raises(InvalidSystemError, match="dim"):
        PartialSystem.build([("a", 1), ("b", 2)], [("a", "b")])
    with pytest.raises(InvalidSystemError, match="unknown"):
        PartialSystem.build([("a", 1)], [("a", "z")])


def test_restrict_requires_invariance(sigma3):
    with pytest.raises(NotInvariantError):
        restrict(sigma3, sigma3.algebra.ideal({"1"}))


def test_ladder_ideals_triangular():
    for total in range(1, 6):
        s = direct_sum_shifts(total)
        assert limit_range(s, 1).is_zero() and limit_range(s, -1).is_zero()
        for n in range(2, total + 3):
            assert ladder_ideal(s, n).members == direct_sum_ladder(total, n)


def test_c0_truncation_is_one_chain():
    for n in range(1, 8):
        s = c0_shift_truncated(n)
        orb = orbits(s)
        assert len(orb) == 1 and orb.chains[0].length == n
        outside = set(s.algebra.ids) - set(s.map.range)
        assert outside == {orb.chains[0].blocks[0]}


def test_subquotient_witness_sigma3(sigma3):
    sq = subquotient_structure(sigma3, 3)
    assert sq.base.members == {"3"}
    assert [sq.witness[("3", j)] for j in (1, 2, 3)] == ["1", "2", "3"]
    assert sq.verify(sigma3).passed


def test_tensor_scales_dims(sigma3):
    t = tensor_with_block(sigma3, 3)
    assert [d for _, d in t.algebra.blocks] == [3, 3, 3]
    assert t.map == sigma3.map


@settings(max_examples=150, deadline=None)
@given(systems())
def test_d_matches_naive(system):
    for n in range(-len(system.algebra) - 1, len(system.algebra) + 2):
        assert set(power_range(system, n).members) == naive_d(system, n)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_map_ideals_and_inverse(system):
    assert verify_map_ideals(system, len(system.algebra) + 2).passed
    inv = inverse(system)
    for n in range(-3, 4):
        assert power(inv, n) == power(system, -n)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_wold_partitions_and_core_is_cycles(system):
    parts = wold(system).parts()
    assert sum(len(p) for p in parts) == len(system.algebra)
    cyc = {b for o in orbits(system).cycles for b in o.blocks}
    assert automorphic_core(system).members == cyc
    assert parts[1].is_zero() and parts[2].is_zero()


@settings(max_examples=100, deadline=None)
@given(systems())
def test_invariant_ideals_are_unions_of_orbits(system):
    for o in orbits(system):
        ideal = o.ideal(system)
        assert is_invariant(system, ideal)
        r, q = restrict(system, ideal), quotient(system, ideal)
        assert len(r.algebra) + len(q.algebra) == len(system.algebra)
        assert apply(system, 1, ideal) <= ideal


def test_chain_positions_in_d():
    s = shift(5)
    for j, b in enumerate(["1", "2", "3", "4", "5"], 1):
        member = {a for a in range(-6, 7) if b in power_range(s, a)}
        assert member == set(range(-(5 - j), j))
