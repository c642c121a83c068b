import itertools
import time
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partialcp.corpus import (
    PiRational,
    SiebenSet,
    canonical_form,
    density_series,
    direct_sum_shifts,
    enumerate_systems,
    harmonic,
    is_nonincreasing,
    named_system,
    pi_bounds,
    sieben_density_gap,
    sieben_disjointness,
)
from partialcp.partial import orbits


def brute_classes(k):
    """Relabeling classes of partial injections on k points, by trying every relabeling."""
    pts = range(k)
    seen = set()
    for r in range(k + 1):
        for dom in itertools.combinations(pts, r):
            for img in itertools.permutations(pts, r):
                f = dict(zip(dom, img))
                canon = min(
                    tuple(sorted((p[s], p[t]) for s, t in f.items()))
                    for p in itertools.permutations(pts)
                )
                seen.add(canon)
    return len(seen)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_unlabeled_enumeration_matches_brute_force(k):
    mine = [s for s in enumerate_systems(k) if len(s.algebra) == k]
    assert len(mine) == brute_classes(k)
    assert len({canonical_form(s) for s in mine}) == len(mine)


def test_labeled_counts():
    counts = [sum(1 for s in enumerate_systems(4, labeled=True) if len(s.algebra) == k) for k in (1, 2, 3, 4)]
    # sum_r C(k,r) * k!/(k-r)!
    assert counts == [2, 7, 34, 209]


def test_enumeration_cap():
    with pytest.raises(ValueError, match="cap"):
        list(enumerate_systems(5))
    assert sum(1 for _ in enumerate_systems(2)) == 7


def test_named_systems():
    assert len(named_system("shift_n", n=4).map) == 3
    assert named_system("cycle_k", k=3).is_total_bijection()
    assert len(orbits(named_system("direct_sum_shifts_N", N=3))) == 3
    assert named_system("random", seed=3, size=6, density=0.5) == named_system("random", seed=3, size=6, density=0.5)
    with pytest.raises(ValueError, match="unknown"):
        named_system("nope")


def test_direct_sum_orbit_lengths():
    assert sorted(o.length for o in orbits(direct_sum_shifts(4))) == [1, 2, 3, 4]


def test_pi_bounds_against_mpmath():
    mpmath.mp.prec = 400
    for bits in (16, 64, 200):
        lo, hi = pi_bounds(bits)
        assert lo < hi and hi - lo < Fraction(1, 2 ** bits)
        assert mpmath.mpf(lo.numerator) / lo.denominator < mpmath.pi < mpmath.mpf(hi.numerator) / hi.denominator


rat = st.fractions(max_denominator=30).filter(lambda x: abs(x) < 50)
pirats = st.builds(PiRational, rat, st.integers(-5, 5))


@given(pirats, pirats, pirats)
def test_pirational_order_is_total_and_transitive(a, b, c):
    assert (a == b) == (a.q == b.q and a.m == b.m)
    assert (a < b) + (b < a) + (a == b) == 1
    if a < b and b < c:
        assert a < c
    mpmath.mp.prec = 100
    fa = mpmath.mpf(a.q.numerator) / a.q.denominator + a.m * mpmath.pi
    fb = mpmath.mpf(b.q.numerator) / b.q.denominator + b.m * mpmath.pi
    if a != b:
        assert (a < b) == (fa < fb)


def test_pi_close_rational_is_ordered():
    assert PiRational(Fraction(355, 113)) > PiRational(Fraction(0), 1)
    assert PiRational(Fraction(-355, 113), 1) < PiRational(Fraction(0))


def test_sieben_set_contents():
    s = SiebenSet(3, offset=2)
    assert len(s.elements) == len(s) == 7
    assert PiRational(harmonic(3), 2) in s.elements


def test_disjointness_fast_for_all_n():
    t = time.perf_counter()
    for n in range(1, 51):
        rep = sieben_disjointness(n)
        assert rep.proved and rep.degenerate_overlap
        assert rep.left_components == tuple(range(1, n + 1))
        assert rep.right_components == tuple(range(-(n - 1), 1))
    assert time.perf_counter() - t < 1.0


def float_gap(n_terms, r, m):
    """Independent high-precision recomputation of the largest gap."""
    mpmath.mp.prec = 300
    hs = [mpmath.mpf(0)]
    for k in range(1, n_terms + 1):
        hs.append(hs[-1] + mpmath.mpf(1) / k)
    base = [mpmath.mpf(0)] + hs[1:] + [-h for h in hs[1:]]
    R = mpmath.mpf(r.numerator) / r.denominator
    pts = sorted(x + n * mpmath.pi for n in range(1, m + 1) for x in base if -R <= x + n * mpmath.pi <= R)
    seq = [-R] + pts + [R]
    return max((b - a for a, b in zip(seq, seq[1:])), default=mpmath.mpf(0)), len(pts)


@pytest.mark.parametrize("n_terms,r,m", [(5, Fraction(1), 1), (40, Fraction(2), 2), (300, Fraction(3, 2), 3), (10, Fraction(0), 1)])
def test_gap_enclosure_contains_true_gap(n_terms, r, m):
    g = sieben_density_gap(n_terms, r, m)
    oracle, count = float_gap(n_terms, r, m)
    assert g.points == count
    lo = mpmath.mpf(g.lo.numerator) / g.lo.denominator
    hi = mpmath.mpf(g.hi.numerator) / g.hi.denominator
    assert lo - mpmath.mpf(10) ** -60 <= oracle <= hi + mpmath.mpf(10) ** -60
    assert g.hi - g.lo < Fraction(1, 2 ** 100)


def test_small_n_gap_near_harmonic_spacing():
    # M=1, R=1: the points pi - H_j for j=5..N sit in the window, spaced 1/(j+1)
    g = sieben_density_gap(60, 1, 1)
    assert Fraction(1, 7) < g.lo and g.hi < Fraction(1, 5)


def test_zero_window_gap():
    g = sieben_density_gap(10, 0, 1)
    assert g.lo == g.hi == 0


def test_gap_monotone_series():
    gaps = density_series([(10, 2, 3), (100, 2, 3), (1000, 2, 3)])
    assert is_nonincreasing(gaps)
    assert gaps[-1].hi < gaps[0].lo
