"""Every structural property checked on a single system, for exhaustive sweeps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, List

from .coaction import (
    three_way_decomposition,
    duality_verdict,
    inner_partition,
    isolated_quotient_check,
)
from .crossed import graded_additivity, quotient_crossed_product, restrict_crossed_product, structure
from .partial import (
    CheckReport,
    PartialSystem,
    automorphic_core,
    check_invariant_equal,
    classify,
    eventually_constant_checks,
    power_range,
    inverse,
    is_invariant,
    orbits,
    subquotient_structure,
    verify_map_ideals,
    wold,
)


def _ok(name: str, cond: bool, checked: int = 1, why: str | None = None) -> CheckReport:
    return CheckReport(name, bool(cond), checked, None if cond else why)


def _monotone_and_symmetric(system: PartialSystem) -> CheckReport:
    w = len(system.algebra) + 2
    inv = inverse(system)
    for n in range(0, w):
        if not power_range(system, n + 1) <= power_range(system, n):
            return _ok("monotone_symmetric", False, n, f"D_{n + 1} not inside D_{n}")
        if not power_range(system, -n - 1) <= power_range(system, -n):
            return _ok("monotone_symmetric", False, n, f"D_{-n - 1} not inside D_{-n}")
    for n in range(-w, w + 1):
        if power_range(inv, n).members != power_range(system, -n).members:
            return _ok("monotone_symmetric", False, n, f"inverse swaps D_{n} incorrectly")
    return _ok("monotone_symmetric", True, 4 * w)


def _invariant_ideals(system: PartialSystem) -> CheckReport:
    """Invariance is equivalent to ``f^n(B D_-n) = B D_n`` for all ``n``; crossed
    products of invariant ideals split additively."""
    alg = system.algebra
    ids = alg.ids
    whole = structure(system)
    checked = 0
    for r in range(len(ids) + 1):
        for members in itertools.combinations(ids, r):
            b = alg.ideal(members)
            checked += 1
            inv = is_invariant(system, b)
            if inv != check_invariant_equal(system, b):
                return _ok("invariant_ideals", False, checked, f"{b}: invariance and the D_n identity disagree")
            if not inv:
                continue
            add = graded_additivity(system, b)
            if not add.passed:
                return add
            part, _ = restrict_crossed_product(system, b)
            if part + quotient_crossed_product(system, b) != whole:
                return _ok("invariant_ideals", False, checked, f"{b}: descriptors not additive")
    return _ok("invariant_ideals", True, checked)


def _classification(system: PartialSystem) -> CheckReport:
    c = classify(system)
    orb = orbits(system)
    if not c.nilpotency_conditions_agree:
        return _ok("classification", False, 1, "nilpotency conditions disagree")
    if c.nilpotent != (not orb.cycles):
        return _ok("classification", False, 2, "nilpotent iff no cycles fails")
    if c.completely_nonautomorphic != (not orb.cycles):
        return _ok("classification", False, 3, "core nonzero iff cycles present fails")
    parts = wold(system).parts()
    union = set()
    for p in parts:
        if union & p.members:
            return _ok("classification", False, 4, "Wold parts overlap")
        union |= p.members
    if union != set(system.algebra.ids):
        return _ok("classification", False, 5, "Wold parts do not cover")
    core = automorphic_core(system)
    cyc = {b for o in orb.cycles for b in o.blocks}
    return _ok("classification", core.members == cyc, 6, "core differs from cycle blocks")


def _subquotients(system: PartialSystem) -> List[CheckReport]:
    out = []
    for n in range(2, len(system.algebra) + 2):
        out.append(subquotient_structure(system, n).verify(system))
    return out


def _duality(system: PartialSystem) -> CheckReport:
    v = duality_verdict(system)
    expect = system.is_total_bijection()
    return _ok("duality_verdict", v.global_holds == expect, len(v.per_orbit),
               f"global verdict {v.global_holds} but total bijection = {expect}")


def check_system(system: PartialSystem) -> List[CheckReport]:
    bound = len(system.algebra) + 2
    reports = [
        verify_map_ideals(system, bound),
        _monotone_and_symmetric(system),
        _classification(system),
        _invariant_ideals(system),
        *_subquotients(system),
        _ok("eventually_constant", eventually_constant_checks(system).passed),
        _duality(system),
    ]
    if automorphic_core(system).is_zero():
        isolated = isolated_quotient_check(system)
        reports.append(isolated.additivity)
        reports.append(_ok("isolated_quotient", isolated.passed, 1, str(isolated.as_dict())))
        reports.append(inner_partition(system).verify())
        reports.append(three_way_decomposition(system).verify(system))
    return reports


@dataclass
class SuiteResult:
    systems: int = 0
    checks: int = 0
    failures: List[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "systems": self.systems,
            "checks": self.checks,
            "passed": self.passed,
            "failures": [
                {"system": str(s), **r.as_dict()} for s, r in self.failures
            ],
        }


def run_suite(systems: Iterable[PartialSystem]) -> SuiteResult:
    res = SuiteResult()
    for s in systems:
        res.systems += 1
        for r in check_system(s):
            res.checks += 1
            if not r.passed:
                res.failures.append((s, r))
    return res
