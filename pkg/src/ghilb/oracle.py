"""Brute-force cross-validation of the cluster enumeration and the fan.

The enumerator here is deliberately naive: breadth-first growth of
downward-closed character-distinct monomial sets over the full exponent box,
deduplicated by frozenset.  It shares no search-order tricks or plane
restrictions with the production enumerator, so agreement of the two is a
meaningful check rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groups import GroupSpec
from .hilb import (
    Fan3,
    build_fan,
    chart_of_tripod,
    enumerate_tripods,
    vertices_from_chart,
)
from .mckay import dual_basis_check
from .monomials import Monomial


def brute_force_clusters(group: GroupSpec) -> tuple[frozenset, ...]:
    """All downward-closed character transversals, the slow way."""
    e = group.exponent
    n = group.n
    target = group.order
    box = [m for m in product(range(e), repeat=n)]
    chark = {m: group.char_key_of_monomial(m) for m in box}
    origin = tuple(0 for _ in range(n))

    def addable(state: frozenset) -> list[Monomial]:
        used = {chark[m] for m in state}
        out = []
        for m in box:
            if m in state or chark[m] in used:
                continue
            ok = True
            for i in range(n):
                if m[i]:
                    down = tuple(x - (1 if j == i else 0) for j, x in enumerate(m))
                    if down not in state:
                        ok = False
                        break
            if ok:
                out.append(m)
        return out

    level = {frozenset([origin])}
    for _ in range(target - 1):
        nxt = set()
        for state in level:
            for m in addable(state):
                nxt.add(state | {m})
        level = nxt
    return tuple(sorted(level, key=lambda s: sorted(s)))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class OracleReport:
    group: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


_BRUTE_FORCE_LIMIT = 16   # the naive enumerator is exponential; keep it small


def oracle_check(group: GroupSpec, *, max_order: int = 200) -> OracleReport:
    """Cross-validate the enumeration and fan for one 3D group."""
    checks: list[CheckResult] = []
    tripods = enumerate_tripods(group, max_order=max_order)
    checks.append(
        CheckResult(
            "cluster count equals group order",
            len(tripods) == group.order,
            f"{len(tripods)} clusters, |G| = {group.order}",
        )
    )
    if group.order <= _BRUTE_FORCE_LIMIT:
        brute = brute_force_clusters(group)
        same = {frozenset(t.basis) for t in tripods} == set(brute)
        checks.append(
            CheckResult(
                "brute-force cluster sets agree",
                same,
                f"{len(brute)} brute-force clusters",
            )
        )
    fan = build_fan(group, max_order=max_order)
    total = sum(c.normalized_volume(group) for c in fan.cones)
    checks.append(
        CheckResult(
            "fan coverage volume identity",
            total == group.order,
            f"sum of normalized volumes = {total}",
        )
    )
    mismatches = 0
    nondegenerate = 0
    for cone in fan.cones:
        chart = chart_of_tripod(cone.tripod, group)
        if chart.orientation in ("up", "down"):
            nondegenerate += 1
            if set(vertices_from_chart(chart, group)) != set(cone.rays):
                mismatches += 1
    checks.append(
        CheckResult(
            "chart minor vertices equal cone rays",
            mismatches == 0,
            f"{nondegenerate} nondegenerate charts, {mismatches} mismatches",
        )
    )
    dual = dual_basis_check(fan)
    checks.append(
        CheckResult(
            "dual basis on interior edges",
            dual.ok,
            f"{len(fan.interior_edges())} interior edges, "
            f"{len(dual.violations)} violations",
        )
    )
    return OracleReport(group.spec_string(), tuple(checks))
