"""Aggregated verification and the JSON views of every result object."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BoundaryWallError
from .groups import GroupSpec, junior_elements, stringy_euler
from .hilb import (
    Fan3,
    build_fan,
    chart_of_tripod,
    hexagon_census,
    vertices_from_chart,
    wall_cross,
)
from .mckay import analysis, c2_evaluate, dual_basis_check, mckay_table
from .monomials import module_equal, module_product
from .oracle import CheckResult
from .surface import (
    SurfaceResolution,
    cluster_basis_check,
    dual_degrees_2d,
    resolve_surface,
    tripods_2d,
)

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class VerificationReport:
    group: str
    checks: tuple[CheckResult, ...]
    warnings: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.group,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "warnings": list(self.warnings),
        }


def verify_all(group: GroupSpec, *, max_order: int = 200) -> VerificationReport:
    """Run every invariant family on one group and report pass/fail each."""
    if group.n == 2:
        return _verify_surface(group)
    checks: list[CheckResult] = []
    warnings: list[str] = []
    sl = group.is_gorenstein()
    se = stringy_euler(group)
    if se.flagged:
        warnings.append(
            "action fixes positive-dimensional loci; stratified count not implemented"
        )
    if group.has_quasireflection():
        warnings.append("group contains quasireflections; crepancy claims suppressed")

    fan = build_fan(group, max_order=max_order)
    warnings.extend(fan.warnings)
    checks.append(
        CheckResult(
            "cluster count",
            len(fan.cones) == group.order,
            f"{len(fan.cones)} torus-fixed clusters, |G| = {group.order}",
        )
    )
    total = sum(c.normalized_volume(group) for c in fan.cones)
    checks.append(
        CheckResult("coverage", total == group.order, f"normalized volume {total}")
    )
    basic = all(c.normalized_volume(group) == 1 for c in fan.cones)
    checks.append(CheckResult("basicness", basic, "all cones unimodular for the lattice"))
    if sl:
        juniors = {group.point_of_element(el) for el in junior_elements(group)}
        rays_ok = all(
            fan.vertex_is_coordinate(i) or fan.vertices[i] in juniors
            for i in range(len(fan.vertices))
        )
        checks.append(
            CheckResult("crepancy", rays_ok, "every ray is junior or a coordinate vector")
        )
    ana = analysis(fan)

    mismatches = 0
    nondeg = 0
    for cone in fan.cones:
        chart = chart_of_tripod(cone.tripod, group)
        if chart.orientation in ("up", "down"):
            nondeg += 1
            if set(vertices_from_chart(chart, group)) != set(cone.rays):
                mismatches += 1
    checks.append(
        CheckResult(
            "chart agreement",
            mismatches == 0,
            f"{nondeg} nondegenerate charts match their cones",
        )
    )
    dual = dual_basis_check(fan)
    checks.append(
        CheckResult(
            "dual basis",
            dual.ok,
            f"{len(fan.interior_edges())} interior edges at degree one",
        )
    )
    interior = fan.interior_edges()
    nef_ok = True
    totals = [0] * len(interior)
    for char in group.characters():
        degs = ana.bundle(char).degrees
        if any(d < 0 for d in degs):
            nef_ok = False
        if not char.is_trivial:
            totals = [t + d for t, d in zip(totals, degs)]
    checks.append(CheckResult("nefness", nef_ok, "all bundle degrees nonnegative"))
    checks.append(
        CheckResult(
            "positivity",
            all(t > 0 for t in totals),
            "total nontrivial degree positive on every compact curve",
        )
    )
    hex_ok = True
    hex_detail = []
    surfaces = ana.surfaces()
    for s in ana.hexagons():
        rel = s.relation
        degrees_zero = _sums_equal(
            [ana.bundle(c).degrees for c in rel.e_chars],
            [ana.bundle(c).degrees for c in rel.f_chars],
        )
        module_ok = module_equal(
            module_product(rel.e_chars, group), module_product(rel.f_chars, group)
        )
        values = [
            c2_evaluate(rel.e_chars, rel.f_chars, other, fan, ana) for other in surfaces
        ]
        dual_ok = sorted(values) == [0] * (len(values) - 1) + [1] and (
            values[[t.vertex for t in surfaces].index(s.vertex)] == 1
        )
        if not (degrees_zero and module_ok and dual_ok):
            hex_ok = False
        hex_detail.append(str(s.point))
    checks.append(
        CheckResult(
            "hexagon relations",
            hex_ok,
            f"{len(hex_detail)} hexagons: {', '.join(hex_detail) or 'none'}",
        )
    )
    census = hexagon_census(fan)
    checks.append(
        CheckResult(
            "hexagon census",
            set(census) == {s.vertex for s in ana.hexagons()},
            f"{len(census)} regular hexagons",
        )
    )
    involution_ok = True
    crossings = 0
    for cone in fan.cones:
        for i in range(3):
            wall = tuple(sorted((cone.rays[i], cone.rays[(i + 1) % 3])))
            try:
                other = wall_cross(cone.tripod, wall, group)
            except BoundaryWallError:
                continue
            crossings += 1
            if wall_cross(other, wall, group) != cone.tripod:
                involution_ok = False
    checks.append(
        CheckResult("wall crossing", involution_ok, f"{crossings} interior crossings involutive")
    )
    pairs = ana.pair_relations()
    checks.append(
        CheckResult(
            "module-product witnesses",
            all(p.bundle_additive and p.module_matches for p in pairs),
            f"{len(pairs)} additive pair relations",
        )
    )
    return VerificationReport(group.spec_string(), tuple(checks), tuple(warnings))


def _sums_equal(e_vectors, f_vectors) -> bool:
    total_e = [sum(col) for col in zip(*e_vectors)] if e_vectors else []
    total_f = [sum(col) for col in zip(*f_vectors)] if f_vectors else []
    return total_e == total_f


def _verify_surface(group: GroupSpec) -> VerificationReport:
    (r, weights) = group.generators[0]
    q = weights[1] if weights[0] == 1 else None
    if len(group.generators) != 1 or q is None:
        raise ValueError("surface verification needs a cyclic group 1/r(1,q)")
    checks: list[CheckResult] = []
    res = resolve_surface(r, q)
    checks.append(
        CheckResult(
            "chain length",
            len(res.curves) == len(res.continued_fraction.terms),
            f"{len(res.curves)} curves, terms {list(res.continued_fraction.terms)}",
        )
    )
    mat = dual_degrees_2d(r, q)
    identity = all(
        mat[i][j] == (1 if i == j else 0) for i in range(len(mat)) for j in range(len(mat))
    )
    checks.append(CheckResult("dual degrees", identity, "identity on curve characters"))
    pods = tripods_2d(r, q)
    checks.append(
        CheckResult(
            "cluster count",
            len(pods) == len(res.charts),
            f"{len(pods)} clusters, {len(res.charts)} charts",
        )
    )
    bases = {tuple(sorted(cluster_basis_check(c, r, q))) for c in res.charts}
    pods_sets = {tuple(sorted(t.basis)) for t in pods}
    checks.append(
        CheckResult("chart bases", bases == pods_sets, "chart bases match the clusters")
    )
    warnings = []
    if not group.is_gorenstein():
        warnings.append("non-Gorenstein surface group: minimal resolution, not crepant")
    return VerificationReport(group.spec_string(), tuple(checks), tuple(warnings))


# -- JSON views ----------------------------------------------------------------


def _point_json(p) -> list:
    return [*p.numerators, p.denominator]


def fan_to_dict(fan: Fan3) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "group": fan.group.spec_string(),
        "order": fan.group.order,
        "vertices": [_point_json(v) for v in fan.vertices],
        "cones": [list(tri) for tri in fan.cone_vertices],
        "edges": [
            {"rays": list(e.rays), "interior": e.interior} for e in fan.edges
        ],
        "warnings": list(fan.warnings),
    }


def mckay_to_dict(fan: Fan3) -> dict:
    ana = analysis(fan)
    group = fan.group
    out = fan_to_dict(fan)
    out["edges"] = [
        {
            "rays": list(e.rays),
            "interior": e.interior,
            **(
                {
                    "character": group.character_label(ana.label(i).character),
                    "ratio": {
                        "pos": list(ana.label(i).positive),
                        "neg": list(ana.label(i).negative),
                    },
                }
                if e.interior
                else {}
            ),
        }
        for i, e in enumerate(fan.edges)
    ]
    out["surfaces"] = [
        {
            "vertex": s.vertex,
            "kind": s.kind,
            "self_intersections": list(s.self_intersections),
            "e_chars": [group.character_label(c) for c in s.relation.e_chars]
            if s.relation
            else [],
            "f_chars": [group.character_label(c) for c in s.relation.f_chars]
            if s.relation
            else [],
            "c2": s.c2_value,
        }
        for s in ana.surfaces()
    ]
    out["bundles"] = [
        {
            "character": group.character_label(char),
            "degrees": list(ana.bundle(char).degrees),
        }
        for char in group.characters()
    ]
    out["table"] = [
        {
            "character": row.label,
            "role": row.role,
            "edges": list(row.edges),
            "hexagons": list(row.hexagons),
            "relations": [list(t) for t in row.relations],
        }
        for row in mckay_table(fan)
    ]
    return out


def surface_to_dict(res: SurfaceResolution) -> dict:
    group = GroupSpec(2, [(res.r, (1, res.q))])
    return {
        "schema_version": SCHEMA_VERSION,
        "group": f"1/{res.r}(1,{res.q})",
        "terms": list(res.continued_fraction.terms),
        "boundary": [_point_json(p) for p in res.boundary_points],
        "curves": [
            {
                "ray": _point_json(c.ray),
                "self_intersection": c.self_intersection,
                "ratio": {"pos": list(c.ratio[0]), "neg": list(c.ratio[1])},
                "character": group.character_label(c.character),
            }
            for c in res.curves
        ],
        "charts": [
            {
                "equations": [
                    {"lhs": list(l), "rhs": list(rr), "coeff": c}
                    for l, rr, c in chart.equations
                ]
            }
            for chart in res.charts
        ],
        "dual_degrees": [list(row) for row in dual_degrees_2d(res.r, res.q)],
    }


def info_to_dict(group: GroupSpec) -> dict:
    se = stringy_euler(group)
    d = {
        "schema_version": SCHEMA_VERSION,
        "group": group.spec_string(),
        "dimension": group.n,
        "order": group.order,
        "exponent": group.exponent,
        "gorenstein": group.is_gorenstein(),
        "only_origin_fixed": se.only_origin_fixed,
        "stringy_euler": se.count,
        "stringy_euler_flagged": se.flagged,
        "quasireflections": group.has_quasireflection(),
    }
    if group.is_gorenstein():
        d["junior_count"] = len(junior_elements(group))
    return d
