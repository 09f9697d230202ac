"""Character labels for the exceptional locus of the fan.

Every interior edge of the fan is a rational curve parametrised by a ratio of
two monomials in one character space; the tautological line bundle of that
character meets the curve in degree one.  Interior vertices carry exceptional
surfaces; regular hexagons (degree-6 del Pezzo surfaces) contribute the
relation e1+e2+e3 = f1+f2 between bundle classes, whose second Chern class is
the dual class of the surface.  Degrees are computed from the bends of the
piecewise-linear minimum functions of the character spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import HexagonRelationError, TieError
from .groups import Character, GroupSpec, LatticePoint
from .hilb import Fan3, StarGeometry, star_geometry
from .intlinalg import cross3, dot, reduce_primitive
from .monomials import (
    CharacterModule,
    Monomial,
    marked_minima,
    minimal_generators,
    module_equal,
    module_product,
    monomial_str,
)


@dataclass(frozen=True)
class EdgeLabel:
    """Ratio and character attached to a fan edge."""

    edge: tuple[LatticePoint, LatticePoint]
    positive: Monomial
    negative: Monomial
    character: Character
    in_minimal_generators: bool   # both monomials generate their space

    def ratio_str(self) -> str:
        return f"{monomial_str(self.positive)} : {monomial_str(self.negative)}"


def edge_label(a: LatticePoint, b: LatticePoint, group: GroupSpec) -> EdgeLabel:
    """Label of the edge spanned by rays a, b: the primitive weight-integral
    vector normal to the wall, split into its positive and negative parts."""
    c = cross3(a.numerators, b.numerators)
    if not any(c):
        raise ValueError(f"rays {a} and {b} are collinear")
    c = reduce_primitive(c)
    w = tuple(group.dual_multiplier(c) * x for x in c)
    lead = next(x for x in w if x)
    if lead < 0:
        w = tuple(-x for x in w)
    pos = tuple(max(x, 0) for x in w)
    neg = tuple(max(-x, 0) for x in w)
    char = group.character_of_monomial(pos)
    assert char == group.character_of_monomial(neg), "label is not character-homogeneous"
    gens = minimal_generators(char, group).generators
    return EdgeLabel((a, b), pos, neg, char, pos in gens and neg in gens)


@dataclass(frozen=True)
class BundleClass:
    """Degrees of one tautological line bundle over the compact curves."""

    character: Character
    degrees: tuple[int, ...]      # indexed like fan.interior_edges()


@dataclass(frozen=True)
class HexagonRelation:
    e_chars: tuple[Character, Character, Character]
    f_chars: tuple[Character, Character]


@dataclass(frozen=True)
class SurfaceRecord:
    """Exceptional surface at an interior vertex: its complete 2D star fan,
    boundary curves with self-intersections, and the hexagon relation data."""

    vertex: int
    point: LatticePoint
    star: StarGeometry
    kind: str                                # "hexagon" | "other"
    boundary_edges: tuple[int, ...]          # fan edge indices, cyclic
    self_intersections: tuple[int, ...]
    relation: Optional[HexagonRelation]
    c2_value: Optional[int]


@dataclass(frozen=True)
class PairRelation:
    """Additive relation L(i) + L(j) = L(i+j), witnessed two ways."""

    i: Character
    j: Character
    total: Character
    bundle_additive: bool
    module_matches: bool


@dataclass(frozen=True)
class TableRow:
    character: Character
    label: str
    role: str                     # "edge-label" | "hexagon-f" | "non-active" | "trivial"
    edges: tuple[int, ...]
    hexagons: tuple[int, ...]
    relations: tuple[tuple[str, str, str], ...]


class McKayAnalysis:
    """Memoised labelling pipeline over one built fan."""

    def __init__(self, fan: Fan3):
        self.fan = fan
        self.group = fan.group
        self._marked: dict[tuple[int, Character], Monomial] = {}
        self._interior: dict[int, tuple[Fraction, ...]] = {}
        self._labels: dict[int, EdgeLabel] = {}
        self._degrees: dict[tuple[Character, int], int] = {}
        self._bundles: dict[Character, BundleClass] = {}
        self._surfaces: dict[int, SurfaceRecord] = {}
        self._pairs: Optional[tuple[PairRelation, ...]] = None

    # -- marked minima ------------------------------------------------------

    def marked(self, cone_index: int, char: Character) -> Monomial:
        key = (cone_index, char)
        m = self._marked.get(key)
        if m is None:
            pt = self._interior.get(cone_index)
            if pt is None:
                pt = self.fan.cones[cone_index].interior_point()
                self._interior[cone_index] = pt
            mins = marked_minima(char, pt, self.group)
            if len(mins) != 1:
                raise TieError(
                    f"character {self.group.character_label(char)} has no unique "
                    f"minimum inside cone {cone_index}",
                    mins,
                )
            m = mins[0]
            self._marked[key] = m
        return m

    # -- edge labels and degrees ---------------------------------------------

    def label(self, edge_index: int) -> EdgeLabel:
        lab = self._labels.get(edge_index)
        if lab is None:
            i, j = self.fan.edges[edge_index].rays
            lab = edge_label(self.fan.vertices[i], self.fan.vertices[j], self.group)
            self._labels[edge_index] = lab
        return lab

    def degree(self, char: Character, edge_index: int) -> int:
        key = (char, edge_index)
        d = self._degrees.get(key)
        if d is None:
            d = curve_degree(char, edge_index, self.fan, self)
            self._degrees[key] = d
        return d

    def bundle(self, char: Character) -> BundleClass:
        b = self._bundles.get(char)
        if b is None:
            degs = tuple(self.degree(char, e) for e in self.fan.interior_edges())
            b = BundleClass(char, degs)
            self._bundles[char] = b
        return b

    # -- surfaces -------------------------------------------------------------

    def surface(self, vertex: int) -> SurfaceRecord:
        s = self._surfaces.get(vertex)
        if s is None:
            s = surface_at_vertex(vertex, self.fan, self)
            self._surfaces[vertex] = s
        return s

    def surfaces(self) -> tuple[SurfaceRecord, ...]:
        return tuple(self.surface(v) for v in self.fan.interior_vertices())

    def hexagons(self) -> tuple[SurfaceRecord, ...]:
        return tuple(s for s in self.surfaces() if s.kind == "hexagon")

    def pair_relations(self) -> tuple[PairRelation, ...]:
        if self._pairs is None:
            self._pairs = pair_relations(self.fan, self)
        return self._pairs


def analysis(fan: Fan3) -> McKayAnalysis:
    cached = getattr(fan, "_mckay", None)
    if cached is None:
        cached = McKayAnalysis(fan)
        object.__setattr__(fan, "_mckay", cached)
    return cached


def curve_degree(
    char: Character,
    edge_index: int,
    fan: Fan3,
    ana: Optional[McKayAnalysis] = None,
) -> int:
    """Degree of the character's bundle on the curve of an interior edge:
    the bend of the character's minimum function across the wall."""
    ana = ana or analysis(fan)
    edge = fan.edges[edge_index]
    if not edge.interior:
        raise ValueError(f"edge {edge.rays} is not interior")
    c1_idx, c2_idx = edge.cones
    m1 = ana.marked(c1_idx, char)
    m2 = ana.marked(c2_idx, char)
    third = []
    for ci in (c1_idx, c2_idx):
        extra = next(v for v in fan.cone_vertices[ci] if v not in edge.rays)
        third.append(fan.vertices[extra].fractions())
    d2 = dot(third[1], m1) - dot(third[1], m2)
    d1 = dot(third[0], m2) - dot(third[0], m1)
    assert d1 == d2, "bend formula is asymmetric across the wall"
    assert d2.denominator == 1, "bend degree is not an integer"
    assert d2 >= 0, "tautological bundles are nef"
    return int(d2)


def bundle_class(char: Character, fan: Fan3) -> BundleClass:
    return analysis(fan).bundle(char)


@dataclass(frozen=True)
class DualBasisReport:
    ok: bool
    violations: tuple[tuple[int, str, int], ...]   # (edge index, char label, degree)


def dual_basis_check(fan: Fan3) -> DualBasisReport:
    """Every interior edge must meet its own label's bundle in degree one."""
    ana = analysis(fan)
    bad = []
    for e in fan.interior_edges():
        lab = ana.label(e)
        deg = ana.degree(lab.character, e)
        if deg != 1:
            bad.append((e, fan.group.character_label(lab.character), deg))
    return DualBasisReport(not bad, tuple(bad))


def surface_at_vertex(
    vertex: int, fan: Fan3, ana: Optional[McKayAnalysis] = None
) -> SurfaceRecord:
    """The exceptional surface over an interior vertex, with its boundary
    cycle anchored at the lowest adjacent vertex index."""
    ana = ana or analysis(fan)
    star = star_geometry(fan, vertex)
    k = len(star.rays)
    shift = star.rays.index(min(star.rays))
    rays = tuple(star.rays[(shift + t) % k] for t in range(k))
    q_rays = tuple(star.quotient_rays[(shift + t) % k] for t in range(k))
    cones = tuple(star.cones[(shift + t) % k] for t in range(k))
    selfints = tuple(star.self_intersections[(shift + t) % k] for t in range(k))
    star = StarGeometry(vertex, rays, cones, q_rays, selfints)
    boundary = tuple(fan.edge_index(vertex, r) for r in rays)
    kind = "hexagon" if star.is_regular_hexagon else "other"
    relation = None
    c2 = None
    if kind == "hexagon":
        record = SurfaceRecord(
            vertex, fan.vertices[vertex], star, kind, boundary, selfints, None, None
        )
        relation = hexagon_relation(record, fan, ana)
        c2 = c2_evaluate(relation.e_chars, relation.f_chars, record, fan, ana)
    return SurfaceRecord(
        vertex, fan.vertices[vertex], star, kind, boundary, selfints, relation, c2
    )


def hexagon_relation(
    surface: SurfaceRecord, fan: Fan3, ana: Optional[McKayAnalysis] = None
) -> HexagonRelation:
    """e-characters from the three opposite-edge pairs of the hexagon, and
    the two f-characters with alternating degree pattern on the boundary."""
    ana = ana or analysis(fan)
    if len(surface.boundary_edges) != 6:
        raise ValueError("hexagon relations need a six-edge star")
    group = fan.group
    labels = [ana.label(e) for e in surface.boundary_edges]
    e_chars = []
    for t in range(3):
        a, b = labels[t].character, labels[t + 3].character
        if a != b:
            raise HexagonRelationError(
                f"opposite boundary edges carry different characters at {surface.point}",
                (group.character_label(a), group.character_label(b)),
            )
        e_chars.append(a)
    odd = (1, 0, 1, 0, 1, 0)
    even = (0, 1, 0, 1, 0, 1)
    starts_one, starts_zero = [], []
    for char in group.characters():
        pattern = tuple(ana.degree(char, e) for e in surface.boundary_edges)
        if pattern == odd:
            starts_one.append(char)
        elif pattern == even:
            starts_zero.append(char)
    if len(starts_one) != 1 or len(starts_zero) != 1:
        raise HexagonRelationError(
            f"hexagon at {surface.point} has {len(starts_one)}+{len(starts_zero)} "
            "alternating-degree candidates",
            tuple(group.character_label(c) for c in starts_one + starts_zero),
        )
    f1, f2 = starts_one[0], starts_zero[0]
    total_e = e_chars[0] + e_chars[1] + e_chars[2]
    if total_e != f1 + f2:
        raise HexagonRelationError(
            f"character sums differ at {surface.point}",
            (group.character_label(total_e), group.character_label(f1 + f2)),
        )
    sum_e = _vector_sum(ana.bundle(c).degrees for c in e_chars)
    sum_f = _vector_sum(ana.bundle(c).degrees for c in (f1, f2))
    if sum_e != sum_f:
        raise HexagonRelationError(
            f"bundle degree sums differ at {surface.point}", ()
        )
    return HexagonRelation(tuple(e_chars), (f1, f2))


def _vector_sum(vectors) -> tuple[int, ...]:
    out = None
    for v in vectors:
        out = v if out is None else tuple(a + b for a, b in zip(out, v))
    return out


def restriction_coefficients(
    char: Character, surface: SurfaceRecord, fan: Fan3, ana: Optional[McKayAnalysis] = None
) -> tuple[int, ...]:
    """Coefficients of the restricted bundle on the surface's boundary
    divisors, from the Cartier data of the minimum function on the star."""
    ana = ana or analysis(fan)
    star = surface.star
    k = len(star.rays)
    m_ref = ana.marked(star.cones[0], char)
    coeffs = []
    for i in range(k):
        ray = fan.vertices[star.rays[i]].fractions()
        left = ana.marked(star.cones[(i - 1) % k], char)
        right = ana.marked(star.cones[i], char)
        phi_left = dot(ray, tuple(a - b for a, b in zip(left, m_ref)))
        phi_right = dot(ray, tuple(a - b for a, b in zip(right, m_ref)))
        assert phi_left == phi_right, "Cartier data disagree on a shared ray"
        assert phi_right.denominator == 1
        coeffs.append(-int(phi_right))
    return tuple(coeffs)


def surface_intersection(
    a_coeffs, b_coeffs, surface: SurfaceRecord
) -> int:
    """Intersection number of two boundary-divisor combinations on the
    surface: self-intersections on the diagonal, 1 for adjacent curves."""
    s = surface.self_intersections
    k = len(s)
    total = sum(a_coeffs[i] * b_coeffs[i] * s[i] for i in range(k))
    for i in range(k):
        j = (i + 1) % k
        total += a_coeffs[i] * b_coeffs[j] + a_coeffs[j] * b_coeffs[i]
    return total


def c2_evaluate(
    e_chars,
    f_chars,
    surface: SurfaceRecord,
    fan: Fan3,
    ana: Optional[McKayAnalysis] = None,
) -> int:
    """sum_{i<j} (e_i . e_j) - sum_{i<j} (f_i . f_j) on the surface; the
    virtual bundle must have vanishing first Chern class globally."""
    ana = ana or analysis(fan)
    sum_e = _vector_sum(ana.bundle(c).degrees for c in e_chars)
    sum_f = _vector_sum(ana.bundle(c).degrees for c in f_chars)
    if sum_e != sum_f:
        raise ValueError("c2 evaluation needs equal bundle degree sums (c1 = 0)")
    e_coeffs = [restriction_coefficients(c, surface, fan, ana) for c in e_chars]
    f_coeffs = [restriction_coefficients(c, surface, fan, ana) for c in f_chars]
    total = 0
    for i in range(len(e_coeffs)):
        for j in range(i + 1, len(e_coeffs)):
            total += surface_intersection(e_coeffs[i], e_coeffs[j], surface)
    for i in range(len(f_coeffs)):
        for j in range(i + 1, len(f_coeffs)):
            total -= surface_intersection(f_coeffs[i], f_coeffs[j], surface)
    return total


def pair_relations(fan: Fan3, ana: Optional[McKayAnalysis] = None) -> tuple[PairRelation, ...]:
    """All unordered character pairs whose bundle classes add exactly and
    whose module product equals the minimal generators of the sum; both
    witnesses are recorded on each relation."""
    ana = ana or analysis(fan)
    group = fan.group
    chars = group.characters()
    out = []
    for i in range(len(chars)):
        for j in range(i, len(chars)):
            a, b = chars[i], chars[j]
            total = a + b
            bundle_ok = tuple(
                x + y for x, y in zip(ana.bundle(a).degrees, ana.bundle(b).degrees)
            ) == ana.bundle(total).degrees
            module_ok = module_equal(
                module_product([a, b], group), minimal_generators(total, group)
            )
            if bundle_ok and module_ok:
                out.append(PairRelation(a, b, total, bundle_ok, module_ok))
    return tuple(out)


def mckay_table(fan: Fan3) -> tuple[TableRow, ...]:
    """One row per character: either it labels curves, or it is an
    f-character of some hexagon, or it only enters relations (non-active)."""
    ana = analysis(fan)
    group = fan.group
    hexes = ana.hexagons()
    pairs = ana.pair_relations()
    rows = []
    for char in group.characters():
        edges = tuple(
            e for e in fan.interior_edges() if ana.label(e).character == char
        )
        hexagons = tuple(
            s.vertex for s in hexes if s.relation and char in s.relation.f_chars
        )
        rels = tuple(
            (
                group.character_label(p.i),
                group.character_label(p.j),
                group.character_label(p.total),
            )
            for p in pairs
            if char in (p.i, p.j, p.total) and not (p.i.is_trivial or p.j.is_trivial)
        )
        if char.is_trivial:
            role = "trivial"
        elif edges:
            role = "edge-label"
        elif hexagons:
            role = "hexagon-f"
        else:
            role = "non-active"
        rows.append(
            TableRow(char, group.character_label(char), role, edges, hexagons, rels)
        )
    return tuple(rows)
