"""Torus-fixed clusters, their weight cones, and the fan they assemble into.

A torus-fixed cluster of a diagonal abelian group is a downward-closed set of
|G| monomials hitting every character exactly once (a staircase transversal;
in 3 variables the shape is a tripod living in the three coordinate planes).
Each tripod owns the cone of weight vectors for which its monomials are the
minima of their character spaces; the cones tile the positive orthant and,
for subgroups of SL(3,C), triangulate the junior simplex into basic cones.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import clipping
from .errors import (
    BoundaryWallError,
    ChartError,
    ConeError,
    FanVerificationError,
    OrderLimitError,
)
from .groups import Character, GroupSpec, LatticePoint
from .intlinalg import content, cross3, det, dot, reduce_primitive
from .monomials import Monomial, minimal_generators, monomial_str

_AXES3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _glex(m: Monomial) -> tuple:
    return (sum(m), m)


@dataclass(frozen=True)
class Tripod:
    """Monomial basis of one torus-fixed cluster, sorted by (degree, lex)."""

    basis: tuple[Monomial, ...]

    def chosen_by_key(self, group: GroupSpec) -> dict[tuple[int, ...], Monomial]:
        return {group.char_key_of_monomial(m): m for m in self.basis}

    def chosen(self, group: GroupSpec) -> dict[Character, Monomial]:
        return {group.character_of_monomial(m): m for m in self.basis}

    def __str__(self) -> str:
        return "{" + ", ".join(monomial_str(m) for m in self.basis) + "}"


def make_tripod(monomials: Iterable[Monomial], group: GroupSpec) -> Tripod:
    """Validate downward-closedness, the character transversal property and
    the exponent box, then freeze the basis."""
    basis = tuple(sorted(set(monomials), key=_glex))
    if len(basis) != group.order:
        raise ValueError(f"cluster basis has {len(basis)} monomials, need {group.order}")
    cur = set(basis)
    e = group.exponent
    keys = set()
    for m in basis:
        if any(x >= e for x in m):
            raise ValueError(f"basis monomial {m} exceeds the exponent box")
        for i, x in enumerate(m):
            if x:
                down = tuple(y - (1 if j == i else 0) for j, y in enumerate(m))
                if down not in cur:
                    raise ValueError(f"{m} in basis but its divisor {down} is not")
        k = group.char_key_of_monomial(m)
        if k in keys:
            raise ValueError(f"character of {m} appears twice in the basis")
        keys.add(k)
    return Tripod(basis)


def enumerate_tripods(
    group: GroupSpec,
    n: Optional[int] = None,
    *,
    max_order: int = 200,
    workers: int = 1,
) -> tuple[Tripod, ...]:
    """All downward-closed monomial transversals of the character group.

    Depth-first insertion in graded-lex order with character pruning; every
    staircase is produced exactly once (its graded-lex sort is the unique
    admissible insertion order).  With ``workers > 1`` the branches below the
    first two insertions run on a thread pool; the result is merged and
    sorted, so it is identical for any worker count.
    """
    if n is not None and n != group.n:
        raise ValueError(f"group has dimension {group.n}, not {n}")
    if group.order > max_order:
        raise OrderLimitError(
            f"|G| = {group.order} exceeds the enumeration bound {max_order}"
        )
    dim = group.n
    e = group.exponent
    target = group.order
    # inside SL the product x_1...x_n shares the trivial character with 1, so
    # no basis monomial has all exponents positive: search the planes only
    planes_only = group.is_gorenstein()
    char_key = group.char_key_of_monomial
    key_cache: dict[Monomial, tuple[int, ...]] = {}

    def key_of(m: Monomial) -> tuple[int, ...]:
        k = key_cache.get(m)
        if k is None:
            k = char_key(m)
            key_cache[m] = k
        return k

    def neighbours(m: Monomial):
        for i in range(dim):
            if m[i] + 1 >= e:
                continue
            up = tuple(x + (1 if j == i else 0) for j, x in enumerate(m))
            if planes_only and all(up):
                continue
            yield up

    def addable_after(cur: set[Monomial], m: Monomial) -> list[Monomial]:
        out = []
        for up in neighbours(m):
            ok = True
            for i, x in enumerate(up):
                if x:
                    down = tuple(y - (1 if j == i else 0) for j, y in enumerate(up))
                    if down not in cur:
                        ok = False
                        break
            if ok:
                out.append(up)
        return out

    origin: Monomial = tuple(0 for _ in range(dim))
    results: list[tuple[Monomial, ...]] = []

    def dfs(cur: set[Monomial], used: set, addable: set[Monomial], last: tuple):
        if len(cur) == target:
            results.append(tuple(sorted(cur, key=_glex)))
            return
        for m in sorted(addable, key=_glex):
            k = _glex(m)
            if k <= last:
                continue
            if key_of(m) in used:
                continue
            cur.add(m)
            used.add(key_of(m))
            new = [u for u in addable_after(cur, m) if u not in addable]
            addable.discard(m)
            addable.update(new)
            dfs(cur, used, addable, k)
            addable.difference_update(new)
            addable.add(m)
            used.discard(key_of(m))
            cur.discard(m)

    def seeds(depth: int):
        """Partial states after `depth` insertions, for work partitioning."""
        states = [({origin}, {key_of(origin)}, set(addable_after({origin}, origin)), _glex(origin))]
        for _ in range(depth):
            nxt = []
            for cur, used, addable, last in states:
                if len(cur) == target:
                    results.append(tuple(sorted(cur, key=_glex)))
                    continue
                for m in sorted(addable, key=_glex):
                    if _glex(m) <= last or key_of(m) in used:
                        continue
                    cur2 = set(cur)
                    cur2.add(m)
                    used2 = set(used)
                    used2.add(key_of(m))
                    addable2 = set(addable)
                    addable2.discard(m)
                    addable2.update(addable_after(cur2, m))
                    nxt.append((cur2, used2, addable2, _glex(m)))
            states = nxt
        return states

    if target == 1:
        return (Tripod((origin,)),)

    if workers <= 1:
        dfs({origin}, {key_of(origin)}, set(addable_after({origin}, origin)), _glex(origin))
    else:
        branches = seeds(2)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            def run(state):
                local: list[tuple[Monomial, ...]] = []

                def dfs_local(cur, used, addable, last):
                    if len(cur) == target:
                        local.append(tuple(sorted(cur, key=_glex)))
                        return
                    for m in sorted(addable, key=_glex):
                        k = _glex(m)
                        if k <= last or key_of(m) in used:
                            continue
                        cur.add(m)
                        used.add(key_of(m))
                        new = [u for u in addable_after(cur, m) if u not in addable]
                        addable.discard(m)
                        addable.update(new)
                        dfs_local(cur, used, addable, k)
                        addable.difference_update(new)
                        addable.add(m)
                        used.discard(key_of(m))
                        cur.discard(m)

                dfs_local(*state)
                return local

            for part in pool.map(run, branches):
                results.extend(part)

    uniq = sorted(set(results))
    return tuple(Tripod(b) for b in uniq)


@dataclass(frozen=True)
class Cone3:
    """Simplicial weight cone of one tripod, by its primitive lattice rays."""

    rays: tuple[LatticePoint, LatticePoint, LatticePoint]
    tripod: Tripod

    def normalized_volume(self, group: GroupSpec) -> Fraction:
        return abs(det([r.fractions() for r in self.rays])) * group.order

    def interior_point(self) -> tuple[Fraction, ...]:
        fs = [r.fractions() for r in self.rays]
        return tuple(sum(col, Fraction(0)) for col in zip(*fs))


def cone_of_tripod(tripod: Tripod, group: GroupSpec) -> Cone3:
    """Closure of the weights for which every basis monomial is the minimum
    of its character space; exact half-space intersection in the section
    plane sum(v) = 1 of the positive octant."""
    if group.n != 3:
        raise ValueError("weight cones are computed in dimension 3")
    chosen = tripod.chosen(group)
    directions: set[tuple[int, ...]] = set()
    for char, picked in chosen.items():
        for m in minimal_generators(char, group).generators:
            if m != picked:
                directions.add(tuple(a - b for a, b in zip(m, picked)))
    poly = clipping.section_triangle()
    for d in sorted(directions):
        poly = clipping.clip(poly, clipping.affine_of_direction(d))
        if not poly:
            break
    poly = clipping.strip_collinear(poly)
    if len(poly) < 3 or clipping.area2(poly) == 0:
        raise ConeError(
            f"tripod {tripod} has a weight cone of dimension < 3 "
            f"({len(poly)} section vertices)"
        )
    if len(poly) > 3:
        raise ConeError(
            f"tripod {tripod} has a non-simplicial weight cone "
            f"({len(poly)} section vertices)"
        )
    rays = []
    for x, y in poly:
        v = (1 - x - y, x, y)
        den = 1
        for f in v:
            den = den * f.denominator // _gcd(den, f.denominator)
        ints = tuple(int(f * den) for f in v)
        rays.append(group.primitive_ray(ints))
    return Cone3(tuple(sorted(rays)), tripod)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class FanEdge:
    rays: tuple[int, int]       # vertex indices, sorted
    cones: tuple[int, ...]      # adjacent cone indices
    interior: bool


@dataclass(frozen=True)
class Fan3:
    """The assembled fan with its vertex/edge incidence structure."""

    group: GroupSpec
    cones: tuple[Cone3, ...]
    vertices: tuple[LatticePoint, ...]
    cone_vertices: tuple[tuple[int, int, int], ...]
    edges: tuple[FanEdge, ...]
    warnings: tuple[str, ...]

    @property
    def tripods(self) -> tuple[Tripod, ...]:
        return tuple(c.tripod for c in self.cones)

    def interior_edges(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.edges) if e.interior)

    def edge_index(self, i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        return self._edge_lookup()[key]

    def _edge_lookup(self) -> dict[tuple[int, int], int]:
        cache = getattr(self, "_edge_map", None)
        if cache is None:
            cache = {e.rays: k for k, e in enumerate(self.edges)}
            object.__setattr__(self, "_edge_map", cache)
        return cache

    def star(self, vertex: int) -> tuple[int, ...]:
        return tuple(
            i for i, tri in enumerate(self.cone_vertices) if vertex in tri
        )

    def vertex_is_interior(self, vertex: int) -> bool:
        return all(x > 0 for x in self.vertices[vertex].numerators)

    def interior_vertices(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(len(self.vertices)) if self.vertex_is_interior(i)
        )

    def vertex_is_coordinate(self, vertex: int) -> bool:
        p = self.vertices[vertex]
        return p.denominator == 1 and sorted(p.numerators) == [0, 0, 1]


def build_fan(group: GroupSpec, *, max_order: int = 200, workers: int = 1) -> Fan3:
    """Enumerate tripods, take their cones and verify the assembly.

    For SL groups every failed check aborts with a structured report; for
    experimental non-SL groups the failures are downgraded to warnings.
    """
    tripods = enumerate_tripods(group, max_order=max_order, workers=workers)
    cones = [cone_of_tripod(t, group) for t in tripods]
    order = sorted(range(len(cones)), key=lambda i: tuple(r.fractions() for r in cones[i].rays))
    cones = [cones[i] for i in order]

    vertices = sorted({r for c in cones for r in c.rays}, key=lambda p: p.fractions())
    vindex = {p: i for i, p in enumerate(vertices)}
    cone_vertices = [tuple(sorted(vindex[r] for r in c.rays)) for c in cones]

    edge_cones: dict[tuple[int, int], list[int]] = {}
    for ci, tri in enumerate(cone_vertices):
        for a in range(3):
            for b in range(a + 1, 3):
                edge_cones.setdefault((tri[a], tri[b]), []).append(ci)
    edges = tuple(
        FanEdge(rays, tuple(cs), len(cs) == 2)
        for rays, cs in sorted(edge_cones.items())
    )

    sl = group.is_gorenstein()
    failures: list[str] = []

    if len(cones) != group.order:
        failures.append(f"cone count {len(cones)} != |G| = {group.order}")
    for ci, cone in enumerate(cones):
        if cone.normalized_volume(group) != 1:
            failures.append(f"cone {cone_vertices[ci]} is not basic")
    total = sum(abs(det([r.fractions() for r in c.rays])) for c in cones)
    if total != 1:
        failures.append(f"covered volume {total} != full octant")
    for vi, p in enumerate(vertices):
        unit = p.denominator == 1 and sorted(p.numerators) == [0, 0, 1]
        if not unit and p.age() != 1:
            failures.append(f"ray {p} is neither a coordinate vector nor junior")
    for rays, cs in edge_cones.items():
        if len(cs) > 2:
            failures.append(f"edge {rays} belongs to {len(cs)} cones")
        elif len(cs) == 1:
            a, b = (vertices[k].numerators for k in rays)
            if not any(x == 0 and y == 0 for x, y in zip(a, b)):
                failures.append(f"edge {rays} is unmatched but not on the boundary")
    failures.extend(_face_to_face_failures(cones, cone_vertices))

    if failures and sl:
        raise FanVerificationError(
            f"fan verification failed for {group.spec_string()}", tuple(failures)
        )
    return Fan3(
        group=group,
        cones=tuple(cones),
        vertices=tuple(vertices),
        cone_vertices=tuple(cone_vertices),
        edges=edges,
        warnings=tuple(failures),
    )


def _section_triangle_of(cone: Cone3) -> list[clipping.Point]:
    pts = []
    for r in cone.rays:
        f = r.fractions()
        s = sum(f)
        pts.append((f[1] / s, f[2] / s))
    return clipping.triangle_of_points(pts)


def _face_to_face_failures(cones, cone_vertices) -> list[str]:
    tris = [_section_triangle_of(c) for c in cones]
    boxes = [
        (
            min(p[0] for p in t), max(p[0] for p in t),
            min(p[1] for p in t), max(p[1] for p in t),
        )
        for t in tris
    ]
    out = []
    for i in range(len(tris)):
        for j in range(i + 1, len(tris)):
            bi, bj = boxes[i], boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            inter = clipping.strip_collinear(clipping.intersect_convex(tris[i], tris[j]))
            if not inter:
                continue
            if len(inter) >= 3 and clipping.area2(inter) != 0:
                out.append(f"cones {cone_vertices[i]} and {cone_vertices[j]} overlap")
                continue
            shared = set(cone_vertices[i]) & set(cone_vertices[j])
            if len(inter) == 1:
                if len(shared) < 1 or inter[0] not in tris[i] or inter[0] not in tris[j]:
                    out.append(
                        f"cones {cone_vertices[i]} and {cone_vertices[j]} touch at a non-vertex"
                    )
            elif len(inter) == 2:
                if not (set(inter) <= set(tris[i]) and set(inter) <= set(tris[j]) and len(shared) == 2):
                    out.append(
                        f"cones {cone_vertices[i]} and {cone_vertices[j]} meet in a partial edge"
                    )
    return out


# -- charts -----------------------------------------------------------------


@dataclass(frozen=True)
class ChartEquation:
    lhs: Monomial
    rhs: Monomial
    coeff: tuple[int, int, int]   # exponents of the deformation coordinates
    letters: tuple[str, str, str]

    def coeff_str(self) -> str:
        s = "".join(
            l if e == 1 else (f"{l}^{e}" if e else "")
            for l, e in zip(self.letters, self.coeff)
        )
        return s or "1"

    def __str__(self) -> str:
        rhs = monomial_str(self.rhs) if any(self.rhs) else ""
        return f"{monomial_str(self.lhs)} = {self.coeff_str()} {rhs}".strip()


@dataclass(frozen=True)
class Chart:
    """Cluster-ideal presentation attached to one tripod."""

    orientation: str                       # "up" | "down" | "degenerate"
    params: Optional[tuple[int, int, int, int, int, int]]
    equations: tuple[ChartEquation, ...]
    tripod: Tripod


_UP_LETTERS = ("λ", "μ", "ν")      # lambda mu nu
_DOWN_LETTERS = ("α", "β", "γ")    # alpha beta gamma


def ideal_generators(tripod: Tripod, group: GroupSpec) -> tuple[Monomial, ...]:
    """Minimal monomial generators of the cluster ideal: the staircase corners
    just outside the basis."""
    cur = set(tripod.basis)
    n = group.n
    cands: set[Monomial] = set()
    for m in cur:
        for i in range(n):
            up = tuple(x + (1 if j == i else 0) for j, x in enumerate(m))
            if up in cur:
                continue
            ok = True
            for k, x in enumerate(up):
                if x:
                    down = tuple(y - (1 if j == k else 0) for j, y in enumerate(up))
                    if down not in cur:
                        ok = False
                        break
            if ok:
                cands.add(up)
    return tuple(sorted(cands, key=_glex))


def _triant_profile(basis: set[Monomial], p: int, q: int) -> Optional[tuple[int, int, int, int]]:
    """(W0, W1, split, top) of the triant in the (p, q) coordinate plane:
    rows indexed by the q-exponent, width = max p-exponent; None unless the
    widths take exactly two values W0 > W1 with the break after row `split`."""
    def width(j: int) -> int:
        w = -1
        m = [0, 0, 0]
        m[q] = j
        i = 0
        while True:
            m[p] = i
            if tuple(m) in basis:
                w = i
                i += 1
            else:
                break
        return w

    top = -1
    widths = []
    j = 0
    while True:
        w = width(j)
        if w < 0:
            break
        widths.append(w)
        top = j
        j += 1
    distinct = sorted(set(widths), reverse=True)
    if len(distinct) != 2:
        return None
    w0, w1 = distinct
    split = max(j for j, w in enumerate(widths) if w == w0)
    # the profile must be a clean step: full rows then narrow rows
    if widths != [w0] * (split + 1) + [w1] * (top - split):
        return None
    return (w0, w1, split, top)


def chart_of_tripod(tripod: Tripod, group: GroupSpec) -> Chart:
    """The seven-equation presentation of the cluster ideal, classified as an
    upward or downward patch when the staircase is nondegenerate, otherwise
    returned in reduced degenerate form."""
    if group.n != 3:
        raise ValueError("charts are a dimension-3 construction")
    basis = set(tripod.basis)
    chosen = tripod.chosen_by_key(group)

    def partner(m: Monomial) -> Monomial:
        return chosen[group.char_key_of_monomial(m)]

    cone = cone_of_tripod(tripod, group)
    rays = cone.rays

    def tags_from(ray_triple, lhs: Monomial, rhs: Monomial) -> tuple[int, int, int]:
        diff = tuple(a - b for a, b in zip(lhs, rhs))
        out = []
        for r in ray_triple:
            val = sum(Fraction(x, r.denominator) * d for x, d in zip(r.numerators, diff))
            if val.denominator != 1 or val < 0:
                raise ChartError(f"non-integral deformation tag for {lhs} -> {rhs}")
            out.append(int(val))
        return tuple(out)

    prof_xy = _triant_profile(basis, 0, 1)
    prof_yz = _triant_profile(basis, 1, 2)
    prof_zx = _triant_profile(basis, 2, 0)

    params = None
    orientation = "degenerate"
    if prof_xy and prof_yz and prof_zx:
        up = (
            prof_xy[0] == prof_xy[1] + prof_zx[2]
            and prof_yz[0] == prof_yz[1] + prof_xy[2]
            and prof_zx[0] == prof_zx[1] + prof_yz[2]
        )
        down = (
            prof_xy[0] == prof_xy[1] + prof_zx[2] + 1
            and prof_yz[0] == prof_yz[1] + prof_xy[2] + 1
            and prof_zx[0] == prof_zx[1] + prof_yz[2] + 1
        )
        if up:
            orientation = "up"
            a, e = prof_xy[1], prof_xy[2]
            b, f = prof_yz[1], prof_yz[2]
            c, d = prof_zx[1], prof_zx[2]
            params = (a, b, c, d, e, f)
        elif down:
            orientation = "down"
            a, e = prof_xy[1] + 1, prof_xy[2] + 1
            b, f = prof_yz[1] + 1, prof_yz[2] + 1
            c, d = prof_zx[1] + 1, prof_zx[2] + 1
            params = (a, b, c, d, e, f)

    if orientation == "up":
        a, b, c, d, e, f = params
        lhss = [
            (a + d + 1, 0, 0), (0, b + e + 1, 0), (0, 0, c + f + 1),
            (0, b + 1, f + 1), (d + 1, 0, c + 1), (a + 1, e + 1, 0),
            (1, 1, 1),
        ]
        coeffs = [
            (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (0, 1, 1), (1, 0, 1), (1, 1, 0),
            (1, 1, 1),
        ]
        letters = _UP_LETTERS
    elif orientation == "down":
        a, b, c, d, e, f = params
        lhss = [
            (a + d, 0, 0), (0, b + e, 0), (0, 0, c + f),
            (0, b, f), (d, 0, c), (a, e, 0),
            (1, 1, 1),
        ]
        coeffs = [
            (0, 1, 1), (1, 0, 1), (1, 1, 0),
            (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (1, 1, 1),
        ]
        letters = _DOWN_LETTERS
    else:
        lhss = list(ideal_generators(tripod, group))
        coeffs = [tags_from(rays, lhs, partner(lhs)) for lhs in lhss]
        letters = _UP_LETTERS

    equations = []
    for lhs, coeff in zip(lhss, coeffs):
        rhs = partner(lhs)
        equations.append(ChartEquation(lhs, rhs, coeff, letters))
    chart = Chart(orientation, params, tuple(equations), tripod)
    if orientation in ("up", "down"):
        # the declared coefficients must agree with the pairings against the
        # chart's own minor vertices in (P, Q, R) order
        pqr = vertices_from_chart(chart, group)
        for eq in equations:
            if tags_from(pqr, eq.lhs, eq.rhs) != eq.coeff:
                raise ChartError(f"deformation tags disagree with the cone for {tripod}")
        if set(pqr) != set(rays):
            raise ChartError(f"chart vertices disagree with the weight cone for {tripod}")
    return chart


def vertices_from_chart(chart: Chart, group: GroupSpec) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
    """The three cone rays of an up/down chart from the 2x2 minors of its
    exponent matrix (adjugate rows over the determinant)."""
    if chart.orientation == "up":
        rows = [
            tuple(a - b for a, b in zip(eq.lhs, eq.rhs)) for eq in chart.equations[:3]
        ]
    elif chart.orientation == "down":
        rows = [
            tuple(b - a for a, b in zip(eq.lhs, eq.rhs)) for eq in chart.equations[3:6]
        ]
        rows = [tuple(-x for x in row) for row in rows]
    else:
        raise ChartError("vertex minors are defined for nondegenerate charts only")
    d = det(rows)
    if d == 0:
        raise ChartError("singular exponent matrix")
    out = []
    for i in range(3):
        minor = cross3(rows[(i + 1) % 3], rows[(i + 2) % 3])
        nums = minor if d > 0 else tuple(-x for x in minor)
        point = group.point(nums, abs(d))
        out.append(point)
    return tuple(out)


def wall_cross(tripod: Tripod, wall, group: GroupSpec) -> Tripod:
    """Cluster on the other side of an interior wall of this tripod's cone.

    The tie set of every character at the wall midpoint is re-marked away
    from the departing third ray; an involution by construction.
    """
    cone = cone_of_tripod(tripod, group)
    wall = tuple(sorted(wall))
    rays = cone.rays
    if not set(wall) <= set(rays):
        raise ValueError("the wall is not a face of the tripod's cone")
    third = next(r for r in rays if r not in wall)
    a, b = wall
    normal = cross3(a.numerators, b.numerators)
    if all(x >= 0 for x in normal) or all(x <= 0 for x in normal):
        raise BoundaryWallError(f"wall {a}, {b} lies on the orthant boundary")
    mid = tuple(x + y for x, y in zip(a.fractions(), b.fractions()))
    third_f = third.fractions()
    chosen = tripod.chosen(group)
    new_basis = []
    for char, current in chosen.items():
        gens = minimal_generators(char, group).generators
        vals = [dot(mid, m) for m in gens]
        best = min(vals)
        ties = [m for m, v in zip(gens, vals) if v == best]
        if len(ties) == 1:
            new_basis.append(current)
            continue
        far = max(dot(third_f, m) for m in ties)
        picked = [m for m in ties if dot(third_f, m) == far]
        if len(picked) != 1:
            raise ValueError(f"wall crossing is ambiguous for character {group.character_label(char)}")
        new_basis.append(picked[0])
    return make_tripod(new_basis, group)


@dataclass(frozen=True)
class StarGeometry:
    """The complete 2D fan around an interior vertex, in the quotient of the
    weight lattice by the vertex ray."""

    vertex: int
    rays: tuple[int, ...]                      # fan vertex indices, cyclic
    cones: tuple[int, ...]                     # cones[i] spans rays[i], rays[i+1]
    quotient_rays: tuple[tuple[int, int], ...]  # primitive images, same order
    self_intersections: tuple[int, ...]

    @property
    def is_regular_hexagon(self) -> bool:
        return len(self.rays) == 6 and all(s == -1 for s in self.self_intersections)


def _cyclic_sort(points: list[tuple[int, int]]) -> list[int]:
    """Indices of `points` in counterclockwise order from the positive x-axis."""
    import functools

    def cmp(i: int, j: int) -> int:
        p, q = points[i], points[j]
        hp = 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1
        hq = 0 if (q[1] > 0 or (q[1] == 0 and q[0] > 0)) else 1
        if hp != hq:
            return -1 if hp < hq else 1
        cr = p[0] * q[1] - p[1] * q[0]
        if cr == 0:
            raise ValueError("two star rays project to the same direction")
        return -1 if cr > 0 else 1

    return sorted(range(len(points)), key=functools.cmp_to_key(cmp))


def star_geometry(fan: Fan3, vertex: int) -> StarGeometry:
    """Project the star of an interior vertex to the rank-2 quotient lattice,
    order it cyclically and read off the boundary self-intersections."""
    from .intlinalg import reduction_columns

    if not fan.vertex_is_interior(vertex):
        raise ValueError(f"vertex {fan.vertices[vertex]} is not interior")
    group = fan.group
    lat = group._scaled_lattice
    e = group.exponent

    def lattice_coords(p: LatticePoint) -> tuple[int, ...]:
        scaled = tuple(x * e // p.denominator for x in p.numerators)
        return lat.coordinates(scaled)

    v_coords = lattice_coords(fan.vertices[vertex])
    assert content(v_coords) == 1, "interior vertex must be primitive"
    cols = reduction_columns(v_coords)

    def project(p: LatticePoint) -> tuple[int, int]:
        z = lattice_coords(p)
        img = tuple(sum(z[i] * cols[i][j] for i in range(3)) for j in range(1, 3))
        return img

    star_cones = fan.star(vertex)
    ray_ids = sorted(
        {r for c in star_cones for r in fan.cone_vertices[c] if r != vertex}
    )
    pts = [project(fan.vertices[r]) for r in ray_ids]
    for p in pts:
        if content(p) != 1:
            raise FanVerificationError(
                "projected star ray is imprimitive", (str(fan.vertices[vertex]),)
            )
    order = _cyclic_sort(pts)
    rays = [ray_ids[i] for i in order]
    q_rays = [pts[i] for i in order]
    k = len(rays)

    # match each consecutive pair to an actual cone of the star
    cone_of_pair = {}
    for c in star_cones:
        pair = tuple(sorted(r for r in fan.cone_vertices[c] if r != vertex))
        cone_of_pair[pair] = c
    cones = []
    for i in range(k):
        pair = tuple(sorted((rays[i], rays[(i + 1) % k])))
        if pair not in cone_of_pair:
            raise FanVerificationError(
                "star of vertex is not a complete fan",
                (str(fan.vertices[vertex]),),
            )
        cones.append(cone_of_pair[pair])
    if len(set(cones)) != len(star_cones):
        raise FanVerificationError(
            "star cones do not close up into a cycle", (str(fan.vertices[vertex]),)
        )

    selfints = []
    for i in range(k):
        prev = q_rays[(i - 1) % k]
        cur = q_rays[i]
        nxt = q_rays[(i + 1) % k]
        d = cur[0] * nxt[1] - cur[1] * nxt[0]
        assert d in (1, -1), "star cone is not basic in the quotient lattice"
        # solve prev = alpha*cur + beta*nxt exactly
        alpha = (prev[0] * nxt[1] - prev[1] * nxt[0]) // d
        beta = (cur[0] * prev[1] - cur[1] * prev[0]) // d
        assert beta == -1, "inconsistent orientation around the star"
        selfints.append(-alpha)
    return StarGeometry(vertex, tuple(rays), tuple(cones), tuple(q_rays), tuple(selfints))


def hexagon_census(fan: Fan3) -> tuple[int, ...]:
    """Interior vertices whose star is a regular hexagon: six cones, six
    interior edges, and every boundary curve a (-1)-curve of the quotient."""
    out = []
    for v in fan.interior_vertices():
        star = fan.star(v)
        if len(star) != 6:
            continue
        incident = [e for e in fan.edges if v in e.rays]
        if len(incident) != 6 or not all(e.interior for e in incident):
            continue
        if star_geometry(fan, v).is_regular_hexagon:
            out.append(v)
    return tuple(out)
