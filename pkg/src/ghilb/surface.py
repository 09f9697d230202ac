"""Surface cyclic quotients 1/r(1,q): continued fractions, the minimal
resolution as a chain of rational curves with parametrising ratios, cluster
charts, staircase clusters, and the two-dimensional dual-basis matrix.

The chain is computed twice, from the boundary of the lattice hull and from
the continued fraction recursion, and the two answers are compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import FanVerificationError
from .groups import Character, GroupSpec, LatticePoint
from .hilb import Tripod, enumerate_tripods
from .intlinalg import dot
from .monomials import (
    Monomial,
    marked_minima,
    minimal_elements,
    minimal_generators,
    monomial_str,
)


@dataclass(frozen=True)
class ContinuedFraction:
    """r/q = b_1 - 1/(b_2 - 1/(... - 1/b_k)) with every b_i >= 2."""

    r: int
    q: int
    terms: tuple[int, ...]

    def value(self) -> Fraction:
        acc = Fraction(self.terms[-1])
        for b in reversed(self.terms[:-1]):
            acc = b - 1 / acc
        return acc


def hj_expand(r: int, q: int) -> ContinuedFraction:
    """Minus-sign continued fraction of r/q."""
    _check_rq(r, q)
    terms = []
    num, den = r, q
    while den:
        b = -(-num // den)  # ceil
        terms.append(b)
        num, den = den, b * den - num
    cf = ContinuedFraction(r, q, tuple(terms))
    assert cf.value() == Fraction(r, q)
    assert all(b >= 2 for b in terms)
    return cf


def _check_rq(r: int, q: int) -> None:
    if not 0 < q < r:
        raise ValueError(f"need 0 < q < r, got q = {q}, r = {r}")
    if gcd(q, r) != 1:
        raise ValueError(f"q = {q} and r = {r} must be coprime")


def _group(r: int, q: int) -> GroupSpec:
    return GroupSpec(2, [(r, (1, q))])


def newton_boundary(r: int, q: int) -> tuple[LatticePoint, ...]:
    """Lattice points on the boundary of the hull of the nonzero lattice
    points in the closed quadrant, walked from the (0,1) side to (1,0)."""
    _check_rq(r, q)
    pts = [
        (i, j)
        for i in range(r + 1)
        for j in range(r + 1)
        if (i, j) != (0, 0) and (j - q * i) % r == 0
    ]
    cands = sorted(minimal_elements(pts))  # x ascending, y descending
    chain: list[tuple[int, int]] = []
    for p in cands:
        while len(chain) >= 2:
            (x0, y0), (x1, y1) = chain[-2], chain[-1]
            cross = (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0)
            if cross < 0:  # middle point above the segment: not on the hull
                chain.pop()
            else:
                break
        chain.append(p)
    assert chain[0] == (0, r) and chain[-1] == (r, 0)
    return tuple(LatticePoint(p, r) for p in chain)


def _scaled(p: LatticePoint, r: int) -> tuple[int, int]:
    s = r // p.denominator
    return (p.numerators[0] * s, p.numerators[1] * s)


@dataclass(frozen=True)
class SurfaceCurve:
    ray: LatticePoint
    self_intersection: int
    ratio: tuple[Monomial, Monomial]     # (x-power side, y-power side)
    character: Character

    def ratio_str(self) -> str:
        return f"{monomial_str(self.ratio[0])} : {monomial_str(self.ratio[1])}"


@dataclass(frozen=True)
class SurfaceChart:
    """Cluster chart of one cone of the chain, as binomial equations."""

    lower: LatticePoint                  # ray closer to the x-axis
    upper: LatticePoint
    equations: tuple[tuple[Monomial, Monomial, str], ...]  # lhs, rhs, coefficient

    def __str__(self) -> str:
        return ", ".join(
            f"{monomial_str(l)} = {c}" + (f" {monomial_str(rr)}" if any(rr) else "")
            for l, rr, c in self.equations
        )


@dataclass(frozen=True)
class SurfaceResolution:
    r: int
    q: int
    continued_fraction: ContinuedFraction
    boundary_points: tuple[LatticePoint, ...]
    curves: tuple[SurfaceCurve, ...]     # chain order, starting nearest the x-axis
    charts: tuple[SurfaceChart, ...]     # chart i sits between curves i and i+1


def _ratio_vector(v: LatticePoint, group: GroupSpec, r: int) -> tuple[int, int]:
    """Primitive weight-integral vector normal to the ray, x-part positive."""
    a, b = _scaled(v, r)
    g = gcd(a, b)
    w = (b // g, -a // g)
    t = group.dual_multiplier(w)
    return (t * w[0], t * w[1])


def resolve_surface(r: int, q: int) -> SurfaceResolution:
    """Minimal resolution of 1/r(1,q) with curve ratios, characters, chain
    self-intersections and cluster charts."""
    cf = hj_expand(r, q)
    group = _group(r, q)
    boundary = newton_boundary(r, q)
    scaled = [_scaled(p, r) for p in boundary]

    # cross-check the hull against the continued-fraction recursion
    rec = [(0, r), _scaled(boundary[1], r)]
    for b in cf.terms:
        prev, cur = rec[-2], rec[-1]
        rec.append((b * cur[0] - prev[0], b * cur[1] - prev[1]))
    if rec != scaled:
        raise FanVerificationError(
            f"hull and continued fraction disagree for {r}/{q}",
            (str(rec), str(scaled)),
        )

    curves = []
    for idx in range(len(boundary) - 2, 0, -1):  # x-axis side first
        prev, cur, nxt = scaled[idx - 1], scaled[idx], scaled[idx + 1]
        # prev + nxt = b * cur componentwise
        b = (prev[0] + nxt[0]) // cur[0] if cur[0] else (prev[1] + nxt[1]) // cur[1]
        assert (b * cur[0], b * cur[1]) == (prev[0] + nxt[0], prev[1] + nxt[1])
        w = _ratio_vector(boundary[idx], group, r)
        pos: Monomial = (w[0], 0)
        neg: Monomial = (0, -w[1])
        char = group.character_of_monomial(pos)
        assert char == group.character_of_monomial(neg)
        curves.append(SurfaceCurve(boundary[idx], -b, (pos, neg), char))

    charts = []
    for idx in range(len(boundary) - 1, 0, -1):  # cone nearest the x-axis first
        lower, upper = boundary[idx], boundary[idx - 1]
        # x-positive vector normal to the upper ray: x^a = lam y^b
        wl = _ratio_vector(upper, group, r)
        eq1 = ((wl[0], 0), (0, -wl[1]), "λ")
        # y-positive vector normal to the lower ray: y^d = mu x^c
        a, b = _scaled(lower, r)
        g = gcd(a, b)
        w = (-(b // g), a // g)
        t = group.dual_multiplier(w)
        w = (t * w[0], t * w[1])
        eq2 = ((0, w[1]), (-w[0], 0), "μ")
        prod = (wl[0] + w[0], wl[1] + w[1])
        lhs = (max(prod[0], 0), max(prod[1], 0))
        rhs = (max(-prod[0], 0), max(-prod[1], 0))
        eq3 = (lhs, rhs, "λμ")
        # dual-basis normalisation: each equation vector pairs to 1 with the
        # opposite ray of the cone
        assert dot(lower.fractions(), wl) == 1
        assert dot(upper.fractions(), w) == 1
        charts.append(SurfaceChart(lower, upper, (eq1, eq2, eq3)))

    # minimality: consecutive boundary cones are basic, skipping a point is not
    for i in range(len(boundary) - 1):
        pair = [boundary[i].fractions(), boundary[i + 1].fractions()]
        d = pair[0][0] * pair[1][1] - pair[0][1] * pair[1][0]
        if abs(d) != group.covolume():
            raise FanVerificationError(
                f"chain cone {i} of {r}/{q} is not basic", (str(d),)
            )
    return SurfaceResolution(r, q, cf, boundary, tuple(curves), tuple(charts))


def cluster_basis_check(chart: SurfaceChart, r: int, q: int) -> tuple[Monomial, ...]:
    """Monomial basis of the cluster cut out by the chart at vanishing
    deformation coordinates: exactly r monomials, one per character."""
    group = _group(r, q)
    leads = [eq[0] for eq in chart.equations]
    xbound = min(l[0] for l in leads if l[0] > 0 and l[1] == 0)
    ybound = min(l[1] for l in leads if l[1] > 0 and l[0] == 0)
    basis = []
    for i in range(xbound):
        for j in range(ybound):
            m = (i, j)
            if not any(l[0] <= i and l[1] <= j for l in leads):
                basis.append(m)
    if len(basis) != r:
        raise ValueError(f"chart basis has {len(basis)} monomials, need {r}")
    keys = {group.char_key_of_monomial(m) for m in basis}
    if len(keys) != r:
        raise ValueError("chart basis is not a character transversal")
    return tuple(sorted(basis, key=lambda m: (sum(m), m)))


def dual_degrees_2d(r: int, q: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of bundle degrees: rows = curve characters in chain order,
    columns = curves in chain order; the bend formula in dimension 2."""
    res = resolve_surface(r, q)
    group = _group(r, q)
    boundary = res.boundary_points
    chain = list(reversed(range(1, len(boundary) - 1)))  # boundary index per curve
    rows = []
    for curve in res.curves:
        row = []
        for idx in chain:
            left = tuple(
                a + b
                for a, b in zip(boundary[idx - 1].fractions(), boundary[idx].fractions())
            )
            right = tuple(
                a + b
                for a, b in zip(boundary[idx].fractions(), boundary[idx + 1].fractions())
            )
            (m_left,) = marked_minima(curve.character, left, group)
            (m_right,) = marked_minima(curve.character, right, group)
            deg_next = dot(boundary[idx + 1].fractions(), m_left) - dot(
                boundary[idx + 1].fractions(), m_right
            )
            deg_prev = dot(boundary[idx - 1].fractions(), m_right) - dot(
                boundary[idx - 1].fractions(), m_left
            )
            assert deg_next == deg_prev and deg_next.denominator == 1
            row.append(int(deg_next))
        rows.append(tuple(row))
    return tuple(rows)


def tripods_2d(r: int, q: int) -> tuple[Tripod, ...]:
    """All staircase clusters of the surface group; one per chain cone."""
    group = _group(r, q)
    return enumerate_tripods(group, max_order=max(200, r))
