"""Exact 2D half-plane clipping over the rationals.

Weight cones in the positive orthant are handled through their cross-section
by the plane sum(v) = 1; a cone becomes a convex polygon with Fraction
coordinates and half-space constraints become affine functions.  Everything
is exact: no epsilons, no floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Point = tuple[Fraction, Fraction]
Affine = tuple[Fraction, Fraction, Fraction]  # f(x, y) = a0 + a1*x + a2*y


def affine_of_direction(d: Sequence) -> Affine:
    """<p, d> on the section plane, with p = (1-x-y, x, y)."""
    d0, d1, d2 = (Fraction(t) for t in d)
    return (d0, d1 - d0, d2 - d0)


def evaluate(f: Affine, p: Point) -> Fraction:
    return f[0] + f[1] * p[0] + f[2] * p[1]


def clip(poly: list[Point], f: Affine) -> list[Point]:
    """Keep the f >= 0 side (Sutherland-Hodgman, exact intersections)."""
    if not poly:
        return []
    out: list[Point] = []
    vals = [evaluate(f, p) for p in poly]
    k = len(poly)
    for i in range(k):
        p, vp = poly[i], vals[i]
        q, vq = poly[(i + 1) % k], vals[(i + 1) % k]
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return dedupe(out)


def dedupe(poly: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in poly:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def area2(poly: Sequence[Point]) -> Fraction:
    """Twice the signed area (shoelace)."""
    s = Fraction(0)
    k = len(poly)
    for i in range(k):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % k]
        s += x0 * y1 - x1 * y0
    return s


def strip_collinear(poly: list[Point]) -> list[Point]:
    """Remove vertices lying on the segment joining their neighbours."""
    poly = dedupe(poly)
    changed = True
    while changed and len(poly) >= 3:
        changed = False
        for i in range(len(poly)):
            a = poly[i - 1]
            b = poly[i]
            c = poly[(i + 1) % len(poly)]
            cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cr == 0:
                poly.pop(i)
                changed = True
                break
    return poly


def section_triangle() -> list[Point]:
    """Cross-section of the positive octant: (x, y) with x, y >= 0, x+y <= 1."""
    return [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def triangle_of_points(pts: Sequence[Point]) -> list[Point]:
    """Orient a triangle counterclockwise."""
    tri = list(pts)
    if area2(tri) < 0:
        tri.reverse()
    if area2(tri) == 0:
        raise ValueError("degenerate triangle")
    return tri


def intersect_convex(a: Sequence[Point], b: Sequence[Point]) -> list[Point]:
    """Intersection polygon of two convex CCW polygons (may be degenerate)."""
    poly = list(a)
    k = len(b)
    for i in range(k):
        p, q = b[i], b[(i + 1) % k]
        # inward side of directed edge p->q for a CCW polygon
        f: Affine = (
            p[0] * q[1] - p[1] * q[0],
            p[1] - q[1],
            q[0] - p[0],
        )
        poly = clip(poly, f)
        if not poly:
            break
    return poly
