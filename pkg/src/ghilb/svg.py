"""Deterministic SVG drawings of the triangulated junior simplex.

Vertices are placed by barycentric embedding into a fixed triangle of side
1000 units; coordinates are computed exactly and rounded half-up to two
decimals, so the output is byte-identical across runs and platforms.
"""

from __future__ import annotations

from fractions import Fraction

from .hilb import Fan3
from .mckay import analysis
from .monomials import monomial_str

# corners for the coordinate rays e1, e2, e3
_CORNERS = ((0, 866), (1000, 866), (500, 0))
_MARGIN = 40


def _fmt(x: Fraction) -> str:
    scaled = x * 100
    n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    whole, frac = divmod(n, 100)
    return f"{whole}.{frac:02d}"


def _position(point) -> tuple[Fraction, Fraction]:
    f = point.fractions()
    s = sum(f)
    bary = [c / s for c in f]
    x = sum(b * Fraction(cx) for b, (cx, _) in zip(bary, _CORNERS)) + _MARGIN
    y = sum(b * Fraction(cy) for b, (_, cy) in zip(bary, _CORNERS)) + _MARGIN
    return x, y


def emit_svg(fan: Fan3, *, labels: bool = False) -> str:
    """Render the fan's cross-section triangulation; with ``labels`` the
    interior edges carry their character and the regular hexagons their
    f-characters, reproducing the correspondence pictures."""
    group = fan.group
    pos = [_position(v) for v in fan.vertices]
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{1000 + 2 * _MARGIN}" height="{946 + 2 * _MARGIN}" '
        f'viewBox="0 0 {1000 + 2 * _MARGIN} {946 + 2 * _MARGIN}">',
        f"<title>{group.spec_string()}</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    ana = analysis(fan) if labels else None
    if labels:
        for s in ana.hexagons():
            ring = [pos[r] for r in s.star.rays]
            path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in ring)
            lines.append(f'<polygon points="{path}" fill="#f5e6a8" stroke="none"/>')
    for i, e in enumerate(fan.edges):
        (x1, y1), (x2, y2) = pos[e.rays[0]], pos[e.rays[1]]
        colour = "#333333" if e.interior else "#999999"
        lines.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{colour}" stroke-width="1.5"/>'
        )
    if labels:
        for i, e in enumerate(fan.edges):
            if not e.interior:
                continue
            lab = ana.label(i)
            (x1, y1), (x2, y2) = pos[e.rays[0]], pos[e.rays[1]]
            mx, my = (x1 + x2) / 2 + 4, (y1 + y2) / 2 - 4
            lines.append(
                f'<text x="{_fmt(mx)}" y="{_fmt(my)}" font-size="13" '
                f'fill="#1a3a66" font-family="monospace">'
                f"{group.character_label(lab.character)}</text>"
            )
        for s in ana.hexagons():
            x, y = pos[s.vertex]
            f_text = "|".join(group.character_label(c) for c in s.relation.f_chars)
            lines.append(
                f'<text x="{_fmt(x + 6)}" y="{_fmt(y + 14)}" font-size="12" '
                f'fill="#8a6d00" font-family="monospace">f: {f_text}</text>'
            )
    for i, v in enumerate(fan.vertices):
        x, y = pos[i]
        interior = fan.vertex_is_interior(i)
        fill = "#c0392b" if interior else "#2c3e50"
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="{fill}"/>')
        lines.append(
            f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" font-size="11" '
            f'fill="#555555" font-family="monospace">{v}</text>'
        )
    legend_y = 946 + 2 * _MARGIN - 12
    legend = f"{group.spec_string()} | {len(fan.cones)} cones"
    if labels:
        legend += f" | {len(ana.hexagons())} hexagons; edge labels are characters"
    lines.append(
        f'<text x="12" y="{legend_y}" font-size="14" fill="#000000" '
        f'font-family="monospace">{legend}</text>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
