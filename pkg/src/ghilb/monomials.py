"""Character spaces of monomials: minimal generators, marked minima, products.

For a character a, the eigenspace of a inside the polynomial ring is a module
over the invariant ring; for monomial data its minimal generating set L(a) is
the set of divisibility-minimal monomials of character a.  Exponents can be
kept below the group exponent e because x_i^e is invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .clipping import affine_of_direction, area2, clip, section_triangle
from .errors import TieError
from .groups import Character, GroupSpec

Monomial = tuple[int, ...]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


_VARS = "xyzw"


def monomial_str(m: Monomial) -> str:
    parts = []
    for v, e in zip(_VARS, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True)
class CharacterModule:
    """A character together with its minimal monomial generating set."""

    character: Character
    generators: tuple[Monomial, ...]  # sorted lexicographically

    def __contains__(self, m: Monomial) -> bool:
        return m in self.generators


def minimal_elements(monomials) -> tuple[Monomial, ...]:
    """Divisibility-minimal members of a set of monomials."""
    keep: list[Monomial] = []
    for m in sorted(monomials, key=lambda t: (sum(t), t)):
        if not any(divides(k, m) for k in keep):
            keep.append(m)
    return tuple(sorted(keep))


_module_cache: dict[GroupSpec, dict[Character, CharacterModule]] = {}


def _module_table(group: GroupSpec) -> dict[Character, CharacterModule]:
    """All L(a) at once: bucket the exponent box [0, e)^n by character and
    keep divisibility-minimal representatives per bucket."""
    table = _module_cache.get(group)
    if table is not None:
        return table
    e = group.exponent
    buckets: dict[tuple[int, ...], list[Monomial]] = {}
    for m in product(range(e), repeat=group.n):
        buckets.setdefault(group.char_key_of_monomial(m), []).append(m)
    table = {}
    for key, monos in buckets.items():
        char = group.character_of_monomial(monos[0])
        table[char] = CharacterModule(char, minimal_elements(monos))
    assert len(table) == group.order
    _module_cache[group] = table
    return table


def minimal_generators(a: Character, group: GroupSpec) -> CharacterModule:
    """Minimal monomial generators of the character-a eigenspace module."""
    return _module_table(group)[a]


def character_of_monomial(m: Monomial, group: GroupSpec) -> Character:
    return group.character_of_monomial(m)


def marked_minima(a: Character, v, group: GroupSpec) -> tuple[Monomial, ...]:
    """All generators of L(a) minimizing <v, .>; singleton off the walls."""
    gens = minimal_generators(a, group).generators
    vals = [sum(Fraction(x) * m_i for x, m_i in zip(v, m)) for m in gens]
    best = min(vals)
    return tuple(m for m, val in zip(gens, vals) if val == best)


def marked_minimum(a: Character, v, group: GroupSpec) -> Monomial:
    """The unique marked generator of L(a) for weight v; ties are surfaced."""
    mins = marked_minima(a, v, group)
    if len(mins) > 1:
        raise TieError(
            f"weight {tuple(v)} lies on a wall of character "
            f"{group.character_label(a)}: {[monomial_str(m) for m in mins]}",
            mins,
        )
    return mins[0]


def module_product(chars, group: GroupSpec) -> CharacterModule:
    """Module generated by products of one generator per factor, reduced to
    its minimal generating set (all products share the sum character, so
    minimality is plain divisibility-minimality inside the product set)."""
    chars = list(chars)
    if not chars:
        raise ValueError("module_product needs at least one character")
    sums: set[Monomial] = {tuple(0 for _ in range(group.n))}
    total = group.trivial_character
    for a in chars:
        gens = minimal_generators(a, group).generators
        sums = {mono_mul(s, g) for s in sums for g in gens}
        total = total + a
    return CharacterModule(total, minimal_elements(sums))


def module_equal(a: CharacterModule, b: CharacterModule) -> bool:
    if a.character != b.character:
        raise ValueError("modules of different characters are never compared")
    return a.generators == b.generators


def hull_generators(module: CharacterModule, group: GroupSpec) -> tuple[Monomial, ...]:
    """Generators that are vertices of the Newton polyhedron conv(L(a)) + R>=0^n.

    A generator is a vertex iff some strictly positive weight picks it as the
    unique minimum, i.e. its weight region has positive area in the section
    of the positive orthant (n = 3) or positive length (n = 2).
    """
    gens = module.generators
    out = []
    for g in gens:
        constraints = [tuple(m_i - g_i for m_i, g_i in zip(m, g)) for m in gens if m != g]
        if group.n == 3:
            poly = section_triangle()
            for d in constraints:
                poly = clip(poly, affine_of_direction(d))
                if not poly:
                    break
            if poly and abs(area2(poly)) > 0:
                out.append(g)
        elif group.n == 2:
            # section of the quadrant: p = (1-t, t), t in [0, 1]
            lo, hi = Fraction(0), Fraction(1)
            for d0, d1 in constraints:
                c0, c1 = Fraction(d0), Fraction(d1 - d0)
                if c1 == 0:
                    if c0 < 0:
                        lo, hi = Fraction(1), Fraction(0)
                        break
                elif c1 > 0:
                    lo = max(lo, -c0 / c1)
                else:
                    hi = min(hi, -c0 / c1)
            if lo < hi:
                out.append(g)
        else:
            raise ValueError("hull display is only defined for n in {2, 3}")
    return tuple(out)
