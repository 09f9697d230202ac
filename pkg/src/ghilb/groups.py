"""Finite diagonal abelian groups, their weight lattice, characters and ages.

A group is specified by generator weight vectors: ``1/r(a_1,...,a_n)`` is the
cyclic action x_i -> eps^{a_i} x_i with eps a primitive r-th root of unity;
several generators are combined with ``;``.  The associated weight lattice is
L = Z^n + sum_j Z * (1/r_j)(a_j), and ages/discrepancies of lattice points in
the positive orthant drive everything downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GroupParseError, NotGorensteinError
from .intlinalg import IntegerLattice, content, det, lcm, reduce_primitive


@dataclass(frozen=True, order=True)
class GroupElement:
    """Element of the acting group as its residue tuple in [0,1)^n."""

    residues: tuple[Fraction, ...]

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            tuple((a + b) % 1 for a, b in zip(self.residues, other.residues))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple((-a) % 1 for a in self.residues))

    @property
    def is_identity(self) -> bool:
        return not any(self.residues)

    def age(self) -> Fraction:
        return sum(self.residues, Fraction(0))


@dataclass(frozen=True, order=True)
class Character:
    """Character of the group, stored by its pairing against each generator."""

    pairings: tuple[Fraction, ...]

    def __add__(self, other: "Character") -> "Character":
        return Character(
            tuple((a + b) % 1 for a, b in zip(self.pairings, other.pairings))
        )

    def __neg__(self) -> "Character":
        return Character(tuple((-a) % 1 for a in self.pairings))

    @property
    def is_trivial(self) -> bool:
        return not any(self.pairings)


@dataclass(frozen=True, order=True)
class LatticePoint:
    """Point numerators/denominator of the weight lattice, stored reduced."""

    numerators: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        g = gcd(content(self.numerators), self.denominator)
        if g > 1:
            object.__setattr__(
                self, "numerators", tuple(x // g for x in self.numerators)
            )
            object.__setattr__(self, "denominator", self.denominator // g)

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.denominator) for x in self.numerators)

    def age(self) -> Fraction:
        if any(x < 0 for x in self.numerators):
            raise ValueError("age needs a point in the closed positive orthant")
        return Fraction(sum(self.numerators), self.denominator)

    def __str__(self) -> str:
        nums = ",".join(str(x) for x in self.numerators)
        return f"({nums})/{self.denominator}"


_GEN_RE = re.compile(r"^1/(\d+)\(([^()]*)\)$")


class GroupSpec:
    """Canonical form of a finite diagonal abelian subgroup of GL(n, C).

    Immutable after construction; the element closure, character table and
    lattice data are computed once and shared.  All downstream operations are
    pure functions of this object.
    """

    def __init__(self, n: int, generators: list[tuple[int, tuple[int, ...]]]):
        if not 2 <= n <= 4:
            raise GroupParseError(f"dimension {n} outside the accepted range 2..4")
        self.n = n
        canon: list[tuple[int, tuple[int, ...]]] = []
        for r, a in generators:
            if r <= 0:
                raise GroupParseError("generator order must be positive")
            if len(a) != n:
                raise GroupParseError("generators must share one dimension")
            res = tuple(Fraction(x % r, r) for x in a)
            if not any(res):
                raise GroupParseError(f"trivial generator 1/{r}{a}")
            order = 1
            for f in res:
                order = lcm(order, f.denominator)
            canon.append((order, tuple(int(f * order) for f in res)))
        canon = sorted(set(canon))
        if not canon:
            raise GroupParseError("a group needs at least one generator")
        self.generators = tuple(canon)
        self.exponent = 1
        for r, _ in self.generators:
            self.exponent = lcm(self.exponent, r)
        self._elements = self._close_elements()
        if len(self._elements) == 1:
            raise GroupParseError("the group is trivial")
        self._characters, self._axis_char_keys = self._close_characters()
        self._char_by_key = {self._key_of_char(c): c for c in self._characters}
        e = self.exponent
        gens = [
            tuple(e if j == i else 0 for j in range(n)) for i in range(n)
        ] + [
            tuple((e // r) * x for x in a) for r, a in self.generators
        ]
        self._scaled_lattice = IntegerLattice(n, gens)  # basis of e*L inside Z^n
        assert self._scaled_lattice.index_in_ambient() * self.order == e**self.n

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def trivial(n: int) -> "GroupSpec":
        """The trivial group, only constructible programmatically."""
        g = object.__new__(GroupSpec)
        g.n = n
        g.generators = ()
        g.exponent = 1
        g._elements = (GroupElement(tuple(Fraction(0) for _ in range(n))),)
        g._characters = (Character(()),)
        g._axis_char_keys = [() for _ in range(n)]
        g._char_by_key = {(): g._characters[0]}
        gens = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        g._scaled_lattice = IntegerLattice(n, gens)
        return g

    def _close_elements(self) -> tuple[GroupElement, ...]:
        gens = [
            GroupElement(tuple(Fraction(x, r) for x in a))
            for r, a in self.generators
        ]
        seen = {GroupElement(tuple(Fraction(0) for _ in range(self.n)))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for el in frontier:
                for g in gens:
                    s = el + g
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        ordered = sorted(seen)
        assert ordered[0].is_identity
        return tuple(ordered)

    def _close_characters(self):
        # pairing keys of the coordinate characters: axis i pairs with
        # generator j as a_j[i] / r_j
        axis_keys = [
            tuple(a[i] % r for r, a in self.generators) for i in range(self.n)
        ]
        mods = tuple(r for r, _ in self.generators)
        seen = {tuple(0 for _ in mods)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for key in frontier:
                for ak in axis_keys:
                    s = tuple((k + a) % m for k, a, m in zip(key, ak, mods))
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        chars = sorted(
            Character(tuple(Fraction(k, m) for k, m in zip(key, mods)))
            for key in seen
        )
        assert len(chars) == len(self._elements)
        return tuple(chars), axis_keys

    def _key_of_char(self, c: Character) -> tuple[int, ...]:
        return tuple(
            int(p * r) for p, (r, _) in zip(c.pairings, self.generators)
        )

    # -- basic facts ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._elements)

    def elements(self) -> tuple[GroupElement, ...]:
        return self._elements

    def characters(self) -> tuple[Character, ...]:
        return self._characters

    @property
    def trivial_character(self) -> Character:
        return Character(tuple(Fraction(0) for _ in self.generators))

    def is_gorenstein(self) -> bool:
        """True iff the action is inside SL(n, C): every age is an integer."""
        return all(el.age().denominator == 1 for el in self._elements)

    def only_origin_fixed(self) -> bool:
        """True iff no nonidentity element fixes a positive-dimensional locus,
        i.e. every nonidentity element has all residues nonzero."""
        return all(
            all(r != 0 for r in el.residues)
            for el in self._elements
            if not el.is_identity
        )

    def has_quasireflection(self) -> bool:
        return any(
            sum(1 for r in el.residues if r != 0) == 1 for el in self._elements
        )

    def covolume(self) -> Fraction:
        """Volume of a fundamental cell of the weight lattice."""
        return Fraction(1, self.order)

    def __repr__(self) -> str:
        return f"GroupSpec({self.spec_string()!r})"

    def spec_string(self) -> str:
        if not self.generators:
            return "1/1(" + ",".join("0" * 1 for _ in range(self.n)) + ")"
        return ";".join(
            f"1/{r}(" + ",".join(str(x) for x in a) + ")"
            for r, a in self.generators
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupSpec)
            and self.n == other.n
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.n, self.generators))

    # -- characters of monomials ----------------------------------------------

    def char_key_of_monomial(self, exponents) -> tuple[int, ...]:
        """Integer pairing key of x^exponents: one residue per generator.

        Entry j is sum_i a_j[i]*m_i mod r_j; negative exponents are fine.
        """
        return tuple(
            sum(a * m for a, m in zip(weights, exponents)) % r
            for r, weights in self.generators
        )

    def character_of_monomial(self, exponents) -> Character:
        return self._char_by_key[self.char_key_of_monomial(exponents)]

    def character_label(self, c: Character) -> str:
        """Compact label: the pairing numerator(s) against the generator(s)."""
        key = self._key_of_char(c)
        if len(key) == 1:
            return str(key[0])
        return "(" + ",".join(str(k) for k in key) + ")"

    def is_invariant_exponent(self, vec) -> bool:
        """True iff x^vec is fixed by the group (the exponent pairs integrally
        with every generator); vec may have negative entries."""
        return not any(self.char_key_of_monomial(vec))

    def dual_multiplier(self, vec) -> int:
        """Smallest t >= 1 such that t*vec pairs integrally with the group."""
        t = 1
        for (r, _), s in zip(self.generators, self.char_key_of_monomial(vec)):
            if s:
                t = lcm(t, r // gcd(r, s))
        return t

    # -- lattice points ---------------------------------------------------------

    def contains_point(self, numerators, denominator: int) -> bool:
        e = self.exponent
        nums = tuple(numerators)
        if any((e * x) % denominator for x in nums):
            return False
        return self._scaled_lattice.contains(tuple(e * x // denominator for x in nums))

    def point(self, numerators, denominator: int = 1) -> LatticePoint:
        """Validated lattice point; raises if it is not in the weight lattice."""
        p = LatticePoint(tuple(numerators), denominator)
        if not self.contains_point(p.numerators, p.denominator):
            raise ValueError(f"{p} is not in the weight lattice of {self}")
        return p

    def point_of_element(self, el: GroupElement) -> LatticePoint:
        e = self.exponent
        return LatticePoint(tuple(int(r * e) for r in el.residues), e)

    def primitive_ray(self, direction) -> LatticePoint:
        """The primitive lattice point on the ray R>=0 * direction."""
        c = reduce_primitive(tuple(direction))
        k = self._scaled_lattice.multiplier(c)
        return LatticePoint(tuple(k * x for x in c), self.exponent)

    def is_primitive(self, p: LatticePoint) -> bool:
        return p == self.primitive_ray(p.numerators)


def parse_group(text: str) -> GroupSpec:
    """Parse ``1/r(a_1,...,a_n)`` with optional ``;``-joined extra generators."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise GroupParseError("empty group spec")
    gens = []
    dim = None
    for part in compact.split(";"):
        m = _GEN_RE.match(part)
        if not m:
            raise GroupParseError(f"cannot parse generator {part!r}")
        r = int(m.group(1))
        if r == 0:
            raise GroupParseError("generator order must be positive")
        entries = m.group(2).split(",") if m.group(2) else []
        try:
            a = tuple(int(x) for x in entries)
        except ValueError as exc:
            raise GroupParseError(f"bad weight entry in {part!r}") from exc
        if dim is None:
            dim = len(a)
        elif len(a) != dim:
            raise GroupParseError("generators have inconsistent dimensions")
        gens.append((r, a))
    if dim is None or not 2 <= dim <= 4:
        raise GroupParseError(f"dimension {dim} outside the accepted range 2..4")
    return GroupSpec(dim, gens)


def age(x) -> Fraction:
    """Age of a group element or of a lattice point in the positive orthant."""
    if isinstance(x, GroupElement):
        if any(r < 0 for r in x.residues):
            raise ValueError("age needs nonnegative residues")
        return x.age()
    return x.age()


def discrepancy(point: LatticePoint, group: GroupSpec) -> Fraction:
    """age - 1 of a primitive lattice point in the positive orthant."""
    if not group.is_primitive(point):
        raise ValueError(f"{point} is not primitive in the weight lattice")
    return point.age() - 1


def junior_elements(group: GroupSpec) -> tuple[GroupElement, ...]:
    """All elements of age exactly 1 (needs integral ages, i.e. SL)."""
    if not group.is_gorenstein():
        raise NotGorensteinError(
            f"{group.spec_string()} is not in SL({group.n}): ages are not integral"
        )
    return tuple(el for el in group.elements() if el.age() == 1)


@dataclass(frozen=True)
class StringyEuler:
    """Count of conjugacy classes plus a flag for the unhandled stratified case."""

    count: int
    only_origin_fixed: bool

    @property
    def flagged(self) -> bool:
        return not self.only_origin_fixed


def stringy_euler(group: GroupSpec) -> StringyEuler:
    """|G| for an abelian group; flagged when the action fixes more than the
    origin (the stratified count over subgroups is out of scope)."""
    return StringyEuler(group.order, group.only_origin_fixed())


def is_basic_simplex(vertices, group: GroupSpec) -> bool:
    """True iff the given n lattice points extend to a smooth cone for the
    weight lattice: |det| of the point matrix equals the lattice covolume."""
    mat = [p.fractions() for p in vertices]
    if len(mat) != group.n:
        raise ValueError(f"need exactly {group.n} lattice points")
    d = det(mat)
    if d == 0:
        raise ValueError("degenerate simplex: determinant is zero")
    return abs(d) == group.covolume()


@dataclass(frozen=True)
class Heuristic4d:
    junior_count: int
    basic: bool
    heuristic_predicts: bool


def heuristic_4d(r: int) -> Heuristic4d:
    """Consistency probe for the 4-fold family 1/r(1,1,1,r-3): junior count,
    basicness of the distinguished simplex, and the r = 1 mod 3 predicate."""
    if r < 4:
        raise ValueError("the family 1/r(1,1,1,r-3) needs r >= 4")
    group = GroupSpec(4, [(r, (1, 1, 1, r - 3))])
    juniors = sum(1 for el in group.elements() if el.age() == 1)
    t = r // 3
    apex = group.point((t, t, t, r - 3 * t), r)
    units = [group.point(tuple(1 if j == i else 0 for j in range(4))) for i in range(3)]
    basic = is_basic_simplex([apex] + units, group)
    return Heuristic4d(juniors, basic, r % 3 == 1)
