"""Exact integer and rational linear algebra for small fixed dimensions.

Everything here works over arbitrary-precision ints / Fractions; there is no
floating point anywhere.  Matrices are tuples of row tuples, vectors are
tuples.  Dimensions are tiny (n <= 4), so the naive algorithms are fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


def lcm(a: int, b: int) -> int:
    return abs(a // gcd(a, b) * b) if a and b else abs(a or b)


def content(vec: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    return g


def reduce_primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by its content."""
    g = content(vec)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in vec)


def vec_add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k, a: Sequence) -> tuple:
    return tuple(k * x for x in a)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def cross3(a: Sequence[int], b: Sequence[int]) -> tuple[int, int, int]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det(mat: Sequence[Sequence]) -> Fraction | int:
    """Determinant by Laplace expansion; exact for int or Fraction entries."""
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = 0
    for j in range(n):
        if mat[0][j] == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in mat[1:]]
        term = mat[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate3(mat: Sequence[Sequence[int]]) -> tuple[tuple[int, int, int], ...]:
    """Rows of the adjugate: adj[i] = cross(row_{i+1}, row_{i+2}) cyclically.

    Satisfies mat @ adj^T = det * I, so adj rows are the (unscaled) dual basis.
    """
    r0, r1, r2 = mat
    return (cross3(r1, r2), cross3(r2, r0), cross3(r0, r1))


class IntegerLattice:
    """Full-rank sublattice of Z^n given by generators, kept in row HNF.

    Supports membership tests and the order of a vector in Z^n / lattice,
    which is all the weight-lattice bookkeeping needs.
    """

    def __init__(self, n: int, generators: Iterable[Sequence[int]]):
        self.n = n
        self.rows: list[list[int]] = []
        for g in generators:
            self._add(list(g))
        if len(self.rows) != n:
            raise ValueError("lattice generators do not span full rank")
        self._normalize()

    def _add(self, vec: list[int]) -> None:
        rows = self.rows
        for i in range(len(rows)):
            piv = next((j for j, x in enumerate(rows[i]) if x), self.n)
            lead = next((j for j, x in enumerate(vec) if x), self.n)
            if lead > piv:
                continue
            if lead < piv:
                rows.insert(i, vec)
                return
            # same pivot column: gcd-combine
            a, b = rows[i][lead], vec[lead]
            g, x, y = _xgcd(a, b)
            new = [x * p + y * q for p, q in zip(rows[i], vec)]
            vec = [(-b // g) * p + (a // g) * q for p, q in zip(rows[i], vec)]
            rows[i] = new
        if any(vec):
            rows.append(vec)

    def _normalize(self) -> None:
        # make pivots positive and reduce entries above them
        rows = self.rows
        for i in range(len(rows)):
            piv = next(j for j, x in enumerate(rows[i]) if x)
            if rows[i][piv] < 0:
                rows[i] = [-x for x in rows[i]]
            for k in range(i):
                q = rows[k][piv] // rows[i][piv]
                if q:
                    rows[k] = [p - q * r for p, r in zip(rows[k], rows[i])]

    def index_in_ambient(self) -> int:
        """[Z^n : lattice] = product of the HNF pivots."""
        out = 1
        for i, row in enumerate(self.rows):
            out *= row[i]
        return out

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Remainder of vec modulo the lattice, or None if not reducible to 0
        by integer pivot steps (same thing: returns the residue vector)."""
        v = list(vec)
        for i, row in enumerate(self.rows):
            if v[i] % row[i] == 0:
                q = v[i] // row[i]
                if q:
                    v = [p - q * r for p, r in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def multiplier(self, vec: Sequence[int]) -> int:
        """Smallest k >= 1 with k*vec in the lattice (order in Z^n/lattice)."""
        # solve y * HNF = vec over Q by forward substitution, k = lcm of denoms
        v = [Fraction(x) for x in vec]
        k = 1
        for i, row in enumerate(self.rows):
            y = v[i] / row[i]
            v = [p - y * r for p, r in zip(v, row)]
            k = lcm(k, y.denominator)
        if any(v):
            raise ValueError("vector outside the rational span")
        return k

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Integer coordinates of a lattice member in the HNF basis."""
        v = [Fraction(x) for x in vec]
        out = []
        for i, row in enumerate(self.rows):
            y = v[i] / row[i]
            if y.denominator != 1:
                raise ValueError("vector is not in the lattice")
            v = [p - y * r for p, r in zip(v, row)]
            out.append(int(y))
        if any(v):
            raise ValueError("vector is not in the lattice")
        return tuple(out)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def reduction_columns(v: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Unimodular C with v * C = e_1, for primitive integer v.

    Built by accumulating the extended-gcd column steps that reduce v to e_1;
    z -> (z*C)[1:] is then a coordinate map for Z^n / Z*v.
    """
    n = len(v)
    if content(v) != 1:
        raise ValueError("vector must be primitive in Z^n")
    w = list(v)
    cols = [[1 if i == j else 0 for j in range(n)] for i in range(n)]  # C as rows
    for j in range(1, n):
        a, b = w[0], w[j]
        if b == 0:
            continue
        g, x, y = _xgcd(a, b)
        # new col0 = x*col0 + y*colj ; new colj = -(b/g)*col0 + (a/g)*colj
        for row in cols:
            c0, cj = row[0], row[j]
            row[0] = x * c0 + y * cj
            row[j] = (-(b // g)) * c0 + (a // g) * cj
        w[0], w[j] = g, 0
    if w[0] == -1:
        for row in cols:
            row[0] = -row[0]
        w[0] = 1
    assert w[0] == 1 and not any(w[1:])
    return tuple(tuple(r) for r in cols)


def unimodular_with_first_row(v: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """A det +-1 integer matrix whose first row is the primitive vector v."""
    u = _invert_unimodular(reduction_columns(v))
    assert u[0] == tuple(v)
    return u


def _invert_unimodular(mat: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(mat)
    d = det(mat)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [mat[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            cof = det(minor) if minor else 1
            sign = -1 if (i + j) % 2 else 1
            row.append(sign * cof * d)  # d = 1/d for d = +-1
        inv.append(tuple(row))
    return tuple(inv)
