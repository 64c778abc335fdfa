"""Exact integer matrices: HNF, LLL, determinants, kernels, minors.

HNF convention: row-style, pivots positive, entries above each pivot
reduced into [0, pivot), zero rows dropped.  The result is the unique
canonical basis of the row-span lattice and is used as a deduplication
key throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvalidInputError, RankDeficiencyError


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple

    def __init__(self, rows):
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) for x in r) for r in rows)
        )
        if self.entries:
            w = len(self.entries[0])
            if any(len(r) != w for r in self.entries):
                raise InvalidInputError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def row(self, i) -> tuple:
        return self.entries[i]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.entries)) if self.entries else IntMatrix([])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInputError("dimension mismatch")
        ob = other.entries
        return IntMatrix(
            [
                [sum(a * ob[k][j] for k, a in enumerate(r)) for j in range(other.cols)]
                for r in self.entries
            ]
        )

    def max_abs(self) -> int:
        return max((abs(x) for r in self.entries for x in r), default=0)

    def rank(self) -> int:
        return _rank_fraction([list(r) for r in self.entries])

    def det(self) -> int:
        if self.rows != self.cols:
            raise InvalidInputError("determinant of a non-square matrix")
        return _det_bareiss([list(r) for r in self.entries])

    def hnf(self) -> "IntMatrix":
        return hnf(self)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


def _det_bareiss(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def _rank_fraction(rows) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def hnf(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form of the row-span lattice.

    Upper echelon, positive pivots, entries above a pivot reduced modulo
    the pivot; zero rows dropped.  Idempotent and unique per lattice.
    """
    rows = [list(r) for r in m.entries]
    nrows, ncols = len(rows), m.cols
    pivot_row = 0
    pivots = []
    for col in range(ncols):
        # gcd-reduce the column below pivot_row via euclidean row ops
        while True:
            nz = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][col] // rows[i0][col]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        nz = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-a for a in rows[pivot_row]]
        piv = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // piv  # floor division puts entry in [0, piv)
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return IntMatrix(rows[:pivot_row])


def lll_reduce(basis: IntMatrix, delta: Fraction = Fraction(3, 4)) -> IntMatrix:
    """Exact LLL reduction of the rows; the row span is preserved.

    Rows must be linearly independent.
    """
    b = [[Fraction(x) for x in r] for r in basis.entries]
    n = len(b)
    if n == 0:
        return basis
    if basis.rank() != n:
        raise RankDeficiencyError("LLL input rows are linearly dependent")

    def gso(b):
        ortho, mu = [], [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            v = list(b[i])
            for j in range(i):
                d = _dot(ortho[j], ortho[j])
                mu[i][j] = _dot(b[i], ortho[j]) / d
                v = [a - mu[i][j] * c for a, c in zip(v, ortho[j])]
            ortho.append(v)
        return ortho, mu

    ortho, mu = gso(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [a - q * c for a, c in zip(b[k], b[j])]
                ortho, mu = gso(b)
        if _dot(ortho[k], ortho[k]) >= (delta - mu[k][k - 1] ** 2) * _dot(
            ortho[k - 1], ortho[k - 1]
        ):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            ortho, mu = gso(b)
            k = max(k - 1, 1)
    return IntMatrix([[int(x) for x in r] for r in b])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def minors_gcd(m: IntMatrix) -> int:
    """Gcd of all maximal (rows x rows) minors; 0 if rank-deficient."""
    k = m.rows
    g = 0
    for cols in combinations(range(m.cols), k):
        sub = [[m.entries[i][j] for j in cols] for i in range(k)]
        g = math.gcd(g, abs(_det_bareiss([r[:] for r in sub])))
        if g == 1:
            break
    return g


def gram_det(m: IntMatrix) -> int:
    """det(M M^t) as an exact integer."""
    gram = [
        [sum(a * b for a, b in zip(r1, r2)) for r2 in m.entries] for r1 in m.entries
    ]
    return _det_bareiss(gram)


def kernel_basis(m: IntMatrix):
    """Primitive integer vectors spanning the rational kernel of the rows.

    The rows of m act on column vectors: returned v satisfy m @ v = 0.
    """
    rows = [[Fraction(x) for x in r] for r in m.entries]
    ncols = m.cols
    # reduced row echelon
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        out.append(_clear_denominators(v))
    return out


def _clear_denominators(v):
    lcm = 1
    for f in v:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in v]
    g = math.gcd(*ints) if any(ints) else 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def solve_integer(m: IntMatrix, rhs):
    """One rational solution x of m @ x = rhs, or None (x as Fractions)."""
    rows = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(m.entries, rhs)]
    ncols = m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][ncols]
    return x


def in_row_span(lattice_hnf: IntMatrix, v) -> bool:
    """Is the integer vector v in the lattice spanned by the HNF rows?"""
    v = list(v)
    for row in lattice_hnf.entries:
        pc = next((j for j, x in enumerate(row) if x != 0), None)
        if pc is None:
            continue
        if v[pc] % row[pc] != 0:
            return False
        q = v[pc] // row[pc]
        v = [a - q * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)
