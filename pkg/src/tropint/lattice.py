"""Exact integer linear algebra on small dense matrices.

Everything here works with Python ints (arbitrary precision) or
``fractions.Fraction``; there is no floating point anywhere.  Vectors are
plain tuples of ints.  Matrices are :class:`IntegerMatrix` values, but every
public function also accepts a nested sequence of rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .errors import InsufficientRank, NotSquare, RankDeficient, ZeroVector

IntVector = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]]) -> "IntegerMatrix":
        return cls.from_rows(cols).transpose()

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j]
                  for j in range(self.cols) for i in range(self.rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


MatrixLike = Union[IntegerMatrix, Sequence[Sequence[int]]]


def as_matrix(m: MatrixLike) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix.from_rows(m)


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple
    rank: int

    def __post_init__(self):
        nonzero = [d for d in self.invariant_factors if d != 0]
        if len(nonzero) != self.rank:
            raise ValueError("rank must equal the number of nonzero factors")
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            raise ValueError("invariant factors must form a divisibility chain")


def content(v: Sequence[int]) -> int:
    """gcd of the absolute values of the entries (0 for the zero vector)."""
    return reduce(math.gcd, (abs(int(x)) for x in v), 0)


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping its orientation."""
    g = content(v)
    if g == 0:
        raise ZeroVector("cannot primitivize the zero vector")
    return tuple(int(x) // g for x in v)


def lattice_length(v: Sequence[int]) -> int:
    """Number of lattice points on the segment [0, v] minus one."""
    return content(v)


def determinant(m: MatrixLike) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = as_matrix(m)
    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: MatrixLike) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    m = as_matrix(m)
    a = m.to_rows()
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m.rows):
            f = a[i][c]
            if f:
                a[i] = [x * p - f * y for x, y in zip(a[i], a[r])]
                g = content(a[i])
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        r += 1
        if r == m.rows:
            break
    return r


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``a x = b``, or None if inconsistent."""
    ncols = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def integer_kernel(rows: Sequence[Sequence[int]], n: int | None = None) -> list[IntVector]:
    """Z-basis of {x in Z^n : r.x = 0 for every row r}."""
    if n is None:
        n = len(rows[0])
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        den = reduce(math.lcm, (x.denominator for x in v), 1)
        basis.append(tuple(int(x * den) for x in v))
    return saturate(basis)


def _smith_diagonalize(m: IntegerMatrix):
    """Diagonalize by unimodular row/column operations.

    Returns (diagonal entries, V_inv) where V_inv is the inverse of the
    accumulated column transform, so that the row space of ``m`` is spanned
    by d_i * (row i of V_inv).
    """
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    vinv = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def col_addmul(dst, src, q):
        # column op C_dst += q * C_src on a; inverse row op on V_inv
        for row in a:
            row[dst] += q * row[src]
        vinv[src] = [x - q * y for x, y in zip(vinv[src], vinv[dst])]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    diag = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        col_swap(t, pj)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    col_addmul(j, t, -q)
                if a[t][j]:
                    done = False
            if done:
                break
            # a remainder is smaller than the pivot: move it into place
            nz = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            _, pi, pj = min(nz)
            if pj == t:
                a[t], a[pi] = a[pi], a[t]
            else:
                col_swap(t, pj)
        diag.append(abs(a[t][t]))
        t += 1
    return diag, vinv


def smith_normal_form(m: MatrixLike) -> SnfResult:
    """Invariant factors d1 | d2 | ... of an integer matrix."""
    m = as_matrix(m)
    diag, _ = _smith_diagonalize(m)
    # gcd/lcm exchange turns any diagonal form into the divisibility chain
    d = sorted(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            if g:
                d[i], d[j] = g, d[i] * d[j] // g
    r = len(d)
    d += [0] * (min(m.rows, m.cols) - r)
    return SnfResult(tuple(d), r)


def lattice_index(generators: Sequence[Sequence[int]], ambient_dim: int) -> int:
    """Index [Z^n : L] of the subgroup generated by ``generators``."""
    if not generators:
        raise RankDeficient("no generators")
    if any(len(g) != ambient_dim for g in generators):
        raise ValueError("generator length differs from ambient dimension")
    snf = smith_normal_form(generators)
    if snf.rank < ambient_dim:
        raise RankDeficient(
            f"generators span a rank-{snf.rank} sublattice of Z^{ambient_dim}")
    return math.prod(snf.invariant_factors)


def saturate(directions: Sequence[Sequence[int]]) -> list[IntVector]:
    """Z-basis of span_R(directions) intersected with Z^n."""
    directions = [tuple(int(x) for x in d) for d in directions]
    if not directions:
        return []
    m = IntegerMatrix.from_rows(directions)
    diag, vinv = _smith_diagonalize(m)
    return [tuple(vinv[i]) for i in range(len(diag))]


def hermite_normal_form(m: MatrixLike) -> IntegerMatrix:
    """Row-style Hermite normal form of the row lattice of ``m``.

    Nonzero rows come first, pivots are positive and strictly move right,
    and entries above a pivot are reduced into [0, pivot).
    """
    m = as_matrix(m)
    a = m.to_rows()
    r = 0
    for c in range(m.cols):
        while True:
            nz = [i for i in range(r, m.rows) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            clean = True
            for i in range(r + 1, m.rows):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if a[i][c]:
                    clean = False
            if clean:
                break
        if r < m.rows and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return IntegerMatrix.from_rows(a) if a else IntegerMatrix(0, m.cols, ())


def select_independent_subsystem(normals: Sequence[Sequence[int]], r: int) -> list[int]:
    """Greedy lexicographically-first indices of ``r`` independent normals."""
    chosen: list[int] = []
    for i, v in enumerate(normals):
        if len(chosen) == r:
            break
        if rank([normals[j] for j in chosen] + [v]) == len(chosen) + 1:
            chosen.append(i)
    if len(chosen) < r:
        raise InsufficientRank(
            f"normals span dimension {len(chosen)} < required {r}")
    return chosen
