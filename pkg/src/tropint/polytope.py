"""Exact lattice polytope geometry for ambient dimension at most four.

Hulls are computed with integer orientation predicates only.  Lower
dimensional point sets are handled by projecting onto a coordinate chart,
i.e. a subset of coordinates on which the projection is injective on the
affine hull; such a projection preserves the face structure.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (DimensionMismatch, DimensionTooLarge, EmptyInput,
                     NonIntegralNormalizedVolume)
from .lattice import content, determinant, rank, rref

MAX_DIM = 4


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _dot(a, b):
    return sum(map(operator.mul, a, b))


def affine_rank(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([_sub(p, p0) for p in points[1:]])


def chart(points: Sequence[Sequence]) -> list[int]:
    """Coordinates on which projection is injective on the affine hull."""
    if len(points) <= 1:
        return []
    p0 = points[0]
    _, pivots = rref([_sub(p, p0) for p in points[1:]])
    return pivots


def _normal(rows: Sequence[Sequence[int]]) -> tuple:
    """Generalized cross product of k-1 integer vectors in Z^k."""
    k = len(rows[0])
    if k == 3:
        (a1, a2, a3), (b1, b2, b3) = rows
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    out = []
    for j in range(k):
        minor = [[r[c] for c in range(k) if c != j] for r in rows]
        out.append((-1) ** j * determinant(minor))
    return tuple(out)


def _hull_2d(pts: Sequence[tuple]) -> list[tuple]:
    """Counter-clockwise strict hull vertices (monotone chain)."""
    ps = sorted(set(pts))
    if len(ps) <= 2:
        return ps

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in ps:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(ps):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _simplicial_hull(pts: Sequence[tuple]) -> dict:
    """Beneath-beyond triangulated boundary of a full-dimensional point set.

    Returns {frozenset of k point indices: (outward normal, offset)} with
    normal.x <= offset on the hull.  Coplanar adjacent simplices may occur.
    """
    k = len(pts[0])
    simplex = [0]
    dirs: list[tuple] = []
    for i in range(1, len(pts)):
        d = _sub(pts[i], pts[0])
        if rank(dirs + [d]) > len(dirs):
            dirs.append(d)
            simplex.append(i)
            if len(simplex) == k + 1:
                break
    if len(simplex) != k + 1:
        raise ValueError("point set is not full-dimensional")
    centre = tuple(sum(pts[i][c] for i in simplex) for c in range(k))

    def make(face):
        face = sorted(face)
        base = pts[face[0]]
        a = _normal([_sub(pts[j], base) for j in face[1:]])
        b = _dot(a, base)
        s = _dot(a, centre) - (k + 1) * b
        if s > 0:
            a, b = tuple(-x for x in a), -b
        elif s == 0:
            raise AssertionError("degenerate simplicial facet")
        return a, b

    facets = {}
    for j in simplex:
        f = frozenset(i for i in simplex if i != j)
        facets[f] = make(f)
    in_simplex = set(simplex)
    # far points first: interior points then fail the visibility test early
    order = sorted((i for i in range(len(pts)) if i not in in_simplex),
                   key=lambda i: -sum(((k + 1) * x - c) ** 2 for x, c in zip(pts[i], centre)))
    for i in order:
        p = pts[i]
        visible = [f for f, (a, b) in facets.items() if _dot(a, p) > b]
        if not visible:
            continue
        count: dict = {}
        for f in visible:
            for j in f:
                r = f - {j}
                count[r] = count.get(r, 0) + 1
        for f in visible:
            del facets[f]
        for r, c in count.items():
            if c == 1:
                f = r | {i}
                facets[f] = make(f)
    return facets


def _primitive_halfspace(a, b):
    g = content(a)
    return tuple(x // g for x in a), Fraction(b, g)


def _full_facets(pts: Sequence[tuple]) -> list[tuple]:
    """Facet halfspaces (primitive normal, offset) of a full-dim point set."""
    k = len(pts[0])
    if k == 1:
        xs = [p[0] for p in pts]
        return [((-1,), Fraction(-min(xs))), ((1,), Fraction(max(xs)))]
    if k == 2:
        hull = _hull_2d(pts)
        out = []
        for p, q in zip(hull, hull[1:] + hull[:1]):
            a = (q[1] - p[1], p[0] - q[0])
            out.append(_primitive_halfspace(a, _dot(a, p)))
        return out
    seen = {}
    for a, b in _simplicial_hull(pts).values():
        pa, pb = _primitive_halfspace(a, b)
        seen[pa] = pb
    return sorted(seen.items())


def _embed(vec, coords, n):
    out = [0] * n
    for v, c in zip(vec, coords):
        out[c] = v
    return tuple(out)


def facets_of(points: Sequence[tuple]) -> list[tuple]:
    """Facets of conv(points) relative to its affine hull.

    Returns a list of (indices of points on the facet, normal, offset) where
    the normal lives on the chart coordinates (zero elsewhere) and every
    point satisfies normal.p <= offset with equality exactly on the facet.
    """
    points = [tuple(p) for p in points]
    n = len(points[0])
    coords = chart(points)
    if not coords:
        return []
    proj = [tuple(p[c] for c in coords) for p in points]
    out = []
    for a, b in _full_facets(proj):
        idx = frozenset(i for i, q in enumerate(proj) if _dot(a, q) == b)
        out.append((idx, _embed(a, coords, n), b))
    return out


def face_lattice(points: Sequence[tuple]) -> dict[int, list[frozenset]]:
    """All nonempty faces of conv(points) as sets of points, keyed by dimension.

    A face is recorded with every input point lying on it, not just its
    vertices.  The polytope itself appears at its own dimension.
    """
    points = [tuple(p) for p in points]
    seen: dict[frozenset, int] = {}

    def visit(face: frozenset, d: int):
        if face in seen:
            return
        seen[face] = d
        if d == 0:
            return
        pts = sorted(face)
        for idx, _, _ in facets_of(pts):
            sub = frozenset(pts[i] for i in idx)
            visit(sub, d - 1)

    whole = frozenset(points)
    visit(whole, affine_rank(sorted(whole)))
    out: dict[int, list[frozenset]] = {}
    for face, d in seen.items():
        out.setdefault(d, []).append(face)
    for d in out:
        out[d].sort(key=sorted)
    return out


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: tuple  # sorted tuple of integer tuples, irredundant
    dim: int

    @cached_property
    def facets(self) -> list[tuple]:
        """(vertex indices, chart normal, offset) triples, see :func:`facets_of`."""
        return facets_of(list(self.vertices))

    def contains(self, point: Sequence) -> bool:
        """Exact membership test (point may be rational)."""
        if len(self.vertices) == 1:
            return tuple(point) == self.vertices[0]
        v0 = self.vertices[0]
        dirs = [_sub(v, v0) for v in self.vertices[1:]]
        red, _ = rref(dirs + [_sub(point, v0)])
        if len(red) > self.dim:
            return False
        return all(_dot(a, point) <= b for _, a, b in self.facets)

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(self.ambient_dim,
                               tuple(sorted(_add(v, t) for v in self.vertices)),
                               self.dim)

    def scale(self, k: int) -> "LatticePolytope":
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return LatticePolytope(self.ambient_dim,
                               tuple(tuple(k * x for x in v) for v in self.vertices),
                               self.dim)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise EmptyInput("convex hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch("points of differing dimension")
    if n > MAX_DIM:
        raise DimensionTooLarge(f"ambient dimension {n} exceeds {MAX_DIM}")
    d = affine_rank(pts)
    if d == 0:
        return LatticePolytope(n, (pts[0],), 0)
    coords = list(range(n)) if d == n else chart(pts)
    proj = [tuple(p[c] for c in coords) for p in pts]
    if d == 1:
        verts = [pts[proj.index(min(proj))], pts[proj.index(max(proj))]]
    elif d == 2:
        lookup = dict(zip(proj, pts))
        verts = [lookup[q] for q in _hull_2d(proj)]
    else:
        halfspaces = _full_facets(proj)
        verts = []
        for p, q in zip(pts, proj):
            tight = [a for a, b in halfspaces if _dot(a, q) == b]
            if len(tight) >= d and rank(tight) == d:
                verts.append(p)
    return LatticePolytope(n, tuple(sorted(verts)), d)


def l1_diameter(support: Sequence[Sequence[int]]) -> int:
    if not support:
        raise EmptyInput("diameter of an empty support")
    return max(sum(abs(x - y) for x, y in zip(a, b))
               for a in support for b in support)


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatch(
            f"Minkowski sum of polytopes in R^{p.ambient_dim} and R^{q.ambient_dim}")
    return convex_hull(_add(a, b) for a in p.vertices for b in q.vertices)


def _normalized_volume_int(p: LatticePolytope) -> int:
    """n! * volume as an exact integer (0 unless full-dimensional)."""
    n = p.ambient_dim
    if p.dim < n:
        return 0
    vs = list(p.vertices)
    if n == 1:
        return vs[-1][0] - vs[0][0]
    if n == 2:
        ring = _hull_2d(vs)
        return sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(ring, ring[1:] + ring[:1]))
    v0 = vs[0]
    total = 0
    for face in _simplicial_hull(vs):
        total += abs(determinant([_sub(vs[i], v0) for i in face]))
    return total


def volume(p: LatticePolytope) -> Fraction:
    """Euclidean volume; zero for polytopes that are not full-dimensional."""
    return Fraction(_normalized_volume_int(p), math.factorial(p.ambient_dim))


def normalized_volume(p: LatticePolytope) -> Fraction:
    nv = volume(p) * math.factorial(p.ambient_dim)
    if nv.denominator != 1:
        raise NonIntegralNormalizedVolume(f"normalized volume {nv} is not an integer")
    return nv


def _check_tuple(polys: Sequence[LatticePolytope]) -> int:
    if not polys:
        raise EmptyInput("mixed volume of no polytopes")
    n = polys[0].ambient_dim
    if any(p.ambient_dim != n for p in polys) or len(polys) != n:
        raise DimensionMismatch(
            f"mixed volume needs exactly n polytopes in R^n, got {len(polys)} "
            f"in R^{sorted({p.ambient_dim for p in polys})}")
    return n


def _sum_all(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    acc = polys[0]
    for q in polys[1:]:
        acc = minkowski_sum(acc, q)
    return acc


def mixed_volume_ie(*polys: LatticePolytope) -> Fraction:
    """Normalized mixed volume n!*MV by inclusion-exclusion over subset sums."""
    n = _check_tuple(polys)
    total = 0
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in itertools.combinations(polys, size):
            total += sign * _normalized_volume_int(_sum_all(subset))
    # each term is n!*Vol; the alternating sum is n!*MV
    return Fraction(total, math.factorial(n))


def _linear_lagrange_coefficients(nodes: Sequence[int]) -> list[Fraction]:
    """Coefficient of t^1 in each Lagrange basis polynomial on ``nodes``."""
    out = []
    for k, xk in enumerate(nodes):
        poly = [Fraction(1)]  # ascending coefficients
        for m, xm in enumerate(nodes):
            if m == k:
                continue
            scale = Fraction(1, xk - xm)
            nxt = [Fraction(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i] += -xm * c * scale
                nxt[i + 1] += c * scale
            poly = nxt
        out.append(poly[1])
    return out


def mixed_volume_interp(*polys: LatticePolytope) -> Fraction:
    """Normalized mixed volume as the coefficient of l1*...*ln in Vol(sum li Pi).

    Vol(l1 P1 + ... + ln Pn) has degree at most n in each li, so tensor
    Lagrange interpolation on {1..n+1}^n recovers it exactly.
    """
    n = _check_tuple(polys)
    nodes = list(range(1, n + 2))
    weights = _linear_lagrange_coefficients(nodes)
    total = Fraction(0)
    for grid in itertools.product(range(len(nodes)), repeat=n):
        w = math.prod(weights[g] for g in grid)
        if w == 0:
            continue
        scaled = [p.scale(nodes[g]) for p, g in zip(polys, grid)]
        total += w * volume(_sum_all(scaled))
    return total


def mixed_volume(*polys: LatticePolytope) -> Fraction:
    """Unnormalized mixed volume, with MV(P, ..., P) = Vol(P)."""
    return mixed_volume_ie(*polys) / math.factorial(len(polys))


def standard_simplex(n: int, d: int = 1) -> LatticePolytope:
    """conv{0, d e1, ..., d en}."""
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(d * int(i == j) for j in range(n)) for i in range(n)]
    return convex_hull(pts)
