"""Stable intersections of tropical hypersurfaces and their multiplicities."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (DimensionMismatch, DimensionTooLarge, InvalidCodimension,
                     NonGenericInstance, NonGenericPerturbation, NotTransverse)
from .lattice import determinant, lattice_index, primitive, select_independent_subsystem
from .polytope import (LatticePolytope, affine_rank, convex_hull, minkowski_sum,
                       mixed_volume_ie, standard_simplex, volume)
from .tropical import (HypersurfaceComplex, SubdivisionCell, TropicalPolynomial,
                       evaluate, hypersurface, regular_subdivision, tropical_product)

DEFAULT_EPSILONS = (Fraction(1, 997), Fraction(1, 9973))
EPSILON_SHRINK = Fraction(1, 1000)
EPSILON_RETRIES = 5
DEFAULT_SHIFTS = ((1, 2), (2, -3), (3, 5), (-5, 7), (7, 11), (11, -13))


@dataclass(frozen=True)
class IntersectionPoint:
    location: tuple
    multiplicity: int
    contributing_normals: tuple
    contributing_weights: tuple
    transverse: bool = True


@dataclass(frozen=True)
class MixedCell:
    summands: tuple  # SubdivisionCell per input polynomial
    total_dim: int
    location: tuple  # dual point where every summand face dominates

    @property
    def dims(self) -> tuple:
        return tuple(s.dim for s in self.summands)

    @property
    def is_fully_mixed(self) -> bool:
        # every summand must be positive-dimensional: a 0-dim summand means the
        # dual point is off that hypersurface
        return (all(d >= 1 for d in self.dims)
                and sum(self.dims) == self.total_dim == len(self.location))

    def polytope(self) -> LatticePolytope:
        acc = convex_hull(self.summands[0].support_points)
        for s in self.summands[1:]:
            acc = minkowski_sum(acc, convex_hull(s.support_points))
        return acc

    def lattice_volume(self) -> Fraction:
        """Volume in units of the unit cube; |det| of the edges for a parallelotope.

        This is *not* n! * Vol: a fully mixed cell E1 + ... + En has lattice
        volume |det(E1, ..., En)|, which is the local intersection multiplicity.
        """
        return volume(self.polytope())


def transverse_multiplicity(normals: Sequence[Sequence[int]], weights: Sequence[int]) -> int:
    """(prod weights) * |det(normals)|, cross-checked against the lattice index."""
    n = len(normals)
    if any(len(v) != n for v in normals):
        raise DimensionMismatch("need n normals in Z^n")
    if len(weights) != n or any(w < 1 for w in weights):
        raise ValueError("need one positive weight per normal")
    det = determinant(normals)
    if det == 0:
        raise NotTransverse("normals are linearly dependent")
    index = lattice_index(normals, n)
    if index != abs(det):
        raise AssertionError(f"lattice index {index} != |det| {abs(det)}")
    return math.prod(weights) * abs(det)


# -- planar geometry of hypersurface facets ---------------------------------

class _Piece(NamedTuple):
    origin: tuple
    direction: tuple
    lo: Fraction | None  # None means unbounded
    hi: Fraction | None


def _piece(cell) -> _Piece:
    """Parametrize a 1-dimensional cell as origin + t*direction, t in [lo, hi]."""
    verts = cell.vertices
    if len(verts) == 2:
        a, b = verts
        return _Piece(a, tuple(y - x for x, y in zip(a, b)), Fraction(0), Fraction(1))
    (a,) = verts
    if cell.rays:
        return _Piece(a, cell.rays[0], Fraction(0), None)
    return _Piece(a, cell.lineality[0], None, None)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _within(t, lo, hi):
    return (lo is None or t >= lo) and (hi is None or t <= hi)


def _piece_intersection(pa: _Piece, pb: _Piece):
    """Intersection of two pieces: None, ('point', x) or ('overlap', x)."""
    det = _cross(pa.direction, pb.direction)
    diff = tuple(y - x for x, y in zip(pa.origin, pb.origin))
    if det != 0:
        t = Fraction(_cross(diff, pb.direction)) / det
        s = Fraction(_cross(diff, pa.direction)) / det
        if _within(t, pa.lo, pa.hi) and _within(s, pb.lo, pb.hi):
            return ("point", tuple(o + t * d for o, d in zip(pa.origin, pa.direction)))
        return None
    if _cross(diff, pa.direction) != 0:
        return None
    # collinear: map pb's parameter interval into pa's parameter
    dd = sum(x * x for x in pa.direction)
    scale = Fraction(sum(x * y for x, y in zip(pb.direction, pa.direction)), dd)
    shift = Fraction(sum(x * y for x, y in zip(diff, pa.direction)), dd)
    ends = [None if e is None else shift + scale * e for e in (pb.lo, pb.hi)]
    if scale < 0:
        ends.reverse()
    lo = pa.lo if ends[0] is None else (ends[0] if pa.lo is None else max(pa.lo, ends[0]))
    hi = pa.hi if ends[1] is None else (ends[1] if pa.hi is None else min(pa.hi, ends[1]))
    if lo is not None and hi is not None and lo > hi:
        return None
    t = lo if lo is not None else (hi if hi is not None else Fraction(0))
    return ("overlap", tuple(o + t * d for o, d in zip(pa.origin, pa.direction)))


def _require_plane(*hs: HypersurfaceComplex):
    for h in hs:
        if h.ambient_dim != 2:
            raise DimensionMismatch("planar intersection needs complexes in R^2")


def _ordinary_crossings(h1: HypersurfaceComplex, h2: HypersurfaceComplex) -> list[tuple]:
    """Transverse crossings of two planar curves.

    Returns [(edge1, edge2, location, multiplicity, normals, weights)], or
    raises NotTransverse if the curves share a segment, a vertex of one lies
    on the other, or two facets meet without crossing.
    """
    out = []
    for f1 in h1.facets:
        p1 = _piece(f1.cell)
        for f2 in h2.facets:
            hit = _piece_intersection(p1, _piece(f2.cell))
            if hit is None:
                continue
            kind, x = hit
            if kind == "overlap":
                raise NotTransverse(f"curves overlap near {x}")
            _, a1 = evaluate(h1.polynomial, x)
            _, a2 = evaluate(h2.polynomial, x)
            if frozenset(f1.cell.dual) != a1 or frozenset(f2.cell.dual) != a2:
                raise NotTransverse(f"curves meet at a vertex near {x}")
            det = _cross(f1.normal, f2.normal)
            if det == 0:
                raise NotTransverse(f"parallel facets touch at {x}")
            out.append((f1.dual_edge, f2.dual_edge, x,
                        f1.weight * f2.weight * abs(det),
                        (f1.normal, f2.normal), (f1.weight, f2.weight)))
    return out


def _as_points(crossings) -> list[IntersectionPoint]:
    pts = [IntersectionPoint(x, m, normals, weights)
           for _, _, x, m, normals, weights in crossings]
    pts.sort(key=lambda q: q.location)
    return pts


def perturbation_oracle_2d(h1: HypersurfaceComplex, h2: HypersurfaceComplex,
                           v: Sequence[int],
                           eps: Fraction = DEFAULT_EPSILONS[0],
                           eps2: Fraction = DEFAULT_EPSILONS[1]) -> list[IntersectionPoint]:
    """Stable intersection as the limit of h1 ∩ (h2 + eps*v) as eps -> 0.

    Crossings are computed exactly at two values of eps.  They must pair up
    facet-by-facet with equal multiplicities; each crossing moves affinely in
    eps, so its limit is extrapolated exactly and crossings with a common
    limit are merged into one stable point.
    """
    _require_plane(h1, h2)
    if len(v) != 2 or not any(v):
        raise ValueError("shift must be a nonzero vector in Z^2")
    eps, eps2 = Fraction(eps), Fraction(eps2)
    if eps <= 0 or eps2 <= 0 or eps == eps2:
        raise ValueError("need two distinct positive perturbation sizes")
    for _ in range(EPSILON_RETRIES + 1):
        try:
            a = _ordinary_crossings(h1, hypersurface(h2.polynomial.translated(
                tuple(eps * x for x in v))))
            b = _ordinary_crossings(h1, hypersurface(h2.polynomial.translated(
                tuple(eps2 * x for x in v))))
        except NotTransverse:
            a = b = None
        if a is not None:
            ka = {(c[0], c[1]): c for c in a}
            kb = {(c[0], c[1]): c for c in b}
            if ka.keys() == kb.keys() and all(ka[k][3] == kb[k][3] for k in ka):
                break
        eps *= EPSILON_SHRINK
        eps2 *= EPSILON_SHRINK
    else:
        raise NonGenericPerturbation(f"shift {tuple(v)} is not generic for this pair")

    clusters: dict[tuple, list] = {}
    for key, ca in ka.items():
        xa, xb = ca[2], kb[key][2]
        limit = tuple((eps2 * s - eps * t) / (eps2 - eps) for s, t in zip(xa, xb))
        clusters.setdefault(limit, []).append(ca)
    points = []
    for loc, members in clusters.items():
        members.sort(key=lambda c: (c[0], c[1]))
        transverse = (len(members) == 1
                      and _is_transverse_point(h1, h2, loc))
        points.append(IntersectionPoint(
            loc, sum(c[3] for c in members),
            tuple(nv for c in members for nv in c[4]),
            tuple(w for c in members for w in c[5]),
            transverse))
    points.sort(key=lambda q: q.location)
    return points


def _is_transverse_point(h1, h2, x) -> bool:
    f1, f2 = h1.facet_at(x), h2.facet_at(x)
    return f1 is not None and f2 is not None and _cross(f1.normal, f2.normal) != 0


def stable_intersection_2d(h1: HypersurfaceComplex, h2: HypersurfaceComplex,
                           shifts: Sequence[Sequence[int]] = DEFAULT_SHIFTS) -> list[IntersectionPoint]:
    """Isolated stable intersection points of two plane tropical curves.

    Transverse pairs are intersected directly.  Otherwise the result is the
    perturbation limit, trying the given shift vectors in order.
    """
    _require_plane(h1, h2)
    try:
        return _as_points(_ordinary_crossings(h1, h2))
    except NotTransverse:
        pass
    for v in shifts:
        try:
            return perturbation_oracle_2d(h1, h2, v)
        except NonGenericPerturbation:
            continue
    raise NonGenericPerturbation("no generic shift found among the candidates")


def total_multiplicity(points: Sequence[IntersectionPoint]) -> int:
    return sum(q.multiplicity for q in points)


# -- mixed subdivisions ------------------------------------------------------

def mixed_cells(*polys: TropicalPolynomial) -> list[MixedCell]:
    """Maximal cells of the mixed subdivision induced by the combined lifting.

    The subdivision is read off the tropical product of the inputs; each
    cell's summand faces are the dominant faces of the factors at the cell's
    dual point.
    """
    n = polys[0].ambient_dim
    if n > 3:
        raise DimensionTooLarge("mixed subdivisions are capped at dimension 3")
    if len(polys) > n:
        raise DimensionMismatch(f"at most {n} polynomials in R^{n}")
    q = tropical_product(*polys)
    out = []
    for cell in regular_subdivision(q):
        if cell.dim != n:
            continue
        x = cell.witness
        summands = []
        for p in polys:
            face = tuple(sorted(evaluate(p, x)[1]))
            summands.append(SubdivisionCell(face, affine_rank(face), x))
        out.append(MixedCell(tuple(summands), cell.dim, x))
    return out


def _simplex_support(n: int) -> set:
    return set(standard_simplex(n).vertices)


def bernstein_total(polys: Sequence[TropicalPolynomial],
                    linear_space: Sequence[TropicalPolynomial] | None = None) -> int:
    """Total stable multiplicity of V(p1)...V(pr) against a generic linear space.

    The linear space is given by n - r tropical hyperplanes with support
    {0, e1, ..., en}.  The total is summed over fully mixed cells and checked
    against the normalized mixed volume.
    """
    polys = list(polys)
    linear_space = list(linear_space or [])
    n = polys[0].ambient_dim
    if len(polys) + len(linear_space) != n:
        raise DimensionMismatch(
            f"{len(polys)} polynomials need {n - len(polys)} hyperplanes, "
            f"got {len(linear_space)}")
    simplex = _simplex_support(n)
    for h in linear_space:
        if set(h.support) != simplex:
            raise ValueError("hyperplanes of the linear space must have simplex support")
    total = 0
    for cell in mixed_cells(*polys, *linear_space):
        if not all(d >= 1 for d in cell.dims):
            continue
        if sum(cell.dims) > n:
            raise NonGenericInstance(
                f"coarse mixed cell of type {cell.dims} at {cell.location}; "
                "perturb coefficients")
        total += cell.lattice_volume()
    expected = mixed_volume_ie(*[p.newton_polytope() for p in polys],
                               *[standard_simplex(n)] * len(linear_space))
    if total != expected:
        raise NonGenericInstance(
            f"fully mixed cells give {total} but the mixed volume is {expected}")
    return total


# -- redundant systems ------------------------------------------------------

def bezout_table(supports: Sequence[Sequence[Sequence[int]]], r: int, n: int) -> list[tuple]:
    """[(index subset, n! MV(subset polytopes, simplex x (n - r)))] for all r-subsets."""
    k = len(supports)
    if not 1 <= r <= min(k, n):
        raise InvalidCodimension(f"need 1 <= r <= min(k, n) = {min(k, n)}, got {r}")
    polys = [convex_hull(s) for s in supports]
    if any(p.ambient_dim != n for p in polys):
        raise DimensionMismatch(f"supports must live in Z^{n}")
    simplex = standard_simplex(n)
    rows = []
    for subset in itertools.combinations(range(k), r):
        value = mixed_volume_ie(*[polys[i] for i in subset], *[simplex] * (n - r))
        rows.append((subset, value))
    return rows


def bezout_bound(supports: Sequence[Sequence[Sequence[int]]], r: int, n: int) -> Fraction:
    return max(value for _, value in bezout_table(supports, r, n))


class LocalBound(NamedTuple):
    multiplicity: int
    bound: Fraction
    ok: bool


def local_multiplicity_bound_check(normals_all: Sequence[Sequence[int]],
                                   weights: Sequence[int],
                                   l_normals: Sequence[Sequence[int]],
                                   supports: Sequence[Sequence[Sequence[int]]]) -> LocalBound:
    """Compare the determinant multiplicity of a local subsystem to its mixed volume.

    ``supports[i]`` is the support of the polynomial contributing
    ``normals_all[i]``.
    """
    n = len(normals_all[0])
    r = n - len(l_normals)
    chosen = select_independent_subsystem(normals_all, r)
    mult = transverse_multiplicity(
        [normals_all[i] for i in chosen] + [tuple(m) for m in l_normals],
        [weights[i] for i in chosen] + [1] * len(l_normals))
    polys = [convex_hull(supports[i]) for i in chosen]
    bound = mixed_volume_ie(*polys, *[standard_simplex(n)] * (n - r))
    return LocalBound(mult, bound, mult <= bound)


def local_normal(p: TropicalPolynomial, x: Sequence) -> tuple[tuple, int] | None:
    """(primitive normal, weight) of the facet of V(p) through x, if x is on one."""
    _, dominant = evaluate(p, x)
    pts = sorted(dominant)
    if len(pts) < 2 or affine_rank(pts) != 1:
        return None
    e = tuple(b - a for a, b in zip(pts[0], pts[-1]))
    g = math.gcd(*e)
    return primitive(e), g
