"""Max-plus tropical polynomials and their hypersurfaces.

The hypersurface of ``p(x) = max(<x, a> + c_a)`` is built from the regular
subdivision of the Newton polytope induced by the *upper* hull of the lifted
points ``(a, c_a)``.  Every cell ``C`` of dimension at least one of that
subdivision is dual to the polyhedron of points whose dominant terms
contain ``C``; such a polyhedron is stored as

    conv(vertices) + cone(rays) + span(lineality)

with the vertices being the dual points of the maximal cells around ``C``.
Membership on the hypersurface is always decided by exact ties in the
maximum, never by distances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import (DimensionMismatch, DimensionTooLarge, EmptyInput,
                     PointNotOnHypersurface)
from .lattice import content, integer_kernel, primitive, solve
from .polytope import (LatticePolytope, _full_facets, affine_rank, chart,
                       convex_hull, face_lattice, facets_of)

MAX_SUBDIVISION_DIM = 4
MAX_COMPLEX_DIM = 3


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class TropicalPolynomial:
    ambient_dim: int
    terms: tuple  # ((exponent, Fraction coefficient), ...) sorted by exponent

    def __post_init__(self):
        if not self.terms:
            raise EmptyInput("a tropical polynomial needs at least one term")
        exps = [e for e, _ in self.terms]
        if any(len(e) != self.ambient_dim for e in exps):
            raise DimensionMismatch("exponent length differs from ambient dimension")
        if len(set(exps)) != len(exps):
            raise ValueError("duplicate exponents")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple], ambient_dim: int | None = None):
        """Build from (exponent, coefficient) pairs; coefficients may be str/int."""
        items = [(tuple(int(x) for x in e), Fraction(c)) for e, c in terms]
        if ambient_dim is None:
            if not items:
                raise EmptyInput("cannot infer dimension of an empty polynomial")
            ambient_dim = len(items[0][0])
        return cls(ambient_dim, tuple(sorted(items)))

    @classmethod
    def from_dict(cls, coefficients: Mapping[tuple, object]):
        return cls.from_terms(coefficients.items())

    @property
    def support(self) -> list[tuple]:
        return [e for e, _ in self.terms]

    @property
    def coefficients(self) -> dict:
        return dict(self.terms)

    def newton_polytope(self) -> LatticePolytope:
        return convex_hull(self.support)

    def translated(self, shift: Sequence) -> "TropicalPolynomial":
        """Polynomial whose hypersurface is this one moved by ``shift``."""
        return TropicalPolynomial(
            self.ambient_dim,
            tuple((e, c - _dot(shift, e)) for e, c in self.terms))

    def __call__(self, x):
        return evaluate(self, x)[0]


def tropical_product(*polys: TropicalPolynomial) -> TropicalPolynomial:
    """Tropical product: exponents add, coefficients add, max over collisions.

    Its hypersurface is the union of the factors' hypersurfaces and its
    regular subdivision is the mixed subdivision of the Minkowski sum.
    """
    acc = {tuple(0 for _ in range(polys[0].ambient_dim)): Fraction(0)}
    for p in polys:
        if p.ambient_dim != polys[0].ambient_dim:
            raise DimensionMismatch("factors live in different dimensions")
        nxt: dict = {}
        for e1, c1 in acc.items():
            for e2, c2 in p.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 + c2
                if e not in nxt or c > nxt[e]:
                    nxt[e] = c
        acc = nxt
    return TropicalPolynomial.from_dict(acc)


def evaluate(p: TropicalPolynomial, x: Sequence) -> tuple[Fraction, frozenset]:
    """Value of ``p`` at ``x`` and the set of exponents attaining it."""
    if len(x) != p.ambient_dim:
        raise DimensionMismatch(f"point has length {len(x)}, expected {p.ambient_dim}")
    vals = [(_dot(x, e) + c, e) for e, c in p.terms]
    best = max(v for v, _ in vals)
    return Fraction(best), frozenset(e for v, e in vals if v == best)


def on_hypersurface(p: TropicalPolynomial, x: Sequence) -> bool:
    return len(evaluate(p, x)[1]) >= 2


@dataclass(frozen=True)
class SubdivisionCell:
    support_points: tuple  # sorted exponents whose lifts lie on the cell's face
    dim: int
    witness: tuple  # x with argmax p(x) == support_points

    def polytope(self) -> LatticePolytope:
        return convex_hull(self.support_points)


def regular_subdivision(p: TropicalPolynomial) -> list[SubdivisionCell]:
    """Maximal cells of the subdivision induced by the upper hull of the lift."""
    n = p.ambient_dim
    if n > MAX_SUBDIVISION_DIM:
        raise DimensionTooLarge(f"subdivisions are capped at dimension {MAX_SUBDIVISION_DIM}")
    pts = p.support
    coef = p.coefficients
    if len(pts) == 1:
        return [SubdivisionCell((pts[0],), 0, tuple(Fraction(0) for _ in range(n)))]
    d = affine_rank(pts)
    coords = chart(pts)
    den = reduce(math.lcm, (c.denominator for c in coef.values()), 1)
    lifted = [tuple(a[j] for j in coords) + (int(coef[a] * den),) for a in pts]

    def embed(xj):
        x = [Fraction(0)] * n
        for v, j in zip(xj, coords):
            x[j] = Fraction(v)
        return tuple(x)

    cells = []
    if affine_rank(lifted) == d:
        # the lift is affine: one coarse cell; solve <x, a> + c_a = const
        rows = [[a[j] for j in coords] + [-1] for a in pts]
        sol = solve(rows, [-coef[a] for a in pts])
        cells.append(SubdivisionCell(tuple(pts), d, embed(sol[:d])))
    else:
        for a, b in _full_facets(lifted):
            if a[-1] <= 0:
                continue
            members = tuple(pt for pt, q in zip(pts, lifted) if _dot(a, q) == b)
            witness = embed([Fraction(v, a[-1] * den) for v in a[:-1]])
            cells.append(SubdivisionCell(members, d, witness))
    cells.sort(key=lambda c: c.support_points)
    for c in cells:
        if evaluate(p, c.witness)[1] != frozenset(c.support_points):
            raise AssertionError(f"witness {c.witness} does not certify cell {c.support_points}")
    return cells


def _ext_gcd_combination(values: Sequence[int]) -> tuple[int, list[int]]:
    """g >= 0 and integer coefficients with sum(coef * value) == g."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        if v == 0:
            continue
        # extended Euclid on (g, v)
        old_r, r = g, v
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    return g, coeffs


def outgoing_direction(big: Sequence[tuple], small: Sequence[tuple]) -> tuple:
    """Primitive generator of (Z^n ∩ small^⊥) / (Z^n ∩ big^⊥) pointing at ``small``.

    ``small`` is a facet of the polytope conv(big).  The returned integer
    vector u is orthogonal to ``small`` and its linear functional, restricted
    to ``big``, is maximized exactly on ``small``.  Dually, u is the
    primitive direction in which the hypersurface cell dual to ``small``
    leaves the cell dual to ``big``.
    """
    small = sorted(small)
    base = small[0]
    n = len(base)
    sdirs = [_sub(q, base) for q in small[1:]]
    basis = integer_kernel(sdirs, n) if sdirs else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]
    span = set(small)
    for beta in big:
        if beta in span:
            continue
        f = _sub(beta, base)
        vals = [_dot(b, f) for b in basis]
        if any(vals):
            break
    else:
        raise ValueError("small face spans the big face")
    g, coeffs = _ext_gcd_combination(vals)
    u = tuple(-sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(n))
    return u


@dataclass(frozen=True)
class HCell:
    """A cell of the hypersurface, dual to a subdivision face."""
    dim: int
    dual: tuple  # support points of the dual face
    point: tuple  # relative interior point
    vertices: tuple  # rational vertices of the bounded part
    rays: tuple  # recession generators (primitive, modulo lineality)
    lineality: tuple  # Z-basis of the lineality space
    boundary: tuple = ()  # indices into cells[dim - 1]


@dataclass(frozen=True)
class Facet:
    cell: HCell
    directions: tuple  # Z-basis of the facet's direction lattice
    normal: tuple  # primitive(v - u)
    weight: int
    dual_edge: tuple  # (u, v), u lexicographically smaller

    @property
    def base_point(self) -> tuple:
        return self.cell.point


@dataclass(frozen=True)
class HypersurfaceComplex:
    ambient_dim: int
    polynomial: TropicalPolynomial
    subdivision: tuple
    facets: tuple
    cells: dict | None = field(default=None)  # dim -> tuple[HCell]; n <= 3 only

    @property
    def vertices(self) -> list[tuple]:
        if self.cells is None:
            raise DimensionTooLarge("cell incidence is only built for n <= 3")
        return [c.point for c in self.cells.get(0, ())]

    def contains(self, x: Sequence) -> bool:
        return on_hypersurface(self.polynomial, x)

    def facet_at(self, x: Sequence) -> Facet | None:
        """The facet whose relative interior contains ``x``, if any."""
        _, arg = evaluate(self.polynomial, x)
        if len(arg) < 2 or affine_rank(sorted(arg)) != 1:
            return None
        for f in self.facets:
            if frozenset(f.cell.dual) == arg:
                return f
        raise AssertionError("dominant terms form an edge missing from the complex")

    def balancing_sums(self) -> dict:
        """Weighted sum of outgoing facet directions at every codim-1 cell.

        Keys are the dual 2-faces.  In R^2 the value is the integer vector
        sum, which must vanish.  In general the value lists the pairings of
        the sum with the directions of the dual face; balancing holds when
        all of them vanish, i.e. the sum lies in the cell's own span.
        """
        if self.cells is None:
            raise DimensionTooLarge("balancing is only checked for n <= 3")
        by_dual = {frozenset(f.cell.dual): f for f in self.facets}
        out = {}
        for c in self.cells.get(self.ambient_dim - 2, ()):
            face = c.dual
            edges = [e for e in by_dual if e <= frozenset(face)]
            total = [0] * self.ambient_dim
            for e in edges:
                u = outgoing_direction(face, e)
                w = by_dual[e].weight
                total = [t + w * x for t, x in zip(total, u)]
            if self.ambient_dim == 2:
                out[face] = tuple(total)
            else:
                base = face[0]
                out[face] = tuple(_dot(total, _sub(q, base)) for q in face[1:])
        return out

    def is_balanced(self) -> bool:
        return all(not any(v) for v in self.balancing_sums().values())


def _relint_point(p, dual, vertices, rays):
    n = p.ambient_dim
    target = frozenset(dual)
    x0 = tuple(sum(v[k] for v in vertices) / len(vertices) for k in range(n))
    if not rays:
        if evaluate(p, x0)[1] != target:
            raise AssertionError(f"barycentre does not see face {sorted(dual)}")
        return x0
    u = tuple(sum(r[k] for r in rays) for k in range(n))
    t = Fraction(1)
    for _ in range(200):
        x = tuple(a + t * b for a, b in zip(x0, u))
        if evaluate(p, x)[1] == target:
            return x
        t /= 2
    raise AssertionError(f"no relative interior point found for face {sorted(dual)}")


def hypersurface(p: TropicalPolynomial, full: bool | None = None) -> HypersurfaceComplex:
    """Weighted polyhedral complex dual to the regular subdivision of ``p``.

    Facets (with normals and weights) are built for n <= 4; the full cell
    complex with incidences only for n <= 3 unless ``full`` says otherwise.
    """
    n = p.ambient_dim
    if n > MAX_SUBDIVISION_DIM:
        raise DimensionTooLarge(f"hypersurfaces are capped at dimension {MAX_SUBDIVISION_DIM}")
    if full is None:
        full = n <= MAX_COMPLEX_DIM
    elif full and n > MAX_COMPLEX_DIM:
        raise DimensionTooLarge(f"full complexes are capped at dimension {MAX_COMPLEX_DIM}")
    subdivision = tuple(regular_subdivision(p))
    support = p.support
    d = affine_rank(support)
    if d == 0:
        return HypersurfaceComplex(n, p, subdivision, (), {} if full else None)

    faces: dict[frozenset, int] = {}
    for cell in subdivision:
        for k, fs in face_lattice(cell.support_points).items():
            if k >= 1 and (full or k == 1):
                for f in fs:
                    faces[f] = k
    newton_facets = [frozenset(support[i] for i in idx)
                     for idx, _, _ in facets_of(support)]
    newton_normals = [a for _, a, _ in facets_of(support)]
    base = support[0]
    lineality = tuple(integer_kernel([_sub(q, base) for q in support[1:]], n)) if d < n else ()

    hcells: dict[frozenset, HCell] = {}
    for face, k in sorted(faces.items(), key=lambda kv: (-kv[1], sorted(kv[0]))):
        verts = sorted({c.witness for c in subdivision if face <= frozenset(c.support_points)})
        rays = tuple(sorted(a for F, a in zip(newton_facets, newton_normals) if face <= F))
        dual = tuple(sorted(face))
        point = _relint_point(p, dual, verts, rays)
        hcells[face] = HCell(n - k, dual, point, tuple(verts), rays, lineality)

    facets = []
    for face, hc in hcells.items():
        if faces[face] != 1:
            continue
        u, v = hc.dual[0], hc.dual[-1]
        e = _sub(v, u)
        facets.append(Facet(hc, tuple(integer_kernel([e], n)), primitive(e), content(e), (u, v)))
    facets.sort(key=lambda f: f.dual_edge)

    cells = None
    if full:
        by_dim: dict[int, list] = {}
        for face, hc in hcells.items():
            by_dim.setdefault(hc.dim, []).append(hc)
        for k in by_dim:
            by_dim[k].sort(key=lambda c: c.dual)
        index = {k: {c.dual: i for i, c in enumerate(v)} for k, v in by_dim.items()}
        cells = {}
        for k, lst in by_dim.items():
            out = []
            for c in lst:
                bnd = ()
                if k >= 1:
                    mine = frozenset(c.dual)
                    bnd = tuple(sorted(
                        i for dual, i in index.get(k - 1, {}).items()
                        if mine < frozenset(dual)))
                out.append(HCell(c.dim, c.dual, c.point, c.vertices, c.rays, c.lineality, bnd))
            cells[k] = tuple(out)
        # rebuild facets so they share the cells carrying boundary data
        lookup = {c.dual: c for c in cells.get(n - 1, ())}
        facets = [Facet(lookup[f.cell.dual], f.directions, f.normal, f.weight, f.dual_edge)
                  for f in facets]
    return HypersurfaceComplex(n, p, subdivision, tuple(facets), cells)


@dataclass(frozen=True)
class LinkCone:
    rays: tuple  # integer generators, modulo the lineality space
    lineality: tuple  # Z-basis of the cone's lineality space


@dataclass(frozen=True)
class LinkFan:
    base_point: tuple
    cones: tuple


def _small_step(p, omega, direction, dominant):
    """A step size after which no term outside ``dominant`` can win."""
    value = evaluate(p, omega)[0]
    others = [_dot(omega, e) + c for e, c in p.terms if e not in dominant]
    if not others:
        return Fraction(1)
    gap = value - max(others)
    spread = max(abs(_dot(direction, e)) for e in p.support)
    return gap / (2 * (1 + spread))


def link_at(h: HypersurfaceComplex, omega: Sequence) -> LinkFan:
    """Fan of directions u with omega + eps*u in the hypersurface for small eps."""
    p = h.polynomial
    omega = tuple(Fraction(x) for x in omega)
    _, dominant = evaluate(p, omega)
    if len(dominant) < 2:
        raise PointNotOnHypersurface(f"{omega} has a unique dominant term")
    pts = sorted(dominant)
    n = p.ambient_dim
    k = affine_rank(pts)
    base = pts[0]
    lineality = tuple(integer_kernel([_sub(q, base) for q in pts[1:]], n))
    lattice = face_lattice(pts)
    if k == 1:
        edges = [frozenset(pts)]
    else:
        edges = lattice[1]
    top_facets = lattice.get(k - 1, [])
    cones = []
    for edge in edges:
        if k == 1:
            rays = ()
        else:
            rays = tuple(sorted(outgoing_direction(pts, F)
                                for F in top_facets if edge <= F))
        cone = LinkCone(rays, lineality)
        for u in list(rays) + list(lineality) + [tuple(-x for x in v) for v in lineality]:
            eps = _small_step(p, omega, u, dominant)
            y = tuple(a + eps * b for a, b in zip(omega, u))
            if not edge <= evaluate(p, y)[1]:
                raise AssertionError(f"link direction {u} leaves the hypersurface")
        cones.append(cone)
    cones.sort(key=lambda c: (c.rays, c.lineality))
    return LinkFan(omega, tuple(cones))
