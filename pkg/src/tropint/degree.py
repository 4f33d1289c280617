"""Tropical lines, their transverse intersections with hypersurfaces and
empirical tropical degree estimates against the l1-diameter bound."""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, UnsupportedDimension
from .lattice import primitive
from .polytope import affine_rank, l1_diameter
from .tropical import HypersurfaceComplex, TropicalPolynomial, hypersurface

LINE_TYPES_3D = ((0, 1), (0, 2), (1, 2))
DEFAULT_BOX = 20
DEFAULT_MAX_DENOMINATOR = 8
MAX_ATTEMPTS = 50


def _unit(n, i, s=1):
    return tuple(s if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class TropicalLine:
    """Degree-one tropical line in R^2 or R^3.

    ``rays`` holds (vertex index, primitive direction) pairs.  In R^3 the
    bounded edge runs from vertex 0 to vertex 1 in direction e_i + e_j where
    (i, j) = ``combinatorial_type``, and the rays -e_i, -e_j leave vertex 0.
    """
    ambient_dim: int
    vertices: tuple
    rays: tuple
    combinatorial_type: tuple | None = None

    def __post_init__(self):
        n = self.ambient_dim
        if n not in (2, 3):
            raise UnsupportedDimension(f"tropical lines are implemented in R^2 and R^3, not R^{n}")
        for _, d in self.rays:
            if any(x not in (-1, 0, 1) for x in d):
                raise ValueError(f"edge direction {d} has a coordinate outside {{-1, 0, 1}}")
        dirs = sorted(d for _, d in self.rays)
        expected = sorted([_unit(n, i, -1) for i in range(n)] + [tuple([1] * n)])
        if dirs != expected:
            raise ValueError(f"rays {dirs} are not those of a tropical line")
        if n == 2:
            if len(self.vertices) != 1:
                raise ValueError("a plane tropical line has one vertex")
            return
        if len(self.vertices) != 2 or self.combinatorial_type not in LINE_TYPES_3D:
            raise ValueError("a tropical line in R^3 has two vertices and a type in "
                             f"{LINE_TYPES_3D}")
        step = self.bounded_direction
        diff = tuple(b - a for a, b in zip(*self.vertices))
        length = diff[self.combinatorial_type[0]]
        if length <= 0 or diff != tuple(length * s for s in step):
            raise ValueError("bounded edge is not a positive multiple of e_i + e_j")
        for k in (0, 1):
            out = [d for v, d in self.rays if v == k]
            out.append(step if k == 0 else tuple(-s for s in step))
            if len(out) != 3 or any(sum(c) for c in zip(*out)):
                raise ValueError(f"balancing fails at vertex {k}")

    @property
    def bounded_direction(self) -> tuple | None:
        if self.ambient_dim == 2:
            return None
        i, j = self.combinatorial_type
        return tuple(int(k in (i, j)) for k in range(3))

    @classmethod
    def planar(cls, vertex: Sequence) -> "TropicalLine":
        v = tuple(Fraction(x) for x in vertex)
        return cls(2, (v,), tuple((0, d) for d in ((-1, 0), (0, -1), (1, 1))))

    @classmethod
    def spatial(cls, vertex: Sequence, pair: tuple, length) -> "TropicalLine":
        v0 = tuple(Fraction(x) for x in vertex)
        i, j = pair
        (k,) = {0, 1, 2} - {i, j}
        step = tuple(int(m in (i, j)) for m in range(3))
        v1 = tuple(a + Fraction(length) * s for a, s in zip(v0, step))
        rays = ((0, _unit(3, i, -1)), (0, _unit(3, j, -1)),
                (1, _unit(3, k, -1)), (1, (1, 1, 1)))
        return cls(3, (v0, v1), rays, (i, j))

    def pieces(self) -> list[tuple]:
        """Edges as (origin, direction, t_lo, t_hi); t_hi None for rays."""
        out = [(self.vertices[v], d, Fraction(0), None) for v, d in self.rays]
        if self.ambient_dim == 3:
            length = self.vertices[1][self.combinatorial_type[0]] - self.vertices[0][self.combinatorial_type[0]]
            out.insert(0, (self.vertices[0], self.bounded_direction, Fraction(0), length))
        return out


def _random_rational(rng: random.Random, box: int, max_den: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-box * den, box * den), den)


def random_tropical_line(n: int, seed=None, box: int = DEFAULT_BOX,
                         max_den: int = DEFAULT_MAX_DENOMINATOR) -> TropicalLine:
    """Seeded random line with vertices in [-box, box]^n."""
    if n not in (2, 3):
        raise UnsupportedDimension(f"tropical lines are implemented in R^2 and R^3, not R^{n}")
    rng = random.Random(seed)
    v = tuple(_random_rational(rng, box, max_den) for _ in range(n))
    if n == 2:
        return TropicalLine.planar(v)
    pair = LINE_TYPES_3D[rng.randrange(3)]
    den = rng.randint(1, max_den)
    length = Fraction(rng.randint(1, box * den), den)
    return TropicalLine.spatial(v, pair, length)


def _walk(p: TropicalPolynomial, origin, d, lo, hi) -> list[tuple]:
    """Points where the dominant term changes along origin + t*d, t in [lo, hi].

    Returns (t, dominant exponents, kind) with kind one of 'endpoint'
    (the start lies on the hypersurface), 'overlap' (the edge runs inside
    the hypersurface from t on) or 'crossing'.
    """
    lines = [(sum(o * a for o, a in zip(origin, e)) + c, sum(x * a for x, a in zip(d, e)), e)
             for e, c in p.terms]
    events = []
    t = lo
    while True:
        vals = [(a + t * b, b, e) for a, b, e in lines]
        best = max(v for v, _, _ in vals)
        arg = [(b, e) for v, b, e in vals if v == best]
        if t == lo:
            if len(arg) >= 2:
                events.append((t, frozenset(e for _, e in arg), "endpoint"))
        else:
            events.append((t, frozenset(e for _, e in arg), "crossing"))
        slope = max(b for b, _ in arg)
        if sum(1 for b, _ in arg if b == slope) >= 2:
            events.append((t, frozenset(e for b, e in arg if b == slope), "overlap"))
        nxt = None
        for v, b, _ in vals:
            if b > slope:
                cand = t + (best - v) / (b - slope)
                if nxt is None or cand < nxt:
                    nxt = cand
        if nxt is None or (hi is not None and nxt >= hi):
            return events
        t = nxt


def line_hypersurface_intersections(line: TropicalLine, h: HypersurfaceComplex) -> list[tuple]:
    """All points of line ∩ h as (point, transverse) pairs, sorted by point.

    A point is transverse when it is interior to an edge of the line, its
    dominant terms form a single subdivision edge (so it is interior to a
    facet) and the line actually crosses there.
    """
    if line.ambient_dim != h.ambient_dim:
        raise DimensionMismatch(
            f"line in R^{line.ambient_dim} vs hypersurface in R^{h.ambient_dim}")
    found: dict[tuple, bool] = {}
    for origin, d, lo, hi in line.pieces():
        for t, arg, kind in _walk(h.polynomial, origin, d, lo, hi):
            x = tuple(o + t * s for o, s in zip(origin, d))
            ok = kind == "crossing" and affine_rank(sorted(arg)) == 1
            found[x] = found.get(x, True) and ok
    return sorted(found.items())


def transverse_count(line: TropicalLine, h: HypersurfaceComplex) -> int | None:
    """Number of intersection points, or None if some intersection is not transverse."""
    pts = line_hypersurface_intersections(line, h)
    if not all(ok for _, ok in pts):
        return None
    return len(pts)


@dataclass(frozen=True)
class DegreeReport:
    support: tuple
    diameter_bound: int
    max_transverse_count: int
    samples: int
    bound_satisfied: bool
    weak_bound: int = 0
    weak_bound_satisfied: bool = True
    discarded: int = 0
    count_histogram: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bound_satisfied != (self.max_transverse_count <= self.diameter_bound):
            raise ValueError("bound_satisfied must reflect the comparison")


def _sample_count(p, h, n, seed, i, box):
    """Transverse count for sample i, resampling degenerate lines."""
    for attempt in range(MAX_ATTEMPTS):
        line = random_tropical_line(n, seed=f"{seed}/{i}/{attempt}", box=box)
        c = transverse_count(line, h)
        if c is not None:
            return c, attempt
    return None, MAX_ATTEMPTS


def empirical_degree(p: TropicalPolynomial, samples: int, seed=0,
                     box: int = DEFAULT_BOX, workers: int = 1) -> DegreeReport:
    """Sample tropical lines and record the largest transverse intersection count.

    Each sample derives its own seed from (seed, index, attempt), so results
    do not depend on ``workers``.
    """
    n = p.ambient_dim
    if n not in (2, 3):
        raise UnsupportedDimension(f"degree estimates are implemented in R^2 and R^3, not R^{n}")
    if samples < 1:
        raise ValueError("need at least one sample")
    h = hypersurface(p, full=False)
    jobs = range(samples)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _sample_count(p, h, n, seed, i, box), jobs))
    else:
        results = [_sample_count(p, h, n, seed, i, box) for i in jobs]
    counts = [c for c, _ in results if c is not None]
    discarded = sum(a for _, a in results)
    hist: dict[int, int] = {}
    for c in counts:
        hist[c] = hist.get(c, 0) + 1
    support = tuple(p.support)
    diam = l1_diameter(support)
    best = max(counts, default=0)
    return DegreeReport(
        support=support,
        diameter_bound=diam,
        max_transverse_count=best,
        samples=len(counts),
        bound_satisfied=best <= diam,
        weak_bound=len(support) - 1,
        weak_bound_satisfied=best <= len(support) - 1,
        discarded=discarded,
        count_histogram=dict(sorted(hist.items())),
    )


def geodesic_monotonicity_check(line: TropicalLine, reach: int = 1) -> bool:
    """True iff every leaf-to-leaf path is coordinatewise monotone.

    Rays are truncated ``reach`` units beyond their vertex.
    """
    leaves = [(v, tuple(a + reach * s for a, s in zip(line.vertices[v], d)))
              for v, d in line.rays]
    for a in range(len(leaves)):
        for b in range(a + 1, len(leaves)):
            (va, la), (vb, lb) = leaves[a], leaves[b]
            path = [la, line.vertices[va]]
            if vb != va:
                path.append(line.vertices[vb])
            path.append(lb)
            for k in range(line.ambient_dim):
                steps = [q[k] - p[k] for p, q in zip(path, path[1:])]
                if any(s > 0 for s in steps) and any(s < 0 for s in steps):
                    return False
            for p, q in zip(path, path[1:]):
                step = tuple(y - x for x, y in zip(p, q))
                den = 1
                for s in step:
                    den = den * s.denominator // math.gcd(den, s.denominator)
                if any(x not in (-1, 0, 1) for x in primitive([int(s * den) for s in step])):
                    return False
    return True
