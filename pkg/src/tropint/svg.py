"""Static SVG 1.1 drawings of plane tropical curves."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polytope import convex_hull
from .tropical import HypersurfaceComplex

SIZE = 480
INSET = 140
MARGIN = 10
COLORS = ("#1f4e9c", "#b3261e")


def _box(points: Sequence[tuple]) -> tuple:
    """Square box around ``points`` padded by a fifth of the span (at least 1)."""
    if not points:
        points = [(Fraction(0), Fraction(0))]
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    half = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(2)) * Fraction(7, 10)
    return (cx - half, cy - half, cx + half, cy + half)


def _clip_ray(v, d, box):
    x0, y0, x1, y1 = box
    ts = []
    for c, dc, lo, hi in ((v[0], d[0], x0, x1), (v[1], d[1], y0, y1)):
        if dc > 0:
            ts.append((hi - c) / dc)
        elif dc < 0:
            ts.append((lo - c) / dc)
    t = max(min(ts), Fraction(0))
    return (v[0] + t * d[0], v[1] + t * d[1])


def curve_segments(h: HypersurfaceComplex, box) -> list[tuple]:
    """(start, end, weight) for every facet of a plane curve, rays clipped to box."""
    out = []
    for f in h.facets:
        c = f.cell
        if len(c.vertices) >= 2:
            out.append((c.vertices[0], c.vertices[-1], f.weight))
            continue
        v = c.vertices[0] if c.vertices else c.point
        dirs = list(c.rays)
        for line in c.lineality:
            dirs += [tuple(line), tuple(-x for x in line)]
        for d in dirs:
            out.append((v, _clip_ray(v, d, box), f.weight))
    return out


def curve_points(*hs: HypersurfaceComplex) -> list[tuple]:
    pts = []
    for h in hs:
        for f in h.facets:
            pts.extend(f.cell.vertices or (f.cell.point,))
    return pts


class _Canvas:
    def __init__(self, box, size=SIZE, origin=(0, 0)):
        self.box, self.size, self.origin = box, size, origin
        self.items = []

    def map(self, p):
        x0, y0, x1, y1 = self.box
        sx = float((p[0] - x0) / (x1 - x0)) * self.size + self.origin[0]
        sy = float((y1 - p[1]) / (y1 - y0)) * self.size + self.origin[1]
        return f"{sx:.3f}", f"{sy:.3f}"

    def line(self, a, b, color, width):
        (ax, ay), (bx, by) = self.map(a), self.map(b)
        self.items.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                          f'stroke="{color}" stroke-width="{width}"/>')

    def circle(self, p, r, color, fill="none"):
        cx, cy = self.map(p)
        self.items.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" stroke="{color}" fill="{fill}"/>')

    def polygon(self, pts, color, fill):
        coords = " ".join(",".join(self.map(p)) for p in pts)
        self.items.append(f'<polygon points="{coords}" stroke="{color}" fill="{fill}" '
                          f'stroke-width="1"/>')


def _document(items: list[str], title: str) -> str:
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">\n'
            f'<title>{title}</title>\n'
            f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>\n')
    return head + "\n".join(items) + "\n</svg>\n"


def _draw_curve(canvas, h, color):
    for a, b, w in curve_segments(h, canvas.box):
        canvas.line(a, b, color, 1 + w)


def _newton_inset(h: HypersurfaceComplex) -> list[str]:
    pts = h.polynomial.support
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    box = (Fraction(min(xs)) - Fraction(span, 10), Fraction(min(ys)) - Fraction(span, 10),
           Fraction(min(xs)) + Fraction(11 * span, 10), Fraction(min(ys)) + Fraction(11 * span, 10))
    ox = SIZE - INSET - MARGIN
    canvas = _Canvas(box, INSET, (ox, MARGIN))
    items = [f'<rect x="{ox}" y="{MARGIN}" width="{INSET}" height="{INSET}" '
             f'fill="#f4f4f4" stroke="#888888"/>']
    newton = h.polynomial.newton_polytope()
    if newton.dim == 2:
        canvas.polygon(newton.vertices, "#444444", "#dde6f3")
    for cell in h.subdivision:
        if cell.dim == 2:
            canvas.polygon(convex_hull(cell.support_points).vertices, "#444444", "none")
        elif cell.dim == 1:
            a, b = min(cell.support_points), max(cell.support_points)
            canvas.line(a, b, "#444444", 1)
    for p in pts:
        canvas.circle(p, 2, "#000000", "#000000")
    return items + canvas.items


def hypersurface_svg(h: HypersurfaceComplex) -> str:
    box = _box(curve_points(h))
    canvas = _Canvas(box)
    _draw_curve(canvas, h, COLORS[0])
    for v in h.vertices:
        canvas.circle(v, 3, COLORS[0], COLORS[0])
    return _document(canvas.items + _newton_inset(h), "tropical curve")


def intersection_svg(h1: HypersurfaceComplex, h2: HypersurfaceComplex, points) -> str:
    box = _box(curve_points(h1, h2) + [q.location for q in points])
    canvas = _Canvas(box)
    _draw_curve(canvas, h1, COLORS[0])
    _draw_curve(canvas, h2, COLORS[1])
    for q in points:
        canvas.circle(q.location, 3 + 3 * q.multiplicity, "#000000")
    return _document(canvas.items, "stable intersection")
