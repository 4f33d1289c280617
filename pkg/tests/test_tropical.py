import random
from fractions import Fraction

import pytest

from tropint.errors import DimensionTooLarge, PointNotOnHypersurface
from tropint.lattice import primitive
from tropint.polytope import volume
from tropint.tropical import (TropicalPolynomial, evaluate, hypersurface, link_at,
                              on_hypersurface, regular_subdivision, tropical_product)

from helpers import random_full_support, random_poly, simplex_support

P = TropicalPolynomial.from_dict
LINE = P({(1, 0): 0, (0, 1): 0, (0, 0): 0})


def test_evaluate_examples():
    assert evaluate(LINE, (0, 0)) == (0, frozenset({(1, 0), (0, 1), (0, 0)}))
    assert evaluate(LINE, (5, 1)) == (5, frozenset({(1, 0)}))
    q = P({(0,): 0, (1,): 1, (2,): 0})
    assert evaluate(q, (-1,)) == (0, frozenset({(0,), (1,)}))


def test_polynomial_validation():
    with pytest.raises(ValueError):
        TropicalPolynomial.from_terms([((0, 0), 1), ((0, 0), 2)])
    with pytest.raises(ValueError):
        TropicalPolynomial.from_terms([])


def test_subdivision_examples():
    coarse = regular_subdivision(P({(0,): 0, (1,): 0, (2,): 0}))
    assert [sorted(c.support_points) for c in coarse] == [[(0,), (1,), (2,)]]
    fine = regular_subdivision(P({(0,): 0, (1,): 1, (2,): 0}))
    assert sorted(sorted(c.support_points) for c in fine) == [[(0,), (1,)], [(1,), (2,)]]
    tri = regular_subdivision(LINE)
    assert len(tri) == 1 and set(tri[0].support_points) == {(0, 0), (1, 0), (0, 1)}


def test_subdivision_cap():
    with pytest.raises(DimensionTooLarge):
        regular_subdivision(P({(0,) * 5: 0, (1, 0, 0, 0, 0): 0}))


def test_hypersurface_1d():
    h = hypersurface(P({(0,): 0, (1,): 1, (2,): 0}))
    assert sorted((f.base_point, f.weight) for f in h.facets) == [((-1,), 1), ((1,), 1)]
    h = hypersurface(P({(0,): 0, (2,): 0}))
    assert [(f.base_point, f.weight) for f in h.facets] == [((0,), 2)]


def test_tropical_line():
    h = hypersurface(LINE)
    assert h.vertices == [(0, 0)]
    rays = sorted(f.cell.rays[0] for f in h.facets)
    assert rays == [(-1, 0), (0, -1), (1, 1)]
    assert all(f.weight == 1 for f in h.facets)
    for f in h.facets:
        u, v = f.dual_edge
        assert f.normal == primitive(tuple(b - a for a, b in zip(u, v)))
    assert h.is_balanced()


def test_link_examples():
    h = hypersurface(LINE)
    fan = link_at(h, (0, 0))
    assert sorted(r for c in fan.cones for r in c.rays) == [(-1, 0), (0, -1), (1, 1)]
    fan = link_at(h, (3, 3))
    assert len(fan.cones) == 1 and fan.cones[0].rays == ()
    assert [primitive(v) for v in fan.cones[0].lineality] in ([(1, 1)], [(-1, -1)])
    with pytest.raises(PointNotOnHypersurface):
        link_at(h, (5, 0))


def test_tropical_product_support():
    q = tropical_product(LINE, LINE)
    assert sorted(q.support) == sorted(simplex_support(2, 2))
    assert q((1, 2)) == 2 * LINE((1, 2))


@pytest.mark.parametrize("n", [2, 3])
def test_random_hypersurfaces(n):
    rng = random.Random(100 + n)
    for _ in range(15):
        p = random_poly(rng, random_full_support(rng, n, rng.randint(n + 1, 8), box=3))
        h = hypersurface(p)
        sub = h.subdivision
        top = [c for c in sub if c.dim == n]
        # subdivision tiles the Newton polytope
        assert sum(volume(c.polytope()) for c in top) == volume(p.newton_polytope())
        # vertices of H <-> maximal cells; facets <-> interior-or-boundary edges
        assert len(h.vertices) == len(top)
        assert all(f.weight >= 1 for f in h.facets)
        assert h.is_balanced()
        for f in h.facets:
            assert len(evaluate(p, f.base_point)[1]) >= 2
            assert h.facet_at(f.base_point) is f
        for v in h.vertices:
            assert len(evaluate(p, v)[1]) >= n + 1
            link_at(h, v)


def test_complement_is_linear():
    rng = random.Random(7)
    p = random_poly(rng, simplex_support(2, 3))
    off = 0
    for _ in range(100):
        x = tuple(Fraction(rng.randint(-999, 999), rng.randint(1, 97)) for _ in range(2))
        if not on_hypersurface(p, x):
            assert len(evaluate(p, x)[1]) == 1
            off += 1
    assert off > 90


def test_four_dimensional_facets_only():
    rng = random.Random(4)
    p = random_poly(rng, simplex_support(4, 1))
    h = hypersurface(p)
    assert h.cells is None
    assert len(h.facets) == 10
    with pytest.raises(DimensionTooLarge):
        hypersurface(p, full=True)
