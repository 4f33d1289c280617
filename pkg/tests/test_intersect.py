import random
from collections import Counter

import pytest

from tropint.errors import (DimensionMismatch, InsufficientRank, InvalidCodimension,
                            NonGenericPerturbation, NotTransverse)
from tropint.intersect import (bernstein_total, bezout_bound, bezout_table,
                               local_multiplicity_bound_check, mixed_cells,
                               perturbation_oracle_2d, stable_intersection_2d,
                               total_multiplicity, transverse_multiplicity)
from tropint.lattice import lattice_index
from tropint.polytope import convex_hull, mixed_volume_ie, standard_simplex
from tropint.tropical import TropicalPolynomial, hypersurface

from helpers import random_full_support, random_poly, simplex_support

P = TropicalPolynomial.from_dict
LINE = P({(1, 0): 0, (0, 1): 0, (0, 0): 0})
LINE2 = P({(1, 0): -1, (0, 1): -2, (0, 0): 0})
SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def multiset(points):
    return Counter((q.location, q.multiplicity) for q in points)


def test_transverse_multiplicity():
    assert transverse_multiplicity([(1, 0), (0, 1)], [1, 1]) == 1
    assert transverse_multiplicity([(1, 1), (1, -1)], [1, 1]) == 2
    assert transverse_multiplicity([(1, 1), (1, -1)], [2, 3]) == 12
    with pytest.raises(NotTransverse):
        transverse_multiplicity([(1, 0), (2, 0)], [1, 4])


def test_multiplicity_is_index():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.choice([2, 3])
        normals = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(n)]
        try:
            m = transverse_multiplicity(normals, [1] * n)
        except NotTransverse:
            continue
        assert m == lattice_index(normals, n)


def test_two_generic_lines():
    pts = stable_intersection_2d(hypersurface(LINE), hypersurface(LINE2))
    assert [(q.location, q.multiplicity) for q in pts] == [((1, 1), 1)]
    assert pts[0].transverse


def test_self_intersection_of_line():
    h = hypersurface(LINE)
    pts = stable_intersection_2d(h, h)
    assert total_multiplicity(pts) == 1
    oracle = perturbation_oracle_2d(h, h, (1, 2))
    assert multiset(oracle) == multiset(pts)
    assert [q.location for q in oracle] == [(0, 0)]


def test_perturbation_degenerate_shift():
    h = hypersurface(LINE)
    with pytest.raises(NonGenericPerturbation):
        perturbation_oracle_2d(h, h, (1, 1))


def test_triangle_square_total():
    rng = random.Random(8)
    p, q = random_poly(rng, simplex_support(2, 1)), random_poly(rng, SQUARE)
    pts = stable_intersection_2d(hypersurface(p), hypersurface(q))
    assert total_multiplicity(pts) == 2


def test_oracle_equivalence_random():
    rng = random.Random(12)
    checked = 0
    while checked < 15:
        p = random_poly(rng, random_full_support(rng, 2, rng.randint(3, 6), box=3))
        q = random_poly(rng, random_full_support(rng, 2, rng.randint(3, 6), box=3))
        h1, h2 = hypersurface(p), hypersurface(q)
        direct = stable_intersection_2d(h1, h2)
        if not all(x.transverse for x in direct):
            continue
        for v in [(1, 2), (3, -5)]:
            assert multiset(perturbation_oracle_2d(h1, h2, v)) == multiset(direct)
        assert total_multiplicity(direct) == mixed_volume_ie(p.newton_polytope(), q.newton_polytope())
        for x in direct:
            assert x.multiplicity == transverse_multiplicity(x.contributing_normals,
                                                             x.contributing_weights)
        checked += 1


def test_mixed_cells_two_lines():
    cells = mixed_cells(LINE, LINE2)
    full = [c for c in cells if c.is_fully_mixed]
    assert len(full) == 1
    assert full[0].lattice_volume() == 1
    assert full[0].location == (1, 1)


def test_mixed_cells_identical_lines():
    assert not [c for c in mixed_cells(LINE, LINE) if c.is_fully_mixed]


def test_mixed_cells_triangle_square():
    rng = random.Random(21)
    p, q = random_poly(rng, simplex_support(2, 1)), random_poly(rng, SQUARE)
    full = [c for c in mixed_cells(p, q) if c.is_fully_mixed]
    assert sum(c.lattice_volume() for c in full) == 2


def test_mixed_cells_cover_sum():
    rng = random.Random(22)
    from tropint.polytope import minkowski_sum, volume
    for _ in range(5):
        p = random_poly(rng, random_full_support(rng, 2, 5, box=3))
        q = random_poly(rng, random_full_support(rng, 2, 5, box=3))
        cells = mixed_cells(p, q)
        target = minkowski_sum(p.newton_polytope(), q.newton_polytope())
        assert sum(volume(c.polytope()) for c in cells) == volume(target)


def test_bernstein_examples():
    rng = random.Random(30)
    p2 = random_poly(rng, simplex_support(2, 2))
    p3 = random_poly(rng, simplex_support(2, 3))
    assert bernstein_total([p2, p3]) == 6
    hyperplane = random_poly(rng, simplex_support(2, 1))
    assert bernstein_total([p3], [hyperplane]) == 3
    s1, s2 = random_poly(rng, SQUARE), random_poly(rng, SQUARE)
    assert bernstein_total([s1, s2]) == 2
    with pytest.raises(DimensionMismatch):
        bernstein_total([p3])


def test_bernstein_three_dimensional():
    rng = random.Random(31)
    polys = [random_poly(rng, simplex_support(3, 2)), random_poly(rng, simplex_support(3, 2))]
    plane = random_poly(rng, simplex_support(3, 1))
    assert bernstein_total(polys, [plane]) == 4


def test_bezout_examples():
    supports = [simplex_support(2, 2), simplex_support(2, 5)]
    assert bezout_bound(supports, 1, 2) == 5
    assert bezout_table(supports, 1, 2) == [((0,), 2), ((1,), 5)]
    assert bezout_bound([SQUARE] * 3, 2, 2) == 2
    rows = bezout_table([SQUARE, simplex_support(2, 1)], 2, 2)
    assert len(rows) == 1
    assert rows[0][1] == mixed_volume_ie(convex_hull(SQUARE), standard_simplex(2)) == 2
    for r in (0, 3):
        with pytest.raises(InvalidCodimension):
            bezout_table(supports, r, 2)


def test_local_bound_examples():
    supports = [SQUARE, SQUARE, simplex_support(2, 1)]
    res = local_multiplicity_bound_check([(1, 0), (2, 0), (0, 1)], [1, 1, 1], [], supports)
    assert res.multiplicity == 1 and res.bound >= 1 and res.ok
    res = local_multiplicity_bound_check([(1, 0), (0, 1)], [1, 1], [],
                                         [simplex_support(2, 1)] * 2)
    assert res == (1, 1, True)
    with pytest.raises(InsufficientRank):
        local_multiplicity_bound_check([(1, 0), (2, 0)], [1, 1], [], [SQUARE, SQUARE])
