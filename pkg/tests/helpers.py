"""Shared instance generators for the test suite."""

import random
from fractions import Fraction

from tropint import TropicalPolynomial


def simplex_support(n, d):
    """Lattice points of d * conv{0, e1, ..., en}."""
    if n == 1:
        return [(i,) for i in range(d + 1)]
    return [(i,) + rest for i in range(d + 1) for rest in simplex_support(n - 1, d - i)]


def random_coef(rng, lo=-40, hi=40, den=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_poly(rng, support):
    return TropicalPolynomial.from_terms([(a, random_coef(rng)) for a in support])


def random_support(rng, n, size, box=5):
    pts = set()
    while len(pts) < size:
        pts.add(tuple(rng.randint(0, box) for _ in range(n)))
    return sorted(pts)


def random_full_support(rng, n, size, box=5):
    """A random support whose Newton polytope is full-dimensional."""
    from tropint.polytope import affine_rank
    while True:
        s = random_support(rng, n, size, box)
        if affine_rank(s) == n:
            return s


def rng_for(*key):
    return random.Random("/".join(map(str, key)))
