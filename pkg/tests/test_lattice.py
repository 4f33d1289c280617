import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from tropint.errors import InsufficientRank, NotSquare, RankDeficient, ZeroVector
from tropint.lattice import (IntegerMatrix, SnfResult, determinant, hermite_normal_form,
                             integer_kernel, lattice_index, primitive, rank, saturate,
                             select_independent_subsystem, smith_normal_form)

entries = st.integers(-9, 9)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


def sympy_factors(rows):
    m = sympy.Matrix(rows)
    d = sympy_snf(m, domain=sympy.ZZ)
    k = min(d.shape)
    return sorted(abs(int(d[i, i])) for i in range(k) if d[i, i] != 0)


@pytest.mark.parametrize("v, w", [((2, 4), (1, 2)), ((-3, 6), (-1, 2)), ((0, 0, 7), (0, 0, 1))])
def test_primitive_examples(v, w):
    assert primitive(v) == w


def test_primitive_zero():
    with pytest.raises(ZeroVector):
        primitive((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(any))
def test_primitive_properties(v):
    w = primitive(v)
    assert primitive(w) == w
    assert sympy.gcd_list([abs(x) for x in w]) == 1
    k = next(a // b for a, b in zip(v, w) if b)
    assert k > 0 and tuple(k * x for x in w) == tuple(v)


def test_determinant_examples():
    assert determinant(IntegerMatrix.identity(3)) == 1
    assert determinant(IntegerMatrix.from_columns([(1, 1), (1, -1)])) == -2
    assert determinant(IntegerMatrix.from_columns([(1, 0, 0), (1, 2, 0), (1, 1, 3)])) == 6
    with pytest.raises(NotSquare):
        determinant([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(square))
def test_determinant_matches_sympy(rows):
    assert determinant(rows) == sympy.Matrix(rows).det()


def test_determinant_big_integers():
    big = 10 ** 40
    assert determinant([[big, 1], [1, big]]) == big * big - 1


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]).invariant_factors == (1, 6)
    assert smith_normal_form([[1, 0], [0, 1]]).invariant_factors == (1, 1)
    assert smith_normal_form([[1, 1], [1, -1]]).invariant_factors == (1, 2)


def test_snf_result_validation():
    with pytest.raises(ValueError):
        SnfResult((2, 3), 2)
    with pytest.raises(ValueError):
        SnfResult((1, 0), 2)


@settings(max_examples=80)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_matches_sympy(r, c, data):
    rows = data.draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    snf = smith_normal_form(rows)
    assert sorted(d for d in snf.invariant_factors if d) == sympy_factors(rows)
    assert snf.rank == sympy.Matrix(rows).rank()


@settings(max_examples=80)
@given(st.integers(1, 4).flatmap(square))
def test_snf_product_is_abs_det(rows):
    det = determinant(rows)
    if det == 0:
        return
    snf = smith_normal_form(rows)
    prod = 1
    for d in snf.invariant_factors:
        prod *= d
    assert prod == abs(det) == lattice_index(rows, len(rows))


def test_lattice_index_examples():
    assert lattice_index([(1, 0), (0, 1)], 2) == 1
    assert lattice_index([(1, 1), (1, -1)], 2) == 2
    assert lattice_index([(1, 0), (0, 1), (5, 7)], 2) == 1
    assert lattice_index([(2, 0), (0, 2), (1, 1)], 2) == 2
    with pytest.raises(RankDeficient):
        lattice_index([(1, 1), (2, 2)], 2)


def _in_lattice(basis, v):
    """Brute force: is v an integer combination of the basis (small coefficients)?"""
    rng = range(-12, 13)
    return any(tuple(sum(c * b[i] for c, b in zip(cs, basis)) for i in range(len(v))) == tuple(v)
               for cs in itertools.product(rng, repeat=len(basis)))


def test_saturate_examples():
    assert saturate([(2, 4)]) in ([(1, 2)], [(-1, -2)])
    basis = saturate([(2, 0), (0, 2)])
    assert len(basis) == 2 and abs(determinant(basis)) == 1
    assert saturate([]) == []


def test_saturate_plane_brute_force():
    dirs = [(1, 1, 0), (0, 2, 2)]
    basis = saturate(dirs)
    assert len(basis) == 2
    normal = (1, -1, 1)  # orthogonal to both directions
    for b in basis:
        assert sum(x * y for x, y in zip(b, normal)) == 0
    for v in itertools.product(range(-3, 4), repeat=3):
        if sum(x * y for x, y in zip(v, normal)) == 0:
            assert _in_lattice(basis, v), v


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(2, 3), st.data())
def test_saturate_is_basis(k, n, data):
    dirs = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                              min_size=k, max_size=k))
    basis = saturate(dirs)
    assert len(basis) == rank(dirs)
    if not basis:
        return
    # saturated iff every invariant factor of the basis rows is 1
    assert all(f == 1 for f in smith_normal_form(basis).invariant_factors)
    for d in dirs:
        if any(d):
            assert rank(basis + [tuple(d)]) == len(basis)


def test_rank_examples():
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank(IntegerMatrix.from_columns([(1, 0), (2, 0)])) == 1
    assert rank(IntegerMatrix.from_columns([(1, 0), (0, 1)])) == 2


def test_select_independent_subsystem():
    assert select_independent_subsystem([(1, 0), (2, 0), (0, 1)], 2) == [0, 2]
    assert select_independent_subsystem([(1, 1), (2, 2), (3, 3)], 1) == [0]
    with pytest.raises(InsufficientRank):
        select_independent_subsystem([(1, 0), (2, 0), (0, 1)], 3)


@settings(max_examples=50)
@given(st.integers(1, 3), st.data())
def test_select_has_rank_r(r, data):
    normals = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                                 min_size=1, max_size=5))
    if rank(normals) < r:
        with pytest.raises(InsufficientRank):
            select_independent_subsystem(normals, r)
        return
    idx = select_independent_subsystem(normals, r)
    assert len(idx) == r and idx == sorted(idx)
    assert rank([normals[i] for i in idx]) == r


def test_hermite_normal_form():
    h = hermite_normal_form([[2, 4], [1, 3]])
    assert h.to_rows() == [[1, 1], [0, 2]]
    rng = random.Random(3)
    for _ in range(30):
        rows = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
        h = hermite_normal_form(rows)
        assert sympy_factors(h.to_rows()) == sympy_factors(rows)


def test_integer_kernel():
    k = integer_kernel([(1, 1, 1)], 3)
    assert len(k) == 2
    for v in k:
        assert sum(v) == 0
    assert all(f == 1 for f in smith_normal_form(k).invariant_factors)
