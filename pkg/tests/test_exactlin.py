from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polysym.errors import RankDeficient, Singular
from polysym.exactlin import (
    RatMatrix, coordinates, det, hermite_normal_form, invert, primitive, rank, select_basis,
    solve, solve_homogeneous, to_rat,
)

rat = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square(n):
    return st.lists(st.lists(rat, min_size=n, max_size=n), min_size=n, max_size=n)


def test_rank_examples():
    assert rank(RatMatrix.identity(3)) == 3
    assert rank([[1, 1], [1, 1]]) == 1
    assert rank([[2, 0], [0, 2], [1, 1]]) == 2


def test_inverse_examples():
    assert invert(RatMatrix.identity(3)) == RatMatrix.identity(3)
    assert invert(RatMatrix([[2, 0], [0, 2]])) == RatMatrix([[F(1, 2), 0], [0, F(1, 2)]])
    with pytest.raises(Singular):
        invert(RatMatrix([[1, 1], [1, 1]]))


def test_select_basis_is_greedy():
    assert select_basis([(1, 0), (0, 1), (1, 1)]) == [0, 1]
    assert select_basis([(1, 0), (2, 0), (0, 1)]) == [0, 2]
    with pytest.raises(RankDeficient):
        select_basis([(1, 0), (1, 0)])


def test_nullspace_examples():
    assert solve_homogeneous([[1, 0], [0, 1]]) == []
    (v,) = solve_homogeneous([[1, 1]])
    assert v[0] == -v[1] != 0
    assert len(solve_homogeneous([[0, 0, 0], [0, 0, 0]])) == 3


def test_parsing_and_helpers():
    assert to_rat("3/6") == F(1, 2) and to_rat("-2") == -2
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert det(RatMatrix([[1, 2], [3, 4]])) == -2
    assert coordinates([(1, 0), (1, 1)], (2, 3)) == (-1, 3)


def test_hermite_normal_form():
    assert hermite_normal_form([[2, 0], [0, 2], [1, 1]]) == [(1, 1), (0, 2)]
    assert hermite_normal_form([[0, 0]]) == []


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_inverse_roundtrip(rows):
    M = RatMatrix(rows)
    if rank(M) < 3:
        with pytest.raises(Singular):
            invert(M)
        assert det(M) == 0
    else:
        assert M @ invert(M) == RatMatrix.identity(3)
        assert det(M) * det(invert(M)) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(rat, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    kernel = solve_homogeneous(rows)
    assert rank(rows) + len(kernel) == 4
    for v in kernel:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in rows)


@settings(max_examples=40, deadline=None)
@given(square(3), st.lists(rat, min_size=3, max_size=3))
def test_solve(rows, b):
    if rank(rows) == 3:
        x = solve(RatMatrix(rows), b)
        assert [sum(a * y for a, y in zip(r, x)) for r in rows] == list(b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=1, max_size=4))
def test_hnf_spans_same_lattice(rows):
    H = hermite_normal_form(rows)
    assert len(H) == rank(rows)
    gens = [r for r in rows if any(r)]
    # each H row is an integer combination of the input and vice versa
    for r in gens:
        c = _integer_coords(H, r)
        assert c is not None
    for i, h in enumerate(H):
        pivot = next(j for j, x in enumerate(h) if x)
        assert h[pivot] > 0
        for k in range(i):
            assert 0 <= H[k][pivot] < h[pivot]


def _integer_coords(H, r):
    # H is echelon: back-substitute along pivots
    r = list(r)
    for h in H:
        pivot = next(j for j, x in enumerate(h) if x)
        q, rem = divmod(r[pivot], h[pivot])
        if rem:
            return None
        r = [a - q * b for a, b in zip(r, h)]
    return None if any(r) else True
