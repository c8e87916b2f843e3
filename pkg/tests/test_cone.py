import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polysym.catalog import cube_family, orthant
from polysym.cone import (
    Cone, cone_hull, decompose, direct_sum, enumerate_faces, format_cone, homogenize,
    is_decomposable, parse_cone, parse_facets, q_matrix, rays_from_facets, validate_facets,
)
from polysym.errors import NotExtreme, NotFullDim, NotPointed, ParseError
from polysym.exactlin import RatMatrix, rank, solve_homogeneous
from oracles import random_cone_generators, seeded

SQUARE = Cone([(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)])


def brute_facets(V):
    """Maximal ray sets cut out by a supporting hyperplane through n-1 independent rays."""
    n = len(V[0])
    found = set()
    for sub in itertools.combinations(range(len(V)), n - 1):
        if rank([V[i] for i in sub]) != n - 1:
            continue
        (a,) = solve_homogeneous([V[i] for i in sub])
        vals = [sum(x * y for x, y in zip(a, v)) for v in V]
        if all(x >= 0 for x in vals) or all(x <= 0 for x in vals):
            found.add(tuple(i for i, x in enumerate(vals) if x == 0))
    return sorted(found)


def test_homogenize():
    P1 = cube_family()["P1"]
    assert (1, 2, 2, 2) in [tuple(g) for g in P1.generators]
    C = homogenize([(0,), (1,)])
    assert [tuple(g) for g in C.generators] == [(1, 0), (1, 1)]
    with pytest.raises(NotFullDim):
        homogenize([()])


def test_q_matrix():
    assert q_matrix(orthant(2)) == RatMatrix.identity(2)
    assert q_matrix(Cone([(1, 0), (0, 2)])) == RatMatrix([[1, 0], [0, 4]])
    assert q_matrix(SQUARE) == RatMatrix([[4, 0, 0], [0, 4, 0], [0, 0, 4]])


def test_facets_examples():
    assert len(SQUARE.facets) == 4 and all(len(f) == 2 for f in SQUARE.facets)
    assert sorted(map(len, orthant(3).facets)) == [2, 2, 2]
    P1 = cube_family()["P1"]
    assert len(P1.facets) == 6 and all(len(f) == 4 for f in P1.facets)
    assert sorted(map(tuple, P1.facets)) == brute_facets(P1.generators)


def test_faces_by_dimension():
    P1 = cube_family()["P1"]
    assert len(enumerate_faces(P1, 1)) == 8
    edges = enumerate_faces(P1, 2)
    assert len(edges) == 12 and all(len(f) == 2 for f in edges)
    assert len(enumerate_faces(orthant(3), 2)) == 3


def test_decomposition_examples():
    assert len(decompose(orthant(3))) == 3
    assert len(decompose(SQUARE)) == 1
    D = decompose(direct_sum(SQUARE, SQUARE))
    assert D.partition() == [(0, 1, 2, 3), (4, 5, 6, 7)]
    assert not is_decomposable(D.local_cone(0)) and is_decomposable(orthant(2))


def test_validation_errors():
    with pytest.raises(NotFullDim):
        Cone([(1, 0, 0), (0, 1, 0)])
    with pytest.raises(NotPointed):
        Cone([(1, 0), (-1, 0), (0, 1)])
    with pytest.raises(NotExtreme):
        Cone([(1, 0), (0, 1), (1, 1)])
    assert Cone([(1, 0), (2, 0), (0, 1)]).p == 2
    assert cone_hull([(1, 0), (0, 1), (1, 1)]).p == 2


def test_text_formats():
    C = parse_cone("# square\nCONE 3 4\n1 1 1\n1 1 -1\n1 -1 1\n1 -1 -1\n")
    assert C.p == 4 and parse_cone(format_cone(C)).generators == C.generators
    assert parse_cone("POLY 1 2\n0\n1/2\n").generators[1] == (1, F(1, 2))
    with pytest.raises(ParseError) as e:
        parse_cone("CONE 2 2\n1 0\n0\n")
    assert e.value.line == 3
    with pytest.raises(ParseError):
        parse_cone("CONE 2 1\n1 0\n0 1\n")
    normals = parse_facets("FACETS 3 3\n1 0 0\n0 1 0\n0 0 1\n")
    assert validate_facets(orthant(3), normals) == [(0, 1), (0, 2), (1, 2)]
    with pytest.raises(ValueError):
        validate_facets(orthant(3), normals[:2])
    assert rays_from_facets(normals).p == 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 4), st.integers(0, 3))
def test_facets_match_brute_force(seed, n, extra):
    rng = seeded(seed)
    C = cone_hull(random_cone_generators(rng, n, n + extra))
    assert sorted(map(tuple, C.facets)) == brute_facets(C.generators)
    normals = list(C.facet_normals.values())
    assert validate_facets(C, normals) == sorted(map(tuple, C.facets))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_decomposition_invariants(seed):
    rng = seeded(seed)
    parts = [cone_hull(random_cone_generators(rng, rng.randint(1, 3), rng.randint(3, 4))) for _ in range(rng.randint(1, 3))]
    C = direct_sum(*parts)
    D = decompose(C)
    rays = sorted(i for c in D.components for i in c.rays)
    assert rays == list(range(C.p))
    assert sum(len(c.basis) for c in D.components) == C.dim
    for k in range(len(D)):
        assert len(decompose(D.local_cone(k))) == 1
    # block sums split at least along the summands
    assert len(D) >= len(parts)
