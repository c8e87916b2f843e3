from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polysym.catalog import cube_family, orthant
from polysym.cone import Cone, cone_hull, enumerate_faces
from polysym.exactlin import RatMatrix, det
from polysym.linsym import (
    centralizer_group, check_report_matrices, integral_subgroup_filter, integral_subgroup_intermediate,
    integral_subgroup_lattice_quotient, lin_equivalent, lin_group, realize_permutation,
)
from polysym.permgrp import Perm, PermGroup
from oracles import group_elements, lin_brute, random_cone_generators, seeded

CUBES = cube_family()
E1_2E2 = Cone([(1, 0), (0, 2)])
SWAP = Perm((1, 0))


def test_lin_orders_examples():
    assert lin_group(orthant(3)).order() == 6
    assert lin_group(CUBES["P1"]).order() == 48


@pytest.mark.parametrize("name,order", [("P1", 48), ("P2", 48), ("P3", 8), ("P4", 4)])
def test_cube_family_lin(name, order):
    rep = lin_group(CUBES[name])
    assert rep.order() == order
    assert check_report_matrices(CUBES[name], rep)


def test_cube_family_lin_brute_force():
    # every element of the 8! candidates checked exactly
    for name in ("P3", "P4"):
        assert group_elements(lin_group(CUBES[name]).group) == lin_brute(CUBES[name].generators)


def test_realize_examples():
    assert realize_permutation(orthant(2), SWAP) == RatMatrix([[0, 1], [1, 0]])
    assert realize_permutation(E1_2E2, SWAP) == RatMatrix([[0, F(1, 2)], [2, 0]])
    P1 = CUBES["P1"]
    a, b = enumerate_faces(P1, 2)[0].rays  # an edge of the cube
    t = list(range(8))
    t[a], t[b] = b, a
    assert realize_permutation(P1, t) is None


def test_centralizer_examples():
    assert centralizer_group(orthant(2), [RatMatrix([[0, 1], [1, 0]])]).order() == 2
    assert centralizer_group(orthant(2), [RatMatrix([[1, 0], [0, 2]])]).order() == 1
    assert centralizer_group(CUBES["P1"], [RatMatrix.identity(4)]).order() == 48
    assert centralizer_group(CUBES["P1"], []).group == lin_group(CUBES["P1"]).group


def test_lin_equivalence_classes():
    names = list(CUBES)
    related = {(a, b) for a in names for b in names if lin_equivalent(CUBES[a], CUBES[b])}
    classes = {frozenset(b for b in names if (a, b) in related) for a in names}
    assert classes == {frozenset({"P1", "P2"}), frozenset({"P3"}), frozenset({"P4"})}
    g, A = lin_equivalent(CUBES["P1"], CUBES["P2"])
    W = CUBES["P2"].generators
    assert all(A @ v == W[g[i]] for i, v in enumerate(CUBES["P1"].generators))


def test_integral_examples():
    for method in (integral_subgroup_filter, integral_subgroup_intermediate, integral_subgroup_lattice_quotient):
        assert method(orthant(3)).order() == 6
        assert method(E1_2E2).order() == 1
        assert method(CUBES["P1"]).order() == 48


def test_integral_intermediate_call_counts():
    rep = integral_subgroup_intermediate(E1_2E2)
    assert rep.order() == 1 and rep.extra["oracle_calls"] <= 2
    rep = integral_subgroup_intermediate(orthant(3), PermGroup(3, [Perm((1, 0, 2))]))
    assert rep.order() == 6 and rep.extra["oracle_calls"] <= 2
    full = integral_subgroup_filter(CUBES["P1"]).group
    rep = integral_subgroup_intermediate(CUBES["P1"], full)
    assert rep.group == full and rep.extra["enlargements"] == 0


def test_lattice_quotient_spanning_case():
    # orthant generators span Z^n: nothing to filter out
    rep = integral_subgroup_lattice_quotient(orthant(3))
    assert rep.extra["d"] == 1 and rep.group == lin_group(orthant(3)).group
    assert integral_subgroup_lattice_quotient(CUBES["P1"], refine=True).order() == 48


def test_non_integral_input_rejected():
    with pytest.raises(ValueError):
        integral_subgroup_filter(Cone([(1, 0), (0, F(1, 2))]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_lin_matches_brute_force(seed):
    rng = seeded(seed)
    n = rng.randint(2, 3)
    C = cone_hull(random_cone_generators(rng, n, rng.randint(n, 6), -2, 2))
    rep = lin_group(C)
    assert group_elements(rep.group) == lin_brute(C.generators)
    assert check_report_matrices(C, rep)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_lin_on_symmetric_configurations(seed):
    # a random linear image of a symmetric cone keeps its group
    rng = seeded(seed)
    A = RatMatrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
    if det(A) == 0:
        return
    C = Cone([A @ v for v in orthant(3).generators])
    assert lin_group(C).order() == 6
    g, M = lin_equivalent(orthant(3), C)
    assert all(M @ v == C.generators[g[i]] for i, v in enumerate(orthant(3).generators))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_centralizer_matches_filter(seed):
    rng = seeded(seed)
    C = CUBES["P1"]
    B = [RatMatrix([[rng.choice([0, 0, 1, -1]) for _ in range(4)] for _ in range(4)])]
    rep = centralizer_group(C, B)
    brute = set()
    for g in lin_group(C).group.elements():
        A = realize_permutation(C, g)
        if all(A @ M == M @ A for M in B):
            brute.add(tuple(g))
    assert group_elements(rep.group) == brute


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_integral_methods_agree(seed):
    rng = seeded(seed)
    n = rng.randint(2, 3)
    V = [tuple(x.numerator for x in v) for v in random_cone_generators(rng, n, rng.randint(n, 5), -2, 2)]
    V = [tuple(x * rng.choice([1, 1, 2]) for x in v) for v in V]
    C = cone_hull(V)
    a = integral_subgroup_filter(C).group
    assert integral_subgroup_intermediate(C).group == a
    assert integral_subgroup_lattice_quotient(C).group == a
    assert integral_subgroup_lattice_quotient(C, refine=True).group == a
