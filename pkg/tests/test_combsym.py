import math

import pytest
from hypothesis import given, settings, strategies as st

from polysym.catalog import cube_family, orthant
from polysym.combsym import (
    comb_equivalent, comb_group, comb_via_intermediate, facet_orbit_oracle, incidence_graph,
    lucky_sandwich, skel_group,
)
from polysym.cone import cone_hull, homogenize
from polysym.errors import TooLarge
from polysym.linsym import lin_group
from polysym.permgrp import Perm
from oracles import comb_brute, group_elements, random_cone_generators, seeded

CUBES = cube_family()


def test_skel_one_is_symmetric():
    for C in (CUBES["P1"], orthant(3), homogenize([(0, 0), (1, 0), (0, 1), (1, 1)])):
        assert skel_group(C, 1).order() == math.factorial(C.p)


@pytest.mark.parametrize("name", list(CUBES))
def test_cube_family_comb(name):
    C = CUBES[name]
    assert skel_group(C, 2).order() == 48
    assert comb_group(C).order() == 48
    assert comb_via_intermediate(C).order() == 48


def test_comb_brute_force_cube():
    assert group_elements(comb_group(CUBES["P4"]).group) == comb_brute(CUBES["P4"])


def test_simplex():
    for n in (2, 3, 4):
        assert comb_group(orthant(n)).order() == math.factorial(n)
        rep = lucky_sandwich(orthant(n), k0=1)
        assert rep is not None and rep.order() == math.factorial(n)
        assert comb_via_intermediate(orthant(n), k0=1).order() == math.factorial(n)


def test_lucky_sandwich():
    rep = lucky_sandwich(CUBES["P1"])
    assert rep is not None and rep.order() == 48 == lin_group(CUBES["P1"]).order()
    assert lucky_sandwich(CUBES["P4"]) is None


def test_intermediate_enlargements():
    assert comb_via_intermediate(CUBES["P1"]).extra["enlargements"] == 0
    rep = comb_via_intermediate(CUBES["P4"])
    assert rep.extra["enlargements"] > 0
    assert rep.group == comb_group(CUBES["P4"]).group


def test_facet_oracle():
    C = CUBES["P4"]
    ok = facet_orbit_oracle(C, lin_group(C).group)
    assert all(ok(g) for g in comb_group(C).group.generators)
    assert not ok(Perm((1, 0, 2, 3, 4, 5, 6, 7)))


def test_comb_equivalence():
    names = list(CUBES)
    for a in names:
        for b in names:
            g = comb_equivalent(CUBES[a], CUBES[b])
            assert g is not None
            target = {frozenset(f) for f in CUBES[b].facets}
            assert all(frozenset(g[i] for i in f) in target for f in CUBES[a].facets)
    assert comb_equivalent(CUBES["P1"], orthant(4)) is None


def test_incidence_graph_and_guard():
    G = incidence_graph(CUBES["P1"])
    assert G.vertex_count == 8 + 6
    with pytest.raises(TooLarge):
        skel_group(CUBES["P1"], 2, bound=5)
    with pytest.raises(ValueError):
        skel_group(CUBES["P1"], 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_comb_matches_brute_force(seed):
    rng = seeded(seed)
    n = rng.randint(3, 4)
    C = cone_hull(random_cone_generators(rng, n, rng.randint(n, 7), -2, 2))
    rep = comb_group(C)
    assert group_elements(rep.group) == comb_brute(C)
    assert comb_via_intermediate(C).group == rep.group


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_skeleton_chain(seed):
    rng = seeded(seed)
    n = rng.randint(3, 4)
    C = cone_hull(random_cone_generators(rng, n, rng.randint(n, 7), -2, 2))
    groups = [lin_group(C).group] + [skel_group(C, k).group for k in range(n - 1, 0, -1)]
    for small, big in zip(groups, groups[1:]):
        assert small.is_subgroup_of(big)
