import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from polysym.errors import TooLarge
from polysym.permgrp import (
    Perm, PermGroup, coset_representatives, double_cosets, intermediate_subgroup, is_in_orbit,
    set_stabilizer,
)
from oracles import group_elements


def cyc(n, *cycles):
    return Perm.from_cycles(n, cycles)


S3 = PermGroup(3, [cyc(3, (0, 1)), cyc(3, (0, 1, 2))])


def closure(gens, n):
    seen = {tuple(range(n))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_perm_basics():
    p, q = cyc(3, (0, 1)), cyc(3, (1, 2))
    assert (p * q)(0) == q(p(0))
    assert p * ~p == Perm.identity(3)
    assert repr(cyc(4, (0, 1, 2))) == "(0 1 2)" and repr(Perm.identity(2)) == "()"
    assert cyc(4, (0, 1, 2, 3)) ** 4 == Perm.identity(4)


def test_orders():
    assert S3.order() == 6
    assert PermGroup.trivial(5).order() == 1
    assert PermGroup(4, [cyc(4, (0, 1, 2, 3))]).order() == 4


def test_membership():
    assert S3.contains(cyc(3, (0, 2)))
    assert not PermGroup(3, [cyc(3, (0, 1, 2))]).contains(cyc(3, (0, 1)))
    assert PermGroup.trivial(4).contains(Perm.identity(4))


def test_orbits_and_enumeration():
    assert PermGroup(4, [cyc(4, (0, 1, 2))]).orbits() == [(0, 1, 2), (3,)]
    assert len(PermGroup.trivial(3).orbits()) == 3
    assert len(PermGroup.symmetric(4).orbits()) == 1
    assert len(set(S3.elements())) == 6
    assert len(list(PermGroup(4, [cyc(4, (0, 1), (2, 3))]).elements())) == 2
    with pytest.raises(TooLarge):
        list(PermGroup.symmetric(8).elements(bound=100))


def test_set_stabilizer():
    assert set_stabilizer(PermGroup.symmetric(4), {0, 1}).order() == 4
    assert set_stabilizer(S3, {0, 1, 2}).order() == 6
    assert set_stabilizer(PermGroup(3, [cyc(3, (0, 1, 2))]), {0}).order() == 1


def test_is_in_orbit():
    w = is_in_orbit(S3, {0}, {2})
    assert w is not None and w(0) == 2
    assert is_in_orbit(PermGroup.trivial(2), {0}, {1}) is None
    assert is_in_orbit(PermGroup(4, [cyc(4, (0, 1), (2, 3))]), {0, 2}, {1, 3}) == cyc(4, (0, 1), (2, 3))


def is_even(g):
    return sum(len(c) - 1 for c in g.cycles()) % 2 == 0


def test_intermediate_alternating():
    stats = {}
    H = intermediate_subgroup(PermGroup.trivial(3), S3, is_even, stats=stats)
    assert H.order() == 3


def test_intermediate_equal_groups():
    calls = []
    H = intermediate_subgroup(S3, S3, lambda g: calls.append(g) or False)
    assert H.order() == 6 and not calls


def test_intermediate_dihedral():
    blocks = [{0, 1}, {2, 3}]

    def keeps_blocks(g):
        return all({g[i] for i in b} in blocks for b in blocks)

    G1 = PermGroup(4, [cyc(4, (0, 1), (2, 3))])
    H = intermediate_subgroup(G1, PermGroup.symmetric(4), keeps_blocks)
    brute = {p for p in itertools.permutations(range(4)) if keeps_blocks(p)}
    assert H.order() == 8 and group_elements(H) == brute


def test_double_cosets_partition():
    G1 = PermGroup(4, [cyc(4, (0, 1))])
    G2 = PermGroup.symmetric(4)
    classes, _ = double_cosets(G1, G2)
    flat = [g for c in classes for g in c]
    assert len(set(flat)) == len(flat) == len(coset_representatives(G1, G2)[0]) == 12
    h = [Perm.identity(4), cyc(4, (0, 1))]
    brute = {frozenset(a * g * b for a in h for b in h) for g in map(Perm, itertools.permutations(range(4)))}
    assert len(classes) == len(brute)
    for c in classes:
        whole = {a * r for r in c for a in h}
        assert frozenset(whole) in brute


def test_serialization():
    G = PermGroup(5, [cyc(5, (0, 1, 2)), cyc(5, (3, 4))])
    assert PermGroup.from_json(G.to_json()).order() == 6


perm_lists = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=0, max_size=3).map(lambda gs: (n, gs))
)


@settings(max_examples=80, deadline=None)
@given(perm_lists)
def test_schreier_sims_matches_closure(data):
    n, gens = data
    G = PermGroup(n, [Perm(g) for g in gens])
    elems = closure([tuple(g) for g in gens], n)
    assert G.order() == len(elems)
    rng = random.Random(n)
    for p in rng.sample(list(itertools.permutations(range(n))), min(30, math.factorial(n))):
        assert G.contains(Perm(p)) == (p in elems)


@settings(max_examples=30, deadline=None)
@given(perm_lists, st.integers(0, 10**6))
def test_stabilizer_and_orbit_brute(data, seed):
    n, gens = data
    G = PermGroup(n, [Perm(g) for g in gens])
    elems = closure([tuple(g) for g in gens], n)
    rng = random.Random(seed)
    S = set(rng.sample(range(n), rng.randint(1, n)))
    T = set(rng.sample(range(n), len(S)))
    stab = {e for e in elems if {e[i] for i in S} == S}
    assert set_stabilizer(G, S).order() == len(stab)
    witness = is_in_orbit(G, S, T)
    hit = any({e[i] for i in S} == T for e in elems)
    assert (witness is not None) == hit
    if witness is not None:
        assert {witness[i] for i in S} == T
