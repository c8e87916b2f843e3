"""Brute-force reference implementations used by the test-suite."""

import itertools
import random
from math import lcm
from fractions import Fraction

from polysym.exactlin import RatMatrix, invert, rank, select_basis


def graph_automorphisms(G):
    return {p for p in itertools.permutations(range(G.n)) if G.is_automorphism(p)}


def group_elements(G):
    return {tuple(g) for g in G.elements()}


def random_colored_graph(rng, n=None, directed=None, colors=3, density=0.5):
    from polysym.cgraph import ColoredGraph

    n = rng.randint(1, 8) if n is None else n
    directed = rng.random() < 0.3 if directed is None else directed
    vc = [rng.randint(0, 1) for _ in range(n)]
    edges = {}
    for i in range(n):
        for j in range(n):
            if i != j and (directed or i < j) and rng.random() < density:
                edges[(i, j)] = rng.randint(0, colors - 1)
    return ColoredGraph(n, vc, edges, directed=directed)


def realizes(V, sigma):
    """Does some invertible A map V[i] to V[sigma(i)] for all i?"""
    n = len(V[0])
    basis = select_basis(V)
    U = RatMatrix.from_columns([V[i] for i in basis], n)
    W = RatMatrix.from_columns([V[sigma[i]] for i in basis], n)
    if rank(W) < n:
        return None
    A = W @ invert(U)
    return A if all(A @ V[i] == V[sigma[i]] for i in range(len(V))) else None


def lin_brute(V):
    """All p! permutations filtered by exact realizability.

    Each ``v_i`` is written once in a basis ``v_b``; ``s`` is realizable iff
    ``v_{s(i)} = sum_j K[j][i] v_{s(b_j)}`` for every ``i`` (checked in integers).
    """
    p, n = len(V), len(V[0])
    basis = select_basis(V)
    U = RatMatrix.from_columns([V[i] for i in basis], n)
    K = invert(U) @ RatMatrix.from_columns(V, n)
    den = lcm(*(x.denominator for r in K.rows for x in r))
    Ki = [[int(x * den) for x in r] for r in K.rows]
    vden = lcm(*(x.denominator for v in V for x in v))
    W = [[int(x * vden) for x in v] for v in V]
    out = set()
    for s in itertools.permutations(range(p)):
        imgs = [W[s[b]] for b in basis]
        ok = True
        for i in range(p):
            col = [Ki[j][i] for j in range(n)]
            target = W[s[i]]
            for c in range(n):
                if sum(col[j] * imgs[j][c] for j in range(n)) != den * target[c]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(s)
    return out


def random_cone_generators(rng, n, p, lo=-3, hi=3):
    """Random rational vectors spanning a pointed cone (first coordinate positive)."""
    while True:
        V = [
            tuple([Fraction(rng.randint(1, 3))] + [Fraction(rng.randint(lo, hi), rng.randint(1, 2)) for _ in range(n - 1)])
            for _ in range(p)
        ]
        if rank(V) == n:
            return V


def face_sets(C):
    from polysym.cone import face_lattice

    return {frozenset(f) for faces in face_lattice(C).values() for f in faces}


def comb_brute(C):
    faces = face_sets(C)
    facets = [frozenset(f) for f in C.facets]
    out = set()
    for s in itertools.permutations(range(C.p)):
        if all(frozenset(s[i] for i in f) in faces for f in facets):
            if all(frozenset(s[i] for i in f) in faces for f in faces):
                out.add(s)
    return out


def seeded(seed):
    return random.Random(seed)


def proj_direct(V, sigma):
    """Solve ``A v_i = l_i v_{sigma(i)}`` in the unknowns ``(A, l)`` directly.

    Returns ``(dim, accepted)`` where ``dim`` is the dimension of the
    projection of the solution space onto ``l``; acceptance needs a
    one-dimensional sign-definite ``l`` with nonzero entries.
    """
    from polysym.exactlin import solve_homogeneous

    n, p = len(V[0]), len(V)
    rows = []
    for i in range(p):
        for r in range(n):
            row = [0] * (n * n + p)
            for c in range(n):
                row[r * n + c] = V[i][c]
            row[n * n + i] = -V[sigma[i]][r]
            rows.append(row)
    kernel = solve_homogeneous(rows)
    lam = [k[n * n:] for k in kernel]
    d = rank(lam) if lam else 0
    if d != 1:
        return d, False
    l = next(x for x in lam if any(x))
    ok = all(x > 0 for x in l) or all(x < 0 for x in l)
    return d, ok


def proj_brute(C):
    """Projective symmetries of a non-decomposable cone: Comb filtered by the direct system."""
    out = set()
    for s in comb_brute(C):
        d, ok = proj_direct(C.generators, s)
        if d > 1:
            raise AssertionError(f"multiplier space of dimension {d}")
        if ok:
            out.add(s)
    return out
