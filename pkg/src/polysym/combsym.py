"""Combinatorial and skeleton symmetry groups.

``Skel_k(C)`` permutes the extreme rays so that every face of dimension at
most ``k`` goes to a face; ``Comb(C) = Skel_{n-1}(C)`` preserves the whole
face lattice.  Both are automorphism groups of ray/face incidence graphs.
"""

from .cgraph import ColoredGraph, automorphisms, find_isomorphism
from .cone import enumerate_faces
from .errors import TooLarge
from .linsym import lin_group, realize_permutation
from .permgrp import DEFAULT_INDEX_BOUND, Perm, PermGroup, intermediate_subgroup, is_in_orbit
from .report import SymmetryReport

DEFAULT_FACE_BOUND = 10**5


def _face_sets(C, k, bound):
    if k >= C.dim - 1:
        faces = [tuple(f) for f in C.facets]
    else:
        faces = [f.rays for f in enumerate_faces(C, k)]
    if len(faces) > bound:
        raise TooLarge(f"{len(faces)} faces of dimension {k} exceed bound {bound}")
    return faces


def incidence_graph(C, k=None, bound=DEFAULT_FACE_BOUND, faces=None):
    """Bipartite graph: rays ``0..p-1`` then one vertex per ``k``-face (default: facets)."""
    k = C.dim - 1 if k is None else k
    if faces is None:
        faces = _face_sets(C, k, bound)
    p = C.p
    colors = ["ray"] * p + ["face"] * len(faces)
    edges = {}
    for j, f in enumerate(faces):
        for i in f:
            edges[(i, p + j)] = 1
    return ColoredGraph(p + len(faces), colors, edges, bipartition=(range(p), range(p, p + len(faces))))


def skel_group(C, k, bound=DEFAULT_FACE_BOUND):
    """Permutations of the rays preserving all faces of dimension at most ``k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1 or C.p <= 1:
        G = PermGroup.symmetric(C.p)
    else:
        G = automorphisms(incidence_graph(C, min(k, C.dim - 1), bound), restrict=C.p)
    kind = "comb" if k >= C.dim - 1 else f"skel_{k}"
    return SymmetryReport(kind, G, extra={"k": k})


def comb_group(C, bound=DEFAULT_FACE_BOUND):
    """Automorphisms of the facet-ray incidence graph restricted to the rays."""
    rep = skel_group(C, max(C.dim - 1, 1), bound)
    rep.kind = "comb"
    rep.extra = {"facets": len(C.facets)}
    return rep


def comb_equivalent(C1, C2):
    """Ray bijection ``g`` carrying the face lattice of ``C1`` onto that of ``C2``, or ``None``."""
    if C1.dim != C2.dim or C1.p != C2.p or len(C1.facets) != len(C2.facets):
        return None
    g = find_isomorphism(incidence_graph(C1), incidence_graph(C2))
    return None if g is None else Perm(g[: C1.p])


def lucky_sandwich(C, k0=2, bound=DEFAULT_FACE_BOUND):
    """``Comb = Skel_{k0} = Lin`` if every skeleton generator is linearly realized, else ``None``."""
    S = skel_group(C, k0, bound)
    mats = {}
    for g in S.generators:
        A = realize_permutation(C, g)
        if A is None:
            return None
        mats[g] = A
    return SymmetryReport("comb", S.group, mats, {"method": "lucky_sandwich", "k0": k0})


def _facet_set_orbits(G, facets):
    """Orbit id of every facet ray-set under ``G`` acting on index sets."""
    ids = {}
    for f in facets:
        if f in ids:
            continue
        orbit_id = len(set(ids.values()))
        frontier = [f]
        ids[f] = orbit_id
        while frontier:
            nxt = []
            for s in frontier:
                for g in G.generators:
                    t = frozenset(g[i] for i in s)
                    if t not in ids:
                        ids[t] = orbit_id
                        nxt.append(t)
            frontier = nxt
    return ids


def facet_orbit_oracle(C, G1):
    """Membership test for ``Comb(C)`` from the facet orbits under ``G1 <= Comb(C)``.

    A permutation is accepted when the image of every facet lies in one of
    the orbits; representatives are tested first with ``is_in_orbit``.
    """
    facets = [frozenset(f) for f in C.facets]
    ids = _facet_set_orbits(G1, facets)
    reps = {}
    for f in facets:
        reps.setdefault(ids[f], f)
    rep_list = list(reps.values())

    def oracle(sigma):
        for S in rep_list:
            image = frozenset(sigma[i] for i in S)
            hit = ids.get(image)
            if hit is None or is_in_orbit(G1, reps[hit], image) is None:
                return False
        return all(frozenset(sigma[i] for i in f) in ids for f in facets)

    return oracle


def comb_via_intermediate(C, k0=2, bound=DEFAULT_FACE_BOUND, max_index=DEFAULT_INDEX_BOUND, lin=None):
    """``Comb(C)`` between ``Lin_v(C)`` and ``Skel_{k0}(C)`` by the intermediate subgroup algorithm."""
    lin = lin or lin_group(C)
    G2 = skel_group(C, k0, bound).group
    stats = {}
    H = intermediate_subgroup(lin.group, G2, facet_orbit_oracle(C, lin.group), max_index=max_index, stats=stats)
    return SymmetryReport("comb", H, extra={"method": "intermediate", "k0": k0, **stats})
