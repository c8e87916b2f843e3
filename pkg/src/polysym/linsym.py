"""Linear symmetries of a generator family.

``Lin_v(C)`` is the group of permutations ``s`` of the generators for
which some invertible ``A`` sends ``v[i]`` to ``v[s(i)]`` exactly.  It is
computed as the automorphism group of the complete graph on the
generators whose edge ``{i, j}`` is colored by ``v_i^T Q^{-1} v_j`` with
``Q = sum v v^T``.
"""

from dataclasses import dataclass
from math import lcm

from .cgraph import ColoredGraph, automorphisms, find_isomorphism
from .cone import Cone, q_matrix
from .errors import RealizationFailure, TooLarge
from .exactlin import RatMatrix, dot, hermite_normal_form, invert, rank, select_basis
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_INDEX_BOUND,
    Perm,
    PermGroup,
    check_perm,
    generated_by_elements,
    intermediate_subgroup,
)
from .report import SymmetryReport

DEFAULT_ORBIT_BOUND = 10**5


@dataclass(frozen=True)
class RealizedSymmetry:
    sigma: Perm
    A: RatMatrix


class EdgeColorTable:
    """The table ``w[i][j] = (v_i^T Q^{-1} B_k v_j)_k`` over a list of matrices ``B``."""

    def __init__(self, vectors, B=None):
        self.vectors = [tuple(v) for v in vectors]
        n = len(self.vectors[0])
        Q = q_matrix(Cone(self.vectors, check=False))
        self.Qinv = invert(Q)
        mats = B if B is not None else [RatMatrix.identity(n)]
        left = [self.Qinv.T @ v for v in self.vectors]  # (Q^{-1})^T v_i, so w_ij = left_i . B v_j
        right = [[Bk @ v for v in self.vectors] for Bk in mats]
        p = len(self.vectors)
        self.width = len(mats)
        self.table = [
            [tuple(dot(left[i], right[k][j]) for k in range(self.width)) for j in range(p)]
            for i in range(p)
        ]

    def __getitem__(self, ij):
        i, j = ij
        return self.table[i][j]

    def is_symmetric(self):
        p = len(self.table)
        return all(self.table[i][j] == self.table[j][i] for i in range(p) for j in range(i))

    def graph(self, directed=None):
        p = len(self.table)
        if directed is None:
            directed = not self.is_symmetric()
        vc = [self.table[i][i] for i in range(p)]
        if directed:
            edges = {(i, j): self.table[i][j] for i in range(p) for j in range(p) if i != j}
        else:
            edges = {(i, j): self.table[i][j] for i in range(p) for j in range(i + 1, p)}
        return ColoredGraph(p, vc, edges, directed=directed)


def _vectors(C):
    return list(C.generators) if isinstance(C, Cone) else [tuple(v) for v in C]


def linear_map_sending(src, dst, basis=None):
    """The unique ``A`` with ``A src[i] = dst[i]`` for all ``i``, or ``None``.

    ``src`` must span; ``A`` is fixed on a basis of ``src`` and the
    remaining images are checked.
    """
    n = len(src[0])
    if basis is None:
        basis = select_basis(src)
    U = RatMatrix.from_columns([src[b] for b in basis], n)
    W = RatMatrix.from_columns([dst[b] for b in basis], n)
    A = W @ invert(U)
    for s, d in zip(src, dst):
        if A @ s != tuple(d):
            return None
    if rank(A) < n:
        return None
    return A


def realize_permutation(C, sigma):
    """Matrix ``A`` with ``A v_i = v_{sigma(i)}`` for every generator, or ``None``."""
    V = _vectors(C)
    sigma = check_perm(sigma, len(V))
    basis = C.basis if isinstance(C, Cone) else None
    return linear_map_sending(V, [V[sigma[i]] for i in range(len(V))], basis)


def _realize_all(C, group, kind, B=None):
    mats = {}
    for g in group.generators:
        A = realize_permutation(C, g)
        if A is None:
            raise RealizationFailure(f"graph automorphism {g!r} has no realizing matrix")
        if B is not None and any(A @ Bk != Bk @ A for Bk in B):
            raise RealizationFailure(f"realization of {g!r} does not commute with the given matrices")
        mats[g] = A
    return SymmetryReport(kind, group, mats)


def lin_group(C):
    """``Lin_v(C)`` with a realizing matrix for each generator."""
    table = EdgeColorTable(_vectors(C))
    G = automorphisms(table.graph(directed=False))
    if not isinstance(C, Cone):
        C = Cone(C, check=False)
    rep = _realize_all(C, G, "lin")
    rep.extra["Q"] = q_matrix(C)
    return rep


def _normalized_algebra(B, n):
    """``[I] + B`` with linearly dependent members dropped."""
    mats = [RatMatrix.identity(n)] + [M if isinstance(M, RatMatrix) else RatMatrix(M) for M in B]
    flat = [tuple(x for row in M.rows for x in row) for M in mats]
    keep = []
    for i in range(len(mats)):
        if rank([flat[k] for k in keep] + [flat[i]]) == len(keep) + 1:
            keep.append(i)
    return [mats[i] for i in keep]


def centralizer_group(C, B):
    """Elements of ``Lin_v(C)`` whose realizations commute with every matrix in ``B``."""
    V = _vectors(C)
    if not isinstance(C, Cone):
        C = Cone(V, check=False)
    mats = _normalized_algebra(B, len(V[0]))
    table = EdgeColorTable(V, mats)
    G = automorphisms(table.graph())
    rep = _realize_all(C, G, "centralizer", mats)
    rep.extra["algebra_size"] = len(mats)
    return rep


def lin_equivalent(C1, C2):
    """A correspondence between two generator families related by a linear map.

    Returns ``(g, A)`` with ``A v_i = w_{g(i)}`` or ``None``.
    """
    V, W = _vectors(C1), _vectors(C2)
    if len(V) != len(W) or len(V[0]) != len(W[0]):
        return None
    g = find_isomorphism(EdgeColorTable(V).graph(False), EdgeColorTable(W).graph(False))
    if g is None:
        return None
    A = linear_map_sending(V, [W[g[i]] for i in range(len(V))])
    if A is None:
        raise RealizationFailure("isomorphic color graphs without a linear correspondence")
    return g, A


# integral subgroups ------------------------------------------------------------


def is_unimodular(A):
    return A.is_integral() and invert(A).is_integral()


def _require_integral(C):
    if any(x.denominator != 1 for v in C.generators for x in v):
        raise ValueError("integral subgroups need integral generators")


def integral_subgroup_filter(C, bound=DEFAULT_ENUMERATION_BOUND, lin=None):
    """``GL_v(C, Z)`` by testing the realization of every element of ``Lin_v(C)``."""
    _require_integral(C)
    lin = lin or lin_group(C)
    if lin.order() > bound:
        raise TooLarge(f"Lin has {lin.order()} elements, bound {bound}")
    keep = []
    for g in lin.group.elements(bound):
        A = realize_permutation(C, g)
        if is_unimodular(A):
            keep.append(g)
    H = generated_by_elements(C.p, keep)
    if H.order() != len(keep):
        raise RealizationFailure("integral elements are not closed under composition")
    return _integral_report(C, H, "filter")


def _integral_report(C, H, method, **extra):
    rep = SymmetryReport("integral", H, {g: realize_permutation(C, g) for g in H.generators})
    rep.extra["method"] = method
    rep.extra.update(extra)
    return rep


def integral_subgroup_intermediate(C, G1=None, max_index=DEFAULT_INDEX_BOUND, lin=None):
    """``GL_v(C, Z)`` from a known integral subgroup ``G1`` by double-coset oracle calls."""
    _require_integral(C)
    lin = lin or lin_group(C)
    G1 = G1 if G1 is not None else PermGroup.trivial(C.p)
    stats = {}
    H = intermediate_subgroup(
        G1, lin.group, lambda g: is_unimodular(realize_permutation(C, g)), max_index=max_index, stats=stats
    )
    return _integral_report(C, H, "intermediate", **stats)


def _integer_span_basis(vectors):
    """HNF basis (as rows) of the integer lattice spanned by integral vectors."""
    return hermite_normal_form([[int(x) for x in v] for v in vectors])


def _prime_factors(d):
    out = []
    q = 2
    while q * q <= d:
        while d % q == 0:
            out.append(q)
            d //= q
        q += 1
    if d > 1:
        out.append(d)
    return out


class _QuotientAction:
    """Action of ``Lin_v(C)`` on sublattices of ``(Z/d)^n`` in the basis of ``L'``."""

    def __init__(self, C):
        n = C.dim
        basis_rows = _integer_span_basis(C.generators)
        self.W = RatMatrix.from_columns(basis_rows, n)  # columns: HNF basis of L'
        self.Winv = invert(self.W)
        self.d = lcm(*(x.denominator for r in self.Winv.rows for x in r))
        # d * (coordinates of Z^n) as integer generators of a subgroup of Z^n / d Z^n
        self.start = [tuple(int(self.d * x) for x in self.Winv.col(j)) for j in range(n)]
        self.C = C
        self._cache = {}

    def matrix(self, g):
        H = self._cache.get(g)
        if H is None:
            A = realize_permutation(self.C, g)
            H = self.Winv @ A @ self.W
            if not H.is_integral():
                raise RealizationFailure("symmetry does not preserve the generator lattice")
            H = [[int(x) for x in r] for r in H.rows]
            self._cache[g] = H
        return H

    def canonical(self, gens, m):
        n = len(gens[0]) if gens else self.C.dim
        rows = [[x % m for x in v] for v in gens] + [[m if i == j else 0 for j in range(n)] for i in range(n)]
        return tuple(hermite_normal_form(rows))

    def act(self, key, g, m):
        H = self.matrix(g)
        imgs = [tuple(sum(H[i][k] * v[k] for k in range(len(v))) for i in range(len(H))) for v in key]
        return self.canonical(imgs, m)


def _stabilizer(action, group, m, bound):
    """Stabilizer of ``start mod m`` by orbit-stabilizer with Schreier generators."""
    root = action.canonical(action.start, m)
    trans = {root: Perm.identity(group.degree)}
    queue = [root]
    gens = list(group.generators)
    stab = PermGroup.trivial(group.degree)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        tx = trans[x]
        for s in gens:
            y = action.act(x, s, m)
            if y not in trans:
                if len(trans) >= bound:
                    raise TooLarge(f"lattice orbit exceeds {bound}")
                trans[y] = tx * s
                queue.append(y)
            else:
                h = tx * s * ~trans[y]
                if not h.is_identity() and not stab.contains(h):
                    stab = stab.closure_with(h)
    if stab.order() * len(trans) != group.order():
        raise RealizationFailure("orbit-stabilizer count mismatch")
    return stab, len(trans)


def integral_subgroup_lattice_quotient(C, lin=None, refine=False, max_orbit=DEFAULT_ORBIT_BOUND):
    """``GL_v(C, Z)`` as the stabilizer of ``Z^n`` acting modulo ``d`` on lattices over ``L'``.

    ``L'`` is the integer span of the generators and ``d`` the least
    integer with ``Z^n`` inside ``(1/d) L'``.  With ``refine`` the
    stabilizer is computed through the divisor chain of ``d``.
    """
    _require_integral(C)
    lin = lin or lin_group(C)
    action = _QuotientAction(C)
    d = action.d
    if d == 1:
        return _integral_report(C, lin.group, "lattice", d=1, orbit_sizes=[1])
    moduli = [d]
    if refine:
        moduli = []
        m = 1
        for q in _prime_factors(d):
            m *= q
            moduli.append(m)
    G = lin.group
    sizes = []
    for m in moduli:
        G, size = _stabilizer(action, G, m, max_orbit)
        sizes.append(size)
    return _integral_report(C, G, "lattice", d=d, orbit_sizes=sizes)


INTEGRAL_METHODS = {
    "filter": integral_subgroup_filter,
    "intermediate": integral_subgroup_intermediate,
    "lattice": integral_subgroup_lattice_quotient,
}


def check_report_matrices(C, rep):
    """Every matrix maps generators as its permutation says and fixes ``Q``."""
    V = _vectors(C)
    Q = q_matrix(C if isinstance(C, Cone) else Cone(V, check=False))
    for g, A in rep.matrices.items():
        if any(A @ V[i] != V[g[i]] for i in range(len(V))):
            return False
        if A @ Q @ A.T != Q:
            return False
    return True
