"""Projective symmetries: permutations of extreme rays induced by linear maps.

A permutation ``s`` is projective when ``A v_i = a_i v_{s(i)}`` with all
``a_i > 0``.  Writing every generator in a fixed basis of generators turns
this into a homogeneous linear system for the multipliers ``a``; for a
non-decomposable cone its solution space has dimension at most one.
The group of a decomposable cone is the product, over isomorphism types
of its components, of the component group wreathed with a symmetric group.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .cone import Cone, decompose
from .errors import Decomposable, TheoremViolation, TooLarge
from .exactlin import RatMatrix, invert, solve_homogeneous
from .linsym import lin_group
from .permgrp import (
    DEFAULT_ENUMERATION_BOUND,
    DEFAULT_INDEX_BOUND,
    Perm,
    PermGroup,
    check_perm,
    intermediate_subgroup,
)
from .report import SymmetryReport


@dataclass
class ProjMembership:
    sigma: Perm
    accepted: bool
    q: int
    multipliers: tuple = None
    matrix: RatMatrix = None

    def __bool__(self):
        return self.accepted


@dataclass
class ProjTypeLabel:
    """Components sharing one projective isomorphism type."""

    type_id: int
    components: list = field(default_factory=list)

    @property
    def multiplicity(self):
        return len(self.components)


def _scaled_correspondence(C1, C2, mu):
    """Solve ``A v_i = a_i w_{mu(i)}``, ``a > 0``, for generators ``v`` of C1 and ``w`` of C2.

    Returns ``(q, multipliers, A)`` where ``q`` is the dimension of the
    solution space of the linear system before the sign condition;
    ``multipliers`` and ``A`` are ``None`` when no positive solution exists.
    """
    V, W = C1.generators, C2.generators
    n, p = C1.dim, C1.p
    S = C1.basis
    coeffs = C1.basis_coefficients
    in_basis = set(S)
    rows = []
    for i in range(p):
        if i in in_basis:
            continue
        c = coeffs[i]
        wi = W[mu[i]]
        for r in range(n):
            row = [Fraction(0)] * p
            for j, k in enumerate(S):
                if c[j]:
                    row[k] += c[j] * W[mu[k]][r]
            row[i] -= wi[r]
            rows.append(row)
    if rows:
        space = solve_homogeneous(RatMatrix(rows, p))
    else:
        space = [tuple(Fraction(int(i == k)) for i in range(p)) for k in range(p)]
    q = len(space)
    if q != 1:
        return q, None, None
    a = space[0]
    lead = next(x for x in a if x)
    if lead < 0:
        a = tuple(-x for x in a)
    if any(x <= 0 for x in a):
        return q, None, None
    U = RatMatrix.from_columns([V[k] for k in S], n)
    Us = RatMatrix.from_columns([W[mu[k]] for k in S], n)
    A = Us @ RatMatrix.diagonal([a[k] for k in S]) @ invert(U)
    return q, a, A


def proj_membership(C, sigma, check=True):
    """Test whether ``sigma`` is a projective symmetry of a non-decomposable cone."""
    sigma = check_perm(sigma, C.p)
    if check and len(decompose(C)) > 1:
        raise Decomposable("membership test needs a non-decomposable cone")
    q, a, A = _scaled_correspondence(C, C, sigma)
    if q > 1 and C.p > 1:
        raise TheoremViolation(f"solution space of dimension {q} for a non-decomposable cone")
    if a is None:
        return ProjMembership(sigma, False, q)
    return ProjMembership(sigma, True, q, a, A)


def proj_map(C1, C2, mu):
    """Multipliers and matrix for ``A v_i = a_i w_{mu(i)}`` between non-decomposable cones, or ``None``."""
    if C1.dim != C2.dim or C1.p != C2.p:
        return None
    q, a, A = _scaled_correspondence(C1, C2, mu)
    if q > 1 and C1.p > 1:
        raise TheoremViolation(f"solution space of dimension {q} for a non-decomposable cone")
    return None if a is None else (a, A)


def rescaled_lin(C, alphas):
    """``Lin`` of the rescaled generators ``a_i v_i``; flags when it certifies ``Proj``."""
    if any(Fraction(a) <= 0 for a in alphas):
        raise ValueError("multipliers must be positive")
    rep = lin_group(C.scaled(alphas))
    rep.kind = "rescaled_lin"
    transitive = rep.group.is_transitive()
    rep.extra["transitive"] = transitive
    rep.extra["certifies_proj"] = transitive and len(decompose(C)) == 1
    return rep


def _rational_root(x, k):
    """Positive rational ``r`` with ``r**k == x``, or ``None``."""
    if x <= 0:
        return None
    out = []
    for m in (x.numerator, x.denominator):
        lo, hi = 0, 1 << (m.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < m:
                lo = mid + 1
            else:
                hi = mid
        if lo**k != m:
            return None
        out.append(lo)
    return Fraction(out[0], out[1])


def witness_scaling(m):
    """Generator scalings ``b`` making an accepted ``sigma`` linear on ``b_i v_i``.

    With ``A v_i = a_i v_{s(i)}`` we need ``b_{s(i)} = b_i a_i / c`` for one
    constant ``c``; on a cycle of length ``k`` this forces ``c**k`` to be the
    product of the ``a_i`` over the cycle.  Returns ``None`` when no rational
    ``c`` serves every cycle.
    """
    if not m.accepted:
        return None
    sigma, a = m.sigma, m.multipliers
    c = None
    for cyc in sigma.cycles() or [(0,)]:
        prod = Fraction(1)
        for i in cyc:
            prod *= a[i]
        r = _rational_root(prod, len(cyc))
        if r is None or (c is not None and r != c):
            return None
        c = r
    for i in range(len(sigma)):
        if sigma[i] == i and a[i] != c:
            return None
    b = [None] * len(sigma)
    for i in range(len(sigma)):
        if b[i] is not None:
            continue
        b[i] = Fraction(1)
        j = i
        while sigma[j] != i:
            b[sigma[j]] = b[j] * a[j] / c
            j = sigma[j]
    return tuple(b)


def _component_group(C, stats, max_index):
    """Proj of a non-decomposable cone: Lin, Comb and the intermediate subgroup between them."""
    from .combsym import comb_group

    if C.p == 1:
        return PermGroup.trivial(1)
    lin = lin_group(C).group
    if lin.is_transitive():
        stats["shortcut"] = "transitive"
        return lin
    comb = comb_group(C).group
    if comb.order() == lin.order():
        stats["shortcut"] = "lin=comb"
        return lin
    return intermediate_subgroup(
        lin, comb, lambda s: proj_membership(C, s, check=False).accepted, max_index=max_index, stats=stats
    )


def _lift(perm, rays):
    """Map local indices of a component to global ray indices."""
    return {rays[a]: rays[perm[a]] for a in range(len(rays))}


def proj_group(C, max_index=DEFAULT_INDEX_BOUND):
    """``Proj(C)`` assembled from the components of the decomposition."""
    D = decompose(C)
    locs = [D.local_cone(k) for k in range(len(D))]
    types = []  # ProjTypeLabel with components as (index, witness bijection from the type's representative)
    for k, L in enumerate(locs):
        for T in types:
            r = T.components[0][0]
            found = _equivalent_simple(locs[r], L)
            if found is not None:
                T.components.append((k, found[0]))
                break
        else:
            types.append(ProjTypeLabel(len(types), [(k, Perm.identity(L.p))]))
    p = C.p
    gens = []
    stats_all = []
    orders = []
    expected = 1
    for T in types:
        r = T.components[0][0]
        stats = {}
        Gr = _component_group(locs[r], stats, max_index)
        stats_all.append(stats)
        orders.append(Gr.order())
        expected *= Gr.order() ** T.multiplicity * factorial(T.multiplicity)
        rays0 = D.components[r].rays
        for h in Gr.generators:
            m = _lift(h, rays0)
            gens.append(Perm([m.get(i, i) for i in range(p)]))
        # block transpositions between the representative and every other member
        for k, mu in T.components[1:]:
            rays_k = D.components[k].rays
            img = list(range(p))
            for a in range(len(rays0)):
                x, y = rays0[a], rays_k[mu[a]]
                img[x], img[y] = y, x
            gens.append(Perm(img))
    G = PermGroup(p, gens)
    if G.order() != expected:
        raise TheoremViolation(f"wreath product order {G.order()} differs from {expected}")
    extra = {
        "components": [list(c.rays) for c in D.components],
        "types": [[list(D.components[k].rays) for k, _ in T.components] for T in types],
        "multiplicities": [T.multiplicity for T in types],
        "type_orders": orders,
        "stats": stats_all,
    }
    return SymmetryReport("proj", G, extra=extra)


def _equivalent_simple(C1, C2, bound=DEFAULT_ENUMERATION_BOUND):
    """Projective equivalence of two non-decomposable cones: ``(mu, multipliers, A)`` or ``None``."""
    from .combsym import comb_equivalent, comb_group

    if C1.dim != C2.dim or C1.p != C2.p:
        return None
    if C1.p == 1:
        a = C2.generators[0][0] / C1.generators[0][0]
        if a <= 0:
            return None
        return Perm((0,)), (Fraction(1),), RatMatrix([[a]])
    mu0 = comb_equivalent(C1, C2)
    if mu0 is None:
        return None
    comb2 = comb_group(C2).group
    if comb2.order() > bound:
        raise TooLarge(f"{comb2.order()} combinatorial isomorphisms exceed bound {bound}")
    for g in comb2.elements(bound):
        mu = mu0 * g
        hit = proj_map(C1, C2, mu)
        if hit is not None:
            return mu, hit[0], hit[1]
    return None


def proj_equivalent(C1, C2, bound=DEFAULT_ENUMERATION_BOUND):
    """Ray bijection ``mu`` and matrix ``A`` with ``A v_i`` a positive multiple of ``w_{mu(i)}``.

    Returns ``(mu, A)`` or ``None``.  Decomposable cones are matched
    component by component.
    """
    if C1.dim != C2.dim or C1.p != C2.p:
        return None
    D1, D2 = decompose(C1), decompose(C2)
    if len(D1) != len(D2):
        return None
    if len(D1) == 1:
        hit = _equivalent_simple(C1, C2, bound)
        return None if hit is None else (hit[0], hit[2])
    L1 = [D1.local_cone(k) for k in range(len(D1))]
    L2 = [D2.local_cone(k) for k in range(len(D2))]
    used = set()
    mu = [None] * C1.p
    alphas = [None] * C1.p
    for k, A in enumerate(L1):
        for l, B in enumerate(L2):
            if l in used:
                continue
            hit = _equivalent_simple(A, B, bound)
            if hit is not None:
                used.add(l)
                m, a, _ = hit
                r1, r2 = D1.components[k].rays, D2.components[l].rays
                for x in range(len(r1)):
                    mu[r1[x]] = r2[m[x]]
                    alphas[r1[x]] = a[x]
                break
        else:
            return None
    from .linsym import linear_map_sending

    mu = Perm(mu)
    W = C2.generators
    M = linear_map_sending(C1.generators, [tuple(alphas[i] * x for x in W[mu[i]]) for i in range(C1.p)])
    return mu, M


def proj_contains(C, sigma):
    """Is ``sigma`` a projective symmetry of an arbitrary (possibly decomposable) cone?"""
    sigma = check_perm(sigma, C.p)
    D = decompose(C)
    where = {}
    for k, comp in enumerate(D.components):
        for x in comp.rays:
            where[x] = k
    for k, comp in enumerate(D.components):
        image = {sigma[x] for x in comp.rays}
        l = where[sigma[comp.rays[0]]]
        target = D.components[l].rays
        if image != set(target):
            return False
        pos = {x: a for a, x in enumerate(target)}
        mu = Perm([pos[sigma[x]] for x in comp.rays])
        if proj_map(D.local_cone(k), D.local_cone(l), mu) is None:
            return False
    return True


# cones with n + 1 rays -----------------------------------------------------------


@dataclass
class NPlusOneClass:
    """One projective class of cones with ``n + 1`` rays in dimension ``n``."""

    cone: Cone
    core_dim: int
    signs: tuple  # (n_plus, n_minus) of the dependency on the core rays

    @property
    def decomposable(self):
        return self.core_dim < self.cone.dim


def _core(k, n_plus, n_minus, n):
    """``e_1..e_k`` plus ``v`` with ``n_minus`` entries +1 and ``n_plus - 1`` entries -1, padded to ``R^n``."""
    v = [1] * n_minus + [-1] * (n_plus - 1) + [0] * (n - k)
    gens = [[int(i == j) for j in range(n)] for i in range(n)]
    return Cone(gens + [v])


def classify_n_plus_1(n):
    """Representatives of all projective classes of cones in ``R^n`` with ``n + 1`` rays.

    A non-decomposable class is fixed by the sign counts ``(n_plus, n_minus)``
    of the unique linear dependency, with both at least two.  Decomposable
    classes carry a lower dimensional non-decomposable core of ``k + 1`` rays
    plus ``n - k`` independent rays.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    out = []
    for k in range(n, 2, -1):
        for n_plus in range(2, (k + 1) // 2 + 1):
            n_minus = k + 1 - n_plus
            out.append(NPlusOneClass(_core(k, n_plus, n_minus, n), k, (n_plus, n_minus)))
    return out


def n_plus_1_signature(C):
    """``(core_dim, (n_plus, n_minus))`` of a cone with ``dim + 1`` rays."""
    if C.p != C.dim + 1:
        raise ValueError("cone must have exactly dim + 1 rays")
    (dep,) = solve_homogeneous(RatMatrix.from_columns(C.generators, C.dim))
    pos = sum(1 for x in dep if x > 0)
    neg = sum(1 for x in dep if x < 0)
    lo, hi = sorted((pos, neg))
    return lo + hi - 1, (lo, hi)
