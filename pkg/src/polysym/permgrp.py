"""Permutation groups on ``range(m)``.

Permutations are :class:`Perm` tuples of images.  Products compose left to
right: ``(p * q)(x) == q(p(x))``.  Groups carry a stabilizer chain built by
the deterministic Schreier-Sims algorithm, or handed in directly when a
caller (the graph automorphism search) already knows a base and strong
generating set.
"""

import json
from math import factorial, prod

from .errors import DegreeMismatch, OracleInconsistent, TooLarge

DEFAULT_ENUMERATION_BOUND = 10**7
DEFAULT_INDEX_BOUND = 10**6


class Perm(tuple):
    """A permutation stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, cycles):
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self):
        return len(self)

    def __call__(self, x):
        return self[x]

    def __mul__(self, other):
        return Perm([other[i] for i in self])

    def __invert__(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def __pow__(self, k):
        if k < 0:
            return (~self) ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def image_set(self, points):
        return frozenset(self[i] for i in points)

    def cycles(self):
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def check_perm(p, degree=None):
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {p!r}")
    if degree is not None and len(p) != degree:
        raise DegreeMismatch(f"permutation of degree {len(p)} in a group of degree {degree}")
    return p if isinstance(p, Perm) else Perm(p)


class _Level:
    __slots__ = ("point", "gens", "trans", "stab")

    def __init__(self, point=None):
        self.point = point
        self.gens = []
        self.trans = {} if point is None else {point: None}
        self.stab = None


class PermGroup:
    """Permutation group given by generators, with a lazily built stabilizer chain."""

    def __init__(self, degree, generators=(), *, base=()):
        self.degree = degree
        gens = []
        seen = set()
        for g in generators:
            g = Perm(g)
            check_perm(g, degree)
            if not g.is_identity() and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = gens
        self._base_prefix = tuple(base)
        self._chain = None

    # construction -------------------------------------------------------

    @classmethod
    def trivial(cls, degree):
        return cls(degree)

    @classmethod
    def symmetric(cls, degree):
        if degree < 2:
            return cls(degree)
        gens = [Perm.from_cycles(degree, [[0, 1]])]
        if degree > 2:
            gens.append(Perm.from_cycles(degree, [list(range(degree))]))
        G = cls(degree, gens)
        # base 0..m-2 with stabilizers Sym({i..m-1})
        sgs = [Perm.from_cycles(degree, [[i, i + 1]]) for i in range(degree - 1)]
        G._install_bsgs(list(range(degree - 1)), sgs)
        return G

    @classmethod
    def from_bsgs(cls, degree, base, strong_generators, generators=None):
        """Group with a known base and strong generating set (trusted, not re-verified)."""
        G = cls(degree, strong_generators if generators is None else generators)
        G._install_bsgs(list(base), [Perm(g) for g in strong_generators])
        return G

    def _install_bsgs(self, base, sgs):
        root = None
        prev = None
        for i, b in enumerate(base):
            lvl = _Level(b)
            lvl.gens = [g for g in sgs if all(g[x] == x for x in base[:i])]
            lvl.trans = _orbit_transversal(b, lvl.gens)
            if prev is None:
                root = lvl
            else:
                prev.stab = lvl
            prev = lvl
        self._chain = root or _Level()
        self._base_prefix = tuple(base)

    @property
    def chain(self):
        if self._chain is None:
            self._chain = _build_chain(self.degree, self.generators, self._base_prefix)
        return self._chain

    def with_base(self, prefix):
        """Same group with a chain whose base starts with ``prefix``."""
        prefix = tuple(prefix)
        if self._chain is not None and self.base()[: len(prefix)] == list(prefix):
            return self
        G = PermGroup(self.degree, self.generators, base=prefix)
        return G

    # queries -------------------------------------------------------------

    def _levels(self):
        lvl = self.chain
        out = []
        while lvl is not None and lvl.point is not None:
            out.append(lvl)
            lvl = lvl.stab
        return out

    def base(self):
        return [lvl.point for lvl in self._levels()]

    def strong_generators(self):
        seen = []
        for lvl in self._levels():
            for g in lvl.gens:
                if g not in seen:
                    seen.append(g)
        return seen

    def order(self):
        return prod(len(lvl.trans) for lvl in self._levels())

    def sift(self, g):
        """Residue of ``g`` after sifting, and the level index where it stopped."""
        for depth, lvl in enumerate(self._levels()):
            c = g[lvl.point]
            if c not in lvl.trans:
                return g, depth
            t = lvl.trans[c]
            if t is not None:
                g = g * ~t
        return g, None

    def contains(self, g):
        g = Perm(g)
        check_perm(g, self.degree)
        residue, _ = self.sift(g)
        return residue.is_identity()

    __contains__ = contains

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None

    def orbits(self):
        """Orbit partition of the natural action, as sorted tuples."""
        seen = set()
        out = []
        for x in range(self.degree):
            if x in seen:
                continue
            orb = [x]
            seen.add(x)
            for y in orb:
                for g in self.generators:
                    z = g[y]
                    if z not in seen:
                        seen.add(z)
                        orb.append(z)
            out.append(tuple(sorted(orb)))
        return out

    def orbit(self, x):
        for orb in self.orbits():
            if x in orb:
                return orb

    def is_transitive(self):
        return len(self.orbits()) <= 1

    def elements(self, bound=DEFAULT_ENUMERATION_BOUND):
        """Iterate over all elements, each exactly once."""
        if self.order() > bound:
            raise TooLarge(f"group of order {self.order()} exceeds enumeration bound {bound}")
        levels = self._levels()
        ident = Perm.identity(self.degree)
        transversals = [
            [lvl.trans[c] or ident for c in lvl.trans] for lvl in levels
        ]

        def rec(depth, acc):
            if depth < 0:
                yield acc
                return
            for t in transversals[depth]:
                yield from rec(depth - 1, acc * t)

        yield from rec(len(levels) - 1, ident)

    def random_element(self, rng):
        ident = Perm.identity(self.degree)
        g = ident
        for lvl in reversed(self._levels()):
            c = rng.choice(sorted(lvl.trans))
            g = g * (lvl.trans[c] or ident)
        return g

    def closure_with(self, *elements):
        return PermGroup(self.degree, list(self.generators) + [Perm(e) for e in elements])

    def conjugate(self, h):
        """The group ``h^-1 G h`` (relabel points through ``h``)."""
        h = Perm(h)
        return PermGroup(self.degree, [~h * g * h for g in self.generators])

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, gens={self.generators})"

    # serialization --------------------------------------------------------

    def to_dict(self):
        return {
            "degree": self.degree,
            "generators": [list(g) for g in self.generators],
            "order": str(self.order()),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        G = cls(int(data["degree"]), [Perm(g) for g in data["generators"]])
        if "order" in data and int(data["order"]) != G.order():
            raise ValueError("serialized order does not match the generators")
        return G

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _orbit_transversal(point, gens):
    trans = {point: None}
    frontier = [point]
    while frontier:
        nxt = []
        for b in frontier:
            tb = trans[b]
            for s in gens:
                c = s[b]
                if c not in trans:
                    trans[c] = s if tb is None else tb * s
                    nxt.append(c)
        frontier = nxt
    return trans


def _build_chain(degree, gens, prefix):
    """Deterministic Schreier-Sims; returns the root level of the chain.

    Every point of ``prefix`` becomes a base point, even when its basic
    orbit is trivial.
    """
    base = list(prefix)
    S = [g for g in gens if not g.is_identity()]
    for g in S:
        if all(g[b] == b for b in base):
            base.append(next(i for i, x in enumerate(g) if x != i))

    def fixes(g, i):
        return all(g[b] == b for b in base[:i])

    levels = []
    for i, b in enumerate(base):
        lvl = _Level(b)
        lvl.gens = [g for g in S if fixes(g, i)]
        lvl.trans = _orbit_transversal(b, lvl.gens)
        levels.append(lvl)

    def sift(g, start):
        for j in range(start, len(levels)):
            lvl = levels[j]
            c = g[lvl.point]
            if c not in lvl.trans:
                return g, j
            t = lvl.trans[c]
            if t is not None:
                g = g * ~t
        return g, len(levels)

    i = len(levels) - 1
    while i >= 0:
        lvl = levels[i]
        restart = None
        for b, tb in list(lvl.trans.items()):
            for s in lvl.gens:
                sb = s[b]
                x = s if tb is None else tb * s
                tsb = lvl.trans[sb]
                if tsb is not None:
                    x = x * ~tsb
                if x.is_identity():
                    continue
                h, j = sift(x, i + 1)
                if h.is_identity():
                    continue
                if j == len(levels):
                    pt = next(q for q, y in enumerate(h) if y != q)
                    base.append(pt)
                    levels.append(_Level(pt))
                S.append(h)
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(h)
                    levels[l].trans = _orbit_transversal(levels[l].point, levels[l].gens)
                restart = j
                break
            if restart is not None:
                break
        if restart is not None:
            i = restart
        else:
            i -= 1
    for a, b in zip(levels, levels[1:]):
        a.stab = b
    return levels[0] if levels else _Level()


# module-level conveniences -------------------------------------------------


def order(G):
    return G.order()


def contains(G, g):
    return G.contains(g)


def orbits(G):
    return G.orbits()


def elements(G, bound=DEFAULT_ENUMERATION_BOUND):
    return G.elements(bound)


def generated_by_elements(degree, elems):
    """Smallest group containing ``elems``, adding only elements not yet contained."""
    G = PermGroup(degree)
    for e in elems:
        if not G.contains(e):
            G = G.closure_with(e)
    return G


# backtrack searches ---------------------------------------------------------


def _prefix_levels(G, prefix):
    """Chain levels of ``G`` whose first base points are exactly ``prefix``."""
    Gb = PermGroup(G.degree, G.generators, base=tuple(prefix))
    levels = Gb._levels()
    return Gb, levels[: len(prefix)], levels[len(prefix):]


def _search(levels, start, phi, allowed, degree):
    """Depth-first search for an element mapping every base point into ``allowed``.

    ``phi`` is the partial product fixed by the choices above ``start``.
    Yields candidate partial products at the bottom of ``levels``.
    """
    if start == len(levels):
        yield phi
        return
    lvl = levels[start]
    for c, t in lvl.trans.items():
        img = phi[c]
        if img not in allowed:
            continue
        nxt = phi if t is None else t * phi
        yield from _search(levels, start + 1, nxt, allowed, degree)


def set_stabilizer(G, S):
    """Subgroup of ``G`` mapping the point set ``S`` onto itself."""
    S = sorted(set(S))
    m = G.degree
    if not S or len(S) == m:
        return PermGroup(m, G.generators)
    Gb, levels, rest = _prefix_levels(G, S)
    allowed = frozenset(S)
    ident = Perm.identity(m)
    k = len(levels)
    # generators of the pointwise stabilizer of S are in the stabilizer
    found = []
    for lvl in rest:
        for g in lvl.gens:
            if g not in found:
                found.append(g)
    for i in range(k - 1, -1, -1):
        lvl = levels[i]
        b = lvl.point
        known = [g for g in found if all(g[x] == x for x in S[:i])]
        orbit = _orbit_of(b, known)
        for c in sorted(lvl.trans):
            if c in orbit or c not in allowed:
                continue
            t = lvl.trans[c]
            phi = ident if t is None else t
            hit = next(_search(levels, i + 1, phi, allowed, m), None)
            if hit is not None:
                found.append(hit)
                known.append(hit)
                orbit = _orbit_of(b, known)
    return PermGroup(m, found)


def _orbit_of(x, gens):
    orb = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            for g in gens:
                z = g[y]
                if z not in orb:
                    orb.add(z)
                    nxt.append(z)
        frontier = nxt
    return orb


def is_in_orbit(G, S, T):
    """An element ``g`` of ``G`` with ``g(S) == T``, or ``None``."""
    S = sorted(set(S))
    T = frozenset(T)
    if len(S) != len(T):
        return None
    m = G.degree
    if not S:
        return Perm.identity(m)
    _, levels, _ = _prefix_levels(G, S)
    return next(_search(levels, 0, Perm.identity(m), T, m), None)


# intermediate subgroups -------------------------------------------------------


def _canonical_coset_rep(levels, g):
    """Canonical element of the coset ``{h * g : h in G1}`` for G1 with chain ``levels``."""
    for lvl in levels:
        best_c = None
        best_img = None
        for c in lvl.trans:
            img = g[c]
            if best_img is None or img < best_img:
                best_img = img
                best_c = c
        t = lvl.trans[best_c]
        if t is not None:
            g = t * g
    return g


def coset_representatives(G1, G2, max_index=DEFAULT_INDEX_BOUND):
    """Canonical representatives of the cosets ``G1 * g`` in ``G2``, identity first."""
    index = G2.order() // G1.order()
    if index > max_index:
        raise TooLarge(f"index {index} exceeds bound {max_index}")
    levels = G1._levels()
    start = _canonical_coset_rep(levels, Perm.identity(G2.degree))
    reps = [start]
    seen = {start}
    for r in reps:
        for s in G2.generators:
            c = _canonical_coset_rep(levels, r * s)
            if c not in seen:
                seen.add(c)
                reps.append(c)
    if len(reps) != index:
        raise AssertionError("coset enumeration does not match the index")
    return reps, levels


def double_cosets(G1, G2, max_index=DEFAULT_INDEX_BOUND):
    """Double cosets ``G1 g G1`` of ``G2``, each as a list of canonical right-coset reps."""
    reps, levels = coset_representatives(G1, G2, max_index)
    pos = {r: i for i, r in enumerate(reps)}
    parent = list(range(len(reps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, r in enumerate(reps):
        for t in G1.generators:
            j = pos[_canonical_coset_rep(levels, r * t)]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks = {}
    for i in range(len(reps)):
        blocks.setdefault(find(i), []).append(reps[i])
    return [blocks[k] for k in sorted(blocks)], levels


def intermediate_subgroup(G1, G2, oracle, *, max_index=DEFAULT_INDEX_BOUND, stats=None):
    """The subgroup ``H`` with ``G1 <= H <= G2`` described by a membership oracle.

    One oracle call is spent per double coset ``H g H``; every accepted
    element enlarges ``H`` and the decomposition is recomputed.  Elements
    rejected earlier keep their double cosets excluded.
    """
    if G1.degree != G2.degree:
        raise DegreeMismatch("groups of different degree")
    if not G1.is_subgroup_of(G2):
        raise ValueError("G1 is not a subgroup of G2")
    H = PermGroup(G1.degree, G1.generators)
    rejected = []
    calls = 0
    enlargements = 0
    while True:
        blocks, levels = double_cosets(H, G2, max_index)
        excluded = set()
        for x in rejected:
            excluded.add(_canonical_coset_rep(levels, x))
        grew = False
        for block in blocks[1:]:
            if excluded.intersection(block):
                continue
            rep = block[0]
            calls += 1
            if oracle(rep):
                H = H.closure_with(rep)
                enlargements += 1
                if any(H.contains(x) for x in rejected):
                    raise OracleInconsistent("accepted elements generate a rejected element")
                grew = True
                break
            rejected.append(rep)
        if not grew:
            break
    if stats is not None:
        stats["oracle_calls"] = calls
        stats["enlargements"] = enlargements
    return H


def symmetric_group_order(n):
    return factorial(n)
