"""Polyhedral cones: validation, homogenization, faces and decomposition.

Everything here works at "desk scale": facets are found by testing the
hyperplanes spanned by subsets of generators, which is exponential in
the dimension but exact and simple.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import NotExtreme, NotFullDim, NotPointed, ParseError, TooLarge
from .exactlin import (
    RatMatrix,
    common_denominator,
    primitive,
    rank,
    rref,
    select_basis,
    solve_homogeneous,
    to_rat,
    vec,
)

DEFAULT_MAX_RAYS = 64


@dataclass(frozen=True, order=True)
class Face:
    rays: tuple
    dim: int

    def __len__(self):
        return len(self.rays)


@dataclass(frozen=True)
class Component:
    """One non-decomposable summand: its ray indices and the basis rays spanning it."""

    rays: tuple
    basis: tuple


@dataclass(frozen=True)
class Decomposition:
    components: tuple
    basis: tuple
    # coefficients[i] maps basis index k -> alpha_{k,i}, nonzero entries only
    coefficients: tuple

    def __len__(self):
        return len(self.components)

    def partition(self):
        return [c.rays for c in self.components]

    def local_cone(self, index):
        """The component as a full-dimensional cone in its own coordinates."""
        comp = self.components[index]
        gens = [
            tuple(self.coefficients[i].get(k, Fraction(0)) for k in comp.basis) for i in comp.rays
        ]
        return Cone(gens, check=False)


def _span_normal(vectors, n):
    """Primitive normal of the hyperplane spanned by ``vectors`` (None if not a hyperplane)."""
    if not vectors:
        return (1,) if n == 1 else None
    ns = solve_homogeneous([list(v) for v in vectors])
    if len(ns) != 1:
        return None
    return primitive(ns[0])


class Cone:
    """Full-dimensional pointed cone generated by ``p`` rational vectors.

    With ``check=True`` duplicate rays (positive multiples) are dropped,
    and full dimension, pointedness and extremality of every generator are
    verified.  ``facets`` may be supplied as ray index-sets; they are then
    trusted (see :func:`validate_facets`).
    """

    def __init__(self, generators, facets=None, *, check=True, max_rays=DEFAULT_MAX_RAYS):
        gens = [vec(g) for g in generators]
        if not gens:
            raise NotFullDim("a cone needs at least one generator")
        n = len(gens[0])
        if any(len(g) != n for g in gens):
            raise ValueError("generators have different lengths")
        if n == 0:
            raise NotFullDim("dimension 0")
        if any(all(x == 0 for x in g) for g in gens):
            raise ValueError("zero generator")
        self.max_rays = max_rays
        if check:
            seen = set()
            kept = []
            for g in gens:
                key = primitive(g)
                if key not in seen:
                    seen.add(key)
                    kept.append(g)
            gens = kept
        self.generators = tuple(gens)
        self.dim = n
        self._facets = None
        if facets is not None:
            self._facets = tuple(sorted(tuple(sorted(f)) for f in facets))
        if check:
            if rank(self.generators) != n:
                raise NotFullDim("generators do not span the ambient space")
            if len(self.generators) <= max_rays:
                self._check_pointed_extreme()

    @property
    def p(self):
        return len(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Cone(dim={self.dim}, p={self.p})"

    @cached_property
    def int_generators(self):
        """Generators times one common positive integer (preserves linear symmetries)."""
        d = common_denominator(self.generators)
        return tuple(tuple(int(x * d) for x in g) for g in self.generators)

    @cached_property
    def prim_generators(self):
        return tuple(primitive(g) for g in self.generators)

    @cached_property
    def matrix(self):
        """Generators as the columns of an n x p matrix."""
        return RatMatrix.from_columns(self.generators, self.dim)

    @cached_property
    def basis(self):
        return tuple(select_basis(self.generators))

    @cached_property
    def basis_coefficients(self):
        """``coeffs[i][j]`` = coefficient of basis vector ``basis[j]`` in generator ``i``."""
        B = RatMatrix.from_columns([self.generators[k] for k in self.basis], self.dim)
        aug = [list(B.row(r)) + list(self.matrix.row(r)) for r in range(self.dim)]
        red, _ = rref(aug)
        n = self.dim
        return tuple(tuple(red[j][n + i] for j in range(n)) for i in range(self.p))

    def scaled(self, alphas):
        alphas = vec(alphas)
        return Cone([[a * x for x in g] for a, g in zip(alphas, self.generators)], check=False)

    def permuted(self, order):
        """Cone whose i-th generator is generator ``order[i]`` of this cone."""
        return Cone([self.generators[i] for i in order], check=False)

    def transformed(self, A):
        return Cone([A @ g for g in self.generators], check=False)

    # facets -----------------------------------------------------------

    def _find_facets(self):
        p, n = self.p, self.dim
        if p > self.max_rays:
            raise TooLarge(f"{p} rays exceed the facet enumeration bound {self.max_rays}")
        P = self.prim_generators
        found = {}
        if n == 1:
            side = 1 if P[0][0] > 0 else -1
            if all((g[0] > 0) == (side > 0) for g in P):
                found[()] = (side,)
            return found
        # depth-first over independent subsets of size n-1
        def extend(start, chosen, echelon):
            if len(chosen) == n - 1:
                normal = _span_normal([P[i] for i in chosen], n)
                if normal is None:
                    return
                vals = [sum(a * b for a, b in zip(normal, g)) for g in P]
                if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                    return
                if all(v <= 0 for v in vals):
                    normal = tuple(-a for a in normal)
                    vals = [-v for v in vals]
                if all(v == 0 for v in vals):
                    return
                zero = tuple(i for i, v in enumerate(vals) if v == 0)
                found.setdefault(zero, normal)
                return
            for j in range(start, p):
                v = [Fraction(x) for x in P[j]]
                for piv, row in echelon:
                    f = v[piv]
                    if f:
                        v = [a - f * b for a, b in zip(v, row)]
                piv = next((i for i, x in enumerate(v) if x), None)
                if piv is None:
                    continue
                inv = 1 / v[piv]
                extend(j + 1, chosen + [j], echelon + [(piv, [x * inv for x in v])])

        extend(0, [], [])
        return found

    @cached_property
    def _facet_data(self):
        if self._facets is not None:
            normals = {}
            P = self.prim_generators
            for f in self._facets:
                rows = [list(P[i]) for i in f]
                normal = _span_normal(rows, self.dim) if rows else None
                if normal is None:
                    raise ValueError(f"supplied facet {f} does not span a hyperplane")
                if any(sum(a * b for a, b in zip(normal, g)) < 0 for g in P):
                    normal = tuple(-a for a in normal)
                normals[f] = normal
            return normals
        return self._find_facets()

    @property
    def facets(self):
        return sorted(self._facet_data)

    @property
    def facet_normals(self):
        return dict(self._facet_data)

    def _check_pointed_extreme(self):
        data = self._find_facets()
        normals = list(data.values())
        if not normals or rank(normals) != self.dim:
            raise NotPointed("cone contains a line")
        for i in range(self.p):
            on = [data[f] for f in data if i in f]
            r = rank(on) if on else 0
            if r != self.dim - 1:
                raise NotExtreme(f"generator {i} is not an extreme ray")
        if self._facets is None:
            self.__dict__["_facet_data"] = data

    def ray_rank(self, rays):
        if not rays:
            return 0
        cache = self.__dict__.setdefault("_rank_cache", {})
        key = frozenset(rays)
        if key not in cache:
            cache[key] = rank([self.prim_generators[i] for i in key])
        return cache[key]


def cone_hull(vectors, max_rays=DEFAULT_MAX_RAYS):
    """Cone over ``vectors`` keeping only extreme rays (first representative of each)."""
    tmp = Cone(vectors, check=False, max_rays=max_rays)
    seen = set()
    idx = []
    for i, g in enumerate(tmp.prim_generators):
        if g not in seen:
            seen.add(g)
            idx.append(i)
    tmp = Cone([tmp.generators[i] for i in idx], check=False, max_rays=max_rays)
    if rank(tmp.generators) != tmp.dim:
        raise NotFullDim("vectors do not span the ambient space")
    data = tmp._find_facets()
    normals = list(data.values())
    if not normals or rank(normals) != tmp.dim:
        raise NotPointed("cone contains a line")
    keep = []
    for i in range(tmp.p):
        on = [data[f] for f in data if i in f]
        if (rank(on) if on else 0) == tmp.dim - 1:
            keep.append(i)
    return Cone([tmp.generators[i] for i in keep], max_rays=max_rays)


def homogenize(vertices, **kwargs):
    """Cone over ``(1, v)`` for the vertices of a full-dimensional polytope."""
    verts = [vec(v) for v in vertices]
    if not verts or len(verts[0]) == 0:
        raise NotFullDim("polytope of dimension 0")
    n = len(verts[0])
    gens = [(Fraction(1),) + v for v in verts]
    if rank(gens) != n + 1:
        raise NotFullDim("vertices are affinely dependent")
    return Cone(gens, **kwargs)


def q_matrix(C):
    """Sum of the outer products of the generators."""
    n = C.dim
    q = [[Fraction(0)] * n for _ in range(n)]
    for g in C.generators:
        for a in range(n):
            ga = g[a]
            if ga:
                row = q[a]
                for b in range(n):
                    row[b] += ga * g[b]
    return RatMatrix(q, n)


def enumerate_facets(C):
    """All facets as :class:`Face` objects, sorted by ray index-set."""
    return [Face(f, C.dim - 1) for f in C.facets]


def face_lattice(C):
    """Dict mapping dimension -> sorted ray index-sets of all faces of that dimension."""
    n = C.dim
    levels = {n: [tuple(range(C.p))], 0: [()]}
    facets = [frozenset(f) for f in C.facets]
    current = set(facets)
    levels[n - 1] = sorted(tuple(sorted(f)) for f in current)
    for d in range(n - 1, 1, -1):
        current = _subfaces(C, current, facets, d - 1)
        levels[d - 1] = sorted(tuple(sorted(f)) for f in current)
    return levels


def _subfaces(C, faces, facets, d):
    out = set()
    for F in faces:
        for G in facets:
            H = F & G
            if H != F and H not in out and C.ray_rank(H) == d:
                out.add(H)
    return out


def enumerate_faces(C, k):
    """All k-dimensional faces (k = 0 is the apex, k = n the whole cone)."""
    if not 0 <= k <= C.dim:
        raise ValueError(f"face dimension {k} outside 0..{C.dim}")
    if k == C.dim:
        return [Face(tuple(range(C.p)), k)]
    if k == 1:
        return [Face((i,), 1) for i in range(C.p)]
    if k == 0:
        return [Face((), 0)]
    return [Face(f, k) for f in face_lattice_upto(C, k)]


def face_lattice_upto(C, k):
    """Ray sets of the k-faces, walking down from the facets only as far as needed."""
    facets = [frozenset(f) for f in C.facets]
    current = set(facets)
    for d in range(C.dim - 1, k, -1):
        current = _subfaces(C, current, facets, d - 1)
    return sorted(tuple(sorted(f)) for f in current)


def decompose(C):
    """Unique decomposition into non-decomposable summands.

    Each generator is written in a greedily chosen basis of generators;
    the supports of these coefficient vectors are merged with union-find
    and the connected components give the summands.
    """
    basis = C.basis
    coeffs = C.basis_coefficients
    parent = {k: k for k in basis}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    sparse = []
    for i in range(C.p):
        support = [basis[j] for j, a in enumerate(coeffs[i]) if a]
        sparse.append({basis[j]: a for j, a in enumerate(coeffs[i]) if a})
        r0 = find(support[0])
        for k in support[1:]:
            rk = find(k)
            if rk != r0:
                parent[rk] = r0
    groups = {}
    for k in basis:
        groups.setdefault(find(k), []).append(k)
    comp_of = {}
    for root, ks in groups.items():
        for k in ks:
            comp_of[k] = root
    rays = {}
    for i in range(C.p):
        root = comp_of[next(iter(sparse[i]))]
        rays.setdefault(root, []).append(i)
    comps = sorted(
        (Component(tuple(rays[root]), tuple(sorted(groups[root]))) for root in groups),
        key=lambda c: c.rays,
    )
    return Decomposition(tuple(comps), basis, tuple(sparse))


def is_decomposable(C):
    return len(decompose(C)) > 1


def direct_sum(*cones):
    """Direct sum of cones, generators stacked block-diagonally in order."""
    total = sum(c.dim for c in cones)
    gens = []
    offset = 0
    for c in cones:
        for g in c.generators:
            v = [Fraction(0)] * total
            v[offset:offset + c.dim] = g
            gens.append(v)
        offset += c.dim
    return Cone(gens, check=False)


def validate_facets(C, normals):
    """Check user-supplied facet normals against the generators.

    Every normal must be nonnegative on all generators, and the induced
    zero-sets must be exactly the facets of the cone.  Returns the facet
    ray index-sets.
    """
    P = C.prim_generators
    sets = set()
    for a in normals:
        a = vec(a)
        vals = [sum(x * y for x, y in zip(a, g)) for g in P]
        if any(v < 0 for v in vals):
            raise ValueError("facet normal is negative on a generator")
        sets.add(tuple(i for i, v in enumerate(vals) if v == 0))
    expected = set(map(tuple, C.facets))
    if sets != expected:
        raise ValueError("supplied facets do not match the generators")
    return sorted(sets)


def rays_from_facets(normals, **kwargs):
    """Extreme rays of ``{x : a.x >= 0 for a in normals}`` via the dual cone."""
    dual = Cone(normals, check=False, **kwargs)
    if rank(dual.generators) != dual.dim:
        raise NotPointed("inequalities do not define a pointed cone")
    rays = list(dual.facet_normals.values())
    return Cone(rays, **kwargs)


# text formats -----------------------------------------------------------


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_rat(tok, lineno):
    try:
        return to_rat(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad rational", lineno, tok) from None


def parse_matrix_block(text, kinds=("CONE", "POLY", "FACETS")):
    """Parse ``<KIND> <n> <count>`` followed by ``count`` rows of ``n`` rationals."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    toks = header.split()
    if len(toks) != 3 or toks[0].upper() not in kinds:
        raise ParseError(f"expected header '{'|'.join(kinds)} <n> <count>'", lineno, header)
    kind = toks[0].upper()
    try:
        n, count = int(toks[1]), int(toks[2])
    except ValueError:
        raise ParseError("bad header counts", lineno, header) from None
    rows = []
    for lineno, line in lines[1:]:
        toks = line.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", lineno, line)
        rows.append(tuple(_parse_rat(t, lineno) for t in toks))
    if len(rows) != count:
        raise ParseError(f"expected {count} rows, got {len(rows)}", lines[-1][0])
    return kind, n, rows


def parse_cone(text, **kwargs):
    """Read the ``CONE`` / ``POLY`` text formats (``POLY`` is homogenized)."""
    kind, n, rows = parse_matrix_block(text, ("CONE", "POLY"))
    if kind == "POLY":
        return homogenize(rows, **kwargs)
    return Cone(rows, **kwargs)


def parse_facets(text):
    """Read ``FACETS <n> <f>`` rows of homogeneous inequality normals ``a.x >= 0``."""
    _, _, rows = parse_matrix_block(text, ("FACETS",))
    return rows


def format_cone(C):
    lines = [f"CONE {C.dim} {C.p}"]
    lines += [" ".join(str(x) for x in g) for g in C.generators]
    return "\n".join(lines) + "\n"
