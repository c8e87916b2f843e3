"""Colored graphs and their automorphism groups.

The search engine only understands vertex-colored simple graphs.  Edge
colors and directed edges are removed first by one of the reductions
below; the extra vertices they introduce are placed after the original
ones and the resulting group is restricted back.

The engine is a plain individualization-refinement search: equitable
refinement by neighbour counts, target cell = first smallest non-singleton
cell, and one exhaustive subtree search per candidate image of each base
point on the first path.  Found automorphisms prune later candidates by
orbit, and the automorphisms collected at each depth directly give a base
and strong generating set for the resulting :class:`PermGroup`.
"""

from collections import defaultdict
from math import ceil, log2

from .permgrp import Perm, PermGroup


def _label_key(x):
    return (type(x).__name__, repr(x))


def dense_ids(labels):
    """Map hashable labels to ids 0..C-1 in a deterministic order."""
    distinct = sorted(set(labels), key=_label_key)
    return {lab: i for i, lab in enumerate(distinct)}


class ColoredGraph:
    """Vertex- and edge-colored graph on ``range(n)``.

    ``edges`` maps vertex pairs to hashable color labels; ``None`` as
    ``edges`` value collection means no edges.  Undirected edges are stored
    with ``i < j``.  ``bipartition`` optionally declares two parts.
    """

    def __init__(self, n, vertex_colors=None, edges=None, *, directed=False, bipartition=None):
        self.n = n
        self.directed = directed
        self.vertex_colors = list(vertex_colors) if vertex_colors is not None else [0] * n
        if len(self.vertex_colors) != n:
            raise ValueError("one color per vertex required")
        self.edges = {}
        for (i, j), c in (edges or {}).items():
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range")
            key = (i, j) if directed or i < j else (j, i)
            if key in self.edges and self.edges[key] != c:
                raise ValueError(f"conflicting colors for edge {key}")
            self.edges[key] = c
        if bipartition is not None:
            left, right = (tuple(sorted(part)) for part in bipartition)
            if set(left) & set(right) or len(left) + len(right) != n:
                raise ValueError("bipartition must split the vertex set")
            lset = set(left)
            for i, j in self.edges:
                if (i in lset) == (j in lset):
                    raise ValueError("edge inside one part of the bipartition")
            bipartition = (left, right)
        self.bipartition = bipartition

    @classmethod
    def from_adjacency(cls, n, pairs, vertex_colors=None):
        return cls(n, vertex_colors, {tuple(e): 1 for e in pairs})

    @property
    def vertex_count(self):
        return self.n

    @property
    def vertex_color_ids(self):
        ids = dense_ids(self.vertex_colors)
        return [ids[c] for c in self.vertex_colors]

    @property
    def edge_color_ids(self):
        ids = dense_ids(self.edges.values())
        return {e: ids[c] for e, c in self.edges.items()}

    def edge_colors(self):
        return set(self.edges.values())

    def is_plain(self):
        return not self.directed and len(self.edge_colors()) <= 1

    def is_complete(self):
        want = self.n * (self.n - 1)
        return len(self.edges) == (want if self.directed else want // 2)

    def adjacency(self):
        adj = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return [frozenset(a) for a in adj]

    def edge_color(self, i, j):
        if self.directed:
            return self.edges.get((i, j))
        return self.edges.get((i, j) if i < j else (j, i))

    def is_automorphism(self, g):
        g = tuple(g)
        if any(self.vertex_colors[g[v]] != self.vertex_colors[v] for v in range(self.n)):
            return False
        if self.bipartition is not None and {g[v] for v in self.bipartition[0]} != set(self.bipartition[0]):
            return False
        mapped = {}
        for (i, j), c in self.edges.items():
            a, b = g[i], g[j]
            if not self.directed and a > b:
                a, b = b, a
            mapped[(a, b)] = c
        return mapped == self.edges

    def relabeled(self, g):
        """Graph with vertex ``v`` renamed ``g[v]``."""
        colors = [None] * self.n
        for v in range(self.n):
            colors[g[v]] = self.vertex_colors[v]
        edges = {(g[i], g[j]): c for (i, j), c in self.edges.items()}
        bip = None
        if self.bipartition is not None:
            bip = tuple(tuple(g[v] for v in part) for part in self.bipartition)
        return ColoredGraph(self.n, colors, edges, directed=self.directed, bipartition=bip)

    def to_dimacs(self):
        """DIMACS-like dump: ``p edge n m``, ``n v color`` and ``e u v color`` lines (1-based)."""
        vid = self.vertex_color_ids
        eid = self.edge_color_ids
        kind = "arc" if self.directed else "edge"
        lines = [f"p {kind} {self.n} {len(self.edges)}"]
        lines += [f"n {v + 1} {vid[v]}" for v in range(self.n)]
        lines += [f"e {i + 1} {j + 1} {eid[(i, j)]}" for (i, j) in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text):
        n = 0
        directed = False
        colors = {}
        edges = {}
        for raw in text.splitlines():
            tok = raw.split()
            if not tok or tok[0] == "c":
                continue
            if tok[0] == "p":
                directed = tok[1] == "arc"
                n = int(tok[2])
            elif tok[0] == "n":
                colors[int(tok[1]) - 1] = int(tok[2])
            elif tok[0] == "e":
                edges[(int(tok[1]) - 1, int(tok[2]) - 1)] = int(tok[3])
        return cls(n, [colors.get(v, 0) for v in range(n)], edges, directed=directed)

    def __repr__(self):
        kind = "digraph" if self.directed else "graph"
        return f"ColoredGraph({kind}, n={self.n}, edges={len(self.edges)})"


# reductions ------------------------------------------------------------------


def reduce_intermediate(G):
    """Replace every colored edge by a vertex of that color joined to both ends."""
    if G.directed:
        raise ValueError("reduce the digraph first")
    colors = [("v", c) for c in G.vertex_colors]
    edges = {}
    for (i, j), c in sorted(G.edges.items()):
        m = len(colors)
        colors.append(("e", c))
        edges[(i, m)] = 1
        edges[(j, m)] = 1
    return ColoredGraph(len(colors), colors, edges)


def reduce_bipartite_puget(G):
    """Puget's reduction for bipartite edge-colored graphs.

    For every vertex ``i`` of the smaller part and color ``c`` one
    intermediate vertex is joined to ``i`` and to all neighbours reached
    by ``c``-colored edges.
    """
    if G.bipartition is None:
        raise ValueError("graph has no declared bipartition")
    left, right = G.bipartition
    if len(left) > len(right):
        left, right = right, left
    lset = set(left)
    side = {v: (0 if v in lset else 1) for v in range(G.n)}
    colors = [("v", side[v], c) for v, c in enumerate(G.vertex_colors)]
    bundles = defaultdict(list)
    for (i, j), c in G.edges.items():
        a, b = (i, j) if i in lset else (j, i)
        bundles[(a, c)].append(b)
    edges = {}
    for (a, c) in sorted(bundles, key=lambda k: (k[0], _label_key(k[1]))):
        m = len(colors)
        colors.append(("m", c))
        edges[(a, m)] = 1
        for b in bundles[(a, c)]:
            edges[(b, m)] = 1
    return ColoredGraph(len(colors), colors, edges)


def _superposition_codes(G):
    labels = sorted(G.edge_colors(), key=_label_key)
    if G.is_complete():
        codes = {c: i for i, c in enumerate(labels)}
        count = len(labels)
    else:
        codes = {c: i + 1 for i, c in enumerate(labels)}
        count = len(labels) + 1
    layers = max(1, ceil(log2(count))) if count > 1 else 1
    return codes, layers


def reduce_superposition(G):
    """Binary-layer reduction: layer ``l`` holds the edges whose color code has bit ``l`` set.

    Copies of a vertex in consecutive layers are joined by rail edges so
    that automorphisms act identically on every layer.
    """
    if G.directed:
        raise ValueError("reduce the digraph first")
    n = G.n
    codes, layers = _superposition_codes(G)
    colors = [(l, c) for l in range(layers) for c in G.vertex_colors]
    edges = {}
    for (i, j), c in G.edges.items():
        code = codes[c]
        for l in range(layers):
            if code >> l & 1:
                edges[(l * n + i, l * n + j)] = 1
    for l in range(layers - 1):
        for v in range(n):
            edges[(l * n + v, (l + 1) * n + v)] = 1
    return ColoredGraph(n * layers, colors, edges)


def reduce_digraph(G):
    """Undirected graph on ``2n`` vertices: ``a`` and ``a' = n + a``.

    Arc ``(a, b)`` becomes edge ``(a, b')`` with the arc's color, and each
    ``a`` is tied to ``a'`` by an edge of a fresh color.  The two copies
    carry distinct vertex colors, so the result is bipartite.
    """
    if not G.directed:
        raise ValueError("graph is not directed")
    n = G.n
    colors = [("out", c) for c in G.vertex_colors] + [("in", c) for c in G.vertex_colors]
    edges = {(a, n + a): ("pair",) for a in range(n)}
    for (a, b), c in G.edges.items():
        edges[(a, n + b)] = ("arc", c)
    return ColoredGraph(
        2 * n, colors, edges, bipartition=(range(n), range(n, 2 * n))
    )


REDUCTIONS = {
    "superposition": reduce_superposition,
    "intermediate": reduce_intermediate,
    "puget": reduce_bipartite_puget,
}


def _side_tagged(G):
    """``G`` with each vertex color prefixed by its part when the parts share colors.

    A declared bipartition is structure: automorphisms map each part onto
    itself, so tagging changes nothing when the color sets are disjoint.
    """
    if G.bipartition is None:
        return G
    left, right = G.bipartition
    if not {G.vertex_colors[v] for v in left} & {G.vertex_colors[v] for v in right}:
        return G
    lset = set(left)
    colors = [("part", 0 if v in lset else 1, c) for v, c in enumerate(G.vertex_colors)]
    return ColoredGraph(G.n, colors, G.edges, directed=G.directed, bipartition=G.bipartition)


def choose_reduction(G):
    if G.bipartition is not None:
        return "puget"
    pairs = G.n * (G.n - 1) // 2
    if pairs and len(G.edges) > pairs // 2:
        return "superposition"
    return "intermediate"


def to_vertex_colored(G, reduction=None):
    """Plain vertex-colored graph whose first ``G.n`` vertices are ``G``'s."""
    G = _side_tagged(G)
    if G.directed:
        G = reduce_digraph(G)
    if G.is_plain():
        return G
    name = reduction or choose_reduction(G)
    if name == "puget" and G.bipartition is None:
        name = "superposition"
    return REDUCTIONS[name](G)


# search engine -----------------------------------------------------------------


def _refine(cells, adj, splitters):
    """Equitable refinement of an ordered partition (label-invariant)."""
    cells = [list(c) for c in cells]
    owner = {}
    for c in cells:
        for v in c:
            owner[v] = c
    queue = [cells[i] for i in splitters]
    queued = {id(c) for c in queue}
    dead = set()
    head = 0
    n_cells = len(cells)
    total = len(owner)
    while head < len(queue) and n_cells < total:
        S = queue[head]
        head += 1
        if id(S) in dead:
            continue
        queued.discard(id(S))
        count = defaultdict(int)
        for u in S:
            for w in adj[u]:
                count[w] += 1
        touched = {id(owner[w]) for w in count}
        new_cells = []
        for c in cells:
            if len(c) > 1 and id(c) in touched:
                groups = defaultdict(list)
                for v in c:
                    groups[count.get(v, 0)].append(v)
                if len(groups) > 1:
                    parts = [groups[k] for k in sorted(groups)]
                    for part in parts:
                        for v in part:
                            owner[v] = part
                    if id(c) in queued:
                        dead.add(id(c))
                    for part in parts:
                        queue.append(part)
                        queued.add(id(part))
                    new_cells.extend(parts)
                    n_cells += len(parts) - 1
                    continue
            new_cells.append(c)
        cells = new_cells
    return [tuple(c) for c in cells]


def _individualize(cells, t, v, adj):
    cell = cells[t]
    rest = tuple(x for x in cell if x != v)
    new = list(cells[:t]) + [(v,), rest] + list(cells[t + 1:])
    return _refine(new, adj, [t])


def _shape(cells):
    return tuple(len(c) for c in cells)


class _Tree:
    """First path of the search tree of one graph."""

    def __init__(self, n, adj, colors, n_priority):
        self.n = n
        self.adj = adj
        self.n_priority = n_priority
        ids = dense_ids(colors)
        by_color = defaultdict(list)
        for v, c in enumerate(colors):
            by_color[ids[c]].append(v)
        self.color_shape = tuple((k, len(by_color[k])) for k in sorted(by_color))
        start = [tuple(by_color[k]) for k in sorted(by_color)]
        root = _refine(start, adj, range(len(start)))
        self.nodes = []  # (cells, target index or None)
        cells = root
        self.base = []
        while True:
            t = self.target(cells)
            self.nodes.append((cells, t))
            if t is None:
                break
            v = cells[t][0]
            self.base.append(v)
            cells = _individualize(cells, t, v, adj)
        self.leaf = [c[0] for c in cells]

    def target(self, cells):
        best = None
        for k, c in enumerate(cells):
            if len(c) > 1 and c[0] < self.n_priority:
                if best is None or len(c) < len(cells[best]):
                    best = k
        if best is not None:
            return best
        for k, c in enumerate(cells):
            if len(c) > 1 and (best is None or len(c) < len(cells[best])):
                best = k
        return best


def _dfs(ref, cells, depth, adj, check, prune_gens, seq):
    """Search the subtree at ``cells`` for a leaf accepted by ``check``."""
    ref_cells, t = ref.nodes[depth]
    if _shape(cells) != _shape(ref_cells):
        return None
    if t is None:
        g = [0] * len(ref.leaf)
        for a, c in zip(ref.leaf, cells):
            g[a] = c[0]
        return check(g)
    failed = []
    for w in cells[t]:
        if failed and prune_gens:
            fix = [h for h in prune_gens if all(h[x] == x for x in seq)]
            if fix and any(w in _orbit(f, fix) for f in failed):
                continue
        child = _individualize(cells, t, w, adj)
        hit = _dfs(ref, child, depth + 1, adj, check, prune_gens, seq + [w])
        if hit is not None:
            return hit
        failed.append(w)
    return None


def _orbit(x, gens):
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


def _plain_automorphisms(n, adj, colors, n_priority):
    """Base and strong generators (on all n vertices) of the automorphism group."""
    tree = _Tree(n, adj, colors, n_priority)

    def check(g):
        for v in range(n):
            av = adj[v]
            gv = g[v]
            if len(av) != len(adj[gv]):
                return None
            target = adj[gv]
            for u in av:
                if g[u] not in target:
                    return None
        return Perm(g)

    found = []  # (level, perm)
    levels = len(tree.base)
    for i in range(levels - 1, -1, -1):
        cells, t = tree.nodes[i]
        b = tree.base[i]
        if b >= n_priority:
            continue
        fixing = [g for lvl, g in found if lvl >= i]
        orbit = _orbit(b, fixing)
        for w in cells[t]:
            if w in orbit:
                continue
            child = _individualize(cells, t, w, adj)
            hit = _dfs(tree, child, i + 1, adj, check, [g for _, g in found], tree.base[:i] + [w])
            if hit is not None:
                found.append((i, hit))
                fixing.append(hit)
                orbit = _orbit(b, fixing)
    return tree, found


def plain_automorphism_group(G, n_restrict=None):
    """Automorphism group of a plain vertex-colored graph, restricted to its first vertices."""
    n = G.n
    k = n if n_restrict is None else n_restrict
    adj = G.adjacency()
    tree, found = _plain_automorphisms(n, adj, G.vertex_colors, k)
    base = [b for b in tree.base if b < k]
    depth = len(base)
    sgs = []
    for lvl, g in found:
        if lvl < depth:
            r = Perm(g[:k])
            if not r.is_identity() and r not in sgs:
                sgs.append(r)
    # found generators are ordered deepest-first; reorder shallow-first
    sgs.reverse()
    return PermGroup.from_bsgs(k, base, sgs)


def automorphisms(G, reduction=None, restrict=None):
    """Group of color- and adjacency-preserving permutations of ``G``'s vertices.

    With ``restrict=k`` the group is restricted to vertices ``0..k-1``,
    which must be a union of vertex color classes.
    """
    k = G.n if restrict is None else restrict
    if k < G.n:
        inside = set(G.vertex_colors[:k])
        if inside & set(G.vertex_colors[k:]):
            raise ValueError("restricted vertices must be a union of color classes")
    if G.n == 0:
        return PermGroup(0)
    H = to_vertex_colored(G, reduction)
    return plain_automorphism_group(H, k)


def find_isomorphism(G, H, reduction=None):
    """A vertex bijection ``g`` with ``H == G.relabeled(g)``, or ``None``.

    Both graphs are reduced the same way and searched against the first
    path of ``G``; color labels are compared as labels.
    """
    if G.n != H.n or G.directed != H.directed or len(G.edges) != len(H.edges):
        return None
    if sorted(map(_label_key, G.vertex_colors)) != sorted(map(_label_key, H.vertex_colors)):
        return None
    if sorted(map(_label_key, G.edges.values())) != sorted(map(_label_key, H.edges.values())):
        return None
    n = G.n
    G, H = _side_tagged(G), _side_tagged(H)
    if G.directed:
        G, H = reduce_digraph(G), reduce_digraph(H)
    labels = sorted(set(G.edges.values()) | set(H.edges.values()), key=_label_key)
    if G.is_plain() and H.is_plain() and len(labels) <= 1:
        Gr, Hr = G, H
    elif reduction in ("intermediate", "puget"):
        Gr, Hr = REDUCTIONS[reduction](G), REDUCTIONS[reduction](H)
    else:
        # one code table shared by both graphs
        Gr, Hr = _superposition_with(G, labels), _superposition_with(H, labels)
    if Gr.n != Hr.n:
        return None
    return _plain_isomorphism(Gr, Hr, n)


def _superposition_with(G, labels):
    n = G.n
    codes = {c: i + 1 for i, c in enumerate(labels)}
    layers = max(1, ceil(log2(len(labels) + 1)))
    colors = [(l, c) for l in range(layers) for c in G.vertex_colors]
    edges = {}
    for (i, j), c in G.edges.items():
        code = codes[c]
        for l in range(layers):
            if code >> l & 1:
                edges[(l * n + i, l * n + j)] = 1
    for l in range(layers - 1):
        for v in range(n):
            edges[(l * n + v, (l + 1) * n + v)] = 1
    return ColoredGraph(n * layers, colors, edges)


def _plain_isomorphism(G, H, k):
    n = G.n
    adjG = G.adjacency()
    adjH = H.adjacency()
    tree = _Tree(n, adjG, G.vertex_colors, k)
    ids = dense_ids(H.vertex_colors)
    byH = defaultdict(list)
    for v, c in enumerate(H.vertex_colors):
        byH[ids[c]].append(v)
    startH = [tuple(byH[c]) for c in sorted(byH)]
    rootH = _refine(startH, adjH, range(len(startH)))

    def check(g):
        for v in range(n):
            av = adjG[v]
            target = adjH[g[v]]
            if len(av) != len(target):
                return None
            for u in av:
                if g[u] not in target:
                    return None
        return Perm(g)

    hit = _dfs(tree, rootH, 0, adjH, check, [], [])
    if hit is None:
        return None
    return Perm(hit[:k])
