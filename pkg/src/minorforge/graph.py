"""Undirected simple graphs with dense integer vertex ids.

Vertices of a graph on n vertices are exactly 0..n-1.  All operations are
pure: they return new graphs (plus an id remap when vertices are renumbered)
and never mutate their inputs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InputError

VertexSet = frozenset[int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no loops, no parallel edges, dense ids."""

    n: int
    adj: tuple[frozenset[int], ...]
    labels: dict[int, str] | None = field(default=None, compare=False, hash=False)

    @staticmethod
    def from_edges(n: int, edges, labels: dict[int, str] | None = None) -> "Graph":
        if n < 0:
            raise InputError("vertex count must be non-negative")
        neigh: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            neigh[u].add(v)
            neigh[v].add(u)
        return Graph(n, tuple(frozenset(s) for s in neigh), labels)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label_of(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)


def _check_vertex_set(g: Graph, s) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} out of range for n={g.n}")
    return s


def induced_subgraph(g: Graph, s) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s``, with the old->new id remap.

    New ids follow ascending old ids, so the remap is order preserving.
    """
    s = _check_vertex_set(g, s)
    order = sorted(s)
    remap = {old: new for new, old in enumerate(order)}
    edges = [
        (remap[u], remap[v]) for u in order for v in g.adj[u] if v in s and u < v
    ]
    return Graph.from_edges(len(order), edges), remap


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, dict[int, int]]:
    """Contract the edge {u,v}, merging v into u; returns (graph, remap).

    The merged vertex keeps the smaller endpoint's position; neighbor sets
    are unioned and the result stays simple (no loop, no parallel edge).
    """
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise InputError(f"({u},{v}) is not an edge")
    u, v = min(u, v), max(u, v)
    keep = [w for w in range(g.n) if w != v]
    remap = {old: new for new, old in enumerate(keep)}
    remap[v] = remap[u]
    edges = set()
    for a in range(g.n):
        for b in g.adj[a]:
            if a < b:
                na, nb = remap[a], remap[b]
                if na != nb:
                    edges.add((min(na, nb), max(na, nb)))
    return Graph.from_edges(g.n - 1, edges), remap


def connected_components(g: Graph) -> list[VertexSet]:
    """Vertex sets of the connected components, sorted by smallest member."""
    seen = [False] * g.n
    parts: list[VertexSet] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
        parts.append(frozenset(comp))
    return parts


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def _max_internally_disjoint(g: Graph, s: int, t: int, cap: int) -> int:
    """Count internally vertex-disjoint s-t paths, stopping at ``cap``.

    Unit-capacity max flow on the usual vertex-split digraph: v_in -> v_out
    for every v except s, t; edges become out->in arcs both ways.
    """
    n = g.n
    # Node 2v = v_in, 2v+1 = v_out.
    arcs: dict[int, set[int]] = {i: set() for i in range(2 * n)}
    for v in range(n):
        arcs[2 * v].add(2 * v + 1)
    for u in range(n):
        for v in g.adj[u]:
            arcs[2 * u + 1].add(2 * v)
    flow: set[tuple[int, int]] = set()
    value = 0
    source, sink = 2 * s + 1, 2 * t
    while value < cap:
        # BFS augmenting path on the residual digraph.
        prev: dict[int, int] = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            x = queue.popleft()
            for y in arcs[x]:
                if y not in prev and (x, y) not in flow:
                    prev[y] = x
                    queue.append(y)
            # residual arcs: reverse of used flow
            for (a, b) in flow:
                if b == x and a not in prev:
                    prev[a] = x
                    queue.append(a)
        if sink not in prev:
            break
        # walk back, toggling flow
        y = sink
        while y != source:
            x = prev[y]
            if y in arcs[x] and (x, y) not in flow:
                flow.add((x, y))
            else:
                flow.discard((y, x))
            y = x
        value += 1
    return value


def is_i_connected(g: Graph, i: int) -> bool:
    """True iff every vertex pair admits i internally disjoint paths.

    The empty graph is never i-connected; the single vertex counts as
    1-connected (so 1-connectivity coincides with having one component) but
    not more.  K2 is 1-connected and not 2-connected.
    """
    if i < 1:
        raise InputError("i must be positive")
    if g.n == 0:
        return False
    if g.n == 1:
        return i == 1
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if _max_internally_disjoint(g, s, t, i) < i:
                return False
    return True


def degree_one_vertices(g: Graph) -> VertexSet:
    """The set L(g) of degree-one vertices; all of V when n = 1."""
    if g.n == 1:
        return frozenset({0})
    return frozenset(v for v in range(g.n) if g.degree(v) == 1)


def complete_join(g: Graph, a, b) -> Graph:
    """Add all edges between the disjoint vertex sets a and b (idempotent)."""
    a = _check_vertex_set(g, a)
    b = _check_vertex_set(g, b)
    if a & b:
        raise InputError(f"join sides overlap: {sorted(a & b)}")
    edges = set(g.edges())
    for u in a:
        for v in b:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(g.n, edges, g.labels)


# ---------------------------------------------------------------------------
# Text formats


def write_edgelist(g: Graph) -> str:
    """Bit-exact edge-list format: `n m` header then `u v` lines, u < v."""
    lines = [f"{g.n} {g.m}\n"]
    for u, v in g.edges():
        lines.append(f"{u} {v}\n")
    return "".join(lines)


def read_edgelist(text: str) -> Graph:
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise InputError("empty edge-list input")
    head = rows[0].split()
    if len(head) != 2:
        raise InputError(f"bad header line: {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise InputError(f"expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < v < n):
            raise InputError(f"edge line violates 0 <= u < v < n: {ln!r}")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise InputError("duplicate edge lines")
    return Graph.from_edges(n, edges)


def to_dot(g: Graph, name: str = "G") -> str:
    """DOT export, for documentation only."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label_of(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Named small graphs

def path_graph(r: int) -> Graph:
    return Graph.from_edges(r, [(i, i + 1) for i in range(r - 1)])


def cycle_graph(r: int) -> Graph:
    if r < 3:
        raise InputError("cycles need at least 3 vertices")
    return Graph.from_edges(r, [(i, (i + 1) % r) for i in range(r)])


def complete_graph(r: int) -> Graph:
    return Graph.from_edges(r, itertools.combinations(range(r), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}: vertex 0 is the center."""
    return Graph.from_edges(leaves + 1, [(0, i + 1) for i in range(leaves)])


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges)


def _named() -> dict[str, Graph]:
    return {
        "banner": Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]),
        "paw": Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]),
        "chair": Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)]),
        "claw": star_graph(3),
        "cricket": Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)]),
        "bull": Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]),
        "diamond": Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
        "gem": Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
        "dart": Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4)]),
        "bowtie": Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (3, 4)]),
        # triangle -- bridge -- triangle (two cut vertices, both on cycles)
        "barbell": Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (3, 5)]),
        # triangle with a two-edge tail (two cut vertices, one on the cycle)
        "tadpole32": Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)]),
        # two degree-2 centers, two pendants each
        "doublestar22": Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]),
    }


def named_graph(name: str) -> Graph:
    table = _named()
    if name in table:
        return table[name]
    if name.startswith("P") and name[1:].isdigit():
        return path_graph(int(name[1:]))
    if name.startswith("C") and name[1:].isdigit():
        return cycle_graph(int(name[1:]))
    if name.startswith("K") and name[1:].isdigit():
        return complete_graph(int(name[1:]))
    raise InputError(f"unknown graph name: {name}")


# ---------------------------------------------------------------------------
# Isomorphism via canonical forms (census graphs have <= 7 vertices)

_CANON_MAX = 12


def _refine_colors(g: Graph) -> list[int]:
    """Iterated neighborhood refinement; colors are order-canonical ranks."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in g.adj[v])))
            for v in range(g.n)
        ]
        ranking = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranking[sigs[v]] for v in range(g.n)]
        if new == colors:
            return colors
        colors = new


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Canonical (n, edges) pair, maximal adjacency word over relabellings.

    Searches orderings compatible with the refined color classes, pruning by
    degree sequence implicitly through the refinement.
    """
    if g.n > _CANON_MAX:
        raise InputError(f"canonical form limited to {_CANON_MAX} vertices")
    if g.n == 0:
        return (0, ())
    colors = _refine_colors(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    ordered_classes = [classes[c] for c in sorted(classes)]

    best: int = -1
    best_edges: tuple[tuple[int, int], ...] = ()
    nbits = g.n * (g.n - 1) // 2
    pos = {}
    idx = 0
    for a in range(g.n):
        for b in range(a + 1, g.n):
            pos[(a, b)] = nbits - 1 - idx
            idx += 1

    for perm_parts in itertools.product(
        *(itertools.permutations(cl) for cl in ordered_classes)
    ):
        order = [v for part in perm_parts for v in part]
        place = {v: i for i, v in enumerate(order)}
        word = 0
        for u, v in g.edges():
            a, b = place[u], place[v]
            if a > b:
                a, b = b, a
            word |= 1 << pos[(a, b)]
        if word > best:
            best = word
            best_edges = tuple(
                sorted(
                    (min(place[u], place[v]), max(place[u], place[v]))
                    for u, v in g.edges()
                )
            )
    return (g.n, best_edges)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g.vertices()) != sorted(
        h.degree(v) for v in h.vertices()
    ):
        return False
    return canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def enumerate_connected_graphs(n: int) -> tuple[Graph, ...]:
    """All connected graphs on n vertices, one per isomorphism class."""
    if n > 7:
        raise InputError("enumeration supported up to 7 vertices")
    if n == 0:
        return ()
    if n == 1:
        return (Graph.from_edges(1, []),)
    pairs = list(itertools.combinations(range(n), 2))
    seen: set[tuple[int, tuple[tuple[int, int], ...]]] = set()
    out: list[Graph] = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        g = Graph.from_edges(n, edges)
        if not is_connected(g):
            continue
        key = canonical_form(g)
        if key not in seen:
            seen.add(key)
            out.append(Graph.from_edges(n, key[1]))
    return tuple(out)
