"""Block-cut trees and path decompositions.

Blocks are the maximal biconnected subgraphs; K2 counts as biconnected, K1
does not.  Blocks are stored as vertex sets (their edges are recoverable by
induction, which is what every edge-count use needs).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .graph import Graph, VertexSet, induced_subgraph, is_connected


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[VertexSet, ...]
    cut_vertices: VertexSet
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut vertex id)

    def leaf_blocks(self) -> tuple[int, ...]:
        """Indices of blocks that are leaves of the tree.

        A single-block tree has that block as its only leaf (L(T) = V(T)
        when the tree is one node).
        """
        if len(self.blocks) == 1:
            return (0,)
        deg = [0] * len(self.blocks)
        for b, _v in self.tree_edges:
            deg[b] += 1
        return tuple(i for i in range(len(self.blocks)) if deg[i] <= 1)

    def blocks_at(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.blocks) if v in b)


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Hopcroft-Tarjan DFS lowpoints; g must be connected with n >= 2."""
    if g.n < 2:
        raise InputError("block-cut tree needs at least two vertices")
    if not is_connected(g):
        raise InputError("block-cut tree needs a connected graph")

    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    cut = set()
    blocks: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    # Iterative DFS from vertex 0, neighbors ascending for determinism.
    stack: list[tuple[int, list[int], int]] = [(0, sorted(g.adj[0]), 0)]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack:
        v, nbrs, idx = stack.pop()
        if idx < len(nbrs):
            stack.append((v, nbrs, idx + 1))
            w = nbrs[idx]
            if disc[w] == -1:
                parent[w] = v
                edge_stack.append((v, w))
                if v == 0:
                    root_children += 1
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, sorted(g.adj[w]), 0))
            elif w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        else:
            u = parent[v]
            if u != -1:
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    # u separates v's subtree: everything stacked at or after
                    # the tree edge (u, v) is one block
                    members = set()
                    while True:
                        a, b = edge_stack.pop()
                        members.add(a)
                        members.add(b)
                        if (a, b) == (u, v):
                            break
                    blocks.append(frozenset(members))
                    if u != 0:
                        cut.add(u)
    if root_children >= 2:
        cut.add(0)

    blocks.sort(key=lambda b: tuple(sorted(b)))
    tree_edges = tuple(
        (i, v) for i, b in enumerate(blocks) for v in sorted(b) if v in cut
    )
    return BlockCutTree(tuple(blocks), frozenset(cut), tree_edges)


# ---------------------------------------------------------------------------
# Path decompositions


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[VertexSet, ...]

    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


@dataclass(frozen=True)
class DecompositionViolation:
    axiom: str  # "range" | "vertex-coverage" | "edge-coverage" | "contiguity"
    witness: object


def validate_decomposition(g: Graph, d: PathDecomposition):
    """Return the width if the three axioms hold, else the violation.

    Axioms: every vertex covered, both endpoints of every edge co-occur in a
    bag, and each vertex's bags form a contiguous interval.
    """
    if not d.bags:
        if g.n == 0:
            return -1
        return DecompositionViolation("vertex-coverage", 0)
    for i, bag in enumerate(d.bags):
        for v in bag:
            if not (0 <= v < g.n):
                return DecompositionViolation("range", (i, v))
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, bag in enumerate(d.bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
    for v in range(g.n):
        if v not in first:
            return DecompositionViolation("vertex-coverage", v)
    for v in range(g.n):
        for i in range(first[v], last[v] + 1):
            if v not in d.bags[i]:
                return DecompositionViolation("contiguity", v)
    for u, v in g.edges():
        if not any(u in bag and v in bag for bag in d.bags):
            return DecompositionViolation("edge-coverage", (u, v))
    return d.width()


def write_path_decomposition(d: PathDecomposition) -> str:
    lines = [f"bags {len(d.bags)}\n"]
    for bag in d.bags:
        lines.append(" ".join(str(v) for v in sorted(bag)) + "\n")
    return "".join(lines)


def read_path_decomposition(text: str) -> PathDecomposition:
    rows = [ln for ln in (r.strip() for r in text.splitlines()) if ln]
    if not rows or not rows[0].startswith("bags "):
        raise InputError("missing `bags <count>` header")
    count = int(rows[0].split()[1])
    if len(rows) - 1 != count:
        raise InputError(f"expected {count} bag lines, found {len(rows) - 1}")
    bags = tuple(frozenset(int(x) for x in ln.split()) for ln in rows[1:])
    return PathDecomposition(bags)


def framework_path_decomposition(fw) -> PathDecomposition:
    """The explicit framework path decomposition, k bags per gadget edge.

    For each PIS edge e (in sigma order) the bags sweep the columns of D^e;
    every bag carries J^{e_1}, J^e and J^{sigma(e)} in full.  When the two
    endpoint cells of e sit in different columns, the off-column endpoint
    gadget rides along in its partner's bag (columns are ordered so those
    two bags are adjacent), which covers the cross join while keeping the
    maximum bag at z*(k+1) + |J^{e_1}|*min(m,3) vertices.
    """
    idx = fw.index
    k = fw.instance.k
    sigma = fw.sigma
    m = len(sigma)
    if m == 0:
        raise InputError("framework has no gadget edges")
    j_first = idx.j_vertices(sigma[0])
    bags: list[frozenset[int]] = []
    for t, e in enumerate(sigma):
        nxt = sigma[(t + 1) % m]
        base = j_first | idx.j_vertices(e) | idx.j_vertices(nxt)
        (i1, j1), (i2, j2) = e
        if j1 == j2:
            col_order = list(range(1, k + 1))
            rider: frozenset[int] = frozenset()
            rider_col = 0
        else:
            col_order = [j for j in range(1, k + 1) if j != j2]
            col_order.insert(col_order.index(j1) + 1, j2)
            rider = idx.gadget_vertices(e, i2, j2)
            rider_col = j1
        for col in col_order:
            bag = base | idx.column_vertices(e, col)
            if col == rider_col:
                bag |= rider
            bags.append(bag)
    return PathDecomposition(tuple(bags))


def framework_pd_width(fw) -> int:
    """Width achieved by framework_path_decomposition.

    Matches the construction's bound z*(k+1) - 1 + 3*|V(J^{e_1})| whenever
    the cyclic order has at least three gadget edges and some edge spans two
    columns (always true for normalized instances with k >= 2); with fewer
    edges only min(m, 3) separator gadgets are distinct.
    """
    k = fw.instance.k
    m = len(fw.sigma)
    j_size = len(fw.index.j_vertices(fw.sigma[0]))
    z = fw.params.z
    spanning = any(j1 != j2 for ((_, j1), (_, j2)) in fw.sigma)
    cols = k + 1 if spanning else k
    return z * cols - 1 + min(m, 3) * j_size
