"""Forbidden-family analysis: besf order, leaf block cuts, case dispatch.

The dispatcher mirrors the case split used to prove the superexponential
lower bounds: stars, big blocks, then a walk down the number of cut
vertices.  All "arbitrarily chosen" vertices are fixed by smallest-id
tie-breaking so builds are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import BlockCutTree, block_cut_tree
from .errors import InputError
from .graph import (
    Graph,
    VertexSet,
    connected_components,
    induced_subgraph,
    is_connected,
    is_isomorphic,
    named_graph,
    path_graph,
)
from .minors import Limits, Relation, find_minor_model

CASE_HARD_GENE = "HardGene"
CASE_CYCLE_TWO_CUT = "CycleTwoCut"
CASE_THREE_CUT = "ThreeCut"
CASE_TWO_CUT = "TwoCut"
CASE_CYCLE_STAR_TWO_CUT = "CycleStarTwoCut"
CASE_COMMANDER = "Commander"
CASE_BUTTERNUT = "Butternut"
CASE_CRICK_MINOR = "CrickMinor"
CASE_CRICK_TM = "CrickTM"
CASE_NOT_IN_SCOPE = "NotInScope"

ALL_CASES = (
    CASE_HARD_GENE,
    CASE_CYCLE_TWO_CUT,
    CASE_THREE_CUT,
    CASE_TWO_CUT,
    CASE_CYCLE_STAR_TWO_CUT,
    CASE_COMMANDER,
    CASE_BUTTERNUT,
    CASE_CRICK_MINOR,
    CASE_CRICK_TM,
    CASE_NOT_IN_SCOPE,
)


# ---------------------------------------------------------------------------
# Block edge size function


@dataclass(frozen=True)
class BesfFunction:
    """Finitely supported step function x -> edges lying in >=x-edge blocks.

    steps holds (threshold, value) pairs with strictly increasing thresholds
    starting at 1; the value at x is the value of the last threshold <= x
    (and the value at 0 equals the value at 1, both the total edge count).
    """

    steps: tuple[tuple[int, int], ...]

    def value(self, x: int) -> int:
        x = max(x, 1)
        out = 0
        for threshold, val in self.steps:
            if threshold <= x:
                out = val
            else:
                break
        return out


def block_edge_counts(h: Graph) -> list[int]:
    """Edge count of every block of h (empty for a single vertex)."""
    if h.n < 2:
        return []
    bct = block_cut_tree(h)
    out = []
    for block in bct.blocks:
        sub, _ = induced_subgraph(h, block)
        out.append(sub.m)
    return out


def besf(h: Graph) -> BesfFunction:
    if h.n == 0 or not is_connected(h):
        raise InputError("besf needs a connected non-empty graph")
    counts = block_edge_counts(h)
    thresholds = sorted({1} | {c + 1 for c in counts})
    steps = tuple(
        (x, sum(c for c in counts if c >= x)) for x in thresholds
    )
    return BesfFunction(steps)


@dataclass(frozen=True)
class BesfOrder:
    kind: str  # "less" | "greater" | "equal"
    witness: int | None


def besf_compare(f: BesfFunction, g: BesfFunction) -> BesfOrder:
    """Witness-based total order on block edge size functions.

    The witness is the deepest step threshold where the functions disagree;
    beyond it they coincide, so the smaller side there decides the order.
    """
    thresholds = sorted(
        {x for x, _ in f.steps} | {x for x, _ in g.steps}, reverse=True
    )
    for x in thresholds:
        fv, gv = f.value(x), g.value(x)
        if fv != gv:
            return BesfOrder("less" if fv < gv else "greater", x)
    return BesfOrder("equal", None)


def besf_witness_valid(f: BesfFunction, g: BesfFunction, x0: int) -> bool:
    """Does x0 witness f < g: strict there and dominated everywhere after."""
    if f.value(x0) >= g.value(x0):
        return False
    horizon = max(x for x, _ in f.steps + g.steps)
    return all(f.value(x) <= g.value(x) for x in range(x0, horizon + 1))


# ---------------------------------------------------------------------------
# k-edges leaf block cuts


@dataclass(frozen=True)
class LeafBlockCut:
    x_side: VertexSet
    y_side: VertexSet
    block: VertexSet
    pivot: int


def _block_edges(h: Graph, block: VertexSet) -> int:
    sub, _ = induced_subgraph(h, block)
    return sub.m


def _peel_small_leaf_blocks(h: Graph, k: int) -> frozenset[int]:
    """Vertices surviving iterated removal of leaf blocks with < k edges."""
    cur = frozenset(range(h.n))
    while True:
        sub, remap = induced_subgraph(h, cur)
        if sub.n < 2:
            return cur
        inverse = {new: old for old, new in remap.items()}
        bct = block_cut_tree(sub)
        if len(bct.blocks) == 1:
            return cur
        drop: set[int] = set()
        for bi in bct.leaf_blocks():
            block = bct.blocks[bi]
            bsub, _ = induced_subgraph(sub, block)
            if bsub.m <= k - 1:
                (cut_v,) = block & bct.cut_vertices
                drop |= {inverse[v] for v in block if v != cut_v}
        if not drop:
            return cur
        cur = cur - drop


def k_edges_leaf_block_cut(h: Graph, k: int) -> LeafBlockCut:
    """The (X, Y, B, v) split isolating a >=k-edge leaf-side block.

    Computed by peeling small leaf blocks, then taking the smallest-id
    qualifying leaf block; the pivot is the smallest cut vertex (any vertex
    when h is 2-connected) that validates the defining conditions.
    """
    if h.n < 2 or not is_connected(h):
        raise InputError("need a connected graph on >= 2 vertices")
    if not any(c >= k for c in block_edge_counts(h)):
        raise InputError(f"no block with at least {k} edges")

    survivors = _peel_small_leaf_blocks(h, k)
    sub, remap = induced_subgraph(h, survivors)
    inverse = {new: old for old, new in remap.items()}
    bct_sub = block_cut_tree(sub)
    candidates_blocks = []
    for bi in bct_sub.leaf_blocks():
        block = frozenset(inverse[v] for v in bct_sub.blocks[bi])
        if _block_edges(h, block) >= k:
            candidates_blocks.append(block)
    candidates_blocks.sort(key=lambda b: tuple(sorted(b)))
    bct_h = block_cut_tree(h)
    full_vertices = frozenset(range(h.n))

    for block in candidates_blocks:
        if not bct_h.cut_vertices:
            pivots = sorted(block)
        else:
            pivots = sorted(block & bct_h.cut_vertices)
        for v in pivots:
            if h.n == len(block) and not bct_h.cut_vertices:
                y_side = full_vertices
            else:
                rest = _component_of(h, {v}, next(iter(block - {v})))
                y_side = rest | {v}
            x_side = (full_vertices - y_side) | {v}
            ysub, ymap = induced_subgraph(h, y_side)
            yinv = {new: old for old, new in ymap.items()}
            if ysub.n < 2:
                continue
            big = [
                frozenset(yinv[u] for u in b)
                for b in block_cut_tree(ysub).blocks
                if induced_subgraph(ysub, b)[0].m >= k
            ]
            if len(big) == 1 and big[0] == block:
                return LeafBlockCut(x_side, y_side, block, v)
    raise InputError(f"no valid {k}-edges leaf block cut found")


def _component_of(h: Graph, removed: set[int], start: int) -> frozenset[int]:
    """Vertex set of the component of h minus `removed` containing start."""
    seen = {start}
    queue = [start]
    while queue:
        x = queue.pop()
        for y in h.adj[x]:
            if y not in removed and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


# ---------------------------------------------------------------------------
# Essential pairs


@dataclass(frozen=True)
class EssentialPair:
    host_index: int
    host: Graph
    block: VertexSet
    first: int
    second: int
    core: Graph
    core_first: int  # id of `first` inside the core


def check_connected_collection(fam) -> list[Graph]:
    fam = list(fam)
    if not fam:
        raise InputError("family must be non-empty")
    for hx in fam:
        if hx.n < 2 or not is_connected(hx):
            raise InputError("family members must be connected with >= 2 vertices")
    return fam


def essential_pair(fam) -> EssentialPair:
    """Leaf block of minimum edge count over the family, with its vertices.

    The first vertex is the block's only cut vertex when one exists (leaf
    blocks have at most one), else the smallest id; the second is the
    smallest neighbor of the first inside the block; the core is the host
    with the rest of the block removed.
    """
    fam = check_connected_collection(fam)
    best = None
    for idx, host in enumerate(fam):
        bct = block_cut_tree(host)
        for bi in bct.leaf_blocks():
            block = bct.blocks[bi]
            count = _block_edges(host, block)
            key = (count, idx, tuple(sorted(block)))
            if best is None or key < best[0]:
                best = (key, idx, host, block, bct)
    _, idx, host, block, bct = best
    cuts_in_block = sorted(block & bct.cut_vertices)
    first = cuts_in_block[0] if cuts_in_block else min(block)
    bsub, bmap = induced_subgraph(host, block)
    binv = {new: old for old, new in bmap.items()}
    second = min(binv[u] for u in bsub.adj[bmap[first]])
    core_vertices = frozenset(range(host.n)) - (block - {first})
    core, cmap = induced_subgraph(host, core_vertices)
    return EssentialPair(idx, host, block, first, second, core, cmap[first])


# ---------------------------------------------------------------------------
# Class membership and the case dispatcher


@dataclass(frozen=True)
class Membership:
    in_c: bool
    in_q: bool
    in_s: bool
    banner_minor: bool


def _is_star(h: Graph) -> bool:
    if h.n < 2 or h.m != h.n - 1:
        return False
    degs = sorted(h.degree(v) for v in h.vertices())
    return degs[-1] == h.n - 1 and all(d == 1 for d in degs[:-1])


def class_membership(h: Graph, limits: Limits | None = None) -> Membership:
    if h.n < 2 or not is_connected(h):
        raise InputError("membership is defined for connected graphs on >= 2 vertices")
    banner = named_graph("banner")
    banner_minor = find_minor_model(h, banner, limits) is not None
    in_q = is_isomorphic(h, path_graph(5)) or not banner_minor
    in_s = _is_star(h) and h.n >= 5
    in_c = any(c >= 5 for c in block_edge_counts(h))
    return Membership(in_c, in_q, in_s, banner_minor)


@dataclass
class CaseLabel:
    case: str
    payload: dict


def _has_cycle_on(h: Graph, vertices: frozenset[int], dropped_edge=None) -> bool:
    sub_edges = [
        (u, v)
        for u, v in h.edges()
        if u in vertices and v in vertices and (u, v) != dropped_edge
    ]
    comp_count = 0
    seen: set[int] = set()
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in sub_edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in vertices:
        if v not in seen:
            comp_count += 1
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return len(sub_edges) > len(vertices) - comp_count


def classify_case(h: Graph, rel: Relation, limits: Limits | None = None) -> CaseLabel:
    """Reduction-case dispatch; exactly one case fires for in-scope graphs.

    Order: stars with >= 4 leaves, then blocks with >= 5 edges, then by the
    cut-vertex structure; graphs that survive every case are the
    single-exponential side of the dichotomy (NotInScope).
    """
    if h.n < 2 or not is_connected(h):
        raise InputError("classification needs a connected graph on >= 2 vertices")

    # (1) stars with at least four leaves
    if _is_star(h) and h.n >= 5:
        if rel is Relation.MINOR:
            center = max(range(h.n), key=h.degree)
            p = h.n - 1
            return CaseLabel(
                CASE_TWO_CUT,
                {"x": center, "y": None, "s_x": p - 2, "s_y": 2, "p": p},
            )
        return CaseLabel(CASE_NOT_IN_SCOPE, {"reason": "star under topological minors"})

    bct = block_cut_tree(h)
    cuts = bct.cut_vertices
    edge_counts = [_block_edges(h, b) for b in bct.blocks]

    # (2) a block with at least five edges
    if any(c >= 5 for c in edge_counts):
        cut5 = k_edges_leaf_block_cut(h, 5)
        bsub, bmap = induced_subgraph(h, cut5.block)
        binv = {new: old for old, new in bmap.items()}
        vprime = min(binv[u] for u in bsub.adj[bmap[cut5.pivot]])
        return CaseLabel(CASE_HARD_GENE, {"cut": cut5, "vprime": vprime})

    # every remaining block is an edge, a C3, or a C4
    cyclic_with_two_cuts = [
        b
        for b, c in zip(bct.blocks, edge_counts)
        if c >= 3 and len(b & cuts) >= 2
    ]

    # (3) exactly one cycle carrying two or more cut vertices
    if len(cyclic_with_two_cuts) == 1:
        block = cyclic_with_two_cuts[0]
        edge = min(
            ((u, v) for u, v in h.edges() if u in block and v in block),
        )
        return CaseLabel(CASE_CYCLE_TWO_CUT, {"block": block, "edge": edge})

    # (4) three or more cut vertices, not all in one block
    if len(cuts) >= 3 and not any(cuts <= b for b in bct.blocks):
        return CaseLabel(CASE_THREE_CUT, _three_cut_payload(h, bct))

    # (5) exactly two cut vertices
    if len(cuts) == 2:
        u, w = sorted(cuts)
        shared = [b for b, c in zip(bct.blocks, edge_counts) if u in b and w in b]
        if shared:
            block = shared[0]
            if _block_edges(h, block) >= 3:
                edge = min(
                    ((a, b) for a, b in h.edges() if a in block and b in block),
                )
                return CaseLabel(CASE_CYCLE_TWO_CUT, {"block": block, "edge": edge})
            side_u = _component_of_without_edge(h, u, (u, w))
            side_w = _component_of_without_edge(h, w, (u, w))
            cyc_u = _has_cycle_on(h, side_u, dropped_edge=(u, w))
            cyc_w = _has_cycle_on(h, side_w, dropped_edge=(u, w))
            if cyc_u and cyc_w:
                return CaseLabel(CASE_CYCLE_STAR_TWO_CUT, {"v": u, "v2": w})
            if cyc_u or cyc_w:
                x, y = (u, w) if cyc_u else (w, u)
                return CaseLabel(CASE_COMMANDER, _commander_payload(h, bct, x, y))
            p = sum(1 for v in range(h.n) if h.degree(v) == 1)
            if p >= 4:
                s_u = sum(1 for v in h.adj[u] if h.degree(v) == 1)
                s_w = sum(1 for v in h.adj[w] if h.degree(v) == 1)
                return CaseLabel(
                    CASE_TWO_CUT, {"x": u, "y": w, "s_x": s_u, "s_y": s_w, "p": p}
                )

    # (6) exactly one cut vertex
    if len(cuts) == 1:
        (x,) = cuts
        cyclic = [b for b, c in zip(bct.blocks, edge_counts) if c >= 3]
        cyclic.sort(key=lambda b: tuple(sorted(b)))
        if len(cyclic) >= 2:
            b1, b2 = cyclic[0], cyclic[1]
            hx_vertices = frozenset(range(h.n)) - ((b1 | b2) - {x})
            return CaseLabel(
                CASE_BUTTERNUT,
                {"x": x, "B1": b1, "B2": b2, "hx_vertices": hx_vertices},
            )
        if len(cyclic) == 1:
            membership = class_membership(h, limits)
            if not membership.banner_minor:
                s = sum(1 for v in range(h.n) if h.degree(v) == 1)
                case = CASE_CRICK_MINOR if rel is Relation.MINOR else CASE_CRICK_TM
                return CaseLabel(case, {"x": x, "cycle_block": cyclic[0], "s": s})

    # (7) the single-exponential side
    return CaseLabel(CASE_NOT_IN_SCOPE, {"reason": "proper banner minor"})


def _component_of_without_edge(h: Graph, start: int, edge: tuple[int, int]) -> frozenset[int]:
    u, w = edge
    seen = {start}
    queue = [start]
    while queue:
        x = queue.pop()
        for y in h.adj[x]:
            if {x, y} == {u, w}:
                continue
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _three_cut_payload(h: Graph, bct: BlockCutTree) -> dict:
    """Find the block-cut-tree path B_a, a, B_ac, c, B_cb, b, B_b."""
    cuts = bct.cut_vertices
    blocks = bct.blocks
    leafs = sorted(bct.leaf_blocks(), key=lambda bi: tuple(sorted(blocks[bi])))
    for bi in leafs:
        block_a = blocks[bi]
        in_a = sorted(block_a & cuts)
        if len(in_a) != 1:
            continue
        a = in_a[0]
        for bj, block_ac in _blocks_at(bct, a, exclude=block_a):
            for c in sorted((block_ac & cuts) - {a}):
                for bk, block_cb in _blocks_at(bct, c, exclude=block_ac):
                    for b in sorted((block_cb & cuts) - {c}):
                        for bl, block_b in _blocks_at(bct, b, exclude=block_cb):
                            a_prime = min(block_a - {a})
                            r = min(block_b - {b})
                            r_a = _component_of(h, {a_prime, c}, a)
                            r_b = _component_of(h, {c, r}, b)
                            r_c = _component_of(h, set(r_a | r_b), c)
                            r_r = _component_of(h, set(r_b), r)
                            payload = {
                                "a": a,
                                "c": c,
                                "b": b,
                                "a_prime": a_prime,
                                "r": r,
                                "R_a": r_a,
                                "R_b": r_b,
                                "R_c": r_c,
                                "R_r": r_r,
                            }
                            parts = [frozenset({a_prime}), r_a, r_c, r_b, r_r]
                            if _is_partition(parts, h.n):
                                return payload
    raise InputError("no three-cut decomposition found")


def _blocks_at(bct: BlockCutTree, v: int, exclude: VertexSet):
    out = []
    for i, b in enumerate(bct.blocks):
        if v in b and b != exclude:
            out.append((i, b))
    out.sort(key=lambda item: tuple(sorted(item[1])))
    return out


def _is_partition(parts, n: int) -> bool:
    union: set[int] = set()
    total = 0
    for p in parts:
        union |= p
        total += len(p)
    return total == n and union == set(range(n))


def _commander_payload(h: Graph, bct: BlockCutTree, x: int, y: int) -> dict:
    cyclic = sorted(
        (b for b in bct.blocks if x in b and _block_edges(h, b) >= 3),
        key=lambda b: tuple(sorted(b)),
    )
    cycle = cyclic[0]
    hx = _component_of(h, set((cycle | {y}) - {x}), x)
    hy = _component_of(h, {x}, y)
    return {"x": x, "y": y, "cycle_block": cycle, "hx_vertices": hx, "hy_vertices": hy}


# ---------------------------------------------------------------------------
# Payload validation (used by the dispatcher-totality tests)


def validate_case_payload(h: Graph, rel: Relation, label: CaseLabel) -> list[str]:
    """Check the defining conditions of the assigned case; report breaches."""
    issues: list[str] = []
    payload = label.payload
    case = label.case
    if case == CASE_NOT_IN_SCOPE:
        return issues
    bct = block_cut_tree(h)
    cuts = bct.cut_vertices
    edge_counts = [_block_edges(h, b) for b in bct.blocks]

    if case == CASE_HARD_GENE:
        cut5: LeafBlockCut = payload["cut"]
        if _block_edges(h, cut5.block) < 5:
            issues.append("block has fewer than five edges")
        if cut5.x_side | cut5.y_side != frozenset(range(h.n)):
            issues.append("X and Y do not cover the graph")
        if cut5.x_side & cut5.y_side != {cut5.pivot}:
            issues.append("X and Y overlap beyond the pivot")
        ysub, ymap = induced_subgraph(h, cut5.y_side)
        yinv = {n2: o for o, n2 in ymap.items()}
        if ysub.n >= 2:
            big = [
                frozenset(yinv[u] for u in b)
                for b in block_cut_tree(ysub).blocks
                if induced_subgraph(ysub, b)[0].m >= 5
            ]
            if big != [cut5.block]:
                issues.append("Y side does not isolate the block")
        if payload["vprime"] not in h.adj[cut5.pivot]:
            issues.append("vprime is not a neighbor of the pivot")
    elif case == CASE_CYCLE_TWO_CUT:
        block = payload["block"]
        if _block_edges(h, block) < 3:
            issues.append("chosen block is not a cycle")
        if len(block & cuts) < 2:
            issues.append("chosen cycle has fewer than two cut vertices")
        u, v = payload["edge"]
        if not (u in block and v in block and h.has_edge(u, v)):
            issues.append("chosen edge is not inside the block")
    elif case == CASE_THREE_CUT:
        parts = [
            frozenset({payload["a_prime"]}),
            payload["R_a"],
            payload["R_c"],
            payload["R_b"],
            payload["R_r"],
        ]
        if not _is_partition(parts, h.n):
            issues.append("{a'}, R_a, R_c, R_b, R_r do not partition V(H)")
        for key in ("a", "c", "b"):
            if payload[key] not in cuts:
                issues.append(f"{key} is not a cut vertex")
    elif case == CASE_TWO_CUT:
        if h.m != h.n - 1:
            issues.append("pattern is not a tree")
        if payload["p"] < 4:
            issues.append("fewer than four degree-one vertices")
        if payload["s_x"] + payload["s_y"] != payload["p"]:
            issues.append("pendant counts do not add up")
    elif case == CASE_CYCLE_STAR_TWO_CUT:
        if len(cuts) != 2:
            issues.append("not exactly two cut vertices")
        u, w = payload["v"], payload["v2"]
        if not h.has_edge(u, w):
            issues.append("cut vertices do not share an edge block")
        for start in (u, w):
            side = _component_of_without_edge(h, start, (u, w))
            if not _has_cycle_on(h, side, dropped_edge=(min(u, w), max(u, w))):
                issues.append(f"side of {start} has no cycle")
    elif case == CASE_COMMANDER:
        if len(cuts) != 2:
            issues.append("not exactly two cut vertices")
        x, y = payload["x"], payload["y"]
        if not h.has_edge(x, y):
            issues.append("cut vertices do not share an edge block")
        side_x = _component_of_without_edge(h, x, (x, y))
        side_y = _component_of_without_edge(h, y, (x, y))
        if not _has_cycle_on(h, side_x, dropped_edge=(min(x, y), max(x, y))):
            issues.append("x side has no cycle")
        if _has_cycle_on(h, side_y, dropped_edge=(min(x, y), max(x, y))):
            issues.append("y side has a cycle")
    elif case == CASE_BUTTERNUT:
        if len(cuts) != 1:
            issues.append("not exactly one cut vertex")
        if payload["B1"] == payload["B2"]:
            issues.append("the two cycles coincide")
        for key in ("B1", "B2"):
            if _block_edges(h, payload[key]) < 3:
                issues.append(f"{key} is not a cycle")
    elif case in (CASE_CRICK_MINOR, CASE_CRICK_TM):
        if len(cuts) != 1:
            issues.append("not exactly one cut vertex")
        cyclic = [c for c in edge_counts if c >= 3]
        if len(cyclic) != 1:
            issues.append("not exactly one cycle")
        if payload["s"] < 2:
            issues.append("fewer than two degree-one vertices")
        if class_membership(h).banner_minor:
            issues.append("pattern is a banner minor")
        if case == CASE_CRICK_MINOR and rel is not Relation.MINOR:
            issues.append("CrickMinor under the wrong relation")
        if case == CASE_CRICK_TM and rel is not Relation.TOPOLOGICAL_MINOR:
            issues.append("CrickTM under the wrong relation")
    return issues


def classification_record(h: Graph, rel: Relation, limits: Limits | None = None) -> str:
    mem = class_membership(h, limits)
    label = classify_case(h, rel, limits)

    def flag(b: bool) -> str:
        return "true" if b else "false"

    return (
        f"case={label.case} in_C={flag(mem.in_c)} in_Q={flag(mem.in_q)} "
        f"in_S={flag(mem.in_s)} banner_minor={flag(mem.banner_minor)}"
    )
