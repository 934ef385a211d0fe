"""Minor and topological-minor models: search, validation, and pruning.

Both finders are complete backtracking searches.  Minor search grows branch
sets constraint by constraint: the first pattern edge whose branch sets are
not yet adjacent drives the branching (root the missing endpoint next to one
side, or extend either side by a free neighbor), with global state
deduplication and a free-path feasibility prune.  Topological search places
branch vertices (degree-filtered) and realizes pattern edges as internally
disjoint paths in a fixed order.  Oversized inputs are refused, never
answered wrongly.
"""

from __future__ import annotations

import enum
import itertools
import os
from collections import deque
from dataclasses import dataclass, field, replace

from .decompose import block_cut_tree
from .errors import InputError, LimitError
from .graph import (
    Graph,
    VertexSet,
    connected_components,
    contract_edge,
    induced_subgraph,
    is_connected,
    is_i_connected,
)


class Relation(enum.Enum):
    MINOR = "minor"
    TOPOLOGICAL_MINOR = "tm"

    @staticmethod
    def parse(text: str) -> "Relation":
        for rel in Relation:
            if rel.value == text:
                return rel
        raise InputError(f"unknown relation {text!r} (use minor|tm)")


@dataclass(frozen=True)
class Limits:
    """Hard size limits; refusal (LimitError) beats unbounded runs."""

    max_host: int = 40
    max_pattern: int = 10
    search_nodes: int = 2_000_000
    deletion_subsets: int = 1_000_000
    structured_nodes: int = 100_000
    pis_k: int = 8
    verify_k: int = 3
    verify_m: int = 4
    verify_h: int = 7

    def override(self, **kwargs) -> "Limits":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def default_limits() -> Limits:
    """Defaults, with MINORFORGE_LIMITS=key=value,... applied on top."""
    lim = Limits()
    raw = os.environ.get("MINORFORGE_LIMITS", "")
    if raw:
        updates = {}
        for part in raw.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, value = part.partition("=")
            if not hasattr(lim, key):
                raise InputError(f"unknown limit {key!r} in MINORFORGE_LIMITS")
            updates[key] = int(value)
        lim = lim.override(**updates)
    return lim


@dataclass(frozen=True)
class MinorModel:
    """Branch sets indexed by pattern vertex id (the function phi)."""

    branch_sets: tuple[VertexSet, ...]


@dataclass(frozen=True)
class TopoMinorModel:
    """Injective branch vertices phi plus one host path per pattern edge."""

    branch_vertices: tuple[int, ...]
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]

    def path_of(self, x: int, y: int) -> tuple[int, ...]:
        key = (min(x, y), max(x, y))
        for edge, path in self.paths:
            if edge == key:
                return path
        raise KeyError(key)


# ---------------------------------------------------------------------------
# Validation


def validate_model(model, h: Graph, g: Graph) -> tuple[bool, list[str]]:
    """Check every invariant of the model's type; report all violations."""
    if isinstance(model, MinorModel):
        return _validate_minor(model, h, g)
    if isinstance(model, TopoMinorModel):
        return _validate_topo(model, h, g)
    return False, [f"unknown model type {type(model).__name__}"]


def _validate_minor(model: MinorModel, h: Graph, g: Graph) -> tuple[bool, list[str]]:
    issues: list[str] = []
    sets = model.branch_sets
    if len(sets) != h.n:
        return False, [f"model has {len(sets)} branch sets, pattern has {h.n} vertices"]
    for x, s in enumerate(sets):
        if not s:
            issues.append(f"branch set of {x} is empty")
            continue
        if any(not (0 <= v < g.n) for v in s):
            issues.append(f"branch set of {x} leaves the host: {sorted(s)}")
            continue
        sub, _ = induced_subgraph(g, s)
        if not is_connected(sub):
            issues.append(f"branch set of {x} is disconnected: {sorted(s)}")
    for x in range(len(sets)):
        for y in range(x + 1, len(sets)):
            overlap = sets[x] & sets[y]
            if overlap:
                issues.append(f"branch sets of {x} and {y} overlap: {sorted(overlap)}")
    for x, y in h.edges():
        if not _sets_adjacent(g, sets[x], sets[y]):
            issues.append(f"no host edge between branch sets of {x} and {y}")
    return not issues, issues


def _validate_topo(model: TopoMinorModel, h: Graph, g: Graph) -> tuple[bool, list[str]]:
    issues: list[str] = []
    phi = model.branch_vertices
    if len(phi) != h.n:
        return False, [f"model has {len(phi)} branch vertices, pattern has {h.n}"]
    if any(not (0 <= v < g.n) for v in phi):
        return False, ["branch vertex outside the host"]
    if len(set(phi)) != len(phi):
        issues.append("branch vertices are not injective")
    keys = {edge for edge, _ in model.paths}
    expected = {(min(x, y), max(x, y)) for x, y in h.edges()}
    if keys != expected:
        issues.append(f"path keys {sorted(keys)} do not match pattern edges {sorted(expected)}")
        return False, issues
    internals_seen: dict[int, tuple[int, int]] = {}
    all_path_vertices: dict[tuple[int, int], set[int]] = {}
    for (x, y), path in model.paths:
        if len(path) < 2 or path[0] != phi[x] or path[-1] != phi[y]:
            issues.append(f"path {x}-{y} does not join phi({x}) and phi({y})")
            continue
        if len(set(path)) != len(path):
            issues.append(f"path {x}-{y} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                issues.append(f"path {x}-{y} uses the non-edge ({a},{b})")
        all_path_vertices[(x, y)] = set(path)
        for v in path[1:-1]:
            if v in phi:
                issues.append(f"internal vertex {v} of path {x}-{y} is a branch vertex")
            if v in internals_seen:
                issues.append(f"internal vertex {v} shared by paths {internals_seen[v]} and {(x, y)}")
            internals_seen[v] = (x, y)
    for v, owner in internals_seen.items():
        for other, verts in all_path_vertices.items():
            if other != owner and v in verts:
                issues.append(f"internal vertex {v} of path {owner} lies on path {other}")
    return not issues, issues


def _sets_adjacent(g: Graph, a: VertexSet, b: VertexSet) -> bool:
    if len(a) > len(b):
        a, b = b, a
    return any(not g.adj[v].isdisjoint(b) for v in a)


# ---------------------------------------------------------------------------
# Minor search


def _pattern_automorphisms(h: Graph, cap: int = 2000) -> list[tuple[int, ...]]:
    """Automorphisms of the pattern, as vertex maps; capped for safety.

    Used only to canonicalize search states, so returning a subgroup (or
    just the identity, when the group is huge) stays sound.
    """
    from .graph import _refine_colors

    colors = _refine_colors(h)
    out: list[tuple[int, ...]] = []
    image: list[int | None] = [None] * h.n
    used = [False] * h.n

    def extend(v: int) -> bool:
        if len(out) >= cap:
            return True
        if v == h.n:
            out.append(tuple(image))
            return False
        for w in range(h.n):
            if used[w] or colors[w] != colors[v]:
                continue
            ok = True
            for u in range(v):
                if h.has_edge(u, v) != h.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
                image[v] = None
        return False

    overflow = extend(0)
    if overflow:
        return [tuple(range(h.n))]
    return out


def _host_orbit_reps(g: Graph, cap: int = 4000) -> list[int]:
    """One vertex per host-automorphism orbit (of a subgroup, if capped).

    Sound for seeding a search: any model can be mapped by a composition of
    the collected automorphisms so that its first branch set meets a
    representative; union-find closes over compositions.
    """
    auts = _pattern_automorphisms(g, cap=cap)
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gamma in auts:
        for v in range(g.n):
            a, b = find(v), find(gamma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return sorted({find(v) for v in range(g.n)})


def _pattern_order(h: Graph) -> list[int]:
    """BFS order starting from the highest-degree vertex, high degree first.

    Every later vertex of a connected pattern has an earlier neighbor, so
    constraint-driven rooting never needs a blind root after the first.
    """
    remaining = set(range(h.n))
    order: list[int] = []
    placed: set[int] = set()
    while remaining:
        start = min(remaining, key=lambda v: (-h.degree(v), v))
        queue = deque([start])
        remaining.discard(start)
        placed.add(start)
        order.append(start)
        while queue:
            x = queue.popleft()
            for y in sorted(h.adj[x], key=lambda v: (-h.degree(v), v)):
                if y in remaining:
                    remaining.discard(y)
                    placed.add(y)
                    order.append(y)
                    queue.append(y)
    return order


def _check_finder_limits(h: Graph, g: Graph, lim: Limits) -> None:
    if h.n == 0:
        raise InputError("pattern graph must be non-empty")
    if g.n > lim.max_host:
        raise LimitError(f"host has {g.n} > {lim.max_host} vertices")
    if h.n > lim.max_pattern:
        raise LimitError(f"pattern has {h.n} > {lim.max_pattern} vertices")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reduce_host(h: Graph, g: Graph) -> tuple[Graph, list[frozenset[int]]]:
    """Sound host preprocessing; returns (reduced graph, absorbed originals).

    With min-deg(pattern) >= 2, degree-<=1 host vertices cannot serve any
    branch set and are dropped; with min-deg >= 3, degree-2 host vertices
    are suppressed (contracted into a neighbor).  Both directions of the
    containment are preserved, and models lift back by taking unions of the
    absorbed original vertices.
    """
    min_deg = min(h.degree(v) for v in h.vertices())
    absorbed: list[frozenset[int]] = [frozenset({v}) for v in range(g.n)]
    cur = g
    while True:
        if min_deg >= 2:
            keep = [v for v in range(cur.n) if cur.degree(v) >= 2]
            if len(keep) < cur.n:
                sub, remap = induced_subgraph(cur, keep)
                absorbed = [absorbed[v] for v in keep]
                cur = sub
                continue
        if min_deg >= 3:
            target = next((v for v in range(cur.n) if cur.degree(v) == 2), None)
            if target is not None:
                w1 = min(cur.adj[target])
                merged, remap = contract_edge(cur, target, w1)
                new_absorbed: list[frozenset[int]] = [frozenset()] * merged.n
                for old in range(cur.n):
                    new = remap[old]
                    new_absorbed[new] = new_absorbed[new] | absorbed[old]
                absorbed = new_absorbed
                cur = merged
                continue
        return cur, absorbed


def find_minor_model(h: Graph, g: Graph, limits: Limits | None = None) -> MinorModel | None:
    """Complete backtracking search for a minor model of h in g.

    Branch sets are rooted lazily (neighbors of placed vertices first) in
    descending pattern-degree order; the first pattern edge whose branch
    sets are not yet adjacent is fixed by routing a free host path between
    them and splitting it between the two sides.  States are deduplicated
    globally and every pending edge must keep a free corridor.
    """
    lim = limits or default_limits()
    _check_finder_limits(h, g, lim)
    if g.n == 0 or h.n > g.n or h.m > g.m:
        return None
    if h.n == 1:
        model = MinorModel((frozenset({0}),))
        ok, report = validate_model(model, h, g)
        assert ok, report
        return model

    host, absorbed = _reduce_host(h, g)
    if h.n > host.n or h.m > host.m:
        return None

    order = _pattern_order(h)
    pos = {v: i for i, v in enumerate(order)}
    hedges = sorted(
        (min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in h.edges()
    )
    nh = h.n
    adj = [0] * host.n
    for v in range(host.n):
        for w in host.adj[v]:
            adj[v] |= 1 << w
    full = (1 << host.n) - 1

    sets: list[int] = [0] * nh  # 0 = unrooted
    visited: set[tuple[int, ...]] = set()
    nodes = 0
    # pattern symmetries, acting on positions, canonicalize search states
    auts = _pattern_automorphisms(h)
    pos_auts = [
        tuple(pos[gamma[order[p]]] for p in range(nh)) for gamma in auts
    ]
    if len(pos_auts) > 1:
        pos_auts = sorted(set(pos_auts))
    first_roots = _host_orbit_reps(host)

    def nb(mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= adj[v]
        return out & ~mask

    def reach_through_free(seed: int, free: int) -> int:
        reach = seed & free
        while True:
            grown = reach
            for v in _bits(reach):
                grown |= adj[v] & free
            if grown == reach:
                return reach
            reach = grown

    def feasible(free: int) -> bool:
        unrooted = sum(1 for s in sets if not s)
        if unrooted > free.bit_count():
            return False
        for px, py in hedges:
            sx, sy = sets[px], sets[py]
            if not sx or not sy:
                continue
            if nb(sx) & sy:
                continue
            corridor = reach_through_free(nb(sx), free)
            if not (nb(sy) & corridor):
                return False
        return True

    def search() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > lim.search_nodes:
            raise LimitError(f"minor search exceeded {lim.search_nodes} nodes")
        if len(pos_auts) == 1:
            state = tuple(sets)
        else:
            state = min(
                tuple(sets[perm[p]] for p in range(nh)) for perm in pos_auts
            )
        if state in visited:
            return False
        visited.add(state)
        used = 0
        for s in sets:
            used |= s
        free = full & ~used
        pending = None
        for px, py in hedges:
            sx, sy = sets[px], sets[py]
            if not sx or not sy or not (nb(sx) & sy):
                pending = (px, py)
                break
        if pending is None:
            spare = sorted(_bits(free))
            for p in range(nh):
                if not sets[p]:
                    if not spare:
                        return False
                    sets[p] = 1 << spare.pop(0)
            return True
        if not feasible(free):
            return False
        px, py = pending
        sx, sy = sets[px], sets[py]
        if not sx or not sy:
            # roots: neighbors of already placed vertices first, ascending ids;
            # the very first root only needs one try per host orbit
            p = px if not sx else py
            if used == 0:
                candidates = first_roots
            else:
                near = nb(used) & free
                candidates = list(_bits(near)) + list(_bits(free & ~near))
            for u in candidates:
                sets[p] = 1 << u
                if search():
                    return True
                sets[p] = 0
            return False
        # both rooted: route a free path from sx to sy and split it
        corridor = reach_through_free(nb(sx), free) & reach_through_free(nb(sy), free)
        start = nb(sx) & corridor

        def route(path: list[int], on_path: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > lim.search_nodes:
                raise LimitError(f"minor search exceeded {lim.search_nodes} nodes")
            tip = path[-1]
            if adj[tip] & sy:
                for cut in range(len(path) + 1):
                    left = 0
                    for v in path[:cut]:
                        left |= 1 << v
                    right = on_path & ~left
                    sets[px] = sx | left
                    sets[py] = sy | right
                    if search():
                        return True
                    sets[px] = sx
                    sets[py] = sy
            for u in _bits(adj[tip] & corridor & ~on_path):
                path.append(u)
                if route(path, on_path | (1 << u)):
                    return True
                path.pop()
            return False

        for u in _bits(start):
            if route([u], 1 << u):
                return True
        return False

    if not search():
        return None
    by_vertex: list[frozenset[int]] = [frozenset()] * nh
    for v in range(nh):
        mask = sets[pos[v]]
        lifted: set[int] = set()
        for u in _bits(mask):
            lifted |= absorbed[u]
        by_vertex[v] = frozenset(lifted)
    model = MinorModel(tuple(by_vertex))
    ok, report = validate_model(model, h, g)
    assert ok, report
    return model


# ---------------------------------------------------------------------------
# Topological minor search


def find_topo_model(h: Graph, g: Graph, limits: Limits | None = None) -> TopoMinorModel | None:
    lim = limits or default_limits()
    _check_finder_limits(h, g, lim)
    if g.n == 0 or h.n > g.n or h.m > g.m:
        return None
    # degree profile reject: branch vertices need deg_G(phi(x)) >= deg_H(x)
    hdegs = sorted((h.degree(v) for v in h.vertices()), reverse=True)
    gdegs = sorted((g.degree(v) for v in g.vertices()), reverse=True)
    if any(hd > gd for hd, gd in zip(hdegs, gdegs)):
        return None
    if h.n == 1:
        model = TopoMinorModel((0,), ())
        ok, report = validate_model(model, h, g)
        assert ok, report
        return model

    order = _pattern_order(h)
    pos = {v: i for i, v in enumerate(order)}
    hdeg = [h.degree(order[p]) for p in range(h.n)]
    hedges = sorted(
        (min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in h.edges()
    )
    phi: list[int | None] = [None] * h.n
    used: set[int] = set()
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    nodes = 0

    def root_candidates(p: int) -> list[int]:
        anchored = {v for v in phi if v is not None}
        near = sorted(
            v
            for v in range(g.n)
            if v not in used and g.degree(v) >= hdeg[p] and not g.adj[v].isdisjoint(anchored)
        )
        far = sorted(
            v
            for v in range(g.n)
            if v not in used and g.degree(v) >= hdeg[p] and g.adj[v].isdisjoint(anchored)
        )
        return near + far

    def paths_between(a: int, b: int):
        """DFS all simple a-b paths with free internal vertices, ascending."""
        path = [a]
        on_path = {a}

        def extend(v):
            nonlocal nodes
            nodes += 1
            if nodes > lim.search_nodes:
                raise LimitError(f"topological search exceeded {lim.search_nodes} nodes")
            for w in sorted(g.adj[v]):
                if w == b:
                    yield tuple(path) + (b,)
                elif w not in used and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.remove(w)

        yield from extend(a)

    def place(edge_idx: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > lim.search_nodes:
            raise LimitError(f"topological search exceeded {lim.search_nodes} nodes")
        if edge_idx == len(hedges):
            spare = sorted(v for v in range(g.n) if v not in used)
            for p in range(h.n):
                if phi[p] is None:
                    if not spare:
                        return False
                    phi[p] = spare.pop(0)
                    used.add(phi[p])
            return True
        px, py = hedges[edge_idx]
        if phi[px] is None:
            for u in root_candidates(px):
                phi[px] = u
                used.add(u)
                if place(edge_idx):
                    return True
                used.discard(u)
                phi[px] = None
            return False
        if phi[py] is None:
            for u in root_candidates(py):
                phi[py] = u
                used.add(u)
                if place(edge_idx):
                    return True
                used.discard(u)
                phi[py] = None
            return False
        for path in paths_between(phi[px], phi[py]):
            internals = set(path[1:-1])
            used.update(internals)
            paths[(px, py)] = path
            if place(edge_idx + 1):
                return True
            del paths[(px, py)]
            used.difference_update(internals)
        return False

    if not place(0):
        return None
    branch = tuple(phi[pos[v]] for v in range(h.n))
    out_paths = []
    for (px, py), path in paths.items():
        x, y = order[px], order[py]
        if x > y:
            x, y = y, x
            path = tuple(reversed(path))
        out_paths.append(((x, y), path))
    model = TopoMinorModel(branch, tuple(sorted(out_paths)))
    ok, report = validate_model(model, h, g)
    assert ok, report
    return model


def contains(h: Graph, g: Graph, rel: Relation, limits: Limits | None = None) -> bool:
    if rel is Relation.MINOR:
        return find_minor_model(h, g, limits) is not None
    return find_topo_model(h, g, limits) is not None


# ---------------------------------------------------------------------------
# Pruning lemmas


def separator_reduce(
    h: Graph, g: Graph, s, i: int, limits: Limits | None = None
) -> list[tuple[Graph, dict[int, int]]]:
    """Cut-components of (C, g, s) for every component C of g minus s.

    Contract: an i-connected pattern is contained in g iff it is contained
    in one of the returned graphs (same relation); sound because no model of
    an i-connected pattern can straddle a separator of size < i.
    """
    if i < 1:
        raise InputError("i must be positive")
    s = frozenset(s)
    if any(not (0 <= v < g.n) for v in s):
        raise InputError("separator leaves the host")
    if len(s) > i - 1:
        raise InputError(f"|s|={len(s)} exceeds i-1={i - 1}")
    if not is_i_connected(h, i):
        raise InputError(f"pattern is not {i}-connected")
    rest, remap = induced_subgraph(g, frozenset(range(g.n)) - s)
    inverse = {new: old for old, new in remap.items()}
    out = []
    for comp in connected_components(rest):
        original = frozenset(inverse[v] for v in comp)
        out.append(induced_subgraph(g, original | s))
    return out


def leaf_block_prune(
    h: Graph,
    g: Graph,
    v: int,
    part,
    rel: Relation,
    limits: Limits | None = None,
) -> tuple[Graph, dict[int, int]]:
    """Delete one side of a cut vertex once no pattern leaf block fits there.

    Contract: h is contained in g iff h is contained in the returned graph.
    All preconditions are verified (the leaf-block absence by running the
    finders) and violations raise InputError.
    """
    part = frozenset(part)
    if not is_connected(g):
        raise InputError("host must be connected")
    bct_g = block_cut_tree(g)
    if v not in bct_g.cut_vertices:
        raise InputError(f"{v} is not a cut vertex of the host")
    rest, remap = induced_subgraph(g, frozenset(range(g.n)) - {v})
    inverse = {new: old for old, new in remap.items()}
    comps = [frozenset(inverse[x] for x in c) for c in connected_components(rest)]
    if part not in comps:
        raise InputError("part is not a component of g minus {v}")
    if h.n < 2 or not is_connected(h):
        raise InputError("pattern must be connected with at least two vertices")
    side, _ = induced_subgraph(g, part | {v})
    bct_h = block_cut_tree(h)
    for bi in bct_h.leaf_blocks():
        block_graph, _ = induced_subgraph(h, bct_h.blocks[bi])
        if contains(block_graph, side, rel, limits):
            raise InputError(
                f"leaf block {sorted(bct_h.blocks[bi])} fits in the pruned side"
            )
    return induced_subgraph(g, frozenset(range(g.n)) - part)


# ---------------------------------------------------------------------------
# Families and deletion numbers


def check_proper_collection(fam) -> list[Graph]:
    fam = list(fam)
    if not fam:
        raise InputError("family must be non-empty")
    for hx in fam:
        if hx.n == 0:
            raise InputError("family members must be non-empty")
    return fam


def family_contains(fam, g: Graph, rel: Relation, limits: Limits | None = None) -> bool:
    """True iff some family member is contained in g under rel."""
    fam = check_proper_collection(fam)
    return any(contains(hx, g, rel, limits) for hx in fam)


def deletion_number(
    fam, g: Graph, rel: Relation, budget: int, limits: Limits | None = None
) -> VertexSet | None:
    """Smallest deletion set of size <= budget, exhaustively, or None.

    Candidate family-freeness is checked per component with a cache keyed
    by component vertex set (components recur massively across candidates).
    """
    if budget < 0:
        raise InputError("budget must be non-negative")
    fam = check_proper_collection(fam)
    lim = limits or default_limits()
    total = sum(_binom(g.n, s) for s in range(min(budget, g.n) + 1))
    if total > lim.deletion_subsets:
        raise LimitError(f"{total} candidate sets exceed limit {lim.deletion_subsets}")
    memo: dict[VertexSet, bool] = {}

    def hit_after(delete: tuple[int, ...]) -> bool:
        rest, remap = induced_subgraph(g, frozenset(range(g.n)) - set(delete))
        inverse = {new: old for old, new in remap.items()}
        for comp in connected_components(rest):
            original = frozenset(inverse[x] for x in comp)
            if original not in memo:
                sub, _ = induced_subgraph(g, original)
                memo[original] = family_contains(fam, sub, rel, lim)
            if memo[original]:
                return True
        return False

    for size in range(min(budget, g.n) + 1):
        for delete in itertools.combinations(range(g.n), size):
            if not hit_after(delete):
                return frozenset(delete)
    return None


def _binom(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Model serialization


def write_model(model) -> str:
    if isinstance(model, MinorModel):
        lines = [
            f"branch {x}: " + " ".join(str(v) for v in sorted(s)) + "\n"
            for x, s in enumerate(model.branch_sets)
        ]
        return "".join(lines)
    if isinstance(model, TopoMinorModel):
        lines = [
            f"branch {x}: {v}\n" for x, v in enumerate(model.branch_vertices)
        ]
        for (x, y), path in model.paths:
            lines.append(f"path {x}-{y}: " + " ".join(str(v) for v in path) + "\n")
        return "".join(lines)
    raise InputError(f"cannot serialize {type(model).__name__}")
