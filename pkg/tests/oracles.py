"""Independent brute-force oracles, kept free of the library's search code.

The minor oracle enumerates every assignment of host vertices to branch
sets (with a surjectivity prune only); the connectivity oracle packs
explicitly enumerated paths.  Slow by design: these exist to disagree with
the production finders if anything is wrong.
"""

from __future__ import annotations

import itertools

from minorforge.graph import Graph


def oracle_minor_contains(h: Graph, g: Graph) -> bool:
    """Assignment enumeration: each host vertex joins one branch set or none."""
    if h.n == 0:
        raise ValueError("pattern must be non-empty")
    if h.n > g.n:
        return False
    if h.n == 1:
        return g.n >= 1

    hedges = h.edges()
    assignment = [-1] * g.n  # -1 unused, else pattern vertex

    def connected(members: list[int]) -> bool:
        seen = {members[0]}
        stack = [members[0]]
        memset = set(members)
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in memset and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(members)

    def valid() -> bool:
        groups: dict[int, list[int]] = {x: [] for x in range(h.n)}
        for v, x in enumerate(assignment):
            if x >= 0:
                groups[x].append(v)
        for x in range(h.n):
            if not groups[x] or not connected(groups[x]):
                return False
        for x, y in hedges:
            if not any(w in g.adj[v] for v in groups[x] for w in groups[y]):
                return False
        return True

    def assign(v: int, empty_left: int) -> bool:
        if g.n - v < empty_left:
            return False
        if v == g.n:
            return empty_left == 0 and valid()
        for x in range(-1, h.n):
            assignment[v] = x
            newly = int(x >= 0 and assignment[:v].count(x) == 0)
            if assign(v + 1, empty_left - newly):
                return True
        assignment[v] = -1
        return False

    return assign(0, h.n)


def oracle_vertex_cover_opt(g: Graph) -> int:
    """Smallest vertex cover size by subset enumeration."""
    for size in range(g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in g.edges()):
                return size
    return g.n


def all_simple_paths(g: Graph, s: int, t: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    path = [s]
    seen = {s}

    def walk(v: int) -> None:
        if v == t:
            out.append(tuple(path))
            return
        for w in sorted(g.adj[v]):
            if w not in seen:
                seen.add(w)
                path.append(w)
                walk(w)
                path.pop()
                seen.remove(w)

    walk(s)
    return out


def oracle_internally_disjoint(g: Graph, s: int, t: int) -> int:
    """Largest pack of internally disjoint s-t paths, by explicit packing."""
    paths = all_simple_paths(g, s, t)
    best = 0

    def pack(idx: int, used: frozenset[int], count: int) -> None:
        nonlocal best
        best = max(best, count)
        for i in range(idx, len(paths)):
            interior = set(paths[i][1:-1])
            if interior & used:
                continue
            pack(i + 1, used | frozenset(interior), count + 1)

    pack(0, frozenset(), 0)
    return best


def oracle_is_i_connected(g: Graph, i: int) -> bool:
    if g.n == 0:
        return False
    if g.n == 1:
        return i == 1
    return all(
        oracle_internally_disjoint(g, s, t) >= i
        for s in range(g.n)
        for t in range(s + 1, g.n)
    )
