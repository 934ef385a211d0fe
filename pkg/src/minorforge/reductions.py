"""Gadget compilers: PIS instances into frameworks, Vertex Cover into cores.

A framework is built per PIS edge e: a gadget D^e of k columns, each column
holding k B-gadgets (n_h disjoint copies of K_{h-1} plus the vertices a, b
and t_F extra slots, z vertices in all) that are pairwise complete inside
the column; separator gadgets J^e (column vertices c^e_j, row vertices
r^e_i) interleave the D^e along a cyclic edge order sigma.  Case-specific
enhancements only ever add edges inside a B-gadget, inside a J-gadget, or
between D^e and J^e / J^{sigma(e)}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError, NotInScopeError
from .family import (
    CASE_BUTTERNUT,
    CASE_COMMANDER,
    CASE_CRICK_MINOR,
    CASE_CRICK_TM,
    CASE_CYCLE_STAR_TWO_CUT,
    CASE_CYCLE_TWO_CUT,
    CASE_HARD_GENE,
    CASE_NOT_IN_SCOPE,
    CASE_THREE_CUT,
    CASE_TWO_CUT,
    CaseLabel,
    besf,
    besf_compare,
    check_connected_collection,
    class_membership,
    classify_case,
    essential_pair,
    k_edges_leaf_block_cut,
)
from .graph import Graph, VertexSet, contract_edge, induced_subgraph
from .minors import Limits, Relation, contains

Cell = tuple[int, int]
PisEdge = tuple[Cell, Cell]


# ---------------------------------------------------------------------------
# PIS instances


@dataclass(frozen=True)
class PISInstance:
    """k x k Permutation Independent Set input; cells are 1-based (row, col)."""

    k: int
    edges: frozenset[PisEdge]

    @staticmethod
    def make(k: int, pairs) -> "PISInstance":
        if k < 1:
            raise InputError("k must be positive")
        norm = set()
        for c1, c2 in pairs:
            c1, c2 = tuple(c1), tuple(c2)
            for (i, j) in (c1, c2):
                if not (1 <= i <= k and 1 <= j <= k):
                    raise InputError(f"cell {(i, j)} outside the {k}x{k} grid")
            if c1 == c2:
                raise InputError(f"self-pair at cell {c1}")
            norm.add((min(c1, c2), max(c1, c2)))
        return PISInstance(k, frozenset(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_edge(self, c1: Cell, c2: Cell) -> bool:
        return (min(c1, c2), max(c1, c2)) in self.edges

    def cells(self) -> list[Cell]:
        return [(i, j) for i in range(1, self.k + 1) for j in range(1, self.k + 1)]


def normalize_pis(inst: PISInstance) -> PISInstance:
    """Add every same-row pair as an edge (solutions are unaffected)."""
    extra = {
        ((i, j1), (i, j2))
        for i in range(1, inst.k + 1)
        for j1 in range(1, inst.k + 1)
        for j2 in range(j1 + 1, inst.k + 1)
    }
    return PISInstance(inst.k, inst.edges | extra)


def is_normalized(inst: PISInstance) -> bool:
    return normalize_pis(inst).edges == inst.edges


def write_pis(inst: PISInstance) -> str:
    lines = [f"{inst.k}\n"]
    for (i1, j1), (i2, j2) in sorted(inst.edges):
        lines.append(f"{i1} {j1} {i2} {j2}\n")
    return "".join(lines)


def read_pis(text: str) -> PISInstance:
    rows = [ln for ln in (r.strip() for r in text.splitlines()) if ln and not ln.startswith("#")]
    if not rows:
        raise InputError("empty PIS input")
    k = int(rows[0])
    pairs = []
    for ln in rows[1:]:
        parts = [int(x) for x in ln.split()]
        if len(parts) != 4:
            raise InputError(f"bad PIS edge line: {ln!r}")
        pairs.append(((parts[0], parts[1]), (parts[2], parts[3])))
    return PISInstance.make(k, pairs)


# ---------------------------------------------------------------------------
# Framework parameters and gadget index


@dataclass(frozen=True)
class FrameworkParams:
    relation: Relation
    h: int
    n_h: int
    t_f: int
    z: int
    k: int
    m: int
    ell: int

    @staticmethod
    def make(inst: PISInstance, relation: Relation, h: int, t_f: int) -> "FrameworkParams":
        if h < 2:
            raise InputError("family members must have at least two vertices")
        n_h = 2 if relation is Relation.MINOR else h * (h - 1) // 2
        z = n_h * (h - 1) + 2 + t_f
        ell = z * (inst.k - 1) * inst.k * inst.m
        return FrameworkParams(relation, h, n_h, t_f, z, inst.k, inst.m, ell)


def format_pis_edge(e: PisEdge) -> str:
    (i1, j1), (i2, j2) = e
    return f"(({i1},{j1}),({i2},{j2}))"


class GadgetIndex:
    """Bidirectional map canonical-name <-> vertex id, plus gadget lookups."""

    def __init__(self) -> None:
        self.id_to_name: list[str] = []
        self.name_to_id: dict[str, int] = {}
        self._gadget: dict[tuple[PisEdge, int, int], list[int]] = {}
        self._a: dict[tuple[PisEdge, int, int], int] = {}
        self._b: dict[tuple[PisEdge, int, int], int] = {}
        self._extras: dict[tuple[PisEdge, int, int], list[int]] = {}
        self._c: dict[tuple[PisEdge, int], int] = {}
        self._r: dict[tuple[PisEdge, int], int] = {}
        self._j_extra: dict[PisEdge, list[int]] = {}

    def add(self, name: str) -> int:
        if name in self.name_to_id:
            raise InputError(f"duplicate gadget name {name}")
        vid = len(self.id_to_name)
        self.id_to_name.append(name)
        self.name_to_id[name] = vid
        return vid

    def name(self, vid: int) -> str:
        return self.id_to_name[vid]

    def id(self, name: str) -> int:
        return self.name_to_id[name]

    @property
    def n(self) -> int:
        return len(self.id_to_name)

    def a(self, e: PisEdge, i: int, j: int) -> int:
        return self._a[(e, i, j)]

    def b(self, e: PisEdge, i: int, j: int) -> int:
        return self._b[(e, i, j)]

    def c(self, e: PisEdge, j: int) -> int:
        return self._c[(e, j)]

    def r(self, e: PisEdge, i: int) -> int:
        return self._r[(e, i)]

    def extras(self, e: PisEdge, i: int, j: int) -> tuple[int, ...]:
        return tuple(self._extras[(e, i, j)])

    def gadget_vertices(self, e: PisEdge, i: int, j: int) -> VertexSet:
        return frozenset(self._gadget[(e, i, j)])

    def column_vertices(self, e: PisEdge, j: int, k: int | None = None) -> VertexSet:
        out: set[int] = set()
        for (ee, i, jj), verts in self._gadget.items():
            if ee == e and jj == j:
                out.update(verts)
        return frozenset(out)

    def j_vertices(self, e: PisEdge) -> VertexSet:
        out = {v for (ee, _), v in self._c.items() if ee == e}
        out |= {v for (ee, _), v in self._r.items() if ee == e}
        out |= set(self._j_extra.get(e, ()))
        return frozenset(out)

    def d_vertices(self, e: PisEdge) -> VertexSet:
        out: set[int] = set()
        for (ee, _, _), verts in self._gadget.items():
            if ee == e:
                out.update(verts)
        return frozenset(out)

    def all_gadget_keys(self):
        return sorted(self._gadget)


@dataclass
class Framework:
    graph: Graph
    params: FrameworkParams
    instance: PISInstance
    sigma: tuple[PisEdge, ...]
    index: GadgetIndex
    family: tuple[Graph, ...]
    case: str | None = None
    case_data: dict = field(default_factory=dict)

    def sigma_next(self, e: PisEdge) -> PisEdge:
        t = self.sigma.index(e)
        return self.sigma[(t + 1) % len(self.sigma)]

    def sigma_prev(self, e: PisEdge) -> PisEdge:
        t = self.sigma.index(e)
        return self.sigma[(t - 1) % len(self.sigma)]


# ---------------------------------------------------------------------------
# Base framework


class _Builder:
    def __init__(self, inst: PISInstance, params: FrameworkParams, extra_namer=None):
        if not is_normalized(inst):
            raise InputError("instance must be normalized (row cliques present)")
        if inst.m == 0:
            raise InputError("the cyclic edge order needs at least one PIS edge")
        self.inst = inst
        self.params = params
        self.sigma: tuple[PisEdge, ...] = tuple(sorted(inst.edges))
        self.index = GadgetIndex()
        self.edges: set[tuple[int, int]] = set()
        self._extra_namer = extra_namer or (
            lambda e, i, j, t: f"xB[e={format_pis_edge(e)}][i={i},j={j}][t={t}]"
        )
        self._build_vertices()
        self._build_edges()

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise InputError("gadget wiring created a self-loop")
        self.edges.add((min(u, v), max(u, v)))

    def _build_vertices(self) -> None:
        p = self.params
        idx = self.index
        for e in self.sigma:
            E = format_pis_edge(e)
            for j in range(1, p.k + 1):
                for i in range(1, p.k + 1):
                    verts: list[int] = []
                    for c in range(p.n_h):
                        for v in range(p.h - 1):
                            verts.append(idx.add(f"K[e={E}][i={i},j={j}][c={c},v={v}]"))
                    a = idx.add(f"a[e={E}][i={i},j={j}]")
                    b = idx.add(f"b[e={E}][i={i},j={j}]")
                    verts.extend([a, b])
                    extras = [
                        idx.add(self._extra_namer(e, i, j, t)) for t in range(p.t_f)
                    ]
                    verts.extend(extras)
                    idx._gadget[(e, i, j)] = verts
                    idx._a[(e, i, j)] = a
                    idx._b[(e, i, j)] = b
                    idx._extras[(e, i, j)] = extras
            for j in range(1, p.k + 1):
                idx._c[(e, j)] = idx.add(f"c[e={E}][j={j}]")
            for i in range(1, p.k + 1):
                idx._r[(e, i)] = idx.add(f"r[e={E}][i={i}]")

    def _build_edges(self) -> None:
        p = self.params
        idx = self.index
        for e in self.sigma:
            # K_{h-1} copies inside each gadget
            for j in range(1, p.k + 1):
                for i in range(1, p.k + 1):
                    verts = idx._gadget[(e, i, j)]
                    for c in range(p.n_h):
                        copy = verts[c * (p.h - 1): (c + 1) * (p.h - 1)]
                        for u, v in itertools.combinations(copy, 2):
                            self.add_edge(u, v)
            # complete joins within each column
            for j in range(1, p.k + 1):
                for i1 in range(1, p.k + 1):
                    for i2 in range(i1 + 1, p.k + 1):
                        for u in idx._gadget[(e, i1, j)]:
                            for v in idx._gadget[(e, i2, j)]:
                                self.add_edge(u, v)
            # the edge e joins its two endpoint gadgets completely
            (i1, j1), (i2, j2) = e
            for u in idx._gadget[(e, i1, j1)]:
                for v in idx._gadget[(e, i2, j2)]:
                    self.add_edge(u, v)
        # connectors through the separator gadgets
        for t, e in enumerate(self.sigma):
            nxt = self.sigma[(t + 1) % len(self.sigma)]
            for i in range(1, p.k + 1):
                for j in range(1, p.k + 1):
                    b = idx._b[(e, i, j)]
                    a_next = idx._a[(nxt, i, j)]
                    self.add_edge(b, idx._c[(nxt, j)])
                    self.add_edge(b, idx._r[(nxt, i)])
                    self.add_edge(idx._r[(nxt, i)], a_next)
                    self.add_edge(idx._c[(nxt, j)], a_next)

    def add_j_extra(self, e: PisEdge, name: str) -> int:
        vid = self.index.add(name)
        self.index._j_extra.setdefault(e, []).append(vid)
        return vid

    def instantiate_copy(
        self,
        template: Graph,
        identified: dict[int, int],
        namer,
        e: PisEdge,
    ) -> dict[int, int]:
        """Add a copy of `template` with some vertices glued onto existing ids.

        New vertices become J-extra vertices of e; returns template-id -> id.
        """
        mapping = dict(identified)
        for tv in range(template.n):
            if tv not in mapping:
                mapping[tv] = self.add_j_extra(e, namer(tv))
        for u, v in template.edges():
            self.add_edge(mapping[u], mapping[v])
        return mapping

    def finish(self, family, case=None, case_data=None) -> Framework:
        graph = Graph.from_edges(
            self.index.n,
            self.edges,
            labels=dict(enumerate(self.index.id_to_name)),
        )
        return Framework(
            graph,
            self.params,
            self.inst,
            self.sigma,
            self.index,
            tuple(family),
            case,
            case_data or {},
        )


def base_framework(inst: PISInstance, params: FrameworkParams) -> Framework:
    """The plain framework F: gadgets, column joins, connectors, no extras."""
    return _Builder(inst, params).finish(family=())


# ---------------------------------------------------------------------------
# Enhanced frameworks, one builder per case


def build_enhanced_framework(
    fam, inst: PISInstance, rel: Relation, limits: Limits | None = None
) -> tuple[Framework, int]:
    """Dispatch on the family's case and attach its gadget enhancements."""
    fam = check_connected_collection(fam)
    inst = normalize_pis(inst)
    if len(fam) > 1:
        for hx in fam:
            if not class_membership(hx, limits).in_c:
                raise InputError(
                    "multi-member families must consist of graphs with a >=5-edge block"
                )
        label = CaseLabel(CASE_HARD_GENE, {})
    else:
        label = classify_case(fam[0], rel, limits)
        if label.case == CASE_NOT_IN_SCOPE:
            raise NotInScopeError(
                "family is on the single-exponential side of the dichotomy "
                "(a proper banner minor, or a star under topological minors)"
            )
    h = min(hx.n for hx in fam)
    builder_fn = _CASE_BUILDERS[label.case]
    fw = builder_fn(fam, inst, rel, h, label, limits)
    return fw, fw.params.ell


def _carrier(e: PisEdge) -> str:
    return format_pis_edge(e)


def _build_hard_gene(fam, inst, rel, h, label, limits) -> Framework:
    chosen = fam[0]
    if len(fam) > 1:
        best = None
        for idx, hx in enumerate(fam):
            f = besf(hx)
            if best is None or besf_compare(f, best[1]).kind == "less":
                best = (idx, f)
        chosen = fam[best[0]]
    cut = k_edges_leaf_block_cut(chosen, 5)
    bsub, bmap = induced_subgraph(chosen, cut.block)
    binv = {n2: o for o, n2 in bmap.items()}
    vprime = min(binv[u] for u in bsub.adj[bmap[cut.pivot]])
    hx_graph, hx_map = induced_subgraph(chosen, cut.x_side)
    hy_graph, hy_map = induced_subgraph(chosen, cut.y_side)
    v_in_x = hx_map[cut.pivot]
    v_in_y, vp_in_y = hy_map[cut.pivot], hy_map[vprime]
    hy_minus = Graph.from_edges(
        hy_graph.n,
        [edge for edge in hy_graph.edges() if set(edge) != {v_in_y, vp_in_y}],
    )

    params = FrameworkParams.make(inst, rel, h, t_f=0)
    b = _Builder(inst, params)
    k = params.k
    copies_hx: dict[PisEdge, dict[int, int]] = {}
    copies_hym: dict[tuple[PisEdge, int], dict[int, int]] = {}
    for e in b.sigma:
        E = _carrier(e)
        q = b.add_j_extra(e, f"q[e={E}]")
        mapping = b.instantiate_copy(
            hx_graph, {v_in_x: q}, lambda tv: f"HX[e={E}][v={tv}]", e
        )
        copies_hx[e] = mapping
        for i in range(1, k + 1):
            m2 = b.instantiate_copy(
                hy_minus,
                {v_in_y: q, vp_in_y: b.index.r(e, i)},
                lambda tv, i=i: f"HYm[e={E}][i={i}][v={tv}]",
                e,
            )
            copies_hym[(e, i)] = m2
    return b.finish(
        fam,
        CASE_HARD_GENE,
        {"chosen": chosen, "cut": cut, "vprime": vprime, "HX": copies_hx, "HYm": copies_hym},
    )


def _build_cycle_two_cut(fam, inst, rel, h, label, limits) -> Framework:
    hgraph = fam[0]
    v, vp = label.payload["edge"]
    h_minus = Graph.from_edges(
        hgraph.n, [edge for edge in hgraph.edges() if set(edge) != {v, vp}]
    )
    params = FrameworkParams.make(inst, rel, h, t_f=0)
    b = _Builder(inst, params)
    copies: dict[tuple[PisEdge, int], dict[int, int]] = {}
    for e in b.sigma:
        E = _carrier(e)
        q = b.add_j_extra(e, f"q[e={E}]")
        for i in range(1, params.k + 1):
            copies[(e, i)] = b.instantiate_copy(
                h_minus,
                {v: b.index.r(e, i), vp: q},
                lambda tv, i=i: f"Hm[e={E}][i={i}][v={tv}]",
                e,
            )
    return b.finish(fam, CASE_CYCLE_TWO_CUT, {"edge": (v, vp), "Hm": copies})


def _build_three_cut(fam, inst, rel, h, label, limits) -> Framework:
    hgraph = fam[0]
    pl = label.payload
    a, c, bb, a_prime, r = pl["a"], pl["c"], pl["b"], pl["a_prime"], pl["r"]
    ra, rb, rc, rr = pl["R_a"], pl["R_b"], pl["R_c"], pl["R_r"]
    ga, ma = induced_subgraph(hgraph, ra)
    gb, mb = induced_subgraph(hgraph, rb)
    gc, mc = induced_subgraph(hgraph, rc)
    gr, mr = induced_subgraph(hgraph, rr)
    t_f = len(ra) + len(rb) - 2
    params = FrameworkParams.make(inst, rel, h, t_f=t_f)

    # B-extra slots carry the R_a / R_b copy interiors, in this fixed order
    ra_rest = [u for u in sorted(ra) if u != a]
    rb_rest = [u for u in sorted(rb) if u != bb]

    def extra_namer(e, i, j, t):
        E = format_pis_edge(e)
        if t < len(ra_rest):
            return f"Ra[e={E}][i={i},j={j}][v={ra_rest[t]}]"
        return f"Rb[e={E}][i={i},j={j}][v={rb_rest[t - len(ra_rest)]}]"

    b = _Builder(inst, params, extra_namer=extra_namer)
    idx = b.index
    k = params.k
    copies_rc: dict[tuple[PisEdge, int], dict[int, int]] = {}
    copies_rr: dict[tuple[PisEdge, int], dict[int, int]] = {}
    copies_ra: dict[tuple[PisEdge, int, int], dict[int, int]] = {}
    copies_rb: dict[tuple[PisEdge, int, int], dict[int, int]] = {}
    na_ra = sorted(set(hgraph.adj[a_prime]) & ra)
    nc_ra = sorted(set(hgraph.adj[c]) & ra)
    nc_rb = sorted(set(hgraph.adj[c]) & rb)
    nr_rb = sorted(set(hgraph.adj[r]) & rb)
    for e in b.sigma:
        E = _carrier(e)
        nxt = b.sigma[(b.sigma.index(e) + 1) % len(b.sigma)]
        for j in range(1, k + 1):
            copies_rc[(e, j)] = b.instantiate_copy(
                gc, {mc[c]: idx.c(e, j)}, lambda tv, j=j: f"Rc[e={E}][j={j}][v={tv}]", e
            )
        for i in range(1, k + 1):
            copies_rr[(e, i)] = b.instantiate_copy(
                gr, {mr[r]: idx.r(e, i)}, lambda tv, i=i: f"Rr[e={E}][i={i}][v={tv}]", e
            )
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                extras = idx.extras(e, i, j)
                # R_a copy glued at a^e_{i,j}; interiors are the first slots
                amap = {ma[a]: idx.a(e, i, j)}
                for t, hv in enumerate(ra_rest):
                    amap[ma[hv]] = extras[t]
                for u, v in ga.edges():
                    b.add_edge(
                        _copy_lookup(amap, u), _copy_lookup(amap, v)
                    )
                copies_ra[(e, i, j)] = {o: amap[ma[o]] for o in sorted(ra)}
                for hv in na_ra:
                    b.add_edge(amap[ma[hv]], idx.r(e, i))
                for hv in nc_ra:
                    b.add_edge(amap[ma[hv]], idx.c(e, j))
                # R_b copy glued at b^e_{i,j}, wired into J^{sigma(e)}
                bmap2 = {mb[bb]: idx.b(e, i, j)}
                for t, hv in enumerate(rb_rest):
                    bmap2[mb[hv]] = extras[len(ra_rest) + t]
                for u, v in gb.edges():
                    b.add_edge(_copy_lookup(bmap2, u), _copy_lookup(bmap2, v))
                copies_rb[(e, i, j)] = {o: bmap2[mb[o]] for o in sorted(rb)}
                for hv in nc_rb:
                    b.add_edge(bmap2[mb[hv]], idx.c(nxt, j))
                for hv in nr_rb:
                    b.add_edge(bmap2[mb[hv]], idx.r(nxt, i))
    return b.finish(
        fam,
        CASE_THREE_CUT,
        {
            "payload": pl,
            "Rc": copies_rc,
            "Rr": copies_rr,
            "Ra": copies_ra,
            "Rb": copies_rb,
        },
    )


def _copy_lookup(mapping: dict[int, int], key: int) -> int:
    return mapping[key]


def _build_two_cut(fam, inst, rel, h, label, limits) -> Framework:
    pl = label.payload
    s_x, s_y, p = pl["s_x"], pl["s_y"], pl["p"]
    t_f = p - 2
    params = FrameworkParams.make(inst, rel, h, t_f=t_f)

    def extra_namer(e, i, j, t):
        E = format_pis_edge(e)
        if t < s_x - 1:
            return f"pa[e={E}][i={i},j={j}][t={t}]"
        return f"pb[e={E}][i={i},j={j}][t={t - (s_x - 1)}]"

    b = _Builder(inst, params, extra_namer=extra_namer)
    idx = b.index
    for e in b.sigma:
        for i in range(1, params.k + 1):
            for j in range(1, params.k + 1):
                extras = idx.extras(e, i, j)
                for t in range(s_x - 1):
                    b.add_edge(extras[t], idx.a(e, i, j))
                for t in range(s_y - 1):
                    b.add_edge(extras[s_x - 1 + t], idx.b(e, i, j))
    return b.finish(fam, CASE_TWO_CUT, {"s_x": s_x, "s_y": s_y, "p": p})


def _build_cycle_star_two_cut(fam, inst, rel, h, label, limits) -> Framework:
    hgraph = fam[0]
    v, vp = label.payload["v"], label.payload["v2"]
    h_minus, remap = contract_edge(hgraph, v, vp)
    w = remap[v]
    params = FrameworkParams.make(inst, rel, h, t_f=0)
    b = _Builder(inst, params)
    copies: dict[tuple[PisEdge, int], dict[int, int]] = {}
    for e in b.sigma:
        E = _carrier(e)
        for i in range(1, params.k + 1):
            copies[(e, i)] = b.instantiate_copy(
                h_minus,
                {w: b.index.r(e, i)},
                lambda tv, i=i: f"Hm[e={E}][i={i}][v={tv}]",
                e,
            )
    return b.finish(fam, CASE_CYCLE_STAR_TWO_CUT, {"cut_pair": (v, vp), "Hm": copies})


def _build_commander(fam, inst, rel, h, label, limits) -> Framework:
    hgraph = fam[0]
    pl = label.payload
    x, y = pl["x"], pl["y"]
    gx, mx = induced_subgraph(hgraph, pl["hx_vertices"])
    gy, my = induced_subgraph(hgraph, pl["hy_vertices"])
    params = FrameworkParams.make(inst, rel, h, t_f=1)

    def extra_namer(e, i, j, t):
        return f"abar[e={format_pis_edge(e)}][i={i},j={j}]"

    b = _Builder(inst, params, extra_namer=extra_namer)
    idx = b.index
    k = params.k
    copies_hx: dict[tuple[PisEdge, int], dict[int, int]] = {}
    copies_hy: dict[tuple[PisEdge, int], dict[int, int]] = {}
    for e in b.sigma:
        E = _carrier(e)
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                (abar,) = idx.extras(e, i, j)
                b.add_edge(abar, idx.r(e, i))
                b.add_edge(idx.c(e, j), abar)
        for j in range(1, k + 1):
            copies_hx[(e, j)] = b.instantiate_copy(
                gx, {mx[x]: idx.c(e, j)}, lambda tv, j=j: f"Hx[e={E}][j={j}][v={tv}]", e
            )
        for i in range(1, k + 1):
            copies_hy[(e, i)] = b.instantiate_copy(
                gy, {my[y]: idx.r(e, i)}, lambda tv, i=i: f"Hy[e={E}][i={i}][v={tv}]", e
            )
    return b.finish(
        fam, CASE_COMMANDER, {"payload": pl, "Hx": copies_hx, "Hy": copies_hy}
    )


def _build_butternut(fam, inst, rel, h, label, limits) -> Framework:
    hgraph = fam[0]
    pl = label.payload
    x = pl["x"]
    gx, mx = induced_subgraph(hgraph, pl["hx_vertices"])
    params = FrameworkParams.make(inst, rel, h, t_f=2)

    def extra_namer(e, i, j, t):
        kind = "abar" if t == 0 else "bbar"
        return f"{kind}[e={format_pis_edge(e)}][i={i},j={j}]"

    b = _Builder(inst, params, extra_namer=extra_namer)
    idx = b.index
    k = params.k
    copies_hx: dict[tuple[PisEdge, int], dict[int, int]] = {}
    for t, e in enumerate(b.sigma):
        E = _carrier(e)
        nxt = b.sigma[(t + 1) % len(b.sigma)]
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                abar, bbar = idx.extras(e, i, j)
                # abar wires into J^e like a, bbar into J^{sigma(e)} like b
                b.add_edge(abar, idx.r(e, i))
                b.add_edge(idx.c(e, j), abar)
                b.add_edge(bbar, idx.r(nxt, i))
                b.add_edge(bbar, idx.c(nxt, j))
        for j in range(1, k + 1):
            copies_hx[(e, j)] = b.instantiate_copy(
                gx, {mx[x]: idx.c(e, j)}, lambda tv, j=j: f"Hx[e={E}][j={j}][v={tv}]", e
            )
    return b.finish(fam, CASE_BUTTERNUT, {"payload": pl, "Hx": copies_hx})


def _build_crick_minor(fam, inst, rel, h, label, limits) -> Framework:
    s = label.payload["s"]
    params = FrameworkParams.make(inst, rel, h, t_f=s - 2)

    def extra_namer(e, i, j, t):
        return f"pb[e={format_pis_edge(e)}][i={i},j={j}][t={t}]"

    b = _Builder(inst, params, extra_namer=extra_namer)
    idx = b.index
    k = params.k
    dfg: dict[tuple[str, PisEdge, int], int] = {}
    for t, e in enumerate(b.sigma):
        E = _carrier(e)
        prev = b.sigma[(t - 1) % len(b.sigma)]
        for j in range(1, k + 1):
            d = b.add_j_extra(e, f"d[e={E}][j={j}]")
            f = b.add_j_extra(e, f"f[e={E}][j={j}]")
            g = b.add_j_extra(e, f"g[e={E}][j={j}]")
            dfg[("d", e, j)] = d
            dfg[("f", e, j)] = f
            dfg[("g", e, j)] = g
            b.add_edge(d, f)
            b.add_edge(f, g)
            for i in range(1, k + 1):
                b.add_edge(idx.b(prev, i, j), d)
                b.add_edge(g, idx.a(e, i, j))
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                for extra in idx.extras(e, i, j):
                    b.add_edge(extra, idx.b(e, i, j))
    return b.finish(fam, CASE_CRICK_MINOR, {"s": s, "dfg": dfg})


def _build_crick_tm(fam, inst, rel, h, label, limits) -> Framework:
    s = label.payload["s"]
    params = FrameworkParams.make(inst, rel, h, t_f=0)
    b = _Builder(inst, params)
    idx = b.index
    pend: dict[PisEdge, tuple[int, ...]] = {}
    qs: dict[PisEdge, int] = {}
    for e in b.sigma:
        E = _carrier(e)
        q = b.add_j_extra(e, f"q[e={E}]")
        qs[e] = q
        hang = []
        for t in range(s):
            p = b.add_j_extra(e, f"pq[e={E}][t={t}]")
            b.add_edge(q, p)
            hang.append(p)
        pend[e] = tuple(hang)
        for j in range(1, params.k + 1):
            b.add_edge(q, idx.r(e, j))
    return b.finish(fam, CASE_CRICK_TM, {"s": s, "q": qs, "pq": pend})


_CASE_BUILDERS = {
    CASE_HARD_GENE: _build_hard_gene,
    CASE_CYCLE_TWO_CUT: _build_cycle_two_cut,
    CASE_THREE_CUT: _build_three_cut,
    CASE_TWO_CUT: _build_two_cut,
    CASE_CYCLE_STAR_TWO_CUT: _build_cycle_star_two_cut,
    CASE_COMMANDER: _build_commander,
    CASE_BUTTERNUT: _build_butternut,
    CASE_CRICK_MINOR: _build_crick_minor,
    CASE_CRICK_TM: _build_crick_tm,
}


# ---------------------------------------------------------------------------
# Solutions in and out of the framework


def embed_solution(fw: Framework, p) -> VertexSet:
    """S_P: every vertex of every B-gadget off the solution permutation."""
    k = fw.instance.k
    p = tuple(p)
    if sorted(p) != list(range(1, k + 1)):
        raise InputError("not a permutation of the columns")
    cells = {(i, p[i - 1]) for i in range(1, k + 1)}
    for c1, c2 in itertools.combinations(sorted(cells), 2):
        if fw.instance.is_edge(c1, c2):
            raise InputError(f"cells {c1} and {c2} are adjacent in the instance")
    out: set[int] = set()
    for e in fw.sigma:
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if (i, j) not in cells:
                    out.update(fw.index.gadget_vertices(e, i, j))
    s = frozenset(out)
    assert len(s) == fw.params.ell
    return s


def lift_solution(fw: Framework, s) -> tuple[dict[PisEdge, frozenset[Cell]], bool]:
    """Per-edge survivor grids T^e and whether they agree on one permutation."""
    s = frozenset(s)
    k = fw.instance.k
    grids: dict[PisEdge, frozenset[Cell]] = {}
    for e in fw.sigma:
        cells = frozenset(
            (i, j)
            for i in range(1, k + 1)
            for j in range(1, k + 1)
            if not (fw.index.gadget_vertices(e, i, j) & s)
        )
        grids[e] = cells
    first = grids[fw.sigma[0]]
    consistent = all(g == first for g in grids.values())
    if consistent:
        rows = sorted(i for i, _ in first)
        cols = sorted(j for _, j in first)
        consistent = rows == list(range(1, k + 1)) and cols == list(range(1, k + 1))
    if consistent:
        consistent = not any(
            fw.instance.is_edge(c1, c2)
            for c1, c2 in itertools.combinations(sorted(first), 2)
        )
    return grids, consistent


def witness_subgraph(fw: Framework, e: PisEdge, i: int, i2: int, j: int) -> VertexSet:
    """Vertices certifying why retaining b^e_{i,j} and a^{sigma(e)}_{i2,j}
    together leaves the forbidden graph in the residual."""
    if fw.case is None or fw.case not in _CASE_BUILDERS:
        raise InputError("witnesses are defined for enhanced frameworks only")
    if i == i2:
        raise InputError("witnesses need two distinct rows")
    idx = fw.index
    nxt = fw.sigma_next(e)
    data = fw.case_data
    core = {
        idx.b(e, i, j),
        idx.c(nxt, j),
        idx.a(nxt, i2, j),
        idx.r(nxt, i),
        idx.r(nxt, i2),
    }
    case = fw.case
    if case == CASE_HARD_GENE:
        return frozenset(
            core
            | set(data["HX"][nxt].values())
            | set(data["HYm"][(nxt, i)].values())
            | set(data["HYm"][(nxt, i2)].values())
        )
    if case == CASE_CYCLE_TWO_CUT or case == CASE_CYCLE_STAR_TWO_CUT:
        return frozenset(
            core
            | set(data["Hm"][(nxt, i)].values())
            | set(data["Hm"][(nxt, i2)].values())
        )
    if case == CASE_THREE_CUT:
        return frozenset(
            {idx.r(nxt, i2)}
            | set(data["Ra"][(nxt, i2, j)].values())
            | set(data["Rc"][(nxt, j)].values())
            | set(data["Rb"][(e, i, j)].values())
            | set(data["Rr"][(nxt, i)].values())
        )
    if case == CASE_TWO_CUT:
        s_x = data["s_x"]
        pend_a = idx.extras(nxt, i2, j)[: s_x - 1]
        pend_b = idx.extras(e, i, j)[s_x - 1:]
        return frozenset(core | set(pend_a) | set(pend_b))
    if case == CASE_COMMANDER:
        (abar,) = idx.extras(nxt, i2, j)
        return frozenset(
            core
            | {abar}
            | set(data["Hx"][(nxt, j)].values())
            | set(data["Hy"][(nxt, i)].values())
        )
    if case == CASE_BUTTERNUT:
        abar = idx.extras(nxt, i2, j)[0]
        bbar = idx.extras(e, i, j)[1]
        return frozenset(core | {abar, bbar} | set(data["Hx"][(nxt, j)].values()))
    if case == CASE_CRICK_MINOR:
        dfg = data["dfg"]
        return frozenset(
            core
            | {dfg[("d", nxt, j)], dfg[("f", nxt, j)], dfg[("g", nxt, j)]}
            | set(idx.extras(e, i, j))
        )
    if case == CASE_CRICK_TM:
        return frozenset(core | {data["q"][nxt]} | set(data["pq"][nxt]))
    raise InputError(f"unknown case {case}")


# ---------------------------------------------------------------------------
# Manifest


def manifest_text(fw: Framework) -> str:
    p = fw.params
    head = (
        f"case={fw.case or 'Base'} relation={p.relation.value} k={p.k} m={p.m} "
        f"h={p.h} n_h={p.n_h} t_F={p.t_f} z={p.z} ell={p.ell}\n"
    )
    names = [
        f"name {fw.index.name(v)} {v}\n" for v in range(fw.index.n)
    ]
    from .graph import write_edgelist

    return head + "".join(names) + write_edgelist(fw.graph)


# ---------------------------------------------------------------------------
# The Vertex Cover reduction


def minor_antichain(fam, rel: Relation, limits: Limits | None = None) -> list[Graph]:
    """Drop members that properly contain another member under rel."""
    fam = list(fam)
    kept: list[Graph] = []
    for i, hx in enumerate(fam):
        dominated = False
        for jdx, other in enumerate(fam):
            if jdx == i:
                continue
            if contains(other, hx, rel, limits):
                if contains(hx, other, rel, limits) and i < jdx:
                    continue  # mutually contained (isomorphic); keep first
                dominated = True
                break
        if not dominated:
            kept.append(hx)
    return kept


def vc_reduction(
    fam,
    g: Graph,
    budget: int,
    rel: Relation = Relation.MINOR,
    limits: Limits | None = None,
) -> tuple[Graph, int, str]:
    """Per-vertex core copies plus per-edge block copies replacing edges.

    Contract: g has a vertex cover of size <= budget iff the output graph
    has a deletion set of size <= budget for the family under rel.
    """
    fam = check_connected_collection(fam)
    fam = minor_antichain(fam, rel, limits)
    ep = essential_pair(fam)
    host = ep.host
    core = ep.core
    block_graph, block_map = induced_subgraph(host, ep.block)
    a_in_block = block_map[ep.first]
    b_in_block = block_map[ep.second]

    names: list[str] = [f"v[{v}]" for v in range(g.n)]
    edges: set[tuple[int, int]] = set()

    def fresh(name: str) -> int:
        names.append(name)
        return len(names) - 1

    for v in range(g.n):
        mapping = {ep.core_first: v}
        for u in range(core.n):
            if u != ep.core_first:
                mapping[u] = fresh(f"core[v={v}][u={u}]")
        for x, y in core.edges():
            edges.add((min(mapping[x], mapping[y]), max(mapping[x], mapping[y])))
    for u, v in g.edges():
        mapping = {a_in_block: u, b_in_block: v}
        for w in range(block_graph.n):
            if w not in (a_in_block, b_in_block):
                mapping[w] = fresh(f"edge[e=({u},{v})][u={w}]")
        for x, y in block_graph.edges():
            edges.add((min(mapping[x], mapping[y]), max(mapping[x], mapping[y])))

    out = Graph.from_edges(len(names), edges, labels=dict(enumerate(names)))
    head = (
        f"case=VertexCover relation={rel.value} k={budget} m={g.m} "
        f"h={min(hx.n for hx in fam)} n_h=0 t_F=0 z=0 ell={budget}\n"
    )
    from .graph import write_edgelist

    manifest = head + "".join(
        f"name {names[v]} {v}\n" for v in range(len(names))
    ) + write_edgelist(out)
    return out, budget, manifest
