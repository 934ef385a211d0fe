import pytest
from hypothesis import given, settings, strategies as st

from minorforge.errors import InputError
from minorforge.graph import (
    Graph,
    canonical_form,
    complete_graph,
    complete_join,
    connected_components,
    contract_edge,
    cycle_graph,
    degree_one_vertices,
    enumerate_connected_graphs,
    induced_subgraph,
    is_connected,
    is_i_connected,
    is_isomorphic,
    named_graph,
    path_graph,
    read_edgelist,
    star_graph,
    write_edgelist,
)

from oracles import oracle_is_i_connected


def small_graphs(max_n=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=0, max_value=max_n))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        mask = draw(st.integers(min_value=0, max_value=(1 << len(pairs)) - 1))
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        return Graph.from_edges(n, edges)

    return build()


def test_from_edges_rejects_loops_and_range():
    with pytest.raises(InputError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(InputError):
        Graph.from_edges(3, [(0, 3)])


def test_induced_subgraph_examples():
    c4 = cycle_graph(4)
    sub, remap = induced_subgraph(c4, {0, 1, 2, 3})
    assert is_isomorphic(sub, c4) and remap == {i: i for i in range(4)}

    k4 = complete_graph(4)
    sub, _ = induced_subgraph(k4, {0, 2, 3})
    assert is_isomorphic(sub, complete_graph(3))

    banner = named_graph("banner")
    sub, _ = induced_subgraph(banner, {0, 1, 2, 3})
    assert is_isomorphic(sub, cycle_graph(4))

    with pytest.raises(InputError):
        induced_subgraph(k4, {1, 7})


def test_contract_edge_examples():
    p3 = path_graph(3)
    g, _ = contract_edge(p3, 1, 2)
    assert is_isomorphic(g, path_graph(2))

    c4 = cycle_graph(4)
    g, _ = contract_edge(c4, 0, 1)
    assert is_isomorphic(g, cycle_graph(3))

    # contracting a banner cycle edge away from the pendant leaves a paw
    banner = named_graph("banner")  # cycle 0-1-2-3, pendant 4 at 0
    g, remap = contract_edge(banner, 1, 2)
    assert is_isomorphic(g, named_graph("paw"))
    assert g.n == 4 and remap[1] == remap[2]

    with pytest.raises(InputError):
        contract_edge(c4, 0, 2)


def test_contract_every_nonpendant_banner_cycle_edge_gives_paw():
    banner = named_graph("banner")
    paw = named_graph("paw")
    for u, v in [(1, 2), (2, 3)]:
        g, _ = contract_edge(banner, u, v)
        assert is_isomorphic(g, paw)


def test_connected_components():
    assert connected_components(Graph.from_edges(0, [])) == []
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    parts = connected_components(g)
    assert sorted(len(p) for p in parts) == [2, 3]


def test_is_i_connected_examples():
    assert is_i_connected(complete_graph(4), 3)
    assert is_i_connected(cycle_graph(4), 2)
    assert not is_i_connected(cycle_graph(4), 3)
    assert not is_i_connected(named_graph("banner"), 2)
    # K2 is 1-connected but not 2-connected
    assert is_i_connected(path_graph(2), 1)
    assert not is_i_connected(path_graph(2), 2)


@settings(max_examples=60, deadline=None)
@given(small_graphs(5), st.integers(min_value=1, max_value=3))
def test_is_i_connected_matches_path_packing_oracle(g, i):
    assert is_i_connected(g, i) == oracle_is_i_connected(g, i)


@settings(max_examples=60, deadline=None)
@given(small_graphs(6))
def test_one_connected_iff_single_component(g):
    if g.n >= 1:
        assert is_i_connected(g, 1) == (len(connected_components(g)) == 1)


def test_degree_one_vertices():
    assert degree_one_vertices(path_graph(2)) == {0, 1}
    assert degree_one_vertices(named_graph("banner")) == {4}
    assert degree_one_vertices(Graph.from_edges(1, [])) == {0}


def test_complete_join():
    g = Graph.from_edges(2, [])
    joined = complete_join(g, {0}, {1})
    assert joined.has_edge(0, 1)
    assert complete_join(joined, {0}, {1}).m == joined.m  # idempotent

    two_cliques = Graph.from_edges(
        6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    )
    joined = complete_join(two_cliques, {0, 1, 2}, {3, 4, 5})
    assert is_isomorphic(joined, complete_graph(6))

    with pytest.raises(InputError):
        complete_join(g, {0}, {0, 1})


@settings(max_examples=40, deadline=None)
@given(small_graphs(6))
def test_induced_components_never_empty(g):
    for part in connected_components(g):
        sub, _ = induced_subgraph(g, part)
        assert sub.n == len(part) > 0
        assert is_connected(sub)


@settings(max_examples=40, deadline=None)
@given(small_graphs(6))
def test_contract_shrinks_and_stays_simple(g):
    for u, v in g.edges():
        out, _ = contract_edge(g, u, v)
        assert out.n == g.n - 1
        assert all(x not in out.adj[x] for x in range(out.n))


def test_edgelist_round_trip_bit_exact():
    g = named_graph("banner")
    text = write_edgelist(g)
    assert text.splitlines()[0] == "5 5"
    again = read_edgelist(text)
    assert write_edgelist(again) == text
    with_comments = "# a banner\n" + text
    assert write_edgelist(read_edgelist(with_comments)) == text


def test_edgelist_rejects_malformed():
    with pytest.raises(InputError):
        read_edgelist("2 1\n1 0\n")  # u < v violated
    with pytest.raises(InputError):
        read_edgelist("2 2\n0 1\n")  # wrong count


def test_isomorphism_and_census_counts():
    assert is_isomorphic(cycle_graph(4), Graph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]))
    assert not is_isomorphic(named_graph("paw"), star_graph(3))
    counts = {n: len(enumerate_connected_graphs(n)) for n in range(1, 6)}
    assert counts == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21}


def test_canonical_form_is_isomorphism_invariant():
    g = named_graph("cricket")
    relabeled = Graph.from_edges(5, [(4, 3), (3, 2), (4, 2), (4, 1), (4, 0)])
    assert canonical_form(g) == canonical_form(relabeled)
