import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prodvc.graph import (FactorGraph, GraphError, average_degree, complement_graph,
                          complete_graph, connected_components, contract_edge,
                          cycle_graph, degeneracy_ordering, from_edgelist,
                          induced_subgraph, is_connected, path_graph, star_graph,
                          star_of_edge, to_edgelist, two_min_degree_vertices)


def random_graph(draw_n, edge_bits):
    edges = []
    idx = 0
    for u in range(draw_n):
        for v in range(u + 1, draw_n):
            if edge_bits >> idx & 1:
                edges.append((u, v))
            idx += 1
    return FactorGraph(draw_n, edges)


graphs = st.integers(2, 8).flatmap(
    lambda n: st.integers(0, (1 << (n * (n - 1) // 2)) - 1).map(
        lambda bits: random_graph(n, bits)))


def test_rejects_bad_edges():
    with pytest.raises(GraphError):
        FactorGraph(3, [(0, 0)])
    with pytest.raises(GraphError):
        FactorGraph(3, [(0, 3)])
    with pytest.raises(GraphError):
        FactorGraph(-1, [])


def test_normalizes_and_deduplicates():
    g = FactorGraph(3, [(1, 0), (0, 1), (1, 2)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.m == 2
    assert g.degree(1) == 2


def test_constructors():
    assert path_graph(4).m == 3
    assert cycle_graph(5).m == 5
    assert complete_graph(4).m == 6
    assert star_graph(3).m == 3
    with pytest.raises(GraphError):
        cycle_graph(2)


def test_connectivity():
    assert is_connected(path_graph(5))
    g = FactorGraph(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    assert connected_components(g) == [[0, 1], [2, 3]]


def test_induced_subgraph_compacts():
    g = cycle_graph(5)
    sub, remap = induced_subgraph(g, [1, 2, 4])
    assert sub.n == 3
    assert remap == {1: 0, 2: 1, 4: 2}
    assert sub.edges == ((0, 1),)


def test_complement():
    assert complement_graph(complete_graph(4)).m == 0
    assert complement_graph(FactorGraph(3, [])).m == 3


def test_contract_edge():
    g = cycle_graph(4)
    h, phi = contract_edge(g, 0, 1)
    assert h.n == 3
    assert h.m == 3  # triangle: contracting one edge of C4 merges two paths
    assert phi[1] == 0 and phi[2] == 1 and phi[3] == 2
    with pytest.raises(GraphError):
        contract_edge(g, 0, 2)


def test_star_of_edge():
    g = complete_graph(4)
    star, center, leaf_of = star_of_edge(g, 0, 1)
    assert center == 0
    assert star.n == 3 and star.m == 2
    assert leaf_of == {2: 1, 3: 2}


@given(graphs)
def test_degeneracy_order_property(g):
    order, k = degeneracy_ordering(g)
    pos = {v: i for i, v in enumerate(order)}
    later = [sum(1 for w in g.adj[v] if pos[w] > pos[v]) for v in order]
    assert max(later, default=0) <= k
    # minimality: some subgraph has min degree k
    if k:
        best = 0
        alive = set(range(g.n))
        while alive:
            degs = {v: sum(1 for w in g.adj[v] if w in alive) for v in alive}
            best = max(best, min(degs.values()))
            alive.discard(min(degs, key=lambda v: (degs[v], v)))
        assert best == k


@given(graphs)
def test_two_min_degree_vertices_bound(g):
    from prodvc.density import mad
    a, b = two_min_degree_vertices(g)
    cap = math.ceil(mad(g))
    assert a != b
    assert g.degree(a) <= cap and g.degree(b) <= cap


@given(graphs)
def test_edgelist_roundtrip(g):
    text = to_edgelist(g)
    assert from_edgelist(text) == g
    assert to_edgelist(from_edgelist(text)) == text


def test_edgelist_comments_and_errors():
    g = from_edgelist("3 1  # header\n0 1  # an edge\n")
    assert g.edges == ((0, 1),)
    with pytest.raises(GraphError):
        from_edgelist("3 2\n0 1\n")
    with pytest.raises(GraphError):
        from_edgelist("3 1\n1 0\n")  # requires u < v
    with pytest.raises(GraphError):
        from_edgelist("")


def test_average_degree():
    assert average_degree(complete_graph(4)) == Fraction(3)
    with pytest.raises(GraphError):
        average_degree(FactorGraph(0, []))
