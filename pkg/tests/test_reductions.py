import random
from fractions import Fraction

import pytest

from prodvc.graph import GraphError, complete_graph, path_graph
from prodvc.harness import random_factor, random_subgraph
from prodvc.products import (ProductSpace, ProductSubgraph, hypercube, octahedron)
from prodvc.reductions import (hypercube_recursion_bound, reduce_edge,
                               reduce_opposite_pair, vc_monotonicity_check)
from prodvc.vc import vcd_induced


def test_square_reduction_counts():
    q2 = hypercube(2).materialize()
    step = reduce_edge(q2, 0, 0, 1)
    assert step.g_contracted.n == 2 and step.g_link_centers.n == 2
    assert step.edge_groups == {"collapsed": 2, "triangle_merged": 0,
                                "square_merged": 1, "created": 0}
    assert not step.tips


def test_triangle_reduction_produces_tips():
    sp = ProductSpace([complete_graph(3)])
    g = sp.materialize()
    step = reduce_edge(g, 0, 0, 1)
    assert step.num_common_neighbors == 1
    assert len(step.tips) == 1
    assert step.edge_groups["triangle_merged"] == 1
    assert step.g.n == step.g_contracted.n + step.g_link_centers.n


def test_reduction_requires_induced_and_valid_edge():
    sp = ProductSpace([path_graph(3)])
    g = ProductSubgraph(sp, [(0,), (1,)], edges=[], induced=False)
    with pytest.raises(GraphError):
        reduce_edge(g, 0, 0, 1)
    h = sp.materialize()
    with pytest.raises(GraphError):
        reduce_edge(h, 0, 0, 2)
    with pytest.raises(GraphError):
        reduce_edge(h, 3, 0, 1)


def test_counting_relations_random_corpus():
    rng = random.Random(11)
    for _ in range(150):
        m = rng.randint(1, 3)
        sp = ProductSpace([random_factor(rng, rng.choice(("path", "cycle", "tree",
                                                          "clique")), 4)
                           for _ in range(m)])
        if sp.num_vertices() > 256:
            continue
        g = random_subgraph(rng, sp)
        i = rng.randrange(m)
        if sp.factors[i].m == 0:
            continue
        u, v = rng.choice(sp.factors[i].edges)
        step = reduce_edge(g, i, u, v)  # identities asserted inside
        # explicit restatement of the counting relations
        assert g.n == step.g_contracted.n + step.g_link_centers.n
        assert g.n == step.g_contracted.n + step.g_link.n - len(step.tips)
        assert (g.num_edges <= step.g_contracted.num_edges
                + step.g_link.num_edges + step.g_link_centers.n)
        assert step.tip_edges == step.g_link.edges - step.g_link_centers.edges


def test_octahedral_reduction_counts():
    sp = ProductSpace([octahedron(2), path_graph(2)])
    g = sp.materialize()
    step = reduce_opposite_pair(g, 0, 0)
    assert step.edge == (0, 1)
    assert step.edge_groups["collapsed"] == 0
    assert g.n == step.g_contracted.n + step.g_link_centers.n
    assert (g.num_edges <= step.g_contracted.num_edges
            + step.g_link_centers.num_edges + len(step.tips))


def test_octahedral_reduction_random():
    rng = random.Random(23)
    for _ in range(60):
        d = rng.randint(2, 3)
        sp = ProductSpace([octahedron(d), random_factor(rng, "path", 3)])
        g = random_subgraph(rng, sp)
        step = reduce_opposite_pair(g, 0, rng.randrange(2 * d))
        assert g.n == step.g_contracted.n + step.g_link_centers.n


def test_clique_factor_has_no_opposite_pair():
    sp = ProductSpace([complete_graph(3)])
    g = sp.materialize()
    with pytest.raises(GraphError, match="Hamming"):
        reduce_opposite_pair(g, 0, 0)
    sp2 = ProductSpace([path_graph(4)])
    with pytest.raises(GraphError, match="octahedron"):
        reduce_opposite_pair(sp2.materialize(), 0, 0)


def test_monotonicity_small_corpus():
    rng = random.Random(31)
    checked = 0
    for _ in range(60):
        sp = ProductSpace([random_factor(rng, rng.choice(("path", "tree", "clique")),
                                         4)
                           for _ in range(rng.randint(1, 2))])
        g = random_subgraph(rng, sp)
        i = rng.randrange(sp.m)
        if sp.factors[i].m == 0:
            continue
        u, v = rng.choice(sp.factors[i].edges)
        step = reduce_edge(g, i, u, v)
        for rec in vc_monotonicity_check(step):
            assert rec.verdict in ("holds", "skipped"), (rec, sorted(g.vertices))
            checked += 1
    assert checked >= 100


def test_hypercube_recursion_bound_below_vcd():
    rng = random.Random(17)
    for _ in range(60):
        m = rng.randint(1, 5)
        sp = hypercube(m)
        verts = {tuple(rng.randint(0, 1) for _ in range(m))
                 for _ in range(rng.randint(1, 2 ** m))}
        g = ProductSubgraph(sp, verts, induced=True)
        b = hypercube_recursion_bound(g)
        assert g.num_edges <= b * g.n
        assert b <= vcd_induced(g)[0]
        assert Fraction(g.num_edges, g.n) <= vcd_induced(g)[0]
