import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from prodvc.density import (arboricity, arboricity_bruteforce,
                            bounded_outdegree_orientation, dens, densest_subgraph,
                            densest_subgraph_bruteforce, forest_decomposition, mad)
from prodvc.graph import (FactorGraph, GraphError, complete_graph, cycle_graph,
                          degeneracy_ordering, path_graph, star_graph)
from prodvc.products import ProductSpace, hypercube


def random_graph(rng, n_max=12):
    n = rng.randint(1, n_max)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < rng.choice((0.15, 0.4, 0.8))]
    return FactorGraph(n, edges)


def test_known_densities():
    assert densest_subgraph(complete_graph(4)).density == Fraction(3, 2)
    assert densest_subgraph(path_graph(1)).density == 0
    assert densest_subgraph(star_graph(5)).density == Fraction(5, 6)
    q3, _ = hypercube(3).materialize().to_factor_graph()
    assert densest_subgraph(q3).density == Fraction(12, 8)
    with pytest.raises(GraphError):
        densest_subgraph(FactorGraph(0, []))


def test_witness_achieves_density():
    for seed in range(30):
        g = random_graph(random.Random(seed))
        rep = densest_subgraph(g)
        ws = set(rep.witness)
        inner = sum(1 for u, v in g.edges if u in ws and v in ws)
        assert Fraction(inner, len(ws)) == rep.density
        assert rep.mad == 2 * rep.density


def test_flow_matches_bruteforce_oracle():
    rng = random.Random(20260823)
    for _ in range(200):
        g = random_graph(rng)
        assert densest_subgraph(g).density == densest_subgraph_bruteforce(g).density


def test_product_density_is_sum_of_factor_densities():
    rng = random.Random(7)
    for _ in range(20):
        factors = []
        for _ in range(rng.randint(1, 3)):
            kind = rng.choice(("path", "cycle", "clique"))
            n = rng.randint(2, 4) if kind != "cycle" else rng.randint(3, 4)
            factors.append({"path": path_graph, "cycle": cycle_graph,
                            "clique": complete_graph}[kind](n))
        space = ProductSpace(factors)
        if space.num_vertices() > 216:
            continue
        flat, _ = space.materialize().to_factor_graph()
        assert dens(flat) == sum(dens(f) for f in factors)


def test_known_arboricities():
    assert arboricity(path_graph(6)) == 1
    assert arboricity(complete_graph(4)) == 2
    q3, _ = hypercube(3).materialize().to_factor_graph()
    assert arboricity(q3) == 2  # ceil(12/7)
    assert arboricity(FactorGraph(1, [])) == 0


def test_arboricity_matches_bruteforce():
    rng = random.Random(99)
    for _ in range(120):
        g = random_graph(rng, n_max=9)
        assert arboricity(g) == arboricity_bruteforce(g)


def test_arboricity_consistency_with_density():
    rng = random.Random(5)
    for _ in range(60):
        g = random_graph(rng)
        if g.n < 2 or g.m == 0:
            continue
        a = arboricity(g)
        assert a >= math.ceil(dens(g))
        assert a <= math.ceil(dens(g) * g.n / (g.n - 1))


def test_forest_decomposition_partitions_into_forests():
    for g, k in [(cycle_graph(6), 2), (complete_graph(4), 3), (path_graph(5), 1)]:
        fd = forest_decomposition(g, k)
        seen = set()
        for j in range(fd.k):
            seen.update(fd.forest_edges(j))
        assert seen == set(g.edges)
    with pytest.raises(GraphError):
        forest_decomposition(complete_graph(4), 1)


def test_forest_decomposition_random():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng)
        _, k = degeneracy_ordering(g)
        fd = forest_decomposition(g, k)  # acyclicity asserted internally
        assert sum(len(fd.forest_edges(j)) for j in range(max(fd.k, 1))) == g.m


def test_orientation_bounds_outdegree():
    for g, d in [(complete_graph(4), 2), (cycle_graph(4), 1), (path_graph(5), 1)]:
        orientation = bounded_outdegree_orientation(g, d)
        out = [0] * g.n
        for (u, v), head in orientation.items():
            assert head in (u, v)
            out[u if head == v else v] += 1
        assert max(out) <= d
    with pytest.raises(GraphError):
        bounded_outdegree_orientation(complete_graph(4), 1)


def test_orientation_at_ceil_density_always_succeeds():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng)
        if g.m == 0:
            continue
        bounded_outdegree_orientation(g, math.ceil(dens(g)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 28 - 1), st.integers(2, 8))
def test_density_oracle_property(bits, n):
    edges = []
    idx = 0
    for u in range(n):
        for v in range(u + 1, n):
            if bits >> idx & 1:
                edges.append((u, v))
            idx += 1
    g = FactorGraph(n, edges)
    rep = densest_subgraph(g)
    assert rep.density == densest_subgraph_bruteforce(g).density
    assert mad(g) == 2 * rep.density
    assert rep.density >= Fraction(g.m, g.n)
