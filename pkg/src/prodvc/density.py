"""Exact density, maximum average degree, densest subgraph, Nash-Williams
arboricity, forest decompositions, and bounded-outdegree orientations.

Every ratio is an exact `Fraction`.  The densest-subgraph search runs a
parametric min-cut (source -> edge nodes -> endpoints -> sink) with the test
ratio p/q scaled to integer capacities, so no tolerance is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .flow import INF, MaxFlow
from .graph import FactorGraph, GraphError, degeneracy_ordering


@dataclass(frozen=True)
class DensityReport:
    density: Fraction
    witness: tuple[int, ...]
    mad: Fraction


@dataclass(frozen=True)
class ForestDecomposition:
    k: int
    assignment: dict[tuple[int, int], int]

    def forest_edges(self, j: int) -> list[tuple[int, int]]:
        return sorted(e for e, f in self.assignment.items() if f == j)


def _denser_subgraph(g: FactorGraph, threshold: Fraction) -> Optional[set[int]]:
    """A vertex set S with |E(S)|/|S| strictly above `threshold`, or None.

    Min-cut over the network s -> edge(cap q) -> endpoints(cap inf) -> t
    (vertex cap p): the cut for a source side S costs q(|E|-|E(S)|) + p|S|,
    so the cut drops below q|E| exactly when q|E(S)| > p|S|.
    """
    if g.m == 0:
        return None
    p, q = threshold.numerator, threshold.denominator
    # nodes: 0 = source, 1 = sink, 2.. = vertices, then edge nodes
    net = MaxFlow(2 + g.n + g.m)
    vnode = lambda v: 2 + v
    for v in range(g.n):
        net.add_edge(vnode(v), 1, p)
    for idx, (u, v) in enumerate(g.edges):
        enode = 2 + g.n + idx
        net.add_edge(0, enode, q)
        net.add_edge(enode, vnode(u), INF)
        net.add_edge(enode, vnode(v), INF)
    cut = net.max_flow(0, 1)
    if cut >= q * g.m:
        return None
    side = net.min_cut_source_side(0)
    witness = {v for v in range(g.n) if vnode(v) in side}
    assert witness
    return witness


def _edge_count_within(g: FactorGraph, vertices: set[int]) -> int:
    return sum(1 for u, v in g.edges if u in vertices and v in vertices)


def densest_subgraph(g: FactorGraph) -> DensityReport:
    """Exact maximizer of |E'|/|V'| over nonempty vertex subsets."""
    if g.n == 0:
        raise GraphError("empty graph")
    best_set = set(range(g.n))
    best = Fraction(g.m, g.n)
    while True:
        improved = _denser_subgraph(g, best)
        if improved is None:
            break
        best_set = improved
        best = Fraction(_edge_count_within(g, improved), len(improved))
    return DensityReport(density=best, witness=tuple(sorted(best_set)), mad=2 * best)


def densest_subgraph_bruteforce(g: FactorGraph) -> DensityReport:
    """Independent oracle: enumerate all nonempty vertex subsets (n <= 20)."""
    if g.n == 0:
        raise GraphError("empty graph")
    if g.n > 20:
        raise GraphError("brute-force oracle capped at 20 vertices")
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    edge_count = [0] * (1 << g.n)
    best = Fraction(0)
    best_mask = 1
    for mask in range(1, 1 << g.n):
        low = (mask & -mask).bit_length() - 1
        edge_count[mask] = edge_count[mask & (mask - 1)] + (adj_mask[low] & mask).bit_count()
        d = Fraction(edge_count[mask], mask.bit_count())
        if d > best:
            best, best_mask = d, mask
    witness = tuple(v for v in range(g.n) if best_mask >> v & 1)
    return DensityReport(density=best, witness=witness, mad=2 * best)


def dens(g: FactorGraph) -> Fraction:
    return densest_subgraph(g).density


def mad(g: FactorGraph) -> Fraction:
    return 2 * densest_subgraph(g).density


# ---------------------------------------------------------------------------
# arboricity (Nash-Williams denominator |V'| - 1)

def _violates_forest_bound(g: FactorGraph, k: int) -> bool:
    """True if some subgraph has |E'| > k(|V'| - 1).

    One min-cut per forced vertex v: over sets S containing v,
    max(|E(S)| - k|S|) equals |E| - mincut, and a violation means that
    maximum reaches 1 - k (all quantities are integers).
    """
    for forced in range(g.n):
        net = MaxFlow(2 + g.n + g.m)
        vnode = lambda v: 2 + v
        for v in range(g.n):
            net.add_edge(vnode(v), 1, k)
        net.add_edge(0, vnode(forced), INF)
        for idx, (u, v) in enumerate(g.edges):
            enode = 2 + g.n + idx
            net.add_edge(0, enode, 1)
            net.add_edge(enode, vnode(u), INF)
            net.add_edge(enode, vnode(v), INF)
        cut = net.max_flow(0, 1)
        if g.m - cut >= 1 - k:
            return True
    return False


def arboricity(g: FactorGraph) -> int:
    """max over subgraphs of ceil(|E'|/(|V'|-1)), exactly (0 for edgeless)."""
    if g.m == 0:
        return 0
    k = max(1, -(-g.m // (g.n - 1)))
    while _violates_forest_bound(g, k):
        k += 1
    return k


def arboricity_bruteforce(g: FactorGraph) -> int:
    """Oracle: enumerate all vertex subsets of size >= 2 (n <= 12)."""
    if g.n > 12:
        raise GraphError("brute-force oracle capped at 12 vertices")
    if g.m == 0:
        return 0
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    edge_count = [0] * (1 << g.n)
    best = 0
    for mask in range(1, 1 << g.n):
        low = (mask & -mask).bit_length() - 1
        edge_count[mask] = edge_count[mask & (mask - 1)] + (adj_mask[low] & mask).bit_count()
        size = mask.bit_count()
        if size >= 2:
            best = max(best, -(-edge_count[mask] // (size - 1)))
    return best


# ---------------------------------------------------------------------------
# forest decomposition via degeneracy-ordering slot assignment

def _assert_forest(g: FactorGraph, edges: list[tuple[int, int]]) -> None:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        assert ru != rv, f"cycle through edge ({u},{v})"
        parent[ru] = rv


def forest_decomposition(g: FactorGraph, k: int) -> ForestDecomposition:
    """Partition E(g) into at most k forests (requires k >= degeneracy(g)).

    Each vertex owns its forward edges in a degeneracy order and hands them
    distinct slots; within a slot every vertex has at most one forward edge
    of an acyclic orientation, so each slot class is a forest.
    """
    order, degeneracy = degeneracy_ordering(g)
    if k < degeneracy:
        raise GraphError(
            f"insufficient classes for this construction: k={k} < degeneracy={degeneracy}")
    pos = {v: i for i, v in enumerate(order)}
    assignment: dict[tuple[int, int], int] = {}
    slots_used = [0] * g.n
    for u, v in g.edges:
        tail = u if pos[u] < pos[v] else v
        assignment[(u, v)] = slots_used[tail]
        slots_used[tail] += 1
    assert all(s <= k for s in slots_used)
    fd = ForestDecomposition(k=k, assignment=assignment)
    for j in range(k):
        _assert_forest(g, fd.forest_edges(j))
    return fd


# ---------------------------------------------------------------------------
# bounded-outdegree orientation

def bounded_outdegree_orientation(g: FactorGraph, d: int) -> dict[tuple[int, int], int]:
    """Orient every edge so that each vertex has outdegree at most d.

    Feasible exactly when dens(g) <= d; maps each edge (u, v) to its head.
    """
    if d < 0 or Fraction(d) < dens(g):
        raise GraphError(f"infeasible, density exceeds {d}")
    net = MaxFlow(2 + g.n + g.m)
    vnode = lambda v: 2 + v
    for v in range(g.n):
        net.add_edge(vnode(v), 1, d)
    arcs = {}
    for idx, (u, v) in enumerate(g.edges):
        enode = 2 + g.n + idx
        net.add_edge(0, enode, 1)
        arcs[(u, v)] = (net.add_edge(enode, vnode(u), 1), net.add_edge(enode, vnode(v), 1))
    flow = net.max_flow(0, 1)
    assert flow == g.m, "orientation flow must saturate all edges"
    orientation = {}
    for (u, v), (au, av) in arcs.items():
        # the endpoint that absorbed the unit of flow is the tail
        orientation[(u, v)] = v if net.cap[au] == 0 else u
    outdeg = [0] * g.n
    for (u, v), head in orientation.items():
        outdeg[u if head == v else v] += 1
    assert max(outdeg, default=0) <= d
    return orientation
