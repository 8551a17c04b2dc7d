"""Finite simple graphs on dense integer vertices, with the contraction and
degree machinery used by every other module.

Vertices are always 0..n-1.  Graphs are immutable after construction and all
ratio-valued quantities are exact `Fraction`s; floats only appear in reports.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Optional


class GraphError(ValueError):
    pass


class FactorGraph:
    """A finite simple undirected graph.

    `edges` is stored as a sorted tuple of (u, v) pairs with u < v; `adj[v]`
    is a frozenset of neighbors.  Instances are immutable by convention:
    every operation returns a new graph.
    """

    __slots__ = ("n", "edges", "adj", "name")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], name: Optional[str] = None):
        if n < 0:
            raise GraphError("negative vertex count")
        norm = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(norm))
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)
        self.name = name

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u] if 0 <= u < self.n else False

    def __eq__(self, other):
        return isinstance(other, FactorGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<FactorGraph{tag} n={self.n} m={self.m}>"


# ---------------------------------------------------------------------------
# basic constructions

def path_graph(n: int) -> FactorGraph:
    return FactorGraph(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def cycle_graph(n: int) -> FactorGraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return FactorGraph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete_graph(n: int) -> FactorGraph:
    return FactorGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)], name=f"K{n}")


def star_graph(leaves: int) -> FactorGraph:
    return FactorGraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], name=f"K1,{leaves}")


def induced_subgraph(g: FactorGraph, vertices: Iterable[int]) -> tuple[FactorGraph, dict[int, int]]:
    """Induced subgraph on `vertices`, compacted to 0..k-1.

    Returns (subgraph, old->new vertex map).
    """
    vs = sorted(set(vertices))
    remap = {v: i for i, v in enumerate(vs)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap]
    return FactorGraph(len(vs), edges), remap


def complement_graph(g: FactorGraph) -> FactorGraph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if v not in g.adj[u]]
    return FactorGraph(g.n, edges)


# ---------------------------------------------------------------------------
# degrees and density-adjacent helpers

def degree_sequence(g: FactorGraph) -> list[int]:
    return [len(g.adj[v]) for v in range(g.n)]


def average_degree(g: FactorGraph) -> Fraction:
    """2|E|/|V| as an exact rational."""
    if g.n == 0:
        raise GraphError("empty graph")
    return Fraction(2 * g.m, g.n)


def is_connected(g: FactorGraph) -> bool:
    if g.n == 0:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def connected_components(g: FactorGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# contraction operators

def contract_edge(g: FactorGraph, u: int, v: int) -> tuple[FactorGraph, list[int]]:
    """Contract the edge uv: replace u,v by one vertex w, drop loops and
    multi-edges.

    The surviving vertex takes the smaller index; indices above the removed
    one are compacted.  Returns (contracted graph, old->new vertex map).
    """
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    keep, drop = min(u, v), max(u, v)
    phi = [0] * g.n
    for x in range(g.n):
        if x == drop:
            phi[x] = keep
        elif x > drop:
            phi[x] = x - 1
        else:
            phi[x] = x
    edges = set()
    for a, b in g.edges:
        na, nb = phi[a], phi[b]
        if na != nb:
            edges.add((min(na, nb), max(na, nb)))
    contracted = FactorGraph(g.n - 1, edges)
    assert len(contracted.edges) == len(set(contracted.edges))
    return contracted, phi


def star_of_edge(g: FactorGraph, u: int, v: int) -> tuple[FactorGraph, int, dict[int, int]]:
    """Star on the common neighbors of the edge uv: center 0 stands for the
    edge itself, leaves 1..|N| stand for the vertices of N(u) & N(v).

    Returns (star, center index, map common-neighbor -> leaf index).
    """
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    common = sorted(g.adj[u] & g.adj[v])
    leaf_of = {x: i + 1 for i, x in enumerate(common)}
    return star_graph(len(common)), 0, leaf_of


# ---------------------------------------------------------------------------
# orderings

def degeneracy_ordering(g: FactorGraph) -> tuple[list[int], int]:
    """Repeated minimum-degree peeling.

    In the returned order every vertex has at most `degeneracy` neighbors
    later in the order, and no smaller value works.
    """
    if g.n == 0:
        return [], 0
    deg = degree_sequence(g)
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    removed = [False] * g.n
    order = []
    degeneracy = 0
    for _ in range(g.n):
        d = 0
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        degeneracy = max(degeneracy, d)
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return order, degeneracy


def two_min_degree_vertices(g: FactorGraph, mad_bound: Optional[Fraction] = None) -> tuple[int, int]:
    """Two distinct vertices each of degree at most ceil(mad(g)).

    `mad_bound` may be supplied to skip recomputing the maximum average
    degree.  The returned degrees are asserted against the bound.
    """
    if g.n < 2:
        raise GraphError("need at least 2 vertices")
    if mad_bound is None:
        from .density import mad
        mad_bound = mad(g)
    a, b = sorted(range(g.n), key=lambda v: (len(g.adj[v]), v))[:2]
    cap = math.ceil(mad_bound)
    assert len(g.adj[a]) <= cap and len(g.adj[b]) <= cap
    return a, b


# ---------------------------------------------------------------------------
# edge-list text format: "n m" header then one "u v" line per edge

def to_edgelist(g: FactorGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def from_edgelist(text: str, name: Optional[str] = None) -> FactorGraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge-list file")
    n, m = map(int, rows[0])
    if len(rows) - 1 != m:
        raise GraphError(f"header says {m} edges, found {len(rows) - 1}")
    edges = []
    for row in rows[1:]:
        u, v = map(int, row)
        if not (0 <= u < v < n):
            raise GraphError(f"edge line '{u} {v}' violates 0 <= u < v < n")
        edges.append((u, v))
    return FactorGraph(n, edges, name=name)
