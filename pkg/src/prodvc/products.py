"""Cartesian products, subproducts, fibers, projections, and the
subgraph-of-a-product data model.

The full product is never materialized unless its vertex count fits under a
cap (default 10**6): fibers and projections are computed by coordinate
filtering over the subgraph's own vertex list.
"""

from __future__ import annotations

import json
from typing import Callable, Iterable, Iterator, Optional

from .graph import FactorGraph, GraphError, complete_graph, induced_subgraph, is_connected

MATERIALIZE_CAP = 10 ** 6

Coord = tuple[int, ...]
Edge = tuple[Coord, Coord]


class ProductSpace:
    """An ordered list of connected factor graphs; vertices are coordinate
    tuples, edges change exactly one coordinate along a factor edge."""

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[FactorGraph]):
        factors = tuple(factors)
        if not factors:
            raise GraphError("a product needs at least one factor")
        for i, f in enumerate(factors):
            if f.n < 1:
                raise GraphError(f"factor {i} is empty")
            if not is_connected(f):
                raise GraphError(f"factor {i} is not connected")
        self.factors = factors

    @property
    def m(self) -> int:
        return len(self.factors)

    def num_vertices(self) -> int:
        total = 1
        for f in self.factors:
            total *= f.n
        return total

    def is_vertex(self, v: Coord) -> bool:
        return len(v) == self.m and all(0 <= c < f.n for c, f in zip(v, self.factors))

    def check_vertex(self, v: Coord) -> None:
        if not self.is_vertex(tuple(v)):
            raise GraphError(f"{v} is not a vertex of this product")

    def is_edge(self, x: Coord, y: Coord) -> bool:
        diff = [i for i in range(self.m) if x[i] != y[i]]
        if len(diff) != 1:
            return False
        i = diff[0]
        return self.factors[i].has_edge(x[i], y[i])

    def edge_factor(self, x: Coord, y: Coord) -> int:
        """Index of the single coordinate in which the edge xy changes."""
        diff = [i for i in range(self.m) if x[i] != y[i]]
        if len(diff) != 1 or not self.factors[diff[0]].has_edge(x[diff[0]], y[diff[0]]):
            raise GraphError(f"{x}-{y} is not a product edge")
        return diff[0]

    def vertices(self, cap: int = MATERIALIZE_CAP) -> Iterator[Coord]:
        if self.num_vertices() > cap:
            raise GraphError(f"product too large to materialize (> {cap})")
        from itertools import product as iproduct
        return iproduct(*(range(f.n) for f in self.factors))

    def neighbors(self, v: Coord) -> Iterator[Coord]:
        for i, f in enumerate(self.factors):
            for w in f.adj[v[i]]:
                yield v[:i] + (w,) + v[i + 1:]

    def materialize(self, cap: int = MATERIALIZE_CAP) -> "ProductSubgraph":
        verts = frozenset(self.vertices(cap))
        return ProductSubgraph(self, verts, induced=True)


def _norm_edge(x: Coord, y: Coord) -> Edge:
    return (x, y) if x <= y else (y, x)


def product_edges_of(space: ProductSpace, vertexset: Iterable[Coord]) -> frozenset[Edge]:
    """All product edges between members of `vertexset`."""
    verts = set()
    for v in vertexset:
        v = tuple(v)
        space.check_vertex(v)
        verts.add(v)
    edges = set()
    for v in verts:
        for w in space.neighbors(v):
            if w in verts:
                edges.add(_norm_edge(v, w))
    return frozenset(edges)


class ProductSubgraph:
    """A subgraph of a product: explicit vertex tuples, explicit edges, and
    an `induced` flag.  Edges are validated to be product edges."""

    __slots__ = ("space", "vertices", "edges", "induced", "_adj")

    def __init__(self, space: ProductSpace, vertices: Iterable[Coord],
                 edges: Optional[Iterable[Edge]] = None, induced: bool = True):
        self.space = space
        verts = frozenset(tuple(v) for v in vertices)
        for v in verts:
            space.check_vertex(v)
        self.vertices = verts
        if induced:
            if edges is not None:
                raise GraphError("induced subgraphs derive their own edge set")
            self.edges = product_edges_of(space, verts)
        else:
            if edges is None:
                raise GraphError("non-induced subgraphs need an explicit edge set")
            norm = set()
            for x, y in edges:
                x, y = tuple(x), tuple(y)
                if x not in verts or y not in verts:
                    raise GraphError(f"edge {x}-{y} leaves the vertex set")
                if not space.is_edge(x, y):
                    raise GraphError(f"{x}-{y} is not a product edge")
                norm.add(_norm_edge(x, y))
            self.edges = frozenset(norm)
        self.induced = induced
        adj: dict[Coord, set[Coord]] = {v: set() for v in verts}
        for x, y in self.edges:
            adj[x].add(y)
            adj[y].add(x)
        self._adj = {v: frozenset(s) for v, s in adj.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, v: Coord) -> frozenset[Coord]:
        return self._adj[v]

    def to_factor_graph(self) -> tuple[FactorGraph, dict[Coord, int]]:
        """Flatten to an integer-vertex graph plus the tuple->index map."""
        idx = {v: i for i, v in enumerate(sorted(self.vertices))}
        edges = [(idx[x], idx[y]) for x, y in self.edges]
        return FactorGraph(len(idx), edges), idx

    def __repr__(self):
        return f"<ProductSubgraph n={self.n} m={self.num_edges} induced={self.induced}>"


def induced_product_subgraph(space: ProductSpace, vertices: Iterable[Coord]) -> ProductSubgraph:
    return ProductSubgraph(space, vertices, induced=True)


# ---------------------------------------------------------------------------
# subproducts

class Subproduct:
    """A product of connected subgraphs of selected factors.

    `chosen` maps a factor index to the (sorted) tuple of factor vertices
    spanning the chosen connected subgraph; the subgraph itself is the
    induced one (density only ever goes up by keeping all induced edges,
    and shattering depends on vertex sets alone).
    """

    __slots__ = ("space", "chosen")

    def __init__(self, space: ProductSpace, chosen: dict[int, Iterable[int]],
                 allow_trivial: bool = False):
        if not chosen:
            raise GraphError("a subproduct selects at least one factor")
        norm: dict[int, tuple[int, ...]] = {}
        for i, vs in chosen.items():
            if not (0 <= i < space.m):
                raise GraphError(f"no factor {i}")
            vs = tuple(sorted(set(vs)))
            if len(vs) < 2 and not allow_trivial:
                raise GraphError(f"factor {i} selection is trivial")
            sub, _ = induced_subgraph(space.factors[i], vs)
            if not is_connected(sub):
                raise GraphError(f"selection {vs} is not connected in factor {i}")
            norm[i] = vs
        self.space = space
        self.chosen = norm

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.chosen))

    def num_vertices(self) -> int:
        total = 1
        for vs in self.chosen.values():
            total *= len(vs)
        return total

    def vertices(self, cap: int = MATERIALIZE_CAP) -> Iterator[Coord]:
        if self.num_vertices() > cap:
            raise GraphError(f"subproduct too large to materialize (> {cap})")
        from itertools import product as iproduct
        return iproduct(*(self.chosen[i] for i in self.indices))

    def materialized(self) -> ProductSubgraph:
        """The subproduct as an induced subgraph of its own small product."""
        factors = []
        remaps = []
        for i in self.indices:
            sub, remap = induced_subgraph(self.space.factors[i], self.chosen[i])
            factors.append(sub)
            remaps.append(remap)
        small = ProductSpace(factors)
        verts = [tuple(remaps[j][c] for j, c in enumerate(v)) for v in self.vertices()]
        return ProductSubgraph(small, verts, induced=True)


def fiber(space: ProductSpace, sub: Subproduct, anchor: Coord) -> Callable[[Coord], bool]:
    """Predicate true exactly on the extensions of `anchor` (a vertex of the
    subproduct, given in the order of the selected factor indices)."""
    indices = sub.indices
    anchor = tuple(anchor)
    if len(anchor) != len(indices):
        raise GraphError("anchor arity does not match the subproduct")
    for j, i in enumerate(indices):
        if anchor[j] not in sub.chosen[i]:
            raise GraphError(f"coordinate {anchor[j]} not in factor {i} selection")

    def predicate(v: Coord) -> bool:
        v = tuple(v)
        return space.is_vertex(v) and all(v[i] == anchor[j] for j, i in enumerate(indices))

    return predicate


def trace(g: ProductSubgraph, sub: Subproduct) -> set[Coord]:
    """Subproduct vertices whose fibers meet V(g)."""
    indices = sub.indices
    domains = [set(sub.chosen[i]) for i in indices]
    out = set()
    for v in g.vertices:
        proj = tuple(v[i] for i in indices)
        if all(c in dom for c, dom in zip(proj, domains)):
            out.add(proj)
    return out


def projection(g: ProductSubgraph, sub: Subproduct) -> tuple[set[Coord], set[tuple[Coord, Coord]]]:
    """The subgraph of the subproduct induced by the trace of V(g):
    (vertex tuples over the selected indices, induced edges)."""
    indices = sub.indices
    verts = trace(g, sub)
    edges = set()
    for x in verts:
        for j, i in enumerate(indices):
            for w in g.space.factors[i].adj[x[j]]:
                if w not in sub.chosen[i]:
                    continue
                y = x[:j] + (w,) + x[j + 1:]
                if y in verts:
                    edges.add((x, y) if x <= y else (y, x))
    return verts, edges


def project_factor(g: ProductSubgraph, i: int) -> tuple[FactorGraph, dict[int, int]]:
    """pi_i(g): the image of g under projection to factor i, compacted.

    Vertices are the coordinate values hit by V(g); edges are the images of
    the factor-i edges of g (an edge changing coordinate i lies over a factor
    edge, so no loops arise).
    """
    hit = sorted({v[i] for v in g.vertices})
    remap = {c: j for j, c in enumerate(hit)}
    edges = set()
    for x, y in g.edges:
        if x[i] != y[i]:
            a, b = remap[x[i]], remap[y[i]]
            edges.add((min(a, b), max(a, b)))
    return FactorGraph(len(hit), edges), remap


# ---------------------------------------------------------------------------
# standard spaces

def hypercube(m: int) -> ProductSpace:
    if m < 1:
        raise GraphError("hypercube dimension must be >= 1")
    return ProductSpace([FactorGraph(2, [(0, 1)], name="K2") for _ in range(m)])


def hamming(sizes: Iterable[int]) -> ProductSpace:
    sizes = list(sizes)
    if not sizes or any(s < 2 for s in sizes):
        raise GraphError("hamming factors need size >= 2")
    return ProductSpace([complete_graph(s) for s in sizes])


def octahedron(d: int) -> FactorGraph:
    """Complete graph on 2d vertices minus the perfect matching of the
    opposite pairs (2i, 2i+1)."""
    if d < 1:
        raise GraphError("octahedron dimension must be >= 1")
    n = 2 * d
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (u ^ 1 == v)]
    return FactorGraph(n, edges, name=f"O{d}")


# ---------------------------------------------------------------------------
# JSON instance interchange format

def instance_to_json(g: ProductSubgraph) -> str:
    order = sorted(g.vertices)
    pos = {v: i for i, v in enumerate(order)}
    doc = {
        "factors": [{"n": f.n, "edges": [list(e) for e in f.edges]} for f in g.space.factors],
        "vertices": [list(v) for v in order],
    }
    if g.induced:
        doc["induced"] = True
    else:
        doc["edges"] = sorted([pos[x], pos[y]] for x, y in g.edges)
    return json.dumps(doc, sort_keys=True)


def instance_from_json(text: str) -> ProductSubgraph:
    doc = json.loads(text)
    try:
        factors = [FactorGraph(f["n"], [tuple(e) for e in f["edges"]]) for f in doc["factors"]]
        space = ProductSpace(factors)
        verts = [tuple(v) for v in doc["vertices"]]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed instance: {exc}")
    if doc.get("induced"):
        return ProductSubgraph(space, verts, induced=True)
    if "edges" not in doc:
        raise GraphError("instance needs either induced:true or an edge list")
    edges = [(verts[i], verts[j]) for i, j in doc["edges"]]
    return ProductSubgraph(space, verts, edges=edges, induced=False)
