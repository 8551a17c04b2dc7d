"""Adjacency labels from forest decompositions.

A graph whose edges split into k forests gets labels of (k+1) fields of
w = ceil(log2(n+1)) bits each: the vertex id followed by its parent id in
each forest (the value n marks a root).  Two labels decide adjacency alone:
the vertices are adjacent exactly when one's id appears among the other's
parent fields.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .density import ForestDecomposition, forest_decomposition
from .graph import FactorGraph, GraphError, degeneracy_ordering


def field_width(n: int) -> int:
    """Bits per field: ids 0..n-1 plus the root sentinel n."""
    return max(1, math.ceil(math.log2(n + 1)))


@dataclass(frozen=True)
class LabelScheme:
    n: int
    k: int
    w: int
    labels: tuple[int, ...]  # labels[v] is the packed (k+1)-field value

    @property
    def bits_per_label(self) -> int:
        return (self.k + 1) * self.w


def _forest_parents(g: FactorGraph, edges: list[tuple[int, int]]) -> list[int]:
    """BFS parents in the forest spanned by `edges`, each tree rooted at its
    smallest vertex; the sentinel n marks roots and isolated vertices."""
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = [g.n] * g.n
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root] or not adj[root]:
            seen[root] = True
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    queue.append(w)
    return parent


def encode(g: FactorGraph, fd: ForestDecomposition | None = None) -> LabelScheme:
    """Labels for g from a forest decomposition (by default the degeneracy
    one, which never needs more than ceil(mad) forests)."""
    if g.n == 0:
        raise GraphError("empty graph")
    if fd is None:
        _, degeneracy = degeneracy_ordering(g)
        fd = forest_decomposition(g, max(degeneracy, 0))
    w = field_width(g.n)
    parents = [_forest_parents(g, fd.forest_edges(j)) for j in range(fd.k)]
    labels = []
    for v in range(g.n):
        value = v
        for j in range(fd.k):
            value = (value << w) | parents[j][v]
        labels.append(value)
    return LabelScheme(n=g.n, k=fd.k, w=w, labels=tuple(labels))


def _fields(label: int, k: int, w: int) -> list[int]:
    out = []
    for t in range(k + 1):
        shift = (k - t) * w
        out.append((label >> shift) & ((1 << w) - 1))
    return out


def decode(label_x: int, label_y: int, k: int, w: int) -> bool:
    """Adjacency from two labels alone: true iff one id is a parent field of
    the other.  Root sentinels never collide with an id, since every id is
    below the sentinel value."""
    if label_x < 0 or label_y < 0:
        raise GraphError("labels are nonnegative integers")
    if max(label_x, label_y).bit_length() > (k + 1) * w:
        raise GraphError("label too long for the declared field layout")
    fx = _fields(label_x, k, w)
    fy = _fields(label_y, k, w)
    if fx[0] == fy[0]:
        return False
    return fy[0] in fx[1:] or fx[0] in fy[1:]


# ---------------------------------------------------------------------------
# label file format: "n k w" header, then one "vertex_id hexstring" per line

def to_label_file(scheme: LabelScheme) -> str:
    bits = scheme.bits_per_label
    hexlen = -(-bits // 4)
    pad = 4 * hexlen - bits
    lines = [f"{scheme.n} {scheme.k} {scheme.w}"]
    for v, label in enumerate(scheme.labels):
        lines.append(f"{v} {label << pad:0{hexlen}x}")
    return "\n".join(lines) + "\n"


def from_label_file(text: str) -> LabelScheme:
    rows = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows:
        raise GraphError("empty label file")
    try:
        n, k, w = map(int, rows[0].split())
    except ValueError:
        raise GraphError("malformed label file header")
    if len(rows) - 1 != n:
        raise GraphError(f"header says {n} labels, found {len(rows) - 1}")
    bits = (k + 1) * w
    hexlen = -(-bits // 4)
    pad = 4 * hexlen - bits
    labels = [0] * n
    seen = set()
    for row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise GraphError(f"malformed label line: {row!r}")
        v = int(parts[0])
        if not (0 <= v < n) or v in seen:
            raise GraphError(f"bad or repeated vertex id {v}")
        if len(parts[1]) != hexlen:
            raise GraphError(f"label for {v} has {len(parts[1])} hex digits, want {hexlen}")
        seen.add(v)
        labels[v] = int(parts[1], 16) >> pad
    return LabelScheme(n=n, k=k, w=w, labels=tuple(labels))


def decoded_graph(scheme: LabelScheme) -> FactorGraph:
    """The graph the labels describe, reconstructed pairwise."""
    edges = [(u, v) for u in range(scheme.n) for v in range(u + 1, scheme.n)
             if decode(scheme.labels[u], scheme.labels[v], scheme.k, scheme.w)]
    return FactorGraph(scheme.n, edges)
