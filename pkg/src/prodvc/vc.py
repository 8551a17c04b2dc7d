"""Shattering tests and the four VC quantities of subgraphs of Cartesian
products: the induced pair (over subproducts) and the minor pair (over
factorwise connected partitions).

All four are computed exactly at desk scale by exhaustive enumeration with
canonical deduplication; the minor pair falls back to a budgeted randomized
search (flagged inexact) beyond the factor-size/arity caps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as iproduct
from typing import Iterable, Optional

from .density import densest_subgraph_bruteforce
from .graph import FactorGraph, GraphError, induced_subgraph, is_connected
from .products import ProductSpace, ProductSubgraph, Subproduct, trace

F_CAP = 8      # largest factor size for exhaustive minor enumeration
M_CAP = 6      # largest factor count for exhaustive minor enumeration
DEFAULT_BUDGET = 2000

Partition = tuple[frozenset, ...]


def _require_induced(g: ProductSubgraph) -> None:
    if not g.induced:
        raise GraphError("VC operations require an induced subgraph")


# ---------------------------------------------------------------------------
# connected subsets and connected partitions of a small factor

def _connected_subsets_with_seed(g: FactorGraph, allowed: frozenset, seed: int) -> list[frozenset]:
    """All subsets of `allowed` containing `seed` that induce a connected
    subgraph (bitmask enumeration; factors are desk-scale)."""
    others = sorted(allowed - {seed})
    out = []
    for mask in range(1 << len(others)):
        subset = {seed}
        for j, v in enumerate(others):
            if mask >> j & 1:
                subset.add(v)
        sub, _ = induced_subgraph(g, subset)
        if is_connected(sub):
            out.append(frozenset(subset))
    return out


@lru_cache(maxsize=None)
def connected_partitions(g: FactorGraph) -> tuple[Partition, ...]:
    """Every partition of V(g) into connected parts, each generated once:
    the smallest unassigned vertex always seeds the next part."""

    def rec(remaining: frozenset) -> list[Partition]:
        if not remaining:
            return [()]
        seed = min(remaining)
        result = []
        for part in _connected_subsets_with_seed(g, remaining, seed):
            for rest in rec(remaining - part):
                result.append((part,) + rest)
        return result

    return tuple(rec(frozenset(range(g.n))))


def quotient_graph(g: FactorGraph, parts: Partition) -> FactorGraph:
    """Contract each part to a single vertex; parts are indexed by their
    position in `parts`."""
    part_of = {}
    for i, part in enumerate(parts):
        for v in part:
            part_of[v] = i
    edges = set()
    for u, v in g.edges:
        a, b = part_of[u], part_of[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return FactorGraph(len(parts), edges)


@lru_cache(maxsize=None)
def _partition_density(g: FactorGraph, parts: Partition) -> Fraction:
    return densest_subgraph_bruteforce(quotient_graph(g, parts)).density


# ---------------------------------------------------------------------------
# minor partitions

class MinorPartition:
    """Per-factor partitions into connected parts, defining a minor of each
    factor and hence a minor-subproduct."""

    __slots__ = ("space", "parts")

    def __init__(self, space: ProductSpace, parts: Iterable[Iterable[Iterable[int]]]):
        parts = tuple(tuple(frozenset(p) for p in factor_parts) for factor_parts in parts)
        if len(parts) != space.m:
            raise GraphError("one partition per factor required")
        for i, factor_parts in enumerate(parts):
            f = space.factors[i]
            seen: set[int] = set()
            for p in factor_parts:
                if not p or (seen & p):
                    raise GraphError(f"factor {i}: parts must be nonempty and disjoint")
                seen |= p
                sub, _ = induced_subgraph(f, p)
                if not is_connected(sub):
                    raise GraphError(f"factor {i}: part {sorted(p)} is not connected")
            if seen != set(range(f.n)):
                raise GraphError(f"factor {i}: parts must cover all vertices")
        self.space = space
        self.parts = parts

    def cell_of(self, v: tuple[int, ...]) -> tuple[int, ...]:
        cell = []
        for i, c in enumerate(v):
            for j, p in enumerate(self.parts[i]):
                if c in p:
                    cell.append(j)
                    break
        return tuple(cell)

    def num_cells(self) -> int:
        total = 1
        for factor_parts in self.parts:
            total *= len(factor_parts)
        return total

    def nontrivial_factors(self) -> int:
        return sum(1 for factor_parts in self.parts if len(factor_parts) >= 2)

    def minors(self) -> list[FactorGraph]:
        return [quotient_graph(f, p) for f, p in zip(self.space.factors, self.parts)]

    def minor_density(self) -> Fraction:
        return sum((_partition_density(f, p) for f, p in zip(self.space.factors, self.parts)),
                   Fraction(0))


# ---------------------------------------------------------------------------
# shattering

def shatters_subproduct(g: ProductSubgraph, sub: Subproduct, cap: int = 10 ** 6) -> bool:
    """True iff every vertex of the subproduct has a fiber meeting V(g)
    (equivalently, the projection is the whole subproduct)."""
    _require_induced(g)
    if sub.num_vertices() > cap:
        raise GraphError(f"subproduct too large to materialize (> {cap})")
    tr = trace(g, sub)
    full = set(sub.vertices())
    if tr != full:
        return False
    # cross-check: with a full trace the projection's edges are exactly the
    # subproduct's own edges
    from .products import projection
    _, proj_edges = projection(g, sub)
    sp = sub.materialized()
    assert len(proj_edges) == sp.num_edges
    return True


def shatters_minor(g: ProductSubgraph, mp: MinorPartition) -> bool:
    """True iff every cell of the product partition contains a vertex of g."""
    _require_induced(g)
    needed = mp.num_cells()
    if needed > g.n:
        return False
    hit = {mp.cell_of(v) for v in g.vertices}
    return len(hit) == needed


# ---------------------------------------------------------------------------
# induced VC-dimension and VC-density

def _coordinate_values(g: ProductSubgraph, i: int) -> set[int]:
    return {v[i] for v in g.vertices}


def _projection_set(g: ProductSubgraph, indices: tuple[int, ...]) -> set[tuple[int, ...]]:
    return {tuple(v[i] for i in indices) for v in g.vertices}


def vcd_induced(g: ProductSubgraph) -> tuple[int, Optional[dict[int, tuple[int, int]]]]:
    """Largest dimension of a shattered cube-subproduct, with the witness
    as factor -> edge.  Exact (exhaustive over candidate edges)."""
    _require_induced(g)
    if g.n == 0:
        return 0, None
    candidates: dict[int, list[tuple[int, int]]] = {}
    for i, f in enumerate(g.space.factors):
        vals = _coordinate_values(g, i)
        edges = [e for e in f.edges if e[0] in vals and e[1] in vals]
        if edges:
            candidates[i] = edges
    kmax = min(len(candidates), g.n.bit_length() - 1)
    for k in range(kmax, 0, -1):
        for idxs in combinations(sorted(candidates), k):
            proj = _projection_set(g, idxs)
            for choice in iproduct(*(candidates[i] for i in idxs)):
                if all(combo in proj for combo in iproduct(*choice)):
                    return k, dict(zip(idxs, choice))
    return 0, None


def vcdens_induced(g: ProductSubgraph) -> tuple[Fraction, Optional[dict[int, tuple[int, ...]]]]:
    """Largest density of a shattered subproduct (sum of factorwise densities
    of the chosen induced subgraphs).  Exact at desk scale."""
    _require_induced(g)
    if g.n == 0:
        return Fraction(0), None
    per_factor: list[list[tuple[frozenset, Fraction]]] = []
    for i, f in enumerate(g.space.factors):
        vals = frozenset(_coordinate_values(g, i))
        options: list[tuple[frozenset, Fraction]] = []
        if len(vals) >= 2:
            for seed in sorted(vals):
                for s in _connected_subsets_with_seed(f, vals, seed):
                    if len(s) >= 2 and min(s) == seed and len(s) <= g.n:
                        sub, _ = induced_subgraph(f, s)
                        options.append((s, densest_subgraph_bruteforce(sub).density))
        per_factor.append(options)

    best = Fraction(0)
    best_witness: Optional[dict[int, tuple[int, ...]]] = None
    m = g.space.m

    def rec(i: int, chosen: dict[int, frozenset], cells: int, score: Fraction):
        nonlocal best, best_witness
        if cells > g.n:
            return
        if i == m:
            if chosen and score > best:
                idxs = tuple(sorted(chosen))
                proj = _projection_set(g, idxs)
                if all(combo in proj
                       for combo in iproduct(*(sorted(chosen[j]) for j in idxs))):
                    best = score
                    best_witness = {j: tuple(sorted(chosen[j])) for j in idxs}
            return
        rec(i + 1, chosen, cells, score)
        for s, d in per_factor[i]:
            if cells * len(s) <= g.n:
                chosen[i] = s
                rec(i + 1, chosen, cells * len(s), score + d)
                del chosen[i]

    rec(0, {}, 1, Fraction(0))
    return best, best_witness


# ---------------------------------------------------------------------------
# minor VC-dimension and VC-density

def _exhaustive_minor_feasible(g: ProductSubgraph, f_cap: int = F_CAP, m_cap: int = M_CAP) -> bool:
    return g.space.m <= m_cap and all(f.n <= f_cap for f in g.space.factors)


def _minor_scan(g: ProductSubgraph):
    """Exhaustive scan over all factorwise connected partitions; yields
    (parts combo, nontrivial count, density) for every shattered one.

    Shattering marginalizes: if the full cell product is covered, so is
    every prefix of factors, so the recursion prunes any prefix whose cell
    signatures do not already cover all prefix cells.
    """
    n = g.n
    verts = sorted(g.vertices)
    part_data = []
    for f in g.space.factors:
        data = []
        for parts in connected_partitions(f):
            part_of = [0] * f.n
            for j, p in enumerate(parts):
                for v in p:
                    part_of[v] = j
            data.append((parts, part_of, len(parts)))
        part_data.append(data)

    m = g.space.m
    combo: list = [None] * m

    def rec(i: int, sigs: list[int], cells: int):
        if i == m:
            parts = tuple(c[0] for c in combo)
            nontrivial = sum(1 for c in combo if c[2] >= 2)
            density = sum((_partition_density(f, p)
                           for f, p in zip(g.space.factors, parts)), Fraction(0))
            yield parts, nontrivial, density
            return
        for entry in part_data[i]:
            _, part_of, t = entry
            new_cells = cells * t
            if new_cells > n:
                continue
            new_sigs = [s * t + part_of[v[i]] for s, v in zip(sigs, verts)]
            if len(set(new_sigs)) != new_cells:
                continue
            combo[i] = entry
            yield from rec(i + 1, new_sigs, new_cells)

    yield from rec(0, [0] * n, 1)


def _seed_partition_from_edges(g: ProductSubgraph,
                               witness: Optional[dict[int, tuple[int, ...]]]) -> MinorPartition:
    """Grow a full connected partition around an induced witness by
    multi-source BFS, one part per witness vertex; unselected factors get a
    single part."""
    from collections import deque
    parts = []
    for i, f in enumerate(g.space.factors):
        seeds = sorted(witness.get(i, ())) if witness else []
        if len(seeds) < 2:
            parts.append([frozenset(range(f.n))])
            continue
        owner = {s: j for j, s in enumerate(seeds)}
        queue = deque(seeds)
        while queue:
            v = queue.popleft()
            for w in f.adj[v]:
                if w not in owner:
                    owner[w] = owner[v]
                    queue.append(w)
        groups = [set() for _ in seeds]
        for v, j in owner.items():
            groups[j].add(v)
        parts.append([frozenset(p) for p in groups])
    return MinorPartition(g.space, parts)


def _random_partition(f: FactorGraph, rng: random.Random) -> list[frozenset]:
    from collections import deque
    t = rng.randint(1, f.n)
    seeds = rng.sample(range(f.n), t)
    owner = {s: j for j, s in enumerate(seeds)}
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for w in f.adj[v]:
            if w not in owner:
                owner[w] = owner[v]
                queue.append(w)
    groups = [set() for _ in seeds]
    for v, j in owner.items():
        groups[j].add(v)
    return [frozenset(p) for p in groups]


def vcd_minor(g: ProductSubgraph, budget: int = DEFAULT_BUDGET,
              f_cap: int = F_CAP, m_cap: int = M_CAP, seed: int = 0,
              ) -> tuple[int, bool, Optional[MinorPartition]]:
    """(vcd*, exact?, witness).  Exhaustive within the caps, otherwise the
    best shattered partition found within `budget` evaluations (a certified
    lower bound, never below the induced dimension)."""
    _require_induced(g)
    if g.n == 0:
        return 0, True, None
    if _exhaustive_minor_feasible(g, f_cap, m_cap):
        best, witness = 0, None
        for parts, nontrivial, _ in _minor_scan(g):
            if nontrivial > best:
                best, witness = nontrivial, MinorPartition(g.space, parts)
        return best, True, witness

    base, edge_witness = vcd_induced(g)
    best_mp = _seed_partition_from_edges(g, edge_witness)
    best = best_mp.nontrivial_factors() if shatters_minor(g, best_mp) else 0
    rng = random.Random(seed)
    for _ in range(budget):
        mp = MinorPartition(g.space, [_random_partition(f, rng) for f in g.space.factors])
        if mp.num_cells() <= g.n and shatters_minor(g, mp):
            if mp.nontrivial_factors() > best:
                best, best_mp = mp.nontrivial_factors(), mp
    return max(best, base), False, best_mp


def vcdens_minor(g: ProductSubgraph, budget: int = DEFAULT_BUDGET,
                 f_cap: int = F_CAP, m_cap: int = M_CAP, seed: int = 0,
                 ) -> tuple[Fraction, bool, Optional[MinorPartition]]:
    """(vcdens*, exact?, witness); same exhaustive/heuristic split as
    vcd_minor."""
    _require_induced(g)
    if g.n == 0:
        return Fraction(0), True, None
    if _exhaustive_minor_feasible(g, f_cap, m_cap):
        best, witness = Fraction(0), None
        for parts, _, density in _minor_scan(g):
            if density > best:
                best, witness = density, MinorPartition(g.space, parts)
        return best, True, witness

    base, set_witness = vcdens_induced(g)
    best_mp = _seed_partition_from_edges(g, set_witness)
    best = best_mp.minor_density() if shatters_minor(g, best_mp) else Fraction(0)
    rng = random.Random(seed)
    for _ in range(budget):
        mp = MinorPartition(g.space, [_random_partition(f, rng) for f in g.space.factors])
        if mp.num_cells() <= g.n and shatters_minor(g, mp):
            d = mp.minor_density()
            if d > best:
                best, best_mp = d, mp
    return max(best, base), False, best_mp


# ---------------------------------------------------------------------------
# combined report

@dataclass
class VcReport:
    vcd: int
    vcdens: Fraction
    vcd_star: int
    vcdens_star: Fraction
    vcd_star_exact: bool
    vcdens_star_exact: bool
    vcd_witness: Optional[dict] = None
    vcdens_witness: Optional[dict] = None
    vcd_star_witness: Optional[MinorPartition] = field(default=None, repr=False)
    vcdens_star_witness: Optional[MinorPartition] = field(default=None, repr=False)


def compute_vc_report(g: ProductSubgraph, budget: int = DEFAULT_BUDGET,
                      f_cap: int = F_CAP, m_cap: int = M_CAP) -> VcReport:
    vcd, w1 = vcd_induced(g)
    vcdens, w2 = vcdens_induced(g)
    vcd_star, e1, w3 = vcd_minor(g, budget=budget, f_cap=f_cap, m_cap=m_cap)
    vcdens_star, e2, w4 = vcdens_minor(g, budget=budget, f_cap=f_cap, m_cap=m_cap)
    return VcReport(vcd=vcd, vcdens=vcdens, vcd_star=vcd_star, vcdens_star=vcdens_star,
                    vcd_star_exact=e1, vcdens_star_exact=e2,
                    vcd_witness=w1, vcdens_witness=w2,
                    vcd_star_witness=w3, vcdens_star_witness=w4)


# ---------------------------------------------------------------------------
# independent set-system oracle for hypercube subgraphs

def vcd_set_system(g: ProductSubgraph) -> int:
    """Classical VC-dimension of the set family encoded by a hypercube
    subgraph: enumerate coordinate subsets and check all traces occur."""
    _require_induced(g)
    if any(f.n != 2 or f.m != 1 for f in g.space.factors):
        raise GraphError("set-system oracle applies to hypercube subgraphs only")
    m = g.space.m
    if m > 16 or g.n > 64:
        raise GraphError("set-system oracle capped at m <= 16, |V| <= 64")
    masks = {sum(1 << i for i, c in enumerate(v) if c) for v in g.vertices}
    best = 0
    cap = min(m, g.n.bit_length() - 1)
    for size in range(cap, 0, -1):
        for coords in combinations(range(m), size):
            ymask = sum(1 << i for i in coords)
            traces = {s & ymask for s in masks}
            if len(traces) == 1 << size:
                return size
    return best
