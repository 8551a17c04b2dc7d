"""Dinic max-flow with integer capacities.

All capacities are exact integers (callers scale rationals beforehand), so
min-cut comparisons are exact.
"""

from __future__ import annotations

from collections import deque

INF = float("inf")


class MaxFlow:
    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        # arcs stored flat: to[i], cap[i]; arc i^1 is the reverse arc
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, capacity) -> int:
        idx = len(self.to)
        self.to.append(v)
        self.cap.append(capacity)
        self.head[u].append(idx)
        self.to.append(u)
        self.cap.append(0)
        self.head[v].append(idx + 1)
        return idx

    def _bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for i in self.head[v]:
                if self.cap[i] > 0 and self.level[self.to[i]] < 0:
                    self.level[self.to[i]] = self.level[v] + 1
                    queue.append(self.to[i])
        return self.level[t] >= 0

    def _dfs(self, v: int, t: int, pushed):
        if v == t:
            return pushed
        while self.it[v] < len(self.head[v]):
            i = self.head[v][self.it[v]]
            w = self.to[i]
            if self.cap[i] > 0 and self.level[w] == self.level[v] + 1:
                got = self._dfs(w, t, min(pushed, self.cap[i]))
                if got:
                    self.cap[i] -= got
                    self.cap[i ^ 1] += got
                    return got
            self.it[v] += 1
        return 0

    def max_flow(self, s: int, t: int):
        flow = 0
        while self._bfs(s, t):
            self.it = [0] * self.n
            while True:
                pushed = self._dfs(s, t, INF)
                if not pushed:
                    break
                flow += pushed
        return flow

    def min_cut_source_side(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual graph (call after max_flow)."""
        seen = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for i in self.head[v]:
                w = self.to[i]
                if self.cap[i] > 0 and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen
