"""Dinic max-flow on integer capacities.

Small and exact: capacities are Python ints, so there is no rounding anywhere.
"""
from __future__ import annotations

from collections import deque


class MaxFlow:
    def __init__(self, num_nodes: int):
        self.n = num_nodes
        self.adj = [[] for _ in range(num_nodes)]
        # arc arrays; arc k and k^1 are a residual pair
        self.to, self.cap, self.orig = [], [], []

    def add_edge(self, u: int, v: int, cap: int) -> int:
        if cap < 0:
            raise ValueError("negative capacity")
        k = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.orig += [cap, 0]
        self.adj[u].append(k)
        self.adj[v].append(k + 1)
        return k

    def flow_on(self, k: int) -> int:
        return self.orig[k] - self.cap[k]

    def _bfs(self, s, t):
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for k in self.adj[u]:
                v = self.to[k]
                if self.cap[k] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _augment(self, s, t, level, it):
        # iterative DFS for one augmenting path in the level graph
        path = []
        u = s
        while True:
            if u == t:
                f = min(self.cap[k] for k in path)
                for k in path:
                    self.cap[k] -= f
                    self.cap[k ^ 1] += f
                return f
            advanced = False
            while it[u] < len(self.adj[u]):
                k = self.adj[u][it[u]]
                v = self.to[k]
                if self.cap[k] > 0 and level[v] == level[u] + 1:
                    path.append(k)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if u == s:
                    return 0
                level[u] = -1  # dead end
                k = path.pop()
                u = self.to[k ^ 1]
                it[u] += 1

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._bfs(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                f = self._augment(s, t, level, it)
                if f == 0:
                    break
                total += f

    def reachable(self, s: int) -> set:
        """Source side of a minimum cut (call after :meth:`max_flow`)."""
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for k in self.adj[u]:
                v = self.to[k]
                if self.cap[k] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen
