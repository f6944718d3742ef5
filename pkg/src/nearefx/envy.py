"""Envy graph, envy-cycle elimination, and deterministic source assignment."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError
from .model import Instance, PartialAllocation, scaled_bundle_value


@dataclass(frozen=True)
class EnvyGraph:
    """Digraph on agents with an edge i -> j iff i strictly envies j."""

    num_agents: int
    edges: tuple  # adjacency: edges[i] is a frozenset of out-neighbours

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.edges[i]

    def sources(self) -> list:
        """Agents with in-degree zero, ascending."""
        envied = set()
        for out in self.edges:
            envied |= out
        return [a for a in range(self.num_agents) if a not in envied]

    def find_cycle(self):
        """First cycle found by DFS from the lowest vertex, or None.

        Deterministic: vertices and neighbours are scanned in index order.
        Returns the cycle as a vertex list without repeating the start.
        """
        color = [0] * self.num_agents  # 0 unvisited, 1 on stack, 2 done
        for root in range(self.num_agents):
            if color[root]:
                continue
            stack = [(root, iter(sorted(self.edges[root])))]
            color[root] = 1
            path = [root]
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if color[nxt] == 1:
                        return path[path.index(nxt):]
                    if color[nxt] == 0:
                        color[nxt] = 1
                        path.append(nxt)
                        stack.append((nxt, iter(sorted(self.edges[nxt]))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    path.pop()
                    stack.pop()
        return None

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def reachable_from(self, start: int) -> set:
        seen = {start}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in sorted(self.edges[node]):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    def shortest_path(self, start: int, goal: int):
        """BFS path from start to goal with ascending tie-breaks, or None."""
        if start == goal:
            return [start]
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in sorted(self.edges[node]):
                if nxt in parent:
                    continue
                parent[nxt] = node
                if nxt == goal:
                    path = [goal]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                queue.append(nxt)
        return None


@dataclass(frozen=True)
class SourceAssignment:
    """For each agent, a source of the (acyclic) envy graph that reaches it."""

    source_of: tuple


def build_envy_graph(instance: Instance, alloc: PartialAllocation) -> EnvyGraph:
    """Edge i -> j iff v_i(X_i) < v_i(X_j); ties are non-edges."""
    alloc.validate_for(instance)
    n = instance.num_agents
    vals = [
        [scaled_bundle_value(instance, i, alloc.bundles[j]) for j in range(n)]
        for i in range(n)
    ]
    edges = tuple(
        frozenset(j for j in range(n) if j != i and vals[i][i] < vals[i][j])
        for i in range(n)
    )
    return EnvyGraph(n, edges)


def eliminate_envy_cycles(instance: Instance, alloc: PartialAllocation) -> PartialAllocation:
    """Rotate bundles backwards along envy cycles until the graph is acyclic.

    Along a cycle every agent receives the bundle of the agent it envies, so
    no value decreases and each rotation strictly reduces the edge count.
    """
    current = alloc
    while True:
        graph = build_envy_graph(instance, current)
        cycle = graph.find_cycle()
        if cycle is None:
            return current
        bundles = list(current.bundles)
        for pos, agent in enumerate(cycle):
            successor = cycle[(pos + 1) % len(cycle)]
            bundles[agent] = current.bundles[successor]
        current = PartialAllocation(tuple(bundles), current.pool)


def assign_sources(graph: EnvyGraph) -> SourceAssignment:
    """Map every agent to the lowest-indexed source that reaches it."""
    if not graph.is_acyclic():
        raise PreconditionError("source assignment requires an acyclic envy graph")
    source_of = [None] * graph.num_agents
    for src in graph.sources():
        for agent in graph.reachable_from(src):
            if source_of[agent] is None:
                source_of[agent] = src
    return SourceAssignment(tuple(source_of))
