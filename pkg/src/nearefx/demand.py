"""Valuable-good classification, group champion graph, and cycle translation."""

from __future__ import annotations

from dataclasses import dataclass

from .champion import most_envious_agent
from .envy import SourceAssignment
from .errors import InternalInvariantError, PreconditionError
from .model import Instance, PartialAllocation
from .rainbow import KPartiteDigraph, RainbowCycle, verify_rainbow_cycle
from .rules import U3CycleInput


@dataclass(frozen=True)
class DemandClassification:
    """Pool goods split by how many agents find them valuable.

    A good is valuable to agent i iff v_i(g) > eps * v_i(X_i); high-demand
    goods are valuable to at least d+1 agents, low-demand to at most d.
    """

    d: int
    high_demand: frozenset
    low_demand: frozenset
    valuable_to: dict  # good -> frozenset of agents (Q_g)


@dataclass(frozen=True)
class GroupChampionGraph:
    """k-partite digraph: one part per low-demand good, vertices (good, source).

    Edge ((g, s(a)) -> (h, s(b))) iff the determinized champion of
    X_{s(b)} union {g} is an agent a with assigned source s(a).
    """

    parts: dict  # good -> tuple of source agents, ascending
    edges: frozenset  # of ((g, sa), (h, sb)) vertex pairs

    @property
    def part_goods(self) -> tuple:
        return tuple(sorted(self.parts))

    def to_kpartite(self) -> KPartiteDigraph:
        goods = self.part_goods
        part_of = {g: idx for idx, g in enumerate(goods)}
        vid = {
            (g, s): x for g in goods for x, s in enumerate(self.parts[g])
        }
        edges = frozenset(
            (part_of[g], vid[(g, sa)], part_of[h], vid[(h, sb)])
            for (g, sa), (h, sb) in self.edges
        )
        return KPartiteDigraph(
            tuple(len(self.parts[g]) for g in goods), edges
        )

    def vertex_label(self, part: int, vertex: int) -> tuple:
        g = self.part_goods[part]
        return (g, self.parts[g][vertex])


def classify_demand(instance: Instance, alloc: PartialAllocation, d: int) -> DemandClassification:
    """Partition the pool into high-/low-demand goods for threshold d."""
    alloc.validate_for(instance)
    p, q = instance.eps_fraction
    rows = instance.scaled_values
    own = [
        sum(rows[i][g] for g in alloc.bundles[i])
        for i in range(instance.num_agents)
    ]
    valuable_to = {}
    high, low = set(), set()
    for g in alloc.pool:
        agents = frozenset(
            i for i in range(instance.num_agents) if q * rows[i][g] > p * own[i]
        )
        valuable_to[g] = agents
        (high if len(agents) >= d + 1 else low).add(g)
    return DemandClassification(d, frozenset(high), frozenset(low), valuable_to)


def check_high_demand_bound(classification: DemandClassification, instance: Instance) -> bool:
    """|H_X| < 2n / (eps * d), by exact integer comparison."""
    p, q = instance.eps_fraction
    return len(classification.high_demand) * p * classification.d < 2 * instance.num_agents * q


def build_group_champion_graph(
    instance: Instance,
    alloc: PartialAllocation,
    classification: DemandClassification,
    sources: SourceAssignment,
) -> GroupChampionGraph:
    """One part per low-demand good; one incoming edge per (vertex, part) pair.

    For every target vertex (h, s(b)) and every other part's good g, the
    determinized champion of X_{s(b)} union {g} supplies the edge.  Failure
    to find a champion, or a champion that does not find g valuable, means
    the caller's precondition (no applicable simpler rule) was broken.
    """
    parts = {}
    for g in sorted(classification.low_demand):
        agents = classification.valuable_to[g]
        if not agents:
            raise InternalInvariantError(
                f"low-demand good {g} is valuable to no agent; part would be empty"
            )
        parts[g] = tuple(sorted({sources.source_of[a] for a in agents}))

    edges = set()
    goods = sorted(parts)
    for h in goods:
        for sb in parts[h]:
            target = alloc.bundles[sb]
            for g in goods:
                if g == h:
                    continue
                try:
                    w = most_envious_agent(instance, alloc, target | {g})
                except PreconditionError as exc:
                    raise InternalInvariantError(
                        f"no champion for good {g} toward vertex ({h}, {sb})"
                    ) from exc
                a = w.champion
                if a not in classification.valuable_to[g]:
                    raise InternalInvariantError(
                        f"champion {a} of good {g} toward vertex ({h}, {sb}) "
                        f"does not find {g} valuable"
                    )
                edges.add(((g, sources.source_of[a]), (h, sb)))
    return GroupChampionGraph(parts, frozenset(edges))


def rainbow_cycle_to_u3(
    instance: Instance,
    alloc: PartialAllocation,
    gcg: GroupChampionGraph,
    cycle: RainbowCycle,
    sources: SourceAssignment,
) -> U3CycleInput:
    """Extract a distinct-source window of the cycle and build the U3 input.

    The cycle vertex (g, s) carries good g and source s; the edge into the
    next vertex (h, s') certifies a champion t of X_{s'} union {g} assigned
    to s.  A contiguous cyclic window whose sources are distinct and whose
    follow-up source repeats the window's first source always exists; the
    scan starts at the lexicographically smallest vertex.
    """
    if not verify_rainbow_cycle(gcg.to_kpartite(), cycle):
        raise PreconditionError("not a valid rainbow cycle of the group champion graph")
    labels = [gcg.vertex_label(p, x) for p, x in cycle.vertices]
    n_verts = len(labels)
    start = labels.index(min(labels))
    labels = labels[start:] + labels[:start]

    srcs = [s for _, s in labels]
    # Maximal distinct-source run from position 0; the breaking source
    # duplicates srcs[c] for some c in the run, giving the window [c..e].
    seen = {}
    e = 0
    for pos in range(n_verts + 1):
        s = srcs[pos % n_verts]
        if s in seen:
            c, e = seen[s], pos - 1
            break
        seen[s] = pos
    else:  # pragma: no cover - a finite cycle always repeats a source
        raise InternalInvariantError("no repeated source around the cycle")

    window = [labels[(c + r) % n_verts] for r in range(e - c + 1)]
    ell = len(window)
    out_sources = tuple(s for _, s in window)
    out_goods = [None] * ell
    champions = [None] * ell
    for r in range(ell):
        good_r = window[r][0]
        out_goods[(r + 1) % ell] = good_r
        succ_src = srcs[(c + r + 1) % n_verts]
        w = most_envious_agent(
            instance, alloc, alloc.bundles[succ_src] | {good_r}
        )
        if sources.source_of[w.champion] != window[r][1]:
            raise PreconditionError(
                f"cycle edge at ({good_r}, {window[r][1]}) not certified by champion"
            )
        champions[r] = w.champion
    return U3CycleInput(out_sources, tuple(out_goods), tuple(champions))
