"""The three allocation-improving update rules U1, U2, U3."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .champion import most_envious_agent, strong_envy
from .envy import build_envy_graph
from .errors import PreconditionError
from .model import Instance, PartialAllocation


@dataclass(frozen=True)
class U3CycleInput:
    """A champion cycle: t_i is the champion of X_{s_{i+1}} union {g_{i+1}}.

    Indices wrap modulo the cycle length; sources, goods, and champions are
    each pairwise distinct, and t_i is reachable from s_i in the envy graph.
    """

    sources: tuple
    goods: tuple
    champions: tuple


@dataclass(frozen=True)
class StepOutcome:
    applied: bool
    allocation: PartialAllocation
    rule_tag: str
    improving_agent: Optional[int] = None


def try_u1(instance: Instance, alloc: PartialAllocation) -> StepOutcome:
    """Move a pool good to a source nobody would strongly envy afterwards.

    Scans (source, pool good) pairs in (agent-index, good-index) order and
    applies the first pair where no agent strongly envies X_s union {g}.
    Only sources of the envy graph are eligible targets.
    """
    graph = build_envy_graph(instance, alloc)
    pool = sorted(alloc.pool)
    for s in graph.sources():
        bundle = alloc.bundles[s]
        for g in pool:
            candidate = bundle | {g}
            if any(
                strong_envy(instance, alloc, i, candidate)
                for i in range(instance.num_agents)
            ):
                continue
            new_alloc = alloc.replace_bundle(s, candidate, alloc.pool - {g})
            return StepOutcome(True, new_alloc, "U1", s)
    return StepOutcome(False, alloc, "U1")


def try_u2(instance: Instance, alloc: PartialAllocation) -> StepOutcome:
    """Give a heavily envied pool a champion's witness; recycle the rest.

    If some agent heavily envies the pool P, compute the champion-witness
    pair (t, Z) for P; t receives Z and the new pool is X_t union (P - Z).
    """
    try:
        witness = most_envious_agent(instance, alloc, alloc.pool)
    except PreconditionError:
        return StepOutcome(False, alloc, "U2")
    t = witness.champion
    new_pool = alloc.bundles[t] | (alloc.pool - witness.witness_set)
    new_alloc = alloc.replace_bundle(t, witness.witness_set, new_pool)
    return StepOutcome(True, new_alloc, "U2", t)


def try_u3(instance: Instance, alloc: PartialAllocation, cycle: U3CycleInput) -> StepOutcome:
    """Resolve a champion cycle: shift bundles along envy paths.

    For each i, champion t_i receives the witness Z_{i+1} inside
    X_{s_{i+1}} union {g_{i+1}}, and every other agent on the envy path
    from s_i to t_i receives its successor's bundle.  Displaced goods that
    no agent receives join the pool.
    """
    ell = len(cycle.sources)
    if not (ell == len(cycle.goods) == len(cycle.champions)) or ell < 1:
        raise PreconditionError("cycle components must be non-empty and equal-length")
    if len(set(cycle.sources)) != ell or len(set(cycle.champions)) != ell:
        raise PreconditionError("cycle sources and champions must be distinct")
    if len(set(cycle.goods)) != ell or not set(cycle.goods) <= alloc.pool:
        raise PreconditionError("cycle goods must be distinct pool goods")

    graph = build_envy_graph(instance, alloc)
    witnesses = []
    for i in range(ell):
        s_next = cycle.sources[(i + 1) % ell]
        g_next = cycle.goods[(i + 1) % ell]
        w = most_envious_agent(instance, alloc, alloc.bundles[s_next] | {g_next})
        if w.champion != cycle.champions[i]:
            raise PreconditionError(
                f"agent {cycle.champions[i]} is not the champion of "
                f"bundle of {s_next} plus good {g_next}"
            )
        witnesses.append(w.witness_set)

    bundles = list(alloc.bundles)
    assigned = set()
    for i in range(ell):
        path = graph.shortest_path(cycle.sources[i], cycle.champions[i])
        if path is None:
            raise PreconditionError(
                f"champion {cycle.champions[i]} unreachable from source {cycle.sources[i]}"
            )
        for pos, agent in enumerate(path):
            if agent in assigned:
                raise PreconditionError("envy paths of the cycle overlap")
            assigned.add(agent)
            if pos + 1 < len(path):
                bundles[agent] = alloc.bundles[path[pos + 1]]
            else:
                bundles[agent] = witnesses[i]

    allocated = frozenset().union(*bundles) if bundles else frozenset()
    pool = frozenset(range(instance.num_goods)) - allocated
    new_alloc = PartialAllocation(tuple(bundles), pool)
    new_alloc.validate_for(instance)
    return StepOutcome(True, new_alloc, "U3", cycle.champions[0])
