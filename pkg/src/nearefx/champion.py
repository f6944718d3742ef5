"""Heavy/strong envy predicates and the most-envious-agent-witness procedure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidInputError, PreconditionError
from .model import Instance, PartialAllocation


@dataclass(frozen=True)
class Witness:
    """A champion together with the witness set it heavily envies.

    The witness set is a subset of the queried target; no agent strongly
    envies it.
    """

    champion: int
    witness_set: frozenset


def _check_target(instance: Instance, target: Iterable[int]) -> list:
    goods = sorted(set(target))
    for g in goods:
        if not 0 <= g < instance.num_goods:
            raise InvalidInputError(f"good index out of range: {g}")
    return goods


def heavy_envy(instance: Instance, alloc: PartialAllocation, agent: int, target: Iterable[int]) -> bool:
    """True iff v_agent(X_agent) < (1-eps) * v_agent(target), exactly."""
    goods = _check_target(instance, target)
    p, q = instance.eps_fraction
    row = instance.scaled_values[agent]
    own = sum(row[g] for g in alloc.bundles[agent])
    return q * own < (q - p) * sum(row[g] for g in goods)


def strong_envy(instance: Instance, alloc: PartialAllocation, agent: int, target: Iterable[int]) -> bool:
    """True iff the agent heavily envies target minus some single good.

    With additive valuations this is equivalent to dropping the good the
    agent values least.
    """
    goods = _check_target(instance, target)
    if not goods:
        return False
    p, q = instance.eps_fraction
    row = instance.scaled_values[agent]
    own = sum(row[g] for g in alloc.bundles[agent])
    total = sum(row[g] for g in goods)
    cheapest = min(row[g] for g in goods)
    return q * own < (q - p) * (total - cheapest)


def most_envious_agent(instance: Instance, alloc: PartialAllocation, target: Iterable[int]) -> Witness:
    """Determinized champion-witness procedure for a heavily envied set.

    Starting from the lowest-indexed heavy envier of the full target, the
    witness set is shrunk one good at a time: each round scans agents in
    index order and removal candidates in good-index order, taking the first
    pair that still exhibits heavy envy after the removal.  The loop stops
    when nobody strongly envies the current set.  Values are maintained
    incrementally, so a call costs O(n * |target|^2).
    """
    goods = _check_target(instance, target)
    p, q = instance.eps_fraction
    rows = instance.scaled_values
    n = instance.num_agents
    coeff = q - p

    own = [sum(rows[i][g] for g in alloc.bundles[i]) for i in range(n)]
    vals = [sum(rows[i][g] for g in goods) for i in range(n)]

    champion = None
    for i in range(n):
        if q * own[i] < coeff * vals[i]:
            champion = i
            break
    if champion is None:
        raise PreconditionError("no agent heavily envies the target")

    witness = goods
    while True:
        hit = None
        for i in range(n):
            bound = q * own[i]
            row = rows[i]
            for g in witness:
                if bound < coeff * (vals[i] - row[g]):
                    hit = (i, g)
                    break
            if hit:
                break
        if hit is None:
            return Witness(champion, frozenset(witness))
        champion, removed = hit
        witness = [g for g in witness if g != removed]
        for i in range(n):
            vals[i] -= rows[i][removed]
