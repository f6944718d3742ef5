"""Brute-force ground truth: exhaustive sweeps and the 4-agent hard instance."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import sweeps
from .errors import InvalidInputError, ResourceLimitError
from .model import Instance, PartialAllocation

# 4 agents (a, b, c, d) x 9 goods; with a small enough epsilon no complete
# EFX-like allocation can give agent a both of goods 6 and 7.
_HARD_VALUES = (
    (0, 0, 0, 0, 0, 0, 6, 4, 0),
    (16, 4, 24, 4, 0, 34, 31, 0, 2),
    (10, 0, 18, 8, 20, 0, 29, 0, 6),
    (0, 0, 0, 0, 18, 20, 19, 0, 4),
)


@dataclass(frozen=True)
class SweepStats:
    total: int
    satisfying: int


def counterexample_instance(epsilon=Fraction(1, 100)):
    """The 4x9 hard instance plus its reference partial allocation.

    The partial allocation gives agent 0 goods {6, 7}; good 8 stays pooled.
    """
    instance = Instance.from_values(_HARD_VALUES, epsilon)
    alloc = PartialAllocation.from_sets(
        [{6, 7}, {1, 2, 3}, {0, 4}, {5}], {8}
    )
    return instance, alloc


def enumerate_complete_allocations(instance: Instance, predicate, budget: int = 10 ** 6) -> SweepStats:
    """Visit all n^m owner tuples in lexicographic order; count predicate hits.

    The predicate receives the owner tuple (owner index per good).
    """
    n, m = instance.num_agents, instance.num_goods
    total = n ** m
    if total > budget:
        raise ResourceLimitError(f"{total} allocations exceed the budget {budget}")
    satisfying = 0
    for owners in product(range(n), repeat=m):
        if predicate(owners):
            satisfying += 1
    return SweepStats(total, satisfying)


def phi_lex_compare(x, y) -> int:
    """-1, 0, or +1 comparing per-agent value vectors lexicographically."""
    if len(x) != len(y):
        raise InvalidInputError("value vectors must have equal length")
    for a, b in zip(x, y):
        if a != b:
            return -1 if a < b else 1
    return 0


def sweep_no_forced_bundle(instance: Instance, agent: int, goods) -> tuple:
    """(total, efx_count, count of EFX allocations giving agent all of goods).

    Full sweep over the n^m complete allocations via the enumeration kernel.
    """
    p, q = instance.eps_fraction
    return sweeps.sweep_complete(instance.scaled_values, p, q, agent, tuple(goods))


def owners_to_allocation(instance: Instance, owners) -> PartialAllocation:
    """Owner tuple (num_agents meaning the pool) to a partial allocation."""
    bundles = [set() for _ in range(instance.num_agents)]
    pool = set()
    for g, o in enumerate(owners):
        if o == instance.num_agents:
            pool.add(g)
        else:
            bundles[o].add(g)
    return PartialAllocation.from_sets(bundles, pool)


def decode_owner_code(instance: Instance, code: int) -> tuple:
    base = instance.num_agents + 1
    owners = []
    for _ in range(instance.num_goods):
        owners.append(code % base)
        code //= base
    return tuple(owners)


def exhaustive_partial_efx_best(instance: Instance, budget: int = 10 ** 6):
    """Best passing partial allocation over all (n+1)^m assignments.

    Passing means no EFX violation between agents; best means the
    ascending-sorted own-value vector is lexicographically maximal.
    Returns (allocation, SweepStats(total, passing)).
    """
    n, m = instance.num_agents, instance.num_goods
    total = (n + 1) ** m
    if total > budget:
        raise ResourceLimitError(f"{total} assignments exceed the budget {budget}")
    p, q = instance.eps_fraction
    total_k, passing, best_code = sweeps.sweep_partial_best(instance.scaled_values, p, q)
    assert total_k == total
    best = owners_to_allocation(instance, decode_owner_code(instance, best_code))
    return best, SweepStats(total, passing)
