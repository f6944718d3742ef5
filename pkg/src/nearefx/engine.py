"""Main solve loop: rule scheduling, demand classification, and termination."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .demand import (
    build_group_champion_graph,
    check_high_demand_bound,
    classify_demand,
    rainbow_cycle_to_u3,
)
from .envy import assign_sources, build_envy_graph, eliminate_envy_cycles
from .errors import InternalInvariantError, InvalidInputError
from .model import (
    Instance,
    PartialAllocation,
    bundle_value,
    nash_welfare_product,
    value_vector,
    verify_partial_efx,
)
from .rainbow import find_rainbow_cycle
from .rules import try_u1, try_u2, try_u3


@dataclass(frozen=True)
class TraceRecord:
    """One applied step: rule tag, who improved, and the state afterwards."""

    rule: str
    improving_agent: Optional[int]
    pool_size: int
    values: tuple  # per-agent own-bundle values after the step


@dataclass(frozen=True)
class BoundCheck:
    high_count: int
    low_count: int
    pool_size: int
    pool_bound_ok: bool  # |pool|^5 * eps^4 <= 64^5 * n^4, exact


@dataclass(frozen=True)
class SolveResult:
    allocation: PartialAllocation
    d_used: int
    iteration_trace: tuple
    bound_check: BoundCheck


@dataclass(frozen=True)
class TerminationBudget:
    max_value: Fraction
    iteration_cap: int


def choose_d(n: int, epsilon: Fraction) -> int:
    """Smallest d with d^5 >= n/eps, by exact integer comparison."""
    if not 0 < epsilon <= Fraction(1, 2):
        raise InvalidInputError("epsilon must lie in (0, 1/2]")
    p, q = epsilon.numerator, epsilon.denominator
    d = 1
    while d ** 5 * p < n * q:
        d += 1
    return d


def termination_budget(instance: Instance) -> TerminationBudget:
    """Iteration cap from the factor-improvement potential argument.

    Every improving step raises some agent's value by a factor of at least
    1/(1-eps); with values bounded by W, at most K = ceil(log_{1/(1-eps)}
    (W+2)) such jumps fit per agent, and runs of pool-shrinking moves
    between them are bounded by m.  The cap (m+1)*(n*K+1)+1 over-counts all
    of that; reaching it means a bug, never a long instance.
    """
    w = max(
        (sum(row, Fraction(0)) for row in instance.valuations),
        default=Fraction(0),
    )
    p, q = instance.eps_fraction
    threshold = w + 2
    num, den, k = 1, 1, 0
    while num * threshold.denominator < den * threshold.numerator:
        num *= q
        den *= q - p
        k += 1
    cap = (instance.num_goods + 1) * (instance.num_agents * k + 1) + 1
    return TerminationBudget(w, cap)


def pool_within_bound(instance: Instance, pool_size: int) -> bool:
    """|pool| <= 64 * (n/eps)^(4/5), compared without floating point."""
    p, q = instance.eps_fraction
    return pool_size ** 5 * p ** 4 <= 64 ** 5 * instance.num_agents ** 4 * q ** 4


def solve(instance: Instance, initial: Optional[PartialAllocation] = None) -> SolveResult:
    """Iterate cycle elimination and the update rules until none applies.

    Each iteration makes the envy graph acyclic, then applies the first
    applicable rule (pool good to a source; pool to its champion; champion
    cycle found through the group champion graph).  Halts when the pool
    splits into few high-demand goods and at most d^4 + d low-demand ones.
    """
    if initial is None:
        alloc = PartialAllocation.empty(instance)
    else:
        alloc = initial
        report = verify_partial_efx(instance, alloc)
        if not report.is_efx:
            raise InvalidInputError("initial allocation violates the EFX condition")

    budget = termination_budget(instance)
    d = choose_d(instance.num_agents, instance.epsilon)
    trace = []

    def record(rule, agent):
        trace.append(
            TraceRecord(rule, agent, len(alloc.pool), value_vector(instance, alloc))
        )

    final_classification = None
    for _ in range(budget.iteration_cap):
        eliminated = eliminate_envy_cycles(instance, alloc)
        if eliminated is not alloc and eliminated.bundles != alloc.bundles:
            alloc = eliminated
            record("cycle-elim", None)

        outcome = try_u1(instance, alloc)
        if outcome.applied:
            alloc = outcome.allocation
            record("U1", outcome.improving_agent)
            continue
        outcome = try_u2(instance, alloc)
        if outcome.applied:
            alloc = outcome.allocation
            record("U2", outcome.improving_agent)
            continue

        classification = classify_demand(instance, alloc, d)
        if not check_high_demand_bound(classification, instance):
            raise InternalInvariantError(
                "high-demand bound violated although no simpler rule applies"
            )
        if len(classification.low_demand) > d ** 4 + d:
            sources = assign_sources(build_envy_graph(instance, alloc))
            gcg = build_group_champion_graph(instance, alloc, classification, sources)
            cycle = find_rainbow_cycle(gcg.to_kpartite(), d)
            u3_input = rainbow_cycle_to_u3(instance, alloc, gcg, cycle, sources)
            outcome = try_u3(instance, alloc, u3_input)
            alloc = outcome.allocation
            record("U3", outcome.improving_agent)
            continue
        final_classification = classification
        break
    else:
        raise InternalInvariantError("iteration cap exceeded; the loop should have halted")

    report = verify_partial_efx(instance, alloc)
    if not report.is_efx or report.pool_heavy_enviers:
        raise InternalInvariantError("final allocation fails the EFX or pool condition")
    bound = BoundCheck(
        len(final_classification.high_demand),
        len(final_classification.low_demand),
        len(alloc.pool),
        pool_within_bound(instance, len(alloc.pool)),
    )
    if not bound.pool_bound_ok:
        raise InternalInvariantError("pool exceeds the guaranteed size bound")
    return SolveResult(alloc, d, tuple(trace), bound)


def initial_allocation(instance: Instance, initializer: str) -> PartialAllocation:
    """Build the named starting allocation: ``empty`` or ``greedy-nash``.

    greedy-nash: goods in descending max-value order each go to the agent
    maximizing the running Nash product (ties to the lower index); goods are
    then moved back to the pool in the same order until the allocation
    satisfies the EFX condition.
    """
    if initializer == "empty":
        return PartialAllocation.empty(instance)
    if initializer != "greedy-nash":
        raise InvalidInputError(f"unknown initializer: {initializer!r}")

    order = sorted(
        range(instance.num_goods),
        key=lambda g: (-max(row[g] for row in instance.valuations), g),
    )
    bundles = [set() for _ in range(instance.num_agents)]
    for g in order:
        best, best_product = 0, None
        for i in range(instance.num_agents):
            product = Fraction(1)
            for j in range(instance.num_agents):
                extra = {g} if j == i else set()
                product *= bundle_value(instance, j, bundles[j] | extra)
            if best_product is None or product > best_product:
                best, best_product = i, product
        bundles[best].add(g)

    alloc = PartialAllocation.from_sets(bundles, set())
    for g in order:
        if verify_partial_efx(instance, alloc).is_efx:
            break
        owner = next(i for i, b in enumerate(alloc.bundles) if g in b)
        alloc = alloc.replace_bundle(
            owner, alloc.bundles[owner] - {g}, alloc.pool | {g}
        )
    return alloc


def solve_with_welfare_init(instance: Instance, initializer: str) -> SolveResult:
    """Run solve from a named initializer; the Nash product never drops."""
    start = initial_allocation(instance, initializer)
    result = solve(instance, start)
    if nash_welfare_product(instance, result.allocation) < nash_welfare_product(
        instance, start
    ):
        raise InternalInvariantError("Nash welfare decreased across the run")
    return result
