"""Solve loop: parameter selection, termination, initializers, halt state."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearefx import (
    Instance,
    InvalidInputError,
    PartialAllocation,
    choose_d,
    classify_demand,
    initial_allocation,
    nash_welfare_product,
    pool_within_bound,
    solve,
    solve_with_welfare_init,
    termination_budget,
    verify_partial_efx,
)
from nearefx.oracle import counterexample_instance

from .test_model import small_instances


def test_choose_d_examples():
    assert choose_d(1, Fraction(1, 2)) == 2
    assert choose_d(4, Fraction(1, 2)) == 2
    assert choose_d(100, Fraction(1, 10)) == 4
    with pytest.raises(InvalidInputError):
        choose_d(3, Fraction(2, 3))


@given(st.integers(1, 10 ** 6), st.fractions(min_value="1/1000", max_value="1/2"))
def test_choose_d_is_the_smallest_sufficient_value(n, eps):
    d = choose_d(n, eps)
    assert d ** 5 >= Fraction(n) / eps
    assert d == 1 or (d - 1) ** 5 < Fraction(n) / eps


def test_termination_budget_grows_with_values():
    small = Instance.from_values([[1]], Fraction(1, 2))
    large = Instance.from_values([[10 ** 6]], Fraction(1, 2))
    assert termination_budget(large).iteration_cap > termination_budget(
        small
    ).iteration_cap
    assert termination_budget(large).max_value == 10 ** 6


def test_pool_bound_is_exact_comparison():
    inst = Instance.from_values([[1]], Fraction(1, 2))
    assert pool_within_bound(inst, 0)
    # 64 * (1 / (1/2))^(4/5) = 64 * 2^(4/5): 111 passes, 112 fails
    assert pool_within_bound(inst, 111)
    assert not pool_within_bound(inst, 112)


def test_solve_single_agent_single_good():
    inst = Instance.from_values([[5]], Fraction(1, 2))
    res = solve(inst)
    assert res.allocation.bundles == (frozenset({0}),)
    assert res.allocation.pool == frozenset()


def test_solve_zero_goods():
    inst = Instance.from_values([[], []], Fraction(1, 4))
    res = solve(inst)
    assert res.allocation.pool == frozenset()
    assert res.iteration_trace == ()


def test_solve_rejects_non_efx_start():
    inst = Instance.from_values([[1, 10], [1, 10]], Fraction(1, 2))
    bad = PartialAllocation.from_sets([{0, 1}, set()], set())
    with pytest.raises(InvalidInputError):
        solve(inst, bad)


def test_solve_reference_instance_keeps_one_good_pooled():
    inst, reference = counterexample_instance()
    res = solve(inst)
    assert res.allocation.pool == frozenset({8})
    report = verify_partial_efx(inst, res.allocation)
    assert report.is_efx and not report.pool_heavy_enviers


@settings(max_examples=60, deadline=None)
@given(small_instances())
def test_solve_halt_state_properties(inst):
    res = solve(inst)
    report = verify_partial_efx(inst, res.allocation)
    assert report.is_efx
    assert not report.pool_heavy_enviers
    assert res.bound_check.pool_bound_ok
    assert res.bound_check.pool_size == len(res.allocation.pool)
    d = res.d_used
    assert d == choose_d(inst.num_agents, inst.epsilon)
    cls = classify_demand(inst, res.allocation, d)
    assert len(cls.low_demand) <= d ** 4 + d
    p, q = inst.eps_fraction
    assert len(cls.high_demand) * p * d < 2 * inst.num_agents * q


@settings(max_examples=40, deadline=None)
@given(small_instances())
def test_solve_trace_is_monotone(inst):
    res = solve(inst)
    prev = (Fraction(0),) * inst.num_agents
    for step in res.iteration_trace:
        assert len(step.values) == inst.num_agents
        for before, after in zip(prev, step.values):
            assert after >= before
        prev = step.values


def test_greedy_nash_initializer_is_efx():
    inst, _ = counterexample_instance()
    start = initial_allocation(inst, "greedy-nash")
    start.validate_for(inst)
    assert verify_partial_efx(inst, start).is_efx
    with pytest.raises(InvalidInputError):
        initial_allocation(inst, "best-effort")


def test_greedy_nash_prefers_nash_product():
    # both goods go to different agents: splitting beats stacking
    inst = Instance.from_values([[3, 2], [2, 3]], Fraction(1, 2))
    start = initial_allocation(inst, "greedy-nash")
    assert start.bundles == (frozenset({0}), frozenset({1}))
    assert start.pool == frozenset()


@settings(max_examples=30, deadline=None)
@given(small_instances(max_agents=4, max_goods=6), st.sampled_from(["empty", "greedy-nash"]))
def test_solve_with_welfare_init_never_drops_nash_product(inst, initializer):
    start = initial_allocation(inst, initializer)
    res = solve_with_welfare_init(inst, initializer)
    assert nash_welfare_product(inst, res.allocation) >= nash_welfare_product(
        inst, start
    )
