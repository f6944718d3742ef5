"""Exhaustive oracles and the hard 4x9 instance."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearefx import (
    InvalidInputError,
    ResourceLimitError,
    counterexample_instance,
    enumerate_complete_allocations,
    exhaustive_partial_efx_best,
    phi_lex_compare,
    verify_partial_efx,
)
from nearefx.oracle import (
    decode_owner_code,
    owners_to_allocation,
    sweep_no_forced_bundle,
)

from .test_model import small_instances


def test_hard_instance_shape():
    inst, alloc = counterexample_instance()
    assert (inst.num_agents, inst.num_goods) == (4, 9)
    assert inst.epsilon == Fraction(1, 100)
    assert alloc.bundles[0] == frozenset({6, 7})
    assert alloc.pool == frozenset({8})
    assert verify_partial_efx(inst, alloc).is_efx
    loose = counterexample_instance(Fraction(1, 2))[0]
    assert loose.epsilon == Fraction(1, 2)


def test_enumerate_complete_allocations_counts():
    inst = counterexample_instance()[0]
    tiny = enumerate_complete_allocations(
        counterexample_instance()[0], lambda owners: owners[0] == 0, budget=10 ** 6
    )
    assert tiny.total == 4 ** 9
    assert tiny.satisfying == 4 ** 8
    with pytest.raises(ResourceLimitError):
        enumerate_complete_allocations(inst, lambda o: True, budget=10)


def test_phi_lex_compare():
    assert phi_lex_compare((1, 2), (1, 2)) == 0
    assert phi_lex_compare((1, 3), (1, 2)) == 1
    assert phi_lex_compare((0, 9), (1, 0)) == -1
    with pytest.raises(InvalidInputError):
        phi_lex_compare((1,), (1, 2))


def test_owner_code_round_trip():
    inst = counterexample_instance()[0]
    owners = (0, 4, 1, 2, 3, 4, 0, 0, 2)
    code = sum(o * 5 ** g for g, o in enumerate(owners))
    assert decode_owner_code(inst, code) == owners
    alloc = owners_to_allocation(inst, owners)
    assert alloc.pool == frozenset({1, 5})
    assert alloc.bundles[0] == frozenset({0, 6, 7})


def test_full_sweep_excludes_the_forced_bundle():
    inst, _ = counterexample_instance()
    total, efx, matched = sweep_no_forced_bundle(inst, 0, (6, 7))
    assert total == 4 ** 9
    assert efx == 114
    assert matched == 0


def test_full_sweep_with_larger_epsilon_admits_the_bundle():
    inst, _ = counterexample_instance(Fraction(1, 2))
    _total, efx, matched = sweep_no_forced_bundle(inst, 0, (6, 7))
    assert matched > 0
    assert efx >= matched


def test_exhaustive_partial_best_tiny_instance():
    from nearefx import Instance

    inst = Instance.from_values([[1, 0], [0, 1]], Fraction(1, 2))
    best, stats = exhaustive_partial_efx_best(inst)
    assert stats.total == 9
    assert stats.satisfying == 7
    assert best.bundles == (frozenset({0}), frozenset({1}))
    with pytest.raises(ResourceLimitError):
        exhaustive_partial_efx_best(inst, budget=5)


@settings(max_examples=25, deadline=None)
@given(small_instances(max_agents=3, max_goods=5))
def test_exhaustive_partial_best_is_a_passing_leximin_optimum(inst):
    best, stats = exhaustive_partial_efx_best(inst)
    report = verify_partial_efx(inst, best)
    assert report.violations == []
    assert stats.satisfying >= 1  # the empty allocation always passes
    assert 1 <= stats.total == (inst.num_agents + 1) ** inst.num_goods
