"""Pure vs compiled enumeration kernels: agreement and dispatch."""

import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearefx import _sweep_py, sweeps

compiled = pytest.importorskip("nearefx._sweep", reason="compiled kernel not built")


small_matrices = st.integers(1, 3).flatmap(
    lambda n: st.integers(0, 5).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(0, 50), min_size=m, max_size=m),
            min_size=n,
            max_size=n,
        )
    )
)
eps_pairs = st.sampled_from([(1, 2), (1, 4), (1, 10), (1, 100)])


@settings(max_examples=60, deadline=None)
@given(small_matrices, eps_pairs, st.data())
def test_kernels_agree_on_complete_sweeps(values, eps, data):
    p, q = eps
    values = tuple(tuple(row) for row in values)
    m = len(values[0])
    agent = data.draw(st.integers(-1, len(values) - 1))
    forced = tuple(
        data.draw(st.sets(st.integers(0, m - 1), max_size=2)) if m else ()
    )
    assert _sweep_py.sweep_complete(values, p, q, agent, forced) == compiled.sweep_complete(
        values, p, q, agent, forced
    )


@settings(max_examples=60, deadline=None)
@given(small_matrices, eps_pairs)
def test_kernels_agree_on_partial_sweeps(values, eps):
    p, q = eps
    values = tuple(tuple(row) for row in values)
    assert _sweep_py.sweep_partial_best(values, p, q) == compiled.sweep_partial_best(
        values, p, q
    )


def test_both_kernels_reject_out_of_range_forced_goods():
    values = ((1, 2), (3, 4))
    for kernel in (_sweep_py, compiled):
        with pytest.raises(ValueError):
            kernel.sweep_complete(values, 1, 2, 0, (5,))


def test_dispatch_prefers_compiled_within_int64():
    assert sweeps.compiled_available()
    assert sweeps.active_kernel() == "compiled"
    assert sweeps._fits_int64(((10, 20),), 100)


def test_dispatch_falls_back_for_huge_values():
    huge = ((2 ** 61, 1),)
    assert not sweeps._fits_int64(huge, 100)
    # result must still be exact through the pure path
    total, efx, matched = sweeps.sweep_complete(huge, 1, 100)
    assert (total, efx) == (1, 1)


def test_env_var_forces_pure_kernel():
    code = (
        "import nearefx.sweeps as s; print(s.active_kernel())"
    )
    env = dict(os.environ, NEAREFX_PURE_KERNEL="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env
    )
    assert out.stdout.strip() == "pure"
