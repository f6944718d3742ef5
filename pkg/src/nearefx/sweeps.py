"""Kernel selection: compiled enumeration sweeps with a pure fallback.

The compiled module works on int64; calls whose magnitudes could overflow
are routed to the pure kernel, which uses arbitrary-precision integers.
Set NEAREFX_PURE_KERNEL=1 to force the pure kernel (used for benchmarking).
"""

from __future__ import annotations

import os

from . import _sweep_py as _pure

try:
    from . import _sweep as _compiled
except ImportError:  # pragma: no cover - depends on the build environment
    _compiled = None

_INT64_HEADROOM = 2 ** 62


def compiled_available() -> bool:
    return _compiled is not None


def active_kernel() -> str:
    if _compiled is None or os.environ.get("NEAREFX_PURE_KERNEL"):
        return "pure"
    return "compiled"


def _fits_int64(values, q: int) -> bool:
    top = max((sum(row) for row in values), default=0)
    return q * (top + 1) < _INT64_HEADROOM


def _backend(values, q: int):
    if active_kernel() == "compiled" and _fits_int64(values, q):
        return _compiled
    return _pure


def sweep_complete(values, p: int, q: int, forced_agent: int = -1, forced_goods=()):
    """(total, efx_count, efx_and_forced_count) over all complete allocations."""
    return _backend(values, q).sweep_complete(values, p, q, forced_agent, tuple(forced_goods))


def sweep_partial_best(values, p: int, q: int):
    """(total, passing, best_code) over all good-to-agent-or-pool assignments."""
    return _backend(values, q).sweep_partial_best(values, p, q)
