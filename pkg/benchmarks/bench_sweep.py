#!/usr/bin/env python3
"""Compare the compiled and pure enumeration kernels on the same sweeps.

Run: python3 benchmarks/bench_sweep.py [--goods N]
"""

import argparse
import time

from nearefx import _sweep_py
from nearefx.oracle import counterexample_instance

try:
    from nearefx import _sweep
except ImportError:
    _sweep = None


def run(kernel, name, values, p, q, goods):
    sub = tuple(row[:goods] for row in values)
    forced = tuple(g for g in (6, 7) if g < goods)
    started = time.perf_counter()
    total, efx, matched = kernel.sweep_complete(sub, p, q, 0, forced)
    complete = time.perf_counter() - started
    started = time.perf_counter()
    total_p, passing, _best = kernel.sweep_partial_best(sub, p, q)
    partial = time.perf_counter() - started
    print(
        f"{name:>9}: complete {total:>8} allocs in {complete:8.3f}s   "
        f"partial {total_p:>8} in {partial:8.3f}s   "
        f"(efx={efx}, forced={matched}, passing={passing})"
    )
    return complete, partial


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--goods", type=int, default=9, choices=range(1, 10))
    args = parser.parse_args()

    instance, _ = counterexample_instance()
    values = instance.scaled_values
    p, q = instance.eps_fraction
    print(f"4 agents x {args.goods} goods, epsilon = {p}/{q}")

    pure = run(_sweep_py, "pure", values, p, q, args.goods)
    if _sweep is None:
        print(" compiled: not built")
        return
    fast = run(_sweep, "compiled", values, p, q, args.goods)
    print(
        f"speedup: complete x{pure[0] / max(fast[0], 1e-9):.1f}, "
        f"partial x{pure[1] / max(fast[1], 1e-9):.1f}"
    )


if __name__ == "__main__":
    main()
