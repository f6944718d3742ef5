"""Command-line surface and JSON serialization.

Exit codes: 0 ok, 1 property refuted, 2 input error, 3 internal invariant
failure.  Rationals serialize as bare integers or "p/q" strings so every
document round-trips exactly.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from itertools import product

from .engine import pool_within_bound, solve_with_welfare_init
from .errors import InternalInvariantError, NearEfxError
from .model import (
    Instance,
    PartialAllocation,
    format_rational,
    nash_welfare_product,
    parse_rational,
    verify_partial_efx,
)
from .errors import InvalidInputError
from .oracle import counterexample_instance, sweep_no_forced_bundle
from .rainbow import (
    KPartiteDigraph,
    RainbowCycle,
    brute_force_rainbow_cycle,
    find_rainbow_cycle,
    lower_bound_graph,
    verify_rainbow_cycle,
)


# --------------------------------------------------------------------------
# Documents


def instance_to_document(instance: Instance) -> dict:
    return {
        "num_agents": instance.num_agents,
        "num_goods": instance.num_goods,
        "epsilon": format_rational(instance.epsilon),
        "valuations": [
            format_rational(v) for row in instance.valuations for v in row
        ],
    }


def instance_from_document(doc: dict) -> Instance:
    try:
        n = doc["num_agents"]
        m = doc["num_goods"]
        eps = parse_rational(doc["epsilon"])
        flat = doc["valuations"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed instance document: {exc}") from exc
    if not isinstance(n, int) or not isinstance(m, int):
        raise InvalidInputError("num_agents and num_goods must be integers")
    if isinstance(flat, list) and flat and isinstance(flat[0], list):
        rows = flat
    else:
        if len(flat) != n * m:
            raise InvalidInputError("valuations must hold num_agents * num_goods entries")
        rows = [flat[i * m:(i + 1) * m] for i in range(n)]
    instance = Instance.from_values(rows, eps)
    if instance.num_agents != n or instance.num_goods != m:
        raise InvalidInputError("valuation shape disagrees with the declared sizes")
    return instance


def graph_to_document(g: KPartiteDigraph) -> dict:
    return {
        "parts": list(g.part_sizes),
        "edges": sorted([i, x, j, y] for i, x, j, y in g.edges),
    }


def graph_from_document(doc: dict) -> KPartiteDigraph:
    try:
        parts = doc["parts"]
        edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed graph document: {exc}") from exc
    sizes = tuple(len(p) if isinstance(p, list) else p for p in parts)
    quads = set()
    for e in edges:
        if len(e) != 4:
            raise InvalidInputError(f"edge must be [i, x, j, y]: {e!r}")
        quads.add(tuple(int(c) for c in e))
    return KPartiteDigraph(sizes, frozenset(quads))


def cycle_to_document(cycle: RainbowCycle) -> dict:
    return {"vertices": [list(v) for v in cycle.vertices]}


def cycle_from_document(doc: dict) -> RainbowCycle:
    try:
        verts = doc["vertices"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed cycle document: {exc}") from exc
    return RainbowCycle(tuple((int(p), int(x)) for p, x in verts))


def allocation_to_document(alloc: PartialAllocation) -> dict:
    return {
        "bundles": [sorted(b) for b in alloc.bundles],
        "pool": sorted(alloc.pool),
    }


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def _dump_json(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --------------------------------------------------------------------------
# Commands


def cmd_solve(args) -> int:
    instance = instance_from_document(_load_json(args.instance))
    result = solve_with_welfare_init(instance, args.init)
    alloc = result.allocation
    report = verify_partial_efx(instance, alloc)
    verdict = "pass" if report.is_efx and not report.pool_heavy_enviers else "fail"

    if args.trace_out:
        with open(args.trace_out, "w") as fh:
            for rec in result.iteration_trace:
                fh.write(json.dumps({
                    "rule": rec.rule,
                    "improving_agent": rec.improving_agent,
                    "pool_size": rec.pool_size,
                }) + "\n")

    nash = nash_welfare_product(instance, alloc)
    if args.json:
        _dump_json({
            "allocation": allocation_to_document(alloc),
            "d": result.d_used,
            "pool_size": len(alloc.pool),
            "pool_bound_ok": result.bound_check.pool_bound_ok,
            "nash_product": format_rational(nash),
            "verifier": verdict,
        })
    else:
        for i, bundle in enumerate(alloc.bundles):
            print(f"agent {i}: {sorted(bundle)}")
        print(f"pool: {sorted(alloc.pool)}")
        print(
            f"pool size {len(alloc.pool)} within 64*(n/eps)^(4/5): "
            f"{result.bound_check.pool_bound_ok}"
        )
        print(f"nash product: {format_rational(nash)}")
        print(f"verifier: {verdict}")
    return 0 if verdict == "pass" else 3


def cmd_rainbow(args) -> int:
    if args.rainbow_cmd == "lower-bound":
        doc = graph_to_document(lower_bound_graph(args.d))
        _dump_json(doc, args.out)
        return 0
    if args.rainbow_cmd == "find":
        g = graph_from_document(_load_json(args.graph))
        cycle = find_rainbow_cycle(g, args.d)
        ok = verify_rainbow_cycle(g, cycle)
        print(f"cycle: {list(cycle.vertices)}")
        print(f"checker: {'valid' if ok else 'INVALID'}")
        if not ok:
            raise InternalInvariantError("finder emitted an invalid cycle")
        return 0
    if args.rainbow_cmd == "brute":
        g = graph_from_document(_load_json(args.graph))
        cycle = brute_force_rainbow_cycle(g)
        if cycle is None:
            print("none")
        else:
            print(f"cycle: {list(cycle.vertices)}")
        return 0
    if args.rainbow_cmd == "verify":
        g = graph_from_document(_load_json(args.graph))
        cycle = cycle_from_document(_load_json(args.cycle))
        ok = verify_rainbow_cycle(g, cycle)
        print("valid" if ok else "invalid")
        return 0 if ok else 1
    raise InvalidInputError(f"unknown rainbow subcommand {args.rainbow_cmd!r}")


def _find_forced_witness(instance: Instance, agent: int, goods) -> tuple:
    """First complete EFX-passing allocation granting agent all of goods."""
    n, m = instance.num_agents, instance.num_goods
    fixed = set(goods)
    free = [g for g in range(m) if g not in fixed]
    for rest in product(range(n), repeat=len(free)):
        owners = [0] * m
        for g in fixed:
            owners[g] = agent
        for g, o in zip(free, rest):
            owners[g] = o
        bundles = [set() for _ in range(n)]
        for g, o in enumerate(owners):
            bundles[o].add(g)
        alloc = PartialAllocation.from_sets(bundles, set())
        if verify_partial_efx(instance, alloc).is_efx:
            return tuple(owners)
    raise InternalInvariantError("sweep reported a witness but rescan found none")


def cmd_counterexample(args) -> int:
    eps = parse_rational(args.epsilon)
    instance, reference = counterexample_instance(eps)
    started = time.perf_counter()
    total, efx_count, matched = sweep_no_forced_bundle(instance, 0, (6, 7))
    elapsed = time.perf_counter() - started
    ref_report = verify_partial_efx(instance, reference)
    print(
        f"{matched} / {total} complete (1-eps)-EFX allocations "
        f"give agent a both g7 and g8"
    )
    print(f"complete allocations passing the EFX check: {efx_count}")
    print(f"reference partial allocation verifies: {ref_report.is_efx}")
    print(f"wall time: {elapsed:.2f}s")
    if matched:
        witness = _find_forced_witness(instance, 0, (6, 7))
        print(f"witness owner tuple: {witness}")
        return 1
    return 0


def cmd_gen(args) -> int:
    eps = parse_rational(args.epsilon)
    if args.agents < 1 or args.goods < 0 or args.max_value < 1:
        raise InvalidInputError("agents and max-value must be positive, goods non-negative")
    rng = random.Random(args.seed)
    values = [
        [rng.randint(0, args.max_value) for _ in range(args.goods)]
        for _ in range(args.agents)
    ]
    instance = Instance.from_values(values, eps)
    _dump_json(instance_to_document(instance), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nearefx",
        description="near-EFX partial allocation solver and rainbow-cycle tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("--instance", required=True)
    p_solve.add_argument("--init", choices=["empty", "greedy-nash"], default="empty")
    p_solve.add_argument("--trace-out")
    p_solve.add_argument("--json", action="store_true")
    p_solve.set_defaults(func=cmd_solve)

    p_rainbow = sub.add_parser("rainbow", help="rainbow-cycle tools")
    rsub = p_rainbow.add_subparsers(dest="rainbow_cmd", required=True)
    p_find = rsub.add_parser("find")
    p_find.add_argument("--graph", required=True)
    p_find.add_argument("--d", type=int, required=True)
    p_lb = rsub.add_parser("lower-bound")
    p_lb.add_argument("--d", type=int, required=True)
    p_lb.add_argument("--out")
    p_brute = rsub.add_parser("brute")
    p_brute.add_argument("--graph", required=True)
    p_verify = rsub.add_parser("verify")
    p_verify.add_argument("--graph", required=True)
    p_verify.add_argument("--cycle", required=True)
    p_rainbow.set_defaults(func=cmd_rainbow)

    p_cx = sub.add_parser("counterexample", help="exhaustive hard-instance sweep")
    p_cx.add_argument("--epsilon", default="1/100")
    p_cx.set_defaults(func=cmd_counterexample)

    p_gen = sub.add_parser("gen", help="generate a random integer instance")
    p_gen.add_argument("--agents", type=int, required=True)
    p_gen.add_argument("--goods", type=int, required=True)
    p_gen.add_argument("--max-value", type=int, default=100)
    p_gen.add_argument("--epsilon", default="1/2")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3
    except NearEfxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
