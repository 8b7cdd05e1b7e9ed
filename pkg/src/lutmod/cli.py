"""Command-line front end: plan, reduce, verify, compare, emit, bench.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .barrett import barrett_constants, barrett_reduce_batch, barrett_reduce_shift_add_batch
from .core import (
    GroupingSpec,
    build_grouped_plan,
    dumps,
    load,
    reduce_batch,
    resolve_layout,
    save,
    trace,
)
from .core.modarith import Modulus
from .cost import REPORTED_REFERENCE, compare
from .errors import ConfigurationError, ContractViolation
from .hdl import emit_testbench, emit_verilog, eval_netlist, lower
from .verify import MAX_EXHAUSTIVE_WIDTH, verify_plan

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Decimal, ``0x`` hex or ``0b`` binary."""
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"table sizes must look like 7,6: {text!r}") from None
    if not sizes or any(k < 1 for k in sizes):
        raise argparse.ArgumentTypeError(f"table sizes must be positive: {text!r}")
    return sizes


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-q", "--modulus", type=parse_int, help="static modulus q >= 2")
    p.add_argument("-w", "--width", type=int, help="input width in bits (default 2n)")
    p.add_argument("-t", "--tables", type=parse_sizes,
                   help="table input sizes, e.g. 7,6; the last size repeats to cover "
                        "remaining bits (default 6)")
    p.add_argument("--optimize-grouping", action="store_true",
                   help="search for a bit-to-table assignment with fewer final cases")
    p.add_argument("--no-nth-bit", action="store_true",
                   help="pass all n low bits straight through (p = n)")
    p.add_argument("--plan-file", type=Path, help="load a plan JSON instead of building one")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lutmod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="build a reduction plan and print it as JSON")
    _common(p)
    p.add_argument("-o", "--out", type=Path, help="also write the plan JSON here")

    p = sub.add_parser("reduce", help="reduce one value")
    _common(p)
    p.add_argument("value", type=parse_int)
    p.add_argument("--trace", action="store_true", help="show intermediate sum and multiple")

    p = sub.add_parser("verify", help="differential check against builtin mod")
    _common(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true",
                      help=f"every input (width <= {MAX_EXHAUSTIVE_WIDTH})")
    mode.add_argument("--random", type=int, metavar="N", default=None,
                      help="N uniform random inputs (default 100000)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("compare", help="structural cost versus Barrett baselines")
    _common(p)

    p = sub.add_parser("emit", help="write Verilog for the plan")
    _common(p)
    p.add_argument("-m", "--module", default="lut_mod_reduce", help="Verilog module name")
    p.add_argument("--pipeline", type=int, default=0, choices=range(4),
                   help="register stages: after lookups, adder tree, comparisons")
    p.add_argument("-o", "--out", type=Path, help="output path (default stdout)")
    p.add_argument("--testbench", type=Path, help="also write a self-checking testbench")
    p.add_argument("--vectors", type=int, default=64, help="testbench vector count")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("bench", help="throughput of each engine")
    _common(p)
    p.add_argument("-n", "--count", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def plan_from_args(args):
    if args.plan_file is not None:
        return load(args.plan_file)
    if args.modulus is None:
        raise UsageError("-q/--modulus is required unless --plan-file is given")
    mod = Modulus(args.modulus)
    width = args.width if args.width is not None else 2 * mod.n
    nth_bit = False if args.no_nth_bit else None
    p, sizes = resolve_layout(mod, width, args.tables, nth_bit)
    strategy = "natural"
    if args.optimize_grouping:
        strategy = "exhaustive" if sum(sizes) <= 12 else "greedy"
    return build_grouped_plan(mod, width, GroupingSpec(tuple(sizes), strategy), passthrough=p)


def _summary(plan) -> str:
    return (f"q={plan.q} n={plan.n} W={plan.width} p={plan.passthrough} "
            f"N={plan.table_bits} tables={list(plan.table_sizes)} "
            f"max_intermediate={plan.max_intermediate} i_max={plan.i_max}")


def cmd_plan(args) -> int:
    plan = plan_from_args(args)
    if args.out is not None:
        save(plan, args.out)
    if not args.json:
        print(_summary(plan))
    print(dumps(plan))
    return EXIT_OK


def cmd_reduce(args) -> int:
    plan = plan_from_args(args)
    t = trace(plan, args.value)
    if args.json:
        doc = {"input": args.value, "result": t.result}
        if args.trace:
            doc.update(intermediate=t.intermediate, index=t.index)
        print(json.dumps(doc))
    elif args.trace:
        print(f"c_hat={t.intermediate} i={t.index} c={t.result}")
    else:
        print(t.result)
    return EXIT_OK


def cmd_verify(args) -> int:
    plan = plan_from_args(args)
    if args.exhaustive and plan.width > MAX_EXHAUSTIVE_WIDTH:
        raise UsageError(f"--exhaustive needs width <= {MAX_EXHAUSTIVE_WIDTH}")
    count = args.random if args.random is not None else 100_000
    report = verify_plan(plan, exhaustive=args.exhaustive, count=count, seed=args.seed)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"{report.mode} verification, q={report.q}, W={report.width}, "
              f"{report.vectors} vectors")
        for e in report.engines:
            line = f"  {e.engine:<18} {'PASS' if e.passed else 'FAIL'}  checked={e.checked}"
            if not e.passed:
                ce = e.counterexample
                line += (f" mismatches={e.mismatches} first: input={ce['input']} "
                         f"got={ce['got']} want={ce['want']}")
            print(line)
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_compare(args) -> int:
    if args.plan_file is not None:
        plan = load(args.plan_file)
        q, width, sizes, nth = plan.q, plan.width, list(plan.table_sizes), None
    else:
        if args.modulus is None:
            raise UsageError("-q/--modulus is required unless --plan-file is given")
        q = args.modulus
        width = args.width if args.width is not None else 2 * Modulus(q).n
        sizes, nth = args.tables, (False if args.no_nth_bit else None)
    _, resolved = resolve_layout(q, width, sizes, nth)
    strategy = "natural"
    if args.optimize_grouping:
        strategy = "exhaustive" if sum(resolved) <= 12 else "greedy"
    report = compare(q, width, GroupingSpec(tuple(resolved), strategy))
    if args.json:
        print(report.to_json())
        return EXIT_OK
    print(f"q={report.q} n={report.n} W={report.width} p={report.passthrough_bits} "
          f"tables={report.table_sizes}")
    cols = ("storage_bits", "table_count", "adder_count", "adder_width",
            "final_cases", "multiplier_count", "shift_add_terms")
    rows = [report.lut, report.lut_basic, report.barrett_general,
            report.barrett_shift_add, report.barrett_shift_add_signed]
    print(f"{'scheme':<26}" + "".join(f"{c:>17}" for c in cols))
    for r in rows:
        print(f"{r.scheme:<26}" + "".join(f"{getattr(r, c):>17}" for c in cols))
    for name, value in report.ratios.items():
        print(f"  {name}: {value}")
    ref = REPORTED_REFERENCE.get(report.q)
    if ref:
        print("published synthesis figures for this modulus (reported, not computed here):")
        for scheme, (luts, dsps) in ref["fpga_luts_dsps"].items():
            print(f"  FPGA {scheme:<26} LUTs={luts:<5} DSPs={dsps}")
        for scheme, area in ref["asic_area_vs_optimized_barrett"].items():
            print(f"  ASIC {scheme:<26} relative area={area}")
    return EXIT_OK


def cmd_emit(args) -> int:
    plan = plan_from_args(args)
    netlist = lower(plan, args.pipeline)
    text = emit_verilog(netlist, args.module)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        print(f"wrote {args.out}", file=sys.stderr)
    if args.testbench is not None:
        args.testbench.write_text(emit_testbench(netlist, args.module, args.vectors, args.seed))
        print(f"wrote {args.testbench}", file=sys.stderr)
    return EXIT_OK


def _timed(fn, values) -> float:
    start = time.perf_counter()
    fn(values)
    return time.perf_counter() - start


def cmd_bench(args) -> int:
    plan = plan_from_args(args)
    q = plan.q
    if plan.width > 62:
        raise UsageError("bench supports widths up to 62 bits")
    rng = np.random.default_rng(args.seed)
    values = rng.integers(0, min(1 << plan.width, barrett_constants(q).input_limit),
                          size=args.count, dtype=np.int64)
    netlist = lower(plan)
    consts = barrett_constants(q)
    engines = {
        "lut": lambda v: reduce_batch(plan, v),
        "netlist": lambda v: eval_netlist(netlist, v),
        "barrett_general": lambda v: barrett_reduce_batch(v, consts),
        "barrett_shift_add": lambda v: barrett_reduce_shift_add_batch(v, q),
    }
    results = {name: _timed(fn, values) for name, fn in engines.items()}
    if args.json:
        print(json.dumps({k: {"seconds": v, "per_value_ns": 1e9 * v / args.count}
                          for k, v in results.items()}, indent=2))
    else:
        print(f"{args.count} values, q={q}, W={plan.width}")
        for name, sec in results.items():
            print(f"  {name:<18} {sec:8.3f} s  {1e9 * sec / args.count:8.1f} ns/value")
    return EXIT_OK


COMMANDS = {
    "plan": cmd_plan,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "emit": cmd_emit,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigurationError, ContractViolation, OSError) as exc:
        print(f"lutmod {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
