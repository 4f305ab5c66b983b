"""Command line front end: compile, simulate, solve, analyze, oracle.

Exit codes for ``solve``: 0 YES, 1 NO, 2 error, 3 simulation budget
exceeded. Other subcommands exit 0 on success and 2 or 3 likewise.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import io_format
from .analysis import FAMILY_KINDS, PhysicalParams, device_report, growth_classification
from .compilers import DegenerateInstance, compile_instance, horizon_for
from .device import DeviceError, longest_path_delay
from .oracles import EnumerationLimit, solve_oracle
from .problems import InstanceError
from .simulator import BudgetExceeded, HorizonError, read, resource_guard

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3

DEFAULT_MAX_FRONTS = 10 ** 7


class CliError(Exception):
    def __init__(self, message, code=EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _run(device, horizon, max_fronts):
    outcome = resource_guard(device, horizon, max_fronts)
    if isinstance(outcome, BudgetExceeded):
        raise CliError(outcome.describe(), EXIT_BUDGET)
    return outcome


def cmd_compile(args: argparse.Namespace) -> int:
    inst = io_format.read_instance(_read_text(args.instance))
    result = compile_instance(inst, args.k)
    _write_text(args.output, io_format.write_device(result.device, result.readout))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    device, readout = io_format.read_device(_read_text(args.device))
    horizon = args.horizon
    if horizon is None:
        if readout is None:
            raise CliError("device has no readout; pass --horizon")
        horizon = readout.hi
    arrivals = _run(device, horizon, args.max_fronts)
    _write_text(args.output, io_format.write_arrivals_csv(arrivals))
    print(
        f"arrivals: {len(arrivals.entries)} moments, {arrivals.total_count} walks, "
        f"pruned {arrivals.pruned_count}, lost {arrivals.lost_count}, horizon {horizon}",
        file=sys.stderr,
    )
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    inst = io_format.read_instance(_read_text(args.instance))
    try:
        result = compile_instance(inst, args.k)
    except DegenerateInstance as exc:
        doc = {"answer": "YES" if exc.answer else "NO", "trivial": str(exc)}
        _write_text(args.output, io_format.dumps(doc))
        return EXIT_YES if exc.answer else EXIT_NO

    horizon = horizon_for(result) if args.horizon is None else args.horizon
    if args.device_out:
        _write_text(args.device_out, io_format.write_device(result.device, result.readout))
    arrivals = _run(result.device, horizon, args.max_fronts)
    if args.arrivals_out:
        _write_text(args.arrivals_out, io_format.write_arrivals_csv(arrivals))
    decision = read(arrivals, result.readout)
    doc = io_format.decision_to_dict(decision, result.readout)
    doc["semantics"] = result.semantics

    if args.verify:
        oracle = solve_oracle(inst)
        agrees = oracle.count == decision.multiplicity and oracle.answer == decision.answer.value
        doc["oracle"] = {**io_format.oracle_to_dict(oracle), "agrees": agrees}
        if not agrees:
            sys.stderr.write("oracle disagreement\n--- device\n")
            sys.stderr.write(io_format.write_device(result.device, result.readout))
            sys.stderr.write("--- arrivals\n")
            sys.stderr.write(io_format.write_arrivals_csv(arrivals))
            sys.stderr.write(
                f"--- oracle count {oracle.count}, device multiplicity {decision.multiplicity}\n"
            )
            _write_text(args.output, io_format.dumps(doc))
            return EXIT_ERROR

    _write_text(args.output, io_format.dumps(doc))
    return EXIT_YES if decision.yes else EXIT_NO


def _growth(args) -> int:
    res = growth_classification(args.growth, args.sizes, args.threshold)
    doc = {
        "kind": res.kind,
        "sizes": res.sizes,
        "max_delays": [str(d) for d in res.max_delays],
        "ratios": [f"{r.numerator}/{r.denominator}" for r in res.ratios],
        "verdict": res.verdict,
    }
    _write_text(args.output, io_format.dumps(doc))
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    if (args.input is None) == (args.growth is None):
        raise CliError("give exactly one of an input file or --growth KIND")
    if args.growth is not None:
        if not args.sizes:
            raise CliError("--growth needs --sizes")
        return _growth(args)

    text = _read_text(args.input)
    try:
        is_instance = "problem" in json.loads(text)
    except (json.JSONDecodeError, TypeError):
        raise io_format.MalformedDocument(f"{args.input}: not valid JSON")
    if is_instance:
        result = compile_instance(io_format.read_instance(text), args.k)
        device, readout = result.device, result.readout
    else:
        device, readout = io_format.read_device(text)

    horizon = args.horizon
    if horizon is None:
        horizon = longest_path_delay(device)
    if horizon is None:
        if readout is None:
            raise CliError("device has cycles and no readout; pass --horizon")
        horizon = readout.hi
    arrivals = _run(device, horizon, args.max_fronts)
    report = device_report(device, arrivals, PhysicalParams(args.v, args.P))
    _write_text(args.output, io_format.write_report(report))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = io_format.read_instance(_read_text(args.instance))
    _write_text(args.output, io_format.dumps(io_format.oracle_to_dict(solve_oracle(inst))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delaysolve",
        description="Compile NP-complete instances into delay devices and simulate them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, sim=True):
        p.add_argument("-o", "--output", help="output file (default: stdout)")
        if k:
            p.add_argument("-k", type=_positive, default=1, help="constant cable delay (default 1)")
        if sim:
            p.add_argument("--horizon", type=_nonnegative, help="simulation horizon in time units")
            p.add_argument(
                "--max-fronts",
                type=_positive,
                default=DEFAULT_MAX_FRONTS,
                help=f"abort once live fronts exceed this (default {DEFAULT_MAX_FRONTS})",
            )

    p = sub.add_parser("compile", help="instance -> device document")
    p.add_argument("instance")
    common(p, sim=False)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="device document -> arrivals CSV")
    p.add_argument("device")
    common(p, k=False)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve", help="compile, simulate and read out an instance")
    p.add_argument("instance")
    common(p)
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
    p.add_argument("--device-out", help="also write the compiled device here")
    p.add_argument("--arrivals-out", help="also write the arrivals CSV here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="cable length / intensity report, or delay growth")
    p.add_argument("input", nargs="?", help="instance or device document")
    common(p)
    p.add_argument("--v", default="3e8", help="signal speed in m/s (default 3e8)")
    p.add_argument("--P", default="1e-12", help="reading precision in s (default 1e-12)")
    p.add_argument("--growth", choices=FAMILY_KINDS, help="classify delay growth for a family")
    p.add_argument("--sizes", type=_positive, nargs="+", help="family sizes, ascending")
    p.add_argument("--threshold", default="2", help="ratio threshold for 'exponential'")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle", help="brute-force answer for an instance")
    p.add_argument("instance")
    common(p, k=False, sim=False)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (
        io_format.FormatError,
        DeviceError,
        InstanceError,
        HorizonError,
        EnumerationLimit,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
