"""Command line interface.

Exit status is 0 on success, 1 for input errors (unreadable or invalid
files, bad arguments) and 2 when a solver fails on valid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .documents import (
    instance_from_document,
    parse_flow_problem,
    parse_instance,
    parse_replay,
    flow_problem_from_document,
)
from .equilibrium import path_cost_coefficients, solve_equilibrium, verify_equilibrium
from .errors import InputError, SolverError
from .exactmath import render
from .pipeline import run_compromise, site_distances
from .report import compromise_report, distances_report, equilibrium_report, render_report

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tradenet", description="Delivery-point placement and path-flow equilibria.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fmt = dict(choices=["text", "csv", "json"], default="text", help="output format (default: text)")
    display = dict(choices=["l-plus-d", "d"], default="l-plus-d",
                   help="producer-site cost display: unit price + distance, or distance only")

    p = sub.add_parser("solve-compromise", help="place delivery points by the compromise principle")
    p.add_argument("instance")
    p.add_argument("--replay", help="JSON file with distance tables to use instead of recomputed ones")
    p.add_argument("--display", **display)
    p.add_argument("--payoff", choices=["revenue", "units"], help="override the instance's payoff mode")
    p.add_argument("--tie", choices=["first", "lex"], default="first", help="tie-break among equal row maxima")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("solve-equilibrium", help="solve a path-flow equilibrium with affine edge costs")
    p.add_argument("problem")
    p.add_argument("--mode", choices=["equal-cost", "nonnegative"], default="equal-cost")
    p.add_argument("--format", **fmt)

    p = sub.add_parser("distances", help="print producer-site or consumer-site shortest-path costs")
    p.add_argument("instance")
    p.add_argument("--metric", choices=["retailer", "consumer"], required=True)
    p.add_argument("--display", **display)
    p.add_argument("--format", **fmt)

    p = sub.add_parser("validate", help="check an instance, flow-problem or replay file")
    p.add_argument("file")
    p.add_argument("--instance", help="instance the replay file refers to")
    return parser


def _cmd_solve_compromise(args) -> str:
    instance = parse_instance(_read(args.instance))
    replay = parse_replay(_read(args.replay), instance) if args.replay else None
    run = run_compromise(instance, replay, payoff=args.payoff, tie_policy=args.tie)
    return render_report(compromise_report(run, args.display), args.format)


def _cmd_solve_equilibrium(args) -> str:
    problem = parse_flow_problem(_read(args.problem))
    result = solve_equilibrium(problem, args.mode)
    check = verify_equilibrium(problem, result)
    return render_report(equilibrium_report(problem, path_cost_coefficients(problem), result, check), args.format)


def _cmd_distances(args) -> str:
    instance = parse_instance(_read(args.instance))
    table = site_distances(instance, args.metric)
    return render_report(distances_report(instance, args.metric, table, args.display), args.format)


def _cmd_validate(args) -> str:
    text = _read(args.file)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict) and "paths" in doc:
        problem = flow_problem_from_document(doc)
        return f"valid flow problem: {len(problem.edges)} edges, {len(problem.paths)} paths, demand {render(problem.demand)}\n"
    if isinstance(doc, dict) and ("producer_site_matrix" in doc or "consumer_site_matrix" in doc):
        if not args.instance:
            raise InputError("validating a replay file needs --instance")
        parse_replay(text, parse_instance(_read(args.instance)))
        return "valid replay tables\n"
    instance = parse_instance(text) if doc is None else instance_from_document(doc)
    return (f"valid instance: {instance.network.node_count} nodes, {len(instance.network.edges)} edges, "
            f"{len(instance.producers)} producers, {len(instance.consumers)} consumers, "
            f"{len(instance.candidate_sites)} candidate sites\n")


COMMANDS = {
    "solve-compromise": _cmd_solve_compromise,
    "solve-equilibrium": _cmd_solve_equilibrium,
    "distances": _cmd_distances,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1, --help exits 0
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        sys.stdout.write(COMMANDS[args.command](args))
    except InputError as exc:
        for msg in exc.errors:
            print(f"input error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        if exc.system is not None:
            for row, b in zip(exc.system.a, exc.system.b):
                print("  [" + " ".join(render(v) for v in row) + f"] = {render(b)}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
