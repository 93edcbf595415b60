"""Command-line front end.

Results go to stdout and diagnostics to stderr.  Exit codes are the machine
contract: 0 for success or acceptance, 1 for a negative result (invalid,
rejected, undefined, no witness, no solution), 2 for malformed input, 3 for
an exhausted resource budget.  File arguments accept ``-`` for stdin.
"""

from __future__ import annotations

import argparse
import sys

from .automata import check_run, member, validate_automaton
from .bench import run_bench, write_csv, write_plot
from .cpds import bounded_reach
from .emptiness import EnumerationBounds, is_empty_bounded
from .errors import (
    DimensionMismatch,
    MalformedCertificate,
    MalformedWitness,
    OrderMismatch,
    ParseError,
    ResourceLimitExceeded,
    UndefinedOperation,
)
from .reduction import build_automaton, decode_witness, encode_witness
from .stacks import Operation, apply_op, validate_stack
from .textio import (
    format_automaton,
    format_configuration,
    format_solution,
    format_stack,
    parse_automaton,
    parse_configuration,
    parse_cpds,
    parse_run,
    parse_solution,
    parse_stack,
    parse_tiling,
)
from .tiling import check_solution, solve_bruteforce

__all__ = ["main"]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def _load_automaton(path: str):
    return parse_automaton(_read(path))


def _initial(args) -> frozenset:
    return frozenset(args.state)


def _cmd_validate_stack(args) -> int:
    w = parse_stack(_read(args.file))
    order = args.order if args.order is not None else w.order
    if validate_stack(w, order):
        print("valid")
        return 0
    print("invalid")
    return 1


def _cmd_apply(args) -> int:
    try:
        op = Operation.parse(args.op)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    w = parse_stack(_read(args.file))
    try:
        print(format_stack(apply_op(op, w)))
    except UndefinedOperation:
        print("undefined")
        return 1
    return 0


def _cmd_member(args) -> int:
    aut = _load_automaton(args.automaton)
    w = parse_stack(_read(args.stack))
    if member(w, aut, _initial(args)):
        print("accept")
        return 0
    print("reject")
    return 1


def _cmd_check_run(args) -> int:
    aut = _load_automaton(args.automaton)
    w = parse_stack(_read(args.stack))
    run = parse_run(_read(args.run))
    if check_run(w, aut, run, _initial(args)):
        print("valid")
        return 0
    print("invalid")
    return 1


def _cmd_empty(args) -> int:
    aut = _load_automaton(args.automaton)
    alphabet = tuple(args.alphabet) if args.alphabet else tuple(sorted(aut.alphabet))
    bounds = EnumerationBounds(args.max_atoms, args.max_width, alphabet)
    verdict = is_empty_bounded(aut, _initial(args), bounds, budget=args.budget)
    if verdict:
        print(format_stack(verdict.stack))
        return 0
    print("no-witness-within-bounds")
    print(
        "note: the bounded space is exhausted; this is not a proof of emptiness",
        file=sys.stderr,
    )
    return 1


def _cmd_tiling_solve(args) -> int:
    problem = parse_tiling(_read(args.instance))
    grid = solve_bruteforce(problem, args.n)
    if grid is None:
        print("no-solution")
        return 1
    sys.stdout.write(format_solution(grid, args.n))
    return 0


def _cmd_tiling_check(args) -> int:
    problem = parse_tiling(_read(args.instance))
    grid = parse_solution(_read(args.solution), args.n)
    if check_solution(problem, args.n, grid):
        print("valid")
        return 0
    print("invalid")
    return 1


def _cmd_reduce(args) -> int:
    problem = parse_tiling(_read(args.instance))
    out = build_automaton(problem, args.n)
    issues = validate_automaton(out.automaton)
    if issues:
        raise AssertionError(f"generated automaton is invalid: {issues[0]}")
    _write(args.output, format_automaton(out.automaton))
    print(f"initial state: {out.initial}", file=sys.stderr)
    return 0


def _cmd_encode_witness(args) -> int:
    problem = parse_tiling(_read(args.instance))
    grid = parse_solution(_read(args.solution), args.n)
    w = encode_witness(problem, args.n, grid)
    _write(args.output, format_stack(w) + "\n")
    return 0


def _cmd_decode_witness(args) -> int:
    w = parse_stack(_read(args.file))
    grid = decode_witness(w, args.n)
    sys.stdout.write(format_solution(grid, args.n))
    return 0


def _cmd_cpds_step(args) -> int:
    system = parse_cpds(_read(args.system))
    conf = parse_configuration(_read(args.config))
    reached = bounded_reach(conf, system, args.depth, max_visited=args.max_visited)
    for c in sorted(reached, key=lambda c: (c.control, format_stack(c.stack))):
        sys.stdout.write(format_configuration(c))
    return 0


def _cmd_bench(args) -> int:
    rows = run_bench(args.sizes, repeats=args.repeats)
    print("k,seconds_k,seconds_2k,ratio")
    for row in rows:
        print(f"{row.k},{row.seconds_k:.6f},{row.seconds_2k:.6f},{row.ratio:.3f}")
    write_csv(rows, args.csv)
    write_plot(rows, args.plot)
    worst = max(row.ratio for row in rows)
    print(
        f"wrote {args.csv} and {args.plot}; worst doubling ratio {worst:.3f}"
        " (informational, threshold 3)",
        file=sys.stderr,
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpstacks",
        description="Collapsible pushdown stacks, stack automata, and the"
        " tiling reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-stack", help="check well-formedness of a stack")
    p.add_argument("file", help="stack file, - for stdin")
    p.add_argument("--order", type=int, help="expected order (default: as written)")
    p.set_defaults(func=_cmd_validate_stack)

    p = sub.add_parser("apply", help="apply one stack operation")
    p.add_argument("--op", required=True, help="e.g. pop1, push2, collapse2, cpush_a_2, rew_b")
    p.add_argument("file", help="stack file, - for stdin")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("member", help="membership test")
    p.add_argument("--automaton", required=True)
    p.add_argument("--state", action="append", required=True, help="initial state (repeatable)")
    p.add_argument("--stack", required=True)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("check-run", help="validate a run certificate")
    p.add_argument("--automaton", required=True)
    p.add_argument("--stack", required=True)
    p.add_argument("--run", required=True)
    p.add_argument("--state", action="append", required=True)
    p.set_defaults(func=_cmd_check_run)

    p = sub.add_parser("empty", help="bounded non-emptiness search")
    p.add_argument("--automaton", required=True)
    p.add_argument("--state", action="append", required=True)
    p.add_argument("--max-atoms", type=int, required=True)
    p.add_argument("--max-width", type=int, required=True)
    p.add_argument("--budget", type=int, help="cap on membership tests")
    p.add_argument(
        "--alphabet",
        nargs="+",
        help="characters to enumerate over (default: the automaton's alphabet)",
    )
    p.set_defaults(func=_cmd_empty)

    p = sub.add_parser("tiling", help="tiling problems")
    tsub = p.add_subparsers(dest="tiling_command", required=True)
    ps = tsub.add_parser("solve", help="brute-force solve")
    ps.add_argument("--instance", required=True)
    ps.add_argument("--n", type=int, required=True)
    ps.set_defaults(func=_cmd_tiling_solve)
    pc = tsub.add_parser("check", help="check a solution")
    pc.add_argument("--instance", required=True)
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--solution", required=True)
    pc.set_defaults(func=_cmd_tiling_check)

    p = sub.add_parser("reduce", help="compile a tiling instance to an automaton")
    p.add_argument("--instance", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", default="-", help="output file, - for stdout")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("encode-witness", help="encode a solution as a stack")
    p.add_argument("--instance", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("-o", "--output", default="-", help="output file, - for stdout")
    p.set_defaults(func=_cmd_encode_witness)

    p = sub.add_parser("decode-witness", help="recover the grid from a witness stack")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("file", help="stack file, - for stdin")
    p.set_defaults(func=_cmd_decode_witness)

    p = sub.add_parser("cpds", help="pushdown systems")
    csub = p.add_subparsers(dest="cpds_command", required=True)
    pp = csub.add_parser("step", help="bounded reachability from a configuration")
    pp.add_argument("--system", required=True)
    pp.add_argument("--config", required=True)
    pp.add_argument("--depth", type=int, default=1)
    pp.add_argument("--max-visited", type=int)
    pp.set_defaults(func=_cmd_cpds_step)

    p = sub.add_parser("bench", help="time membership on chain stacks")
    p.add_argument("--sizes", type=int, nargs="+", default=[1000, 10000, 100000])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--csv", default="bench.csv")
    p.add_argument("--plot", default="bench.png")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help; keep the contract.
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        ParseError,
        OrderMismatch,
        MalformedCertificate,
        MalformedWitness,
        DimensionMismatch,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
