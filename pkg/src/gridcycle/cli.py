"""Command-line entry point.

Exit codes: 0 success, 1 verification failure or defeat, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .blocks import BlockKind
from .composer import ComposedAdversary, GlobalFinalChoice, Tiling
from .errors import GridCycleError, GridParseError
from .game import FinalChoicePolicy, make_algorithm_factory, run_game
from .grid import GridDims, has_cycle, parse_grid, serialize_grid
from .verifier import verify_block_exhaustive, verify_grid_random

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dims(args) -> GridDims:
    if args.rows < 2 or args.cols < 2:
        raise SystemExit(_usage(f"grid must be at least 2x2, got {args.rows}x{args.cols}"))
    return GridDims(args.rows, args.cols)


def _usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_detect(args) -> int:
    try:
        grid = parse_grid(Path(args.input).read_text())
    except OSError as exc:
        return _usage(str(exc))
    except GridParseError as exc:
        return _usage(f"{args.input}: {exc}")
    print("cycle" if has_cycle(grid) else "no-cycle")
    return EXIT_OK


def cmd_simulate(args) -> int:
    dims = _dims(args)
    factory = make_algorithm_factory(args.algorithm, args.seed)
    transcript = run_game(factory, ComposedAdversary(Tiling(dims)), FinalChoicePolicy(args.policy))
    if args.trace:
        Path(args.trace).write_text(transcript.to_json())
    print(f"{transcript.query_count} {transcript.verdict_label}")
    return EXIT_OK if transcript.succeeded else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.target == "block":
        report = verify_block_exhaustive(
            BlockKind.from_name(args.size),
            args.mode,
            sample_fraction=args.sample,
            seed=args.seed,
        )
    else:
        report = verify_grid_random(
            _dims(args), args.orders, args.seed, oracle_max_unread=args.oracle_max_unread
        )
    print(report.render())
    return report.exit_code


def cmd_tile(args) -> int:
    tiling = Tiling(_dims(args))
    print(tiling.render())
    print()
    print(tiling.render_cells())
    return EXIT_OK


PLAY_HELP = """commands:
  r c     read the cell at row r, column c (0-based)
  yes     answer: the grid has a cycle
  no      answer: the grid has no cycle
  q       quit"""


def cmd_play(args, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    dims = _dims(args)
    adv = ComposedAdversary(Tiling(dims))
    if args.policy is not None:
        realize_cycle = args.policy == "cycle"
    else:
        realize_cycle = random.Random(args.seed).random() < 0.5

    def say(*lines):
        for line in lines:
            print(line, file=out)

    say(f"{dims} grid, {dims.size} hidden cells. Find out whether it has a cycle.", PLAY_HELP)
    reads = 0
    while True:
        say(adv.observed.render())
        out.write("> ")
        out.flush()
        line = stdin.readline()
        if not line:
            say("", f"session ended after {reads} reads")
            return EXIT_OK
        words = line.strip().lower().split()
        if not words:
            continue
        if words[0] in ("q", "quit"):
            say(f"quit after {reads} reads")
            return EXIT_OK
        if words[0] in ("help", "?"):
            say(PLAY_HELP)
            continue
        if words[0] in ("yes", "no"):
            answer = words[0] == "yes"
            if adv.committed is None:
                cycle_grid, acyclic_grid = adv.witnesses()
                counter = acyclic_grid if answer else cycle_grid
                say(f"answered after {reads} of {dims.size} reads.",
                    "you are defeated by this completion:", serialize_grid(counter).rstrip("\n"),
                    f"({'has a cycle' if has_cycle(counter) else 'has no cycle'})")
                return EXIT_FAIL
            grid = parse_grid(adv.observed.render())
            truth = has_cycle(grid)
            verdict = "right" if answer == truth else "wrong"
            say(f"the grid {'has a cycle' if truth else 'has no cycle'}; you are {verdict}.")
            return EXIT_OK if answer == truth else EXIT_FAIL
        if adv.committed is not None:
            say("every cell is read; answer yes or no")
            continue
        try:
            r, c = (int(w) for w in words)
        except ValueError:
            say("expected 'r c', 'yes', 'no' or 'q'")
            continue
        if not dims.contains((r, c)):
            say(f"({r}, {c}) is outside the {dims} grid")
            continue
        if (r, c) in adv.observed:
            say(f"({r}, {c}) was already read: {adv.observed[(r, c)]}")
            continue
        resp = adv.respond((r, c))
        reads += 1
        if isinstance(resp, GlobalFinalChoice):
            symbol = adv.commit(realize_cycle)
            say(f"({r}, {c}) -> {symbol}   (last cell: the adversary realized the "
                f"{'cycle' if realize_cycle else 'acyclic'} branch)")
        else:
            say(f"({r}, {c}) -> {resp}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridcycle", description="Adversary for grid cycle detection.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="decide whether a grid file contains a cycle")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("simulate", help="play one algorithm against the adversary")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--algorithm", choices=["union-find", "dfs", "random-order"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", choices=[p.value for p in FinalChoicePolicy], default="fork")
    p.add_argument("--trace", help="write the game transcript (JSON) here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="certify the adversaries")
    vsub = p.add_subparsers(dest="target", required=True)
    vb = vsub.add_parser("block", help="every query order on one block")
    vb.add_argument("--size", choices=["2x2", "2x3", "3x2", "3x3"], required=True)
    vb.add_argument("--mode", choices=["witnesses", "oracle", "both"], default="witnesses")
    vb.add_argument("--sample", type=float, help="check only this seeded fraction of orders")
    vb.add_argument("--seed", type=int, default=0)
    vb.set_defaults(func=cmd_verify)
    vg = vsub.add_parser("grid", help="seeded random query orders on a composed grid")
    vg.add_argument("--rows", type=int, required=True)
    vg.add_argument("--cols", type=int, required=True)
    vg.add_argument("--orders", type=int, default=1000)
    vg.add_argument("--seed", type=int, default=0)
    vg.add_argument("--oracle-max-unread", type=int, default=0,
                    help="also enumerate completions when at most this many cells are unread")
    vg.set_defaults(func=cmd_verify)

    p = sub.add_parser("tile", help="show the block tiling and alphabets")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("play", help="play against the adversary yourself", epilog=PLAY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", choices=["cycle", "acyclic"],
                   help="branch to realize on the last cell (default: seeded coin flip)")
    p.set_defaults(func=cmd_play)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "sample", None) is not None and not 0 < args.sample <= 1:
        return _usage("--sample must be in (0, 1]")
    if getattr(args, "orders", 1) < 1:
        return _usage("--orders must be positive")
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code
    except GridCycleError as exc:
        return _usage(str(exc))


if __name__ == "__main__":
    sys.exit(main())
