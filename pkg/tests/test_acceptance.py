"""Exit criteria. Each test prints one PASS/FAIL line, visible even under capture."""
import itertools
import random
import time

import pytest

from gridcycle.blocks import BlockKind
from gridcycle.composer import ComposedAdversary, tile
from gridcycle.game import EarlyAnswer, Verdict, make_algorithm_factory, run_game
from gridcycle.grid import Grid, GridDims, PartialGrid, has_cycle, has_cycle_dfs, parse_grid
from gridcycle.verifier import ambiguity_oracle, verify_block_exhaustive, verify_grid_random

from .conftest import FIGURE_GRIDS

DIMS_2_TO_7 = [(m, n) for m in range(2, 8) for n in range(2, 8)]


@pytest.fixture
def criterion(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = []

    def record(name, ok, detail=""):
        lines.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else ""))
        return ok

    yield record
    if reporter is not None:
        reporter.write_line("")
        for line in lines:
            reporter.write_line(line)
    else:
        for line in lines:
            print(line)


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


@pytest.mark.parametrize(
    "kind,mode,orders,limit",
    [
        (BlockKind.B2x2, "both", 24, 1.0),
        (BlockKind.B2x3, "both", 720, 5.0),
        (BlockKind.B3x2, "both", 720, 5.0),
        (BlockKind.B3x3, "witnesses", 362_880, 120.0),
    ],
)
def test_ac1_exhaustive_blocks(criterion, kind, mode, orders, limit):
    report, elapsed = timed(verify_block_exhaustive, kind, mode)
    ok = report.ok and report.orders_checked == orders and elapsed < limit
    criterion(f"AC1 block {kind.name} mode={mode}", ok,
              f"{report.summary()} in {elapsed:.2f}s (limit {limit:g}s)")
    assert ok, report.render()


def test_ac1_3x3_oracle_sample(criterion):
    report = verify_block_exhaustive(BlockKind.B3x3, "oracle", sample_fraction=0.01, seed=1)
    expected = 362_880 * 0.01
    ok = report.ok and 0.8 * expected < report.orders_checked < 1.2 * expected
    criterion("AC1 block B3x3 mode=oracle 1% sample", ok, report.summary())
    assert ok, report.render()


def test_ac2_composed_certification(criterion):
    start = time.perf_counter()
    bad = []
    for m, n in DIMS_2_TO_7:
        report = verify_grid_random(GridDims(m, n), 1000, seed=42)
        if not report.ok or report.orders_checked != 1000:
            bad.append((m, n, report.summary()))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    criterion("AC2 composed grids 2..7 x 2..7, 1000 orders each", ok,
              f"{36 - len(bad)}/36 grids clean in {elapsed:.1f}s (limit 600s)")
    assert ok, bad


def test_ac3_theorem_reproduction(criterion):
    factories = {"union-find": make_algorithm_factory("union-find"), "dfs": make_algorithm_factory("dfs")}
    for seed in range(5):
        factories[f"random-order(seed={seed})"] = make_algorithm_factory("random-order", seed)
    bad = []
    games = 0
    for name, factory in factories.items():
        for m, n in DIMS_2_TO_7:
            t = run_game(factory, ComposedAdversary.for_dims(m, n))
            games += 1
            if t.query_count != m * n or t.verdict is not Verdict.CORRECT_BOTH_BRANCHES:
                bad.append((name, m, n, t.query_count, t.verdict_label))
    ok = not bad
    criterion("AC3 every algorithm reads all m*n cells and is right on both branches", ok,
              f"{games - len(bad)}/{games} games")
    assert ok, bad


def test_ac4_defeat_demonstration(criterion):
    bad = []
    games = 0
    for m, n in itertools.product(range(2, 6), repeat=2):
        for k in range(m * n):
            for answer in (True, False):
                t = run_game(lambda: EarlyAnswer(k, answer), ComposedAdversary.for_dims(m, n))
                games += 1
                counter = t.witnesses.get("counterexample")
                if t.verdict is not Verdict.DEFEATED_EARLY_ANSWER or counter is None or has_cycle(counter) == answer:
                    bad.append((m, n, k, answer))
    ok = not bad
    criterion("AC4 early answers are defeated with verified counterexamples", ok, f"{games - len(bad)}/{games} games")
    assert ok, bad


def test_ac5_oracle_cross_validation(criterion):
    mismatches = 0
    exhaustive = 0
    for rows in range(1, 10):
        for cols in range(1, 10 // rows + 1):
            if rows * cols > 9:
                continue
            dims = GridDims(rows, cols)
            for bits in itertools.product("ab", repeat=dims.size):
                grid = Grid(dims, "".join(bits))
                exhaustive += 1
                mismatches += has_cycle(grid) != has_cycle_dfs(grid)
    rng = random.Random(7)
    for _ in range(10_000):
        dims = GridDims(rng.randint(1, 6), rng.randint(1, 6))
        grid = Grid(dims, "".join(rng.choice("abcd") for _ in range(dims.size)))
        mismatches += has_cycle(grid) != has_cycle_dfs(grid)
        if rng.random() < 0.05:
            partial = PartialGrid(dims, {c: grid[c] for c in dims.cells()})
            rep = ambiguity_oracle(partial, {})
            mismatches += rep.cyclic_completion_exists != has_cycle(grid)
            mismatches += rep.acyclic_completion_exists == has_cycle(grid)
    ok = mismatches == 0
    criterion("AC5 union-find agrees with DFS and the completion oracle", ok,
              f"{exhaustive} exhaustive + 10000 random grids, {mismatches} mismatches")
    assert ok


def test_ac6_figure_fixtures(criterion):
    wrong = [name for name, (text, expected) in FIGURE_GRIDS.items() if has_cycle(parse_grid(text)) is not expected]
    ok = not wrong
    criterion("AC6 figure grids give the captioned outcomes", ok, f"{len(FIGURE_GRIDS) - len(wrong)}/{len(FIGURE_GRIDS)}")
    assert ok, wrong


def test_ac7_tiling_properties(criterion):
    bad = []
    for rows, cols in itertools.product(range(2, 13), repeat=2):
        t = tile(GridDims(rows, cols))
        cover = [cell for spec in t for cell in spec.footprint()]
        if sorted(cover) != list(GridDims(rows, cols).cells()):
            bad.append((rows, cols, "cover"))
        if sum(t.row_bands) != rows or sum(t.col_bands) != cols:
            bad.append((rows, cols, "band sums"))
        for i, j in itertools.product(range(len(t.row_bands)), range(len(t.col_bands))):
            here = set(t.blocks[i][j].alphabet)
            for di, dj in ((1, 0), (0, 1)):
                if i + di < len(t.row_bands) and j + dj < len(t.col_bands):
                    if here & set(t.blocks[i + di][j + dj].alphabet):
                        bad.append((rows, cols, "alphabet", i, j))
    ok = not bad
    criterion("AC7 tilings partition 2..12 x 2..12 with disjoint neighbor alphabets", ok, f"{121} dims, {len(bad)} problems")
    assert ok, bad[:10]
