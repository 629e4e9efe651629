"""Independent certification that the adversaries keep both outcomes open.

Two routes are checked against each other: the adversaries' own witness fills
(validated with :func:`has_cycle`) and a brute-force enumeration of every
completion of the unread cells.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from collections.abc import Mapping
from dataclasses import dataclass, field

from .blocks import BlockAdversary, BlockAlphabet, BlockKind, FinalChoice, Phase
from .composer import ComposedAdversary, GlobalFinalChoice, Tiling
from .errors import BudgetExceededError, UsageError
from .grid import Cell, Grid, GridDims, PartialGrid
from .kernels import has_cycle_flat

DEFAULT_BUDGET = 2**20
MODES = ("witnesses", "oracle", "both")


@dataclass
class AmbiguityReport:
    prefix_length: int
    cyclic_completion_exists: bool
    acyclic_completion_exists: bool
    cyclic_example: Grid | None = None
    acyclic_example: Grid | None = None
    completions_checked: int = 0

    @property
    def ambiguous(self) -> bool:
        return self.cyclic_completion_exists and self.acyclic_completion_exists


def ambiguity_oracle(
    partial: PartialGrid,
    per_cell_alphabet: Mapping[Cell, frozenset[str] | set[str] | tuple[str, ...]],
    budget: int = DEFAULT_BUDGET,
) -> AmbiguityReport:
    """Enumerate completions of the unread cells, stopping once both outcomes are seen.

    Raises :class:`BudgetExceededError` rather than answering from a partial search.
    """
    dims = partial.dims
    unread = partial.unread()
    if set(per_cell_alphabet) != set(unread):
        raise UsageError("per-cell alphabets must cover exactly the unread cells")
    choices = [sorted(per_cell_alphabet[c]) for c in unread]
    total = math.prod(len(ch) for ch in choices)
    if total > budget:
        raise BudgetExceededError(f"{total} completions exceed budget {budget}")
    chars = [partial.assigned.get(c, "") for c in dims.cells()]
    slots = [dims.index(c) for c in unread]
    report = AmbiguityReport(len(partial), False, False)
    for combo in itertools.product(*choices):
        for i, sym in zip(slots, combo):
            chars[i] = sym
        flat = "".join(chars)
        report.completions_checked += 1
        if has_cycle_flat(flat, dims.rows, dims.cols):
            if not report.cyclic_completion_exists:
                report.cyclic_completion_exists = True
                report.cyclic_example = Grid(dims, flat)
        elif not report.acyclic_completion_exists:
            report.acyclic_completion_exists = True
            report.acyclic_example = Grid(dims, flat)
        if report.ambiguous:
            break
    return report


@dataclass(frozen=True)
class Failure:
    order_index: int
    order: tuple[Cell, ...]
    prefix: int
    problem: str

    def __str__(self) -> str:
        return f"order #{self.order_index} {list(self.order)} prefix {self.prefix}: {self.problem}"


@dataclass
class SweepReport:
    target: str
    mode: str
    orders_checked: int = 0
    prefixes_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def summary(self) -> str:
        return f"{self.orders_checked} orders, {len(self.failures)} failures"

    def render(self, max_failures: int = 10) -> str:
        lines = [
            self.summary(),
            f"target: {self.target}",
            f"mode: {self.mode}",
            f"prefixes checked: {self.prefixes_checked}",
            f"wall time: {self.wall_time:.2f}s",
        ]
        for f in self.failures[:max_failures]:
            lines.append(f"FAIL {f}")
        if len(self.failures) > max_failures:
            lines.append(f"... {len(self.failures) - max_failures} more")
        return "\n".join(lines)


def _check_block_order(
    kind: BlockKind,
    alphabet: BlockAlphabet,
    order: tuple[Cell, ...],
    order_index: int,
    use_witnesses: bool,
    use_oracle: bool,
    failures: list[Failure],
) -> None:
    rows, cols = kind.shape
    dims = GridDims(rows, cols)
    cells = tuple(dims.cells())
    n = len(cells)
    adv = BlockAdversary(kind, alphabet)
    pair_alphabet = (alphabet.primary, alphabet.breaker)
    max_breakers = 0 if kind is BlockKind.B2x2 else 1

    def fail(prefix, problem):
        failures.append(Failure(order_index, order, prefix, problem))

    for prefix in range(n):
        responses = adv.responses
        witness_ok = None
        if use_witnesses:
            cycle_fill, acyclic_fill = adv.witnesses()
            cyc = "".join(responses.get(c) or cycle_fill[c] for c in cells)
            acy = "".join(responses.get(c) or acyclic_fill[c] for c in cells)
            has_cyc = has_cycle_flat(cyc, rows, cols)
            has_acy = not has_cycle_flat(acy, rows, cols)
            witness_ok = has_cyc and has_acy
            if not has_cyc:
                fail(prefix, "cycle witness has no cycle")
            if not has_acy:
                fail(prefix, "acyclic witness has a cycle")
        if use_oracle:
            partial = PartialGrid(dims, dict(responses))
            report = ambiguity_oracle(partial, {c: pair_alphabet for c in partial.unread()})
            if not report.cyclic_completion_exists:
                fail(prefix, "oracle: no cyclic completion")
            if not report.acyclic_completion_exists:
                fail(prefix, "oracle: no acyclic completion")
            if witness_ok is not None and witness_ok != report.ambiguous:
                fail(prefix, "witness and oracle disagree")
        if adv.breakers_emitted() > max_breakers:
            fail(prefix, f"{adv.breakers_emitted()} breakers before final cell")

        resp = adv.respond(order[prefix])
        if isinstance(resp, FinalChoice) != (prefix == n - 1):
            fail(prefix, f"final choice surfaced at query {prefix + 1} of {n}")
            return

    if kind is not BlockKind.B2x2 and adv.breakers_emitted() != 1:
        fail(n, f"expected exactly one breaker before final cell, saw {adv.breakers_emitted()}")
    other = adv.copy()
    adv.commit(True)
    other.commit(False)
    if not has_cycle_flat("".join(adv.responses[c] for c in cells), rows, cols):
        fail(n, "commit(cycle) left the block acyclic")
    if has_cycle_flat("".join(other.responses[c] for c in cells), rows, cols):
        fail(n, "commit(acyclic) left a cycle")


def verify_block_exhaustive(
    kind: BlockKind,
    mode: str = "witnesses",
    sample_fraction: float | None = None,
    seed: int = 0,
    alphabet: BlockAlphabet | None = None,
) -> SweepReport:
    """Play every query order (lexicographic over row-major cells) against one block.

    With ``sample_fraction`` only a seeded subset of the orders is checked.
    """
    if mode not in MODES:
        raise UsageError(f"mode must be one of {MODES}")
    alphabet = alphabet or BlockAlphabet()
    report = SweepReport(target=kind.name, mode=mode if sample_fraction is None else f"{mode} (sample {sample_fraction:g})")
    rng = random.Random(seed)
    cells = list(GridDims(*kind.shape).cells())
    use_w = mode in ("witnesses", "both")
    use_o = mode in ("oracle", "both")
    start = time.perf_counter()
    for idx, order in enumerate(itertools.permutations(cells)):
        if sample_fraction is not None and rng.random() >= sample_fraction:
            continue
        _check_block_order(kind, alphabet, order, idx, use_w, use_o, report.failures)
        report.orders_checked += 1
        report.prefixes_checked += len(cells)
    report.wall_time = time.perf_counter() - start
    return report


def _check_grid_order(
    tiling: Tiling,
    order: list[Cell],
    order_index: int,
    oracle_max_unread: int,
    failures: list[Failure],
) -> None:
    dims = tiling.dims
    n = dims.size
    adv = ComposedAdversary(tiling)

    def fail(prefix, problem):
        failures.append(Failure(order_index, tuple(order), prefix, problem))

    for prefix in range(n):
        cycle_grid, acyclic_grid = adv.witnesses()
        witness_ok = True
        if not has_cycle_flat(cycle_grid.cells, dims.rows, dims.cols):
            fail(prefix, "cycle witness has no cycle")
            witness_ok = False
        if has_cycle_flat(acyclic_grid.cells, dims.rows, dims.cols):
            fail(prefix, "acyclic witness has a cycle")
            witness_ok = False
        unread = n - prefix
        if unread <= oracle_max_unread:
            alph = {c: tuple(tiling.block_of(c)[0].alphabet) for c in adv.observed.unread()}
            rep = ambiguity_oracle(adv.observed, alph)
            if rep.ambiguous != witness_ok:
                fail(prefix, "witness and oracle disagree")
        for k in adv.early_commits:
            if adv.block_advs[k].phase is not Phase.COMMITTED:
                fail(prefix, f"block {k} resolved early but was not committed")
        resp = adv.respond(order[prefix])
        if isinstance(resp, GlobalFinalChoice) != (prefix == n - 1):
            fail(prefix, f"global final choice surfaced at query {prefix + 1} of {n}")
            return

    other = adv.copy()
    adv.commit(True)
    other.commit(False)
    grid_cyc = "".join(adv.observed[c] for c in dims.cells())
    grid_acy = "".join(other.observed[c] for c in dims.cells())
    if not has_cycle_flat(grid_cyc, dims.rows, dims.cols):
        fail(n, "global commit(cycle) produced no cycle")
    if has_cycle_flat(grid_acy, dims.rows, dims.cols):
        fail(n, "global commit(acyclic) produced a cycle")


def verify_grid_random(
    dims: GridDims,
    num_orders: int,
    seed: int = 0,
    oracle_max_unread: int = 0,
    dedup: bool = False,
) -> SweepReport:
    """Play seeded random query orders against the composed adversary.

    Prefixes with at most ``oracle_max_unread`` unread cells are also cross-checked
    by enumeration over each block's two symbols.  With ``dedup`` no order repeats;
    when ``num_orders`` covers every order, all of them are played lexicographically.
    """
    dims.require_adversarial()
    tiling = Tiling(dims)
    cells = list(dims.cells())
    mode = "witnesses" if oracle_max_unread <= 0 else f"witnesses+oracle(<= {oracle_max_unread} unread)"
    report = SweepReport(target=f"grid {dims}", mode=mode)
    start = time.perf_counter()
    if dedup and num_orders >= math.factorial(len(cells)):
        orders = (list(p) for p in itertools.permutations(cells))
    else:
        orders = _random_orders(cells, num_orders, seed, dedup)
    for idx, order in enumerate(orders):
        _check_grid_order(tiling, order, idx, oracle_max_unread, report.failures)
        report.orders_checked += 1
        report.prefixes_checked += len(cells)
    report.wall_time = time.perf_counter() - start
    return report


def _random_orders(cells: list[Cell], count: int, seed: int, dedup: bool):
    rng = random.Random(seed)
    seen = set()
    produced = 0
    while produced < count:
        order = cells[:]
        rng.shuffle(order)
        if dedup:
            key = tuple(order)
            if key in seen:
                continue
            seen.add(key)
        produced += 1
        yield order
