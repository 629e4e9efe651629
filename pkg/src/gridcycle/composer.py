"""Band tiling, checkerboard alphabets, and the composed whole-grid adversary."""
from __future__ import annotations

from dataclasses import dataclass

from .blocks import BlockAdversary, BlockAlphabet, BlockKind, Determined, FinalChoice, Phase
from .errors import ProtocolError, UsageError
from .grid import Cell, Grid, GridDims, PartialGrid

EVEN_ALPHABET = BlockAlphabet("a", "b")
ODD_ALPHABET = BlockAlphabet("c", "d")


def decompose(length: int) -> list[int]:
    """Split ``length`` into bands of 2, with one trailing 3 when odd."""
    if length < 2:
        raise UsageError(f"cannot decompose {length} into bands of 2 and 3")
    if length % 2 == 0:
        return [2] * (length // 2)
    return [2] * ((length - 3) // 2) + [3]


@dataclass(frozen=True)
class BlockSpec:
    origin: Cell
    kind: BlockKind
    band_row: int
    band_col: int
    alphabet: BlockAlphabet

    @property
    def shape(self) -> tuple[int, int]:
        return self.kind.shape

    def footprint(self) -> list[Cell]:
        r0, c0 = self.origin
        h, w = self.kind.shape
        return [(r0 + r, c0 + c) for r in range(h) for c in range(w)]


class Tiling:
    """Product of row bands and column bands; immutable once built."""

    def __init__(
        self,
        dims: GridDims,
        even: BlockAlphabet = EVEN_ALPHABET,
        odd: BlockAlphabet = ODD_ALPHABET,
    ) -> None:
        dims.require_adversarial()
        if set(even) & set(odd):
            raise UsageError("checkerboard alphabets must be disjoint")
        self.dims = dims
        self.row_bands = decompose(dims.rows)
        self.col_bands = decompose(dims.cols)
        row_starts = _starts(self.row_bands)
        col_starts = _starts(self.col_bands)
        self.blocks: list[list[BlockSpec]] = [
            [
                BlockSpec(
                    origin=(row_starts[i], col_starts[j]),
                    kind=BlockKind.from_shape(h, w),
                    band_row=i,
                    band_col=j,
                    alphabet=even if (i + j) % 2 == 0 else odd,
                )
                for j, w in enumerate(self.col_bands)
            ]
            for i, h in enumerate(self.row_bands)
        ]
        # cell coordinate -> (band index, offset within band)
        self._row_lookup = [(i, r - row_starts[i]) for i, h in enumerate(self.row_bands) for r in range(row_starts[i], row_starts[i] + h)]
        self._col_lookup = [(j, c - col_starts[j]) for j, w in enumerate(self.col_bands) for c in range(col_starts[j], col_starts[j] + w)]

    def __iter__(self):
        for row in self.blocks:
            yield from row

    @property
    def band_shape(self) -> tuple[int, int]:
        return len(self.row_bands), len(self.col_bands)

    def block_of(self, cell: Cell) -> tuple[BlockSpec, Cell]:
        self.dims.check(cell)
        i, lr = self._row_lookup[cell[0]]
        j, lc = self._col_lookup[cell[1]]
        return self.blocks[i][j], (lr, lc)

    def render(self) -> str:
        """Band sizes followed by one line per band row; blocks shown as rows x cols."""
        lines = [
            f"grid {self.dims}",
            f"row bands {self.row_bands}",
            f"col bands {self.col_bands}",
            f"blocks {len(self.row_bands)}x{len(self.col_bands)}",
        ]
        for row in self.blocks:
            lines.append("  ".join(
                f"{b.shape[0]}x{b.shape[1]} {b.kind.name:<4} {{{b.alphabet.primary},{b.alphabet.breaker}}}" for b in row
            ))
        return "\n".join(lines)

    def render_cells(self) -> str:
        """Each cell drawn with its block's primary symbol, showing the checkerboard."""
        out = []
        for r in range(self.dims.rows):
            out.append("".join(self.block_of((r, c))[0].alphabet.primary for c in range(self.dims.cols)))
        return "\n".join(out)


def _starts(bands: list[int]) -> list[int]:
    starts, pos = [], 0
    for b in bands:
        starts.append(pos)
        pos += b
    return starts


def tile(dims: GridDims) -> Tiling:
    return Tiling(dims)


@dataclass(frozen=True)
class GlobalFinalChoice:
    cycle_symbol: str
    acyclic_symbol: str


class ComposedAdversary:
    """Routes each query to its block and keeps the whole grid ambiguous.

    A block reaching its own last cell before the grid does is committed acyclic
    on the spot; only the block holding the grid's last unread cell gets to choose.
    """

    def __init__(self, tiling: Tiling) -> None:
        self.tiling = tiling
        self.dims = tiling.dims
        self.specs: list[BlockSpec] = list(tiling)
        self.block_advs: list[BlockAdversary] = [BlockAdversary(s.kind, s.alphabet) for s in self.specs]
        self._index = {(s.band_row, s.band_col): k for k, s in enumerate(self.specs)}
        self.unread_total = self.dims.size
        self.observed = PartialGrid(self.dims)
        self.early_commits: list[int] = []
        self._final: tuple[int, Cell] | None = None
        self.committed: bool | None = None

    def copy(self) -> ComposedAdversary:
        other = ComposedAdversary.__new__(ComposedAdversary)
        other.__dict__.update(self.__dict__)
        other.block_advs = [adv.copy() for adv in self.block_advs]
        other.observed = self.observed.copy()
        other.early_commits = list(self.early_commits)
        return other

    @classmethod
    def for_dims(cls, rows: int, cols: int) -> ComposedAdversary:
        return cls(Tiling(GridDims(rows, cols)))

    def locate(self, cell: Cell) -> tuple[int, Cell]:
        spec, local = self.tiling.block_of(cell)
        return self._index[(spec.band_row, spec.band_col)], local

    def respond(self, cell: Cell) -> str | GlobalFinalChoice:
        if self._final is not None or self.committed is not None:
            raise ProtocolError("the final cell has already been queried")
        self.dims.check(cell)
        if cell in self.observed:
            raise UsageError(f"cell {cell} already read")
        k, local = self.locate(cell)
        adv = self.block_advs[k]
        resp = adv.respond(local)
        self.unread_total -= 1
        if isinstance(resp, Determined):
            self.observed.reveal(cell, resp.symbol)
            return resp.symbol
        if self.unread_total > 0:
            symbol = adv.commit(cycle=False)
            self.early_commits.append(k)
            self.observed.reveal(cell, symbol)
            return symbol
        self._final = (k, cell)
        return GlobalFinalChoice(resp.cycle_symbol, resp.acyclic_symbol)

    def commit(self, cycle: bool) -> str:
        if self._final is None:
            raise ProtocolError("no global final choice is pending")
        k, cell = self._final
        symbol = self.block_advs[k].commit(cycle)
        self.observed.reveal(cell, symbol)
        self._final = None
        self.committed = cycle
        return symbol

    @property
    def pending_final_cell(self) -> Cell | None:
        return self._final[1] if self._final else None

    def witnesses(self) -> tuple[Grid, Grid]:
        """(cyclic completion, acyclic completion) of everything not yet fixed."""
        if self.committed is not None:
            raise ProtocolError("no unread cells remain")
        cols = self.dims.cols
        cycle_chars = [""] * self.dims.size
        acyclic_chars = [""] * self.dims.size
        for cell, sym in self.observed.assigned.items():
            cycle_chars[cell[0] * cols + cell[1]] = sym
            acyclic_chars[cell[0] * cols + cell[1]] = sym
        designated = None
        for k, adv in enumerate(self.block_advs):
            if adv.phase is Phase.COMMITTED:
                continue
            cycle_fill, acyclic_fill = adv.witnesses()
            r0, c0 = self.specs[k].origin
            if designated is None:
                designated = k
                chosen = cycle_fill
            else:
                chosen = acyclic_fill
            for (lr, lc), sym in acyclic_fill.items():
                acyclic_chars[(r0 + lr) * cols + c0 + lc] = sym
            for (lr, lc), sym in chosen.items():
                cycle_chars[(r0 + lr) * cols + c0 + lc] = sym
        if designated is None:
            raise ProtocolError("every block is committed; no unread cells remain")
        return Grid(self.dims, "".join(cycle_chars)), Grid(self.dims, "".join(acyclic_chars))

    def designated_block(self) -> BlockSpec | None:
        for k, adv in enumerate(self.block_advs):
            if adv.phase is not Phase.COMMITTED:
                return self.specs[k]
        return None


def composed_respond(adv: ComposedAdversary, cell: Cell) -> str | GlobalFinalChoice:
    return adv.respond(cell)


def composed_witnesses(adv: ComposedAdversary) -> tuple[Grid, Grid]:
    return adv.witnesses()
