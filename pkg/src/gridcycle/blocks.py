"""Per-block adaptive adversaries for the four block shapes.

Every block adversary answers with its primary symbol until some kind-specific
trigger fires, answers the trigger cell with its breaker symbol, and then keeps
answering primary.  On the block's last unread cell it hands the decision to the
caller: primary completes a cycle, breaker leaves the block acyclic.

Kind names follow width x height, so ``B2x3`` is 3 rows by 2 columns and its
partner pairs are the top and bottom rows::

    paper label      local cell
    1 2              (0,0) (0,1)
    3 4              (1,0) (1,1)
    5 6              (2,0) (2,1)

``B3x2`` is the transpose: 2 rows by 3 columns, partner pairs are the left and
right columns.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ProtocolError, UsageError
from .grid import Cell, Grid, GridDims, PartialGrid, complete, has_cycle


class BlockKind(enum.Enum):
    B2x2 = (2, 2)
    B2x3 = (3, 2)
    B3x2 = (2, 3)
    B3x3 = (3, 3)

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols) of the block."""
        return self.value

    @property
    def size(self) -> int:
        return self.value[0] * self.value[1]

    @classmethod
    def from_shape(cls, rows: int, cols: int) -> BlockKind:
        for kind in cls:
            if kind.value == (rows, cols):
                return kind
        raise UsageError(f"no block kind with shape {rows}x{cols}")

    @classmethod
    def from_name(cls, name: str) -> BlockKind:
        """Parse ``"2x3"`` style names (width x height, matching the member names)."""
        try:
            return cls["B" + name.lower()]
        except KeyError:
            raise UsageError(f"unknown block kind {name!r}") from None


@dataclass(frozen=True)
class BlockAlphabet:
    primary: str = "a"
    breaker: str = "b"

    def __post_init__(self) -> None:
        if self.primary == self.breaker:
            raise UsageError("primary and breaker symbols must differ")
        for sym in (self.primary, self.breaker):
            if len(sym) != 1 or sym.isspace() or not sym.isprintable():
                raise UsageError(f"invalid block symbol {sym!r}")

    def __iter__(self):
        yield self.primary
        yield self.breaker


class Phase(enum.IntEnum):
    STATE0 = 0
    STATE1 = 1
    STATE2_FINAL = 2
    COMMITTED = 3


@dataclass(frozen=True)
class Determined:
    symbol: str


@dataclass(frozen=True)
class FinalChoice:
    cycle_symbol: str
    acyclic_symbol: str


Response = Determined | FinalChoice

CENTER = (1, 1)
# Partner pairs for the 3-row, 2-column block; the transposed block uses columns.
_PAIRS_B2X3 = (((0, 0), (0, 1)), ((2, 0), (2, 1)))
_PAIRS_B3X2 = (((0, 0), (1, 0)), ((0, 2), (1, 2)))
_PARTNERS = {
    BlockKind.B2x3: {a: b for p in _PAIRS_B2X3 for a, b in (p, p[::-1])},
    BlockKind.B3x2: {a: b for p in _PAIRS_B3X2 for a, b in (p, p[::-1])},
}
_PAIRS = {BlockKind.B2x3: _PAIRS_B2X3, BlockKind.B3x2: _PAIRS_B3X2}


class BlockAdversary:
    """State machine for one block.  Not thread-safe; one game per instance."""

    __slots__ = ("kind", "alphabet", "dims", "phase", "responses", "_cells", "_final_cell")

    def __init__(self, kind: BlockKind, alphabet: BlockAlphabet | None = None) -> None:
        self.kind = kind
        self.alphabet = alphabet or BlockAlphabet()
        self.dims = GridDims(*kind.shape)
        self.phase = Phase.STATE0
        self.responses: dict[Cell, str] = {}
        self._cells = tuple(self.dims.cells())
        self._final_cell: Cell | None = None

    def copy(self) -> BlockAdversary:
        other = BlockAdversary.__new__(BlockAdversary)
        other.kind = self.kind
        other.alphabet = self.alphabet
        other.dims = self.dims
        other.phase = self.phase
        other.responses = dict(self.responses)
        other._cells = self._cells
        other._final_cell = self._final_cell
        return other

    @property
    def unread(self) -> list[Cell]:
        return [c for c in self._cells if c not in self.responses and c != self._final_cell]

    @property
    def unread_count(self) -> int:
        """Cells whose symbol is not fixed yet; the pending final cell counts as unread."""
        return self.kind.size - len(self.responses)

    def boundary_reads(self) -> int:
        return sum(1 for c in self.responses if c != CENTER)

    def breakers_emitted(self) -> int:
        return sum(1 for s in self.responses.values() if s == self.alphabet.breaker)

    def respond(self, cell: Cell) -> Response:
        if self.phase >= Phase.STATE2_FINAL:
            raise ProtocolError(f"block already resolved its final cell (phase {self.phase.name})")
        self.dims.check(cell)
        if cell in self.responses:
            raise UsageError(f"cell {cell} already queried")
        primary, breaker = self.alphabet.primary, self.alphabet.breaker

        if self.unread_count == 1:
            self._final_cell = cell
            self.phase = Phase.STATE2_FINAL
            return FinalChoice(primary, breaker)

        symbol = primary
        if self.phase is Phase.STATE0 and self._triggers(cell):
            symbol = breaker
            self.phase = Phase.STATE1
        self.responses[cell] = symbol
        return Determined(symbol)

    def _triggers(self, cell: Cell) -> bool:
        kind = self.kind
        if kind is BlockKind.B2x2:
            return False
        if kind is BlockKind.B3x3:
            # the center, or the read that completes the boundary ring
            return cell == CENTER or self.boundary_reads() == 7
        return _PARTNERS[kind].get(cell) in self.responses

    def witnesses(self) -> tuple[dict[Cell, str], dict[Cell, str]]:
        """Fills for the unread cells: (cycle completion, acyclic completion)."""
        if self.phase is Phase.COMMITTED:
            raise ProtocolError("block is fully committed; nothing left to complete")
        primary, breaker = self.alphabet.primary, self.alphabet.breaker
        pending = [c for c in self._cells if c not in self.responses]
        cycle_fill = dict.fromkeys(pending, primary)
        acyclic_fill = dict(cycle_fill)
        for cell in self._acyclic_breakers(pending):
            acyclic_fill[cell] = breaker
        return cycle_fill, acyclic_fill

    def _acyclic_breakers(self, pending: list[Cell]) -> list[Cell]:
        if self.phase is not Phase.STATE0 or self.kind is BlockKind.B2x2:
            # one breaker anywhere unread already kills the only surviving cycle
            return [pending[0]]
        if self.kind is BlockKind.B3x3:
            # the center alone would leave the outer ring intact
            ring = next(c for c in pending if c != CENTER)
            return [CENTER, ring]
        return [next(c for c in pair if c in pending) for pair in _PAIRS[self.kind]]

    def commit(self, cycle: bool) -> str:
        if self.phase is not Phase.STATE2_FINAL:
            raise ProtocolError(f"commit requires a pending final choice, phase is {self.phase.name}")
        symbol = self.alphabet.primary if cycle else self.alphabet.breaker
        self.responses[self._final_cell] = symbol
        self._final_cell = None
        self.phase = Phase.COMMITTED
        return symbol

    def partial(self) -> PartialGrid:
        return PartialGrid(self.dims, dict(self.responses))

    def grid(self) -> Grid:
        if self.phase is not Phase.COMMITTED:
            raise ProtocolError("block grid is only total after commit")
        return complete(self.partial(), {})

    def completions(self) -> tuple[Grid, Grid]:
        cycle_fill, acyclic_fill = self.witnesses()
        partial = self.partial()
        return complete(partial, cycle_fill), complete(partial, acyclic_fill)


def new_block_adversary(kind: BlockKind, alphabet: BlockAlphabet | None = None) -> BlockAdversary:
    return BlockAdversary(kind, alphabet)


def block_has_cycle(adv: BlockAdversary) -> bool:
    return has_cycle(adv.grid())
