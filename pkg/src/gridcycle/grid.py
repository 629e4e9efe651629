"""Grids, the implicit same-color graph, and full-knowledge cycle detection.

Cells are ``(row, col)`` tuples, 0-based. A :class:`Grid` stores its symbols as
one row-major string, so every symbol is a single printable character.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

from .errors import GridParseError, UsageError
from .kernels import count_edges_flat, has_cycle_flat

Cell = tuple[int, int]


@dataclass(frozen=True)
class GridDims:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise UsageError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")

    @property
    def size(self) -> int:
        return self.rows * self.cols

    def contains(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.rows and 0 <= c < self.cols

    def check(self, cell: Cell) -> None:
        if not self.contains(cell):
            raise UsageError(f"cell {cell} out of range for {self.rows}x{self.cols} grid")

    def cells(self) -> Iterator[Cell]:
        """All cells in row-major order."""
        for r in range(self.rows):
            for c in range(self.cols):
                yield (r, c)

    def index(self, cell: Cell) -> int:
        return cell[0] * self.cols + cell[1]

    def require_adversarial(self) -> None:
        if self.rows < 2 or self.cols < 2:
            raise UsageError(f"adversary needs at least a 2x2 grid, got {self.rows}x{self.cols}")

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


def _check_symbol(sym: str, alphabet: frozenset[str] | None) -> None:
    if len(sym) != 1 or not sym.isprintable() or sym.isspace():
        raise UsageError(f"symbol must be one printable non-whitespace character, got {sym!r}")
    if alphabet is not None and sym not in alphabet:
        raise UsageError(f"symbol {sym!r} not in alphabet")


@dataclass(frozen=True)
class Grid:
    """A total assignment of symbols to the cells of an ``rows x cols`` grid."""

    dims: GridDims
    cells: str

    def __post_init__(self) -> None:
        if len(self.cells) != self.dims.size:
            raise UsageError(f"expected {self.dims.size} symbols, got {len(self.cells)}")

    @classmethod
    def from_rows(cls, rows: Iterable[str]) -> Grid:
        rows = list(rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise UsageError("rows must be non-empty and of equal length")
        return cls(GridDims(len(rows), len(rows[0])), "".join(rows))

    def __getitem__(self, cell: Cell) -> str:
        self.dims.check(cell)
        return self.cells[self.dims.index(cell)]

    def rows_text(self) -> list[str]:
        n = self.dims.cols
        return [self.cells[i : i + n] for i in range(0, len(self.cells), n)]

    def transpose(self) -> Grid:
        rows, cols = self.dims.rows, self.dims.cols
        flat = "".join(self.cells[r * cols + c] for c in range(cols) for r in range(rows))
        return Grid(GridDims(cols, rows), flat)

    def restrict(self, origin: Cell, rows: int, cols: int) -> Grid:
        """The sub-grid with top-left corner ``origin``."""
        r0, c0 = origin
        return Grid.from_rows(self.rows_text()[r][c0 : c0 + cols] for r in range(r0, r0 + rows))

    def __str__(self) -> str:
        return serialize_grid(self)


@dataclass
class PartialGrid:
    """The read prefix of a grid: cells that have not been read are simply absent."""

    dims: GridDims
    assigned: dict[Cell, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for cell in self.assigned:
            self.dims.check(cell)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.assigned

    def __getitem__(self, cell: Cell) -> str:
        return self.assigned[cell]

    def __len__(self) -> int:
        return len(self.assigned)

    def reveal(self, cell: Cell, symbol: str) -> None:
        self.dims.check(cell)
        if cell in self.assigned:
            raise UsageError(f"cell {cell} already read")
        self.assigned[cell] = symbol

    def unread(self) -> list[Cell]:
        return [cell for cell in self.dims.cells() if cell not in self.assigned]

    def is_complete(self) -> bool:
        return len(self.assigned) == self.dims.size

    def copy(self) -> PartialGrid:
        return PartialGrid(self.dims, dict(self.assigned))

    def render(self, unknown: str = ".") -> str:
        return "\n".join(
            "".join(self.assigned.get((r, c), unknown) for c in range(self.dims.cols))
            for r in range(self.dims.rows)
        )


def neighbors(cell: Cell, dims: GridDims) -> list[Cell]:
    """Orthogonal neighbors in the order up, down, left, right."""
    dims.check(cell)
    r, c = cell
    out = []
    for cand in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
        if dims.contains(cand):
            out.append(cand)
    return out


def same_color_edges(grid: Grid) -> list[tuple[Cell, Cell]]:
    """Adjacent equal-symbol pairs, row-major by first endpoint, right edge before down edge."""
    rows, cols = grid.dims.rows, grid.dims.cols
    s = grid.cells
    edges = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols and s[i + 1] == s[i]:
                edges.append(((r, c), (r, c + 1)))
            if r + 1 < rows and s[i + cols] == s[i]:
                edges.append(((r, c), (r + 1, c)))
    return edges


def edge_count(grid: Grid) -> int:
    return count_edges_flat(grid.cells, grid.dims.rows, grid.dims.cols)


def has_cycle(grid: Grid) -> bool:
    """True iff the same-color graph of ``grid`` contains a cycle.

    Disjoint-set union over :func:`same_color_edges`; a cycle exists exactly when
    some edge joins two cells that are already connected.
    """
    return has_cycle_flat(grid.cells, grid.dims.rows, grid.dims.cols)


def find_cycle(grid: Grid) -> list[Cell] | None:
    """Extract one cycle as a closed walk of distinct cells, or None.

    Depth-first search with parent tracking; a back edge to a visited vertex other
    than the parent closes a cycle. Independent of the union-find kernel.
    """
    dims = grid.dims
    parent: dict[Cell, Cell | None] = {}
    depth: dict[Cell, int] = {}
    for root in dims.cells():
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        stack = [(root, iter(neighbors(root, dims)))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if grid.cells[dims.index(w)] != grid.cells[dims.index(v)] or w == parent[v]:
                    continue
                if w in parent:
                    # back edge v -> w, w is an ancestor of v
                    if depth[w] < depth[v]:
                        path = [v]
                        while path[-1] != w:
                            path.append(parent[path[-1]])
                        return path
                    continue
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, iter(neighbors(w, dims))))
                advanced = True
                break
            if not advanced:
                stack.pop()
    return None


def has_cycle_dfs(grid: Grid) -> bool:
    """Reference detector used to cross-check :func:`has_cycle`."""
    return find_cycle(grid) is not None


def complete(partial: PartialGrid, fill: Mapping[Cell, str]) -> Grid:
    """Total grid agreeing with ``partial`` on read cells and ``fill`` on the rest."""
    dims = partial.dims
    for cell in fill:
        dims.check(cell)
        if cell in partial.assigned:
            raise UsageError(f"fill covers already-read cell {cell}")
    chars = []
    for cell in dims.cells():
        sym = partial.assigned.get(cell)
        if sym is None:
            sym = fill.get(cell)
            if sym is None:
                raise UsageError(f"fill is missing unread cell {cell}")
        chars.append(sym)
    return Grid(dims, "".join(chars))


def parse_grid(text: str, alphabet: Iterable[str] | None = None) -> Grid:
    """Parse newline-separated rows of equal length.

    A single trailing newline is accepted. With ``alphabet`` given, every symbol
    must belong to it.
    """
    allowed = frozenset(alphabet) if alphabet is not None else None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GridParseError("empty input")
    width = len(lines[0].rstrip("\r"))
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        if not line:
            raise GridParseError("empty row", lineno)
        for ch in line:
            if ch.isspace() or not ch.isprintable():
                raise GridParseError(f"invalid character {ch!r} in row", lineno)
            if allowed is not None and ch not in allowed:
                raise GridParseError(f"symbol {ch!r} not in alphabet", lineno)
        if len(line) != width:
            raise GridParseError(f"row has length {len(line)}, expected {width}", lineno)
        rows.append(line)
    return Grid.from_rows(rows)


def serialize_grid(grid: Grid) -> str:
    return "".join(row + "\n" for row in grid.rows_text())
