import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridcycle.errors import GridParseError, UsageError
from gridcycle.grid import (
    Grid,
    GridDims,
    PartialGrid,
    complete,
    edge_count,
    find_cycle,
    has_cycle,
    has_cycle_dfs,
    neighbors,
    parse_grid,
    same_color_edges,
    serialize_grid,
)


@st.composite
def grids(draw, max_side=6, symbols="abcd"):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    cells = draw(st.text(alphabet=symbols, min_size=rows * cols, max_size=rows * cols))
    return Grid(GridDims(rows, cols), cells)


class TestNeighbors:
    def test_corner(self):
        assert neighbors((0, 0), GridDims(2, 2)) == [(1, 0), (0, 1)]

    def test_interior(self):
        assert neighbors((1, 1), GridDims(3, 3)) == [(0, 1), (2, 1), (1, 0), (1, 2)]

    def test_edge(self):
        assert neighbors((0, 1), GridDims(2, 3)) == [(1, 1), (0, 0), (0, 2)]

    def test_out_of_range(self):
        with pytest.raises(UsageError):
            neighbors((2, 0), GridDims(2, 2))


class TestEdges:
    def test_all_same(self):
        assert len(same_color_edges(parse_grid("aa\naa"))) == 4

    def test_fig1_no_cycle_panel(self):
        assert same_color_edges(parse_grid("aa\nab")) == [((0, 0), (0, 1)), ((0, 0), (1, 0))]

    def test_all_distinct(self):
        assert same_color_edges(parse_grid("ab\ncd")) == []

    @given(grids())
    def test_count_matches_double_loop(self, grid):
        count = 0
        for a in grid.dims.cells():
            for b in grid.dims.cells():
                if a < b and abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 and grid[a] == grid[b]:
                    count += 1
        assert len(same_color_edges(grid)) == count == edge_count(grid)


class TestHasCycle:
    def test_figures(self, figure_grid):
        grid, expected = figure_grid
        assert has_cycle(grid) is expected
        assert has_cycle_dfs(grid) is expected

    def test_single_cell(self):
        assert not has_cycle(parse_grid("a"))

    @pytest.mark.parametrize("rows,cols", [(r, c) for r in range(1, 10) for c in range(1, 10) if r * c <= 9])
    def test_exhaustive_two_symbol_agreement(self, rows, cols):
        dims = GridDims(rows, cols)
        for bits in itertools.product("ab", repeat=rows * cols):
            grid = Grid(dims, "".join(bits))
            assert has_cycle(grid) == has_cycle_dfs(grid), grid

    def test_random_four_symbol_agreement(self):
        rng = random.Random(2024)
        for _ in range(10_000):
            dims = GridDims(rng.randint(1, 6), rng.randint(1, 6))
            grid = Grid(dims, "".join(rng.choice("abcd") for _ in range(dims.size)))
            assert has_cycle(grid) == has_cycle_dfs(grid)

    @given(grids(), st.permutations("abcd"))
    def test_renaming_invariance(self, grid, perm):
        table = str.maketrans("abcd", "".join(perm))
        assert has_cycle(grid) == has_cycle(Grid(grid.dims, grid.cells.translate(table)))

    @given(grids())
    def test_transposition_invariance(self, grid):
        assert has_cycle(grid) == has_cycle(grid.transpose())

    @settings(max_examples=300)
    @given(grids())
    def test_extracted_cycles_are_even_and_valid(self, grid):
        cycle = find_cycle(grid)
        assert (cycle is not None) == has_cycle(grid)
        if cycle is None:
            return
        assert len(cycle) >= 4 and len(cycle) % 2 == 0
        assert len(set(cycle)) == len(cycle)
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            assert abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1
            assert grid[u] == grid[v]


class TestComplete:
    def test_empty_prefix(self):
        dims = GridDims(2, 2)
        assert complete(PartialGrid(dims), dict.fromkeys(dims.cells(), "a")) == parse_grid("aa\naa")

    def test_fig1_last_cell(self):
        partial = PartialGrid(GridDims(2, 2), {(0, 0): "a", (0, 1): "a", (1, 0): "a"})
        assert complete(partial, {(1, 1): "b"}) == parse_grid("aa\nab")

    def test_full_identity(self):
        grid = parse_grid("ab\nba")
        partial = PartialGrid(grid.dims, {c: grid[c] for c in grid.dims.cells()})
        assert complete(partial, {}) == grid

    def test_missing_cell(self):
        with pytest.raises(UsageError):
            complete(PartialGrid(GridDims(2, 2), {(0, 0): "a"}), {(0, 1): "a"})

    def test_fill_covers_read_cell(self):
        with pytest.raises(UsageError):
            complete(PartialGrid(GridDims(1, 2), {(0, 0): "a"}), {(0, 0): "a", (0, 1): "a"})

    def test_fill_out_of_range(self):
        with pytest.raises(UsageError):
            complete(PartialGrid(GridDims(1, 1)), {(0, 0): "a", (3, 3): "a"})


class TestParse:
    def test_basic(self):
        assert parse_grid("aa\naa") == Grid(GridDims(2, 2), "aaaa")

    def test_permissive_default(self):
        assert parse_grid("aaa\naba\naa?")[(2, 2)] == "?"

    def test_declared_alphabet(self):
        with pytest.raises(GridParseError) as info:
            parse_grid("aaa\naba\naa?", alphabet="ab")
        assert info.value.line == 3

    def test_roundtrip_text(self):
        assert serialize_grid(parse_grid("ab\ncd")) == "ab\ncd\n"
        assert parse_grid("ab\ncd\n") == parse_grid("ab\ncd")

    @pytest.mark.parametrize(
        "text,line",
        [("", None), ("ab\nabc", 2), ("a b\nabc", 1), ("ab\n\nab", 2)],
    )
    def test_errors(self, text, line):
        with pytest.raises(GridParseError) as info:
            parse_grid(text)
        assert info.value.line == line

    @given(grids(symbols="ab?#xyz"))
    def test_roundtrip(self, grid):
        assert parse_grid(serialize_grid(grid)) == grid
