import pytest

from gridcycle.grid import parse_grid

# The concrete grids drawn in the figures, with the expected outcome.
FIGURE_GRIDS = {
    "fig1-cycle": ("aa\naa", True),
    "fig1-no-cycle": ("aa\nab", False),
    "fig2-case1-a": ("aaa\naba\naaa", True),
    "fig2-case1-b": ("aaa\naba\naab", False),
    "fig2-case2-a": ("aaa\naaa\nbaa", True),
    "fig2-case2-b": ("aaa\naba\nbaa", False),
    "fig3-top-done-a": ("ab\naa\naa", True),
    "fig3-top-done-b": ("ab\naa\nab", False),
    "fig3-bottom-done-a": ("aa\naa\nab", True),
    "fig3-bottom-done-b": ("ba\naa\nab", False),
}


@pytest.fixture(params=sorted(FIGURE_GRIDS))
def figure_grid(request):
    text, expected = FIGURE_GRIDS[request.param]
    return parse_grid(text), expected
