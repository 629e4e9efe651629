"""Adaptive adversary showing that grid cycle detection must read every cell.

Cells of an ``m x n`` grid carry symbols; equal orthogonal neighbors are joined
by an edge.  The composed adversary answers cell queries so that, until the last
cell is read, the grid could still turn out either cyclic or acyclic.
"""
from .blocks import BlockAdversary, BlockAlphabet, BlockKind, Determined, FinalChoice, Phase
from .composer import ComposedAdversary, GlobalFinalChoice, Tiling, decompose, tile
from .errors import BudgetExceededError, GridCycleError, GridParseError, ProtocolError, UsageError
from .game import (
    DetectionAlgorithm,
    DfsRegionDetector,
    FinalChoicePolicy,
    GameTranscript,
    RandomOrderScanner,
    UnionFindScanner,
    Verdict,
    run_game,
)
from .grid import Grid, GridDims, PartialGrid, complete, has_cycle, neighbors, parse_grid, same_color_edges, serialize_grid
from .kernels import BACKEND
from .verifier import ambiguity_oracle, verify_block_exhaustive, verify_grid_random

__version__ = "0.1.0"
