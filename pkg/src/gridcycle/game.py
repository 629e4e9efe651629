"""The query game between a detection algorithm and the composed adversary."""
from __future__ import annotations

import enum
import json
import random
from collections.abc import Callable, Generator
from dataclasses import dataclass, field

from .composer import ComposedAdversary, GlobalFinalChoice
from .errors import ProtocolError, UsageError
from .grid import Cell, Grid, GridDims, PartialGrid, has_cycle, neighbors, parse_grid, serialize_grid


@dataclass(frozen=True)
class Query:
    cell: Cell


@dataclass(frozen=True)
class Answer:
    has_cycle: bool


Move = Query | Answer


class DetectionAlgorithm:
    """An algorithm sees only the cells it has read so far.

    Implementations must be deterministic functions of the observed history (and
    their seed): the game runner re-plays a fresh instance to explore both
    outcomes of the final cell.
    """

    name = "algorithm"

    def next_move(self, observed: PartialGrid) -> Move:
        raise NotImplementedError


class GeneratorAlgorithm(DetectionAlgorithm):
    """Adapter: write the algorithm as a generator that yields cells and receives symbols."""

    def __init__(self) -> None:
        self._gen: Generator[Cell, str, bool] | None = None
        self._pending: Cell | None = None

    def play(self, dims: GridDims) -> Generator[Cell, str, bool]:
        raise NotImplementedError

    def next_move(self, observed: PartialGrid) -> Move:
        try:
            if self._gen is None:
                self._gen = self.play(observed.dims)
                cell = next(self._gen)
            else:
                cell = self._gen.send(observed[self._pending])
        except StopIteration as stop:
            self._pending = None
            return Answer(bool(stop.value))
        self._pending = cell
        return Query(cell)


class UnionFindScanner(GeneratorAlgorithm):
    """Row-major scan with incremental disjoint sets over the cells read so far."""

    name = "union-find"

    def play(self, dims):
        parent: dict[Cell, Cell] = {}
        seen: dict[Cell, str] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for cell in dims.cells():
            sym = yield cell
            seen[cell] = sym
            parent[cell] = cell
            r, c = cell
            for prev in ((r, c - 1), (r - 1, c)):
                if seen.get(prev) != sym:
                    continue
                a, b = find(prev), find(cell)
                if a == b:
                    return True
                parent[b] = a
        return False


class DfsRegionDetector(GeneratorAlgorithm):
    """Flood-fills each same-color region, reading neighbors only when reached."""

    name = "dfs"

    def play(self, dims):
        known: dict[Cell, str] = {}
        visited: set[Cell] = set()

        def read(cell):
            if cell not in known:
                known[cell] = yield cell
            return known[cell]

        for root in dims.cells():
            if root in visited:
                continue
            color = yield from read(root)
            visited.add(root)
            parent = {root: None}
            stack = [(root, iter(neighbors(root, dims)))]
            while stack:
                v, it = stack[-1]
                for w in it:
                    if w == parent[v]:
                        continue
                    if (yield from read(w)) != color:
                        continue
                    if w in visited:
                        return True
                    visited.add(w)
                    parent[w] = v
                    stack.append((w, iter(neighbors(w, dims))))
                    break
                else:
                    stack.pop()
        return False


class RandomOrderScanner(GeneratorAlgorithm):
    """Reads every cell in a seeded shuffled order, then decides on the full grid."""

    name = "random-order"

    def __init__(self, seed: int = 0) -> None:
        super().__init__()
        self.seed = seed

    def play(self, dims):
        order = list(dims.cells())
        random.Random(self.seed).shuffle(order)
        seen = {}
        for cell in order:
            seen[cell] = yield cell
        return has_cycle(Grid(dims, "".join(seen[c] for c in dims.cells())))


class EarlyAnswer(GeneratorAlgorithm):
    """Reads ``reads`` cells in row-major order and then answers ``answer`` blindly."""

    name = "early-answer"

    def __init__(self, reads: int, answer: bool) -> None:
        super().__init__()
        self.reads = reads
        self.answer = answer

    def play(self, dims):
        for cell in list(dims.cells())[: self.reads]:
            yield cell
        return self.answer


def union_find_scanner() -> DetectionAlgorithm:
    return UnionFindScanner()


def dfs_region_detector() -> DetectionAlgorithm:
    return DfsRegionDetector()


def random_order_scanner(seed: int = 0) -> DetectionAlgorithm:
    return RandomOrderScanner(seed)


ALGORITHMS: dict[str, Callable[..., DetectionAlgorithm]] = {
    "union-find": UnionFindScanner,
    "dfs": DfsRegionDetector,
    "random-order": RandomOrderScanner,
}


def make_algorithm_factory(name: str, seed: int = 0) -> Callable[[], DetectionAlgorithm]:
    if name not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}")
    if name == "random-order":
        return lambda: RandomOrderScanner(seed)
    return ALGORITHMS[name]


class FinalChoicePolicy(enum.Enum):
    FORK_BOTH = "fork"
    FORCE_CYCLE = "cycle"
    FORCE_ACYCLIC = "acyclic"


class Verdict(enum.Enum):
    CORRECT_BOTH_BRANCHES = "CorrectBothBranches"
    CORRECT_ON_BRANCH = "CorrectOnBranch"
    DEFEATED_EARLY_ANSWER = "DefeatedEarlyAnswer"
    INCORRECT_ON_BRANCH = "IncorrectOnBranch"


@dataclass
class GameTranscript:
    dims: GridDims
    policy: FinalChoicePolicy
    queries: list[tuple[Cell, str | None]] = field(default_factory=list)
    final_choice: tuple[str, str] | None = None
    answer: bool | None = None
    branch_answers: dict[str, bool] | None = None
    verdict: Verdict | None = None
    branch: str | None = None
    witnesses: dict[str, Grid] = field(default_factory=dict)

    @property
    def query_count(self) -> int:
        return len(self.queries)

    @property
    def verdict_label(self) -> str:
        if self.verdict is None:
            return "Unfinished"
        if self.branch and self.verdict in (Verdict.INCORRECT_ON_BRANCH, Verdict.CORRECT_ON_BRANCH):
            return f"{self.verdict.value}({self.branch})"
        return self.verdict.value

    @property
    def succeeded(self) -> bool:
        return self.verdict in (Verdict.CORRECT_BOTH_BRANCHES, Verdict.CORRECT_ON_BRANCH)

    def to_dict(self) -> dict:
        return {
            "dims": [self.dims.rows, self.dims.cols],
            "policy": self.policy.value,
            "queries": [[r, c, "?" if s is None else s] for (r, c), s in self.queries],
            "final_choice": None if self.final_choice is None else {
                "cycle": self.final_choice[0], "acyclic": self.final_choice[1]
            },
            "answer": self.branch_answers if self.branch_answers is not None else self.answer,
            "query_count": self.query_count,
            "verdict": self.verdict_label,
            "witnesses": {k: serialize_grid(g) for k, g in self.witnesses.items()},
        }

    def to_json(self) -> str:
        """One object, fixed key order, one key per line so golden files diff cleanly."""
        body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in self.to_dict().items())
        return "{\n" + body + "\n}\n"

    @classmethod
    def from_json(cls, text: str) -> GameTranscript:
        data = json.loads(text)
        label = data["verdict"]
        name, _, rest = label.partition("(")
        answer = data["answer"]
        fc = data["final_choice"]
        return cls(
            dims=GridDims(*data["dims"]),
            policy=FinalChoicePolicy(data["policy"]),
            queries=[((r, c), None if s == "?" else s) for r, c, s in data["queries"]],
            final_choice=None if fc is None else (fc["cycle"], fc["acyclic"]),
            answer=answer if not isinstance(answer, dict) else None,
            branch_answers=answer if isinstance(answer, dict) else None,
            verdict=Verdict(name),
            branch=rest.rstrip(")") or None,
            witnesses={k: parse_grid(v) for k, v in data["witnesses"].items()},
        )


def _answer_after(make_algorithm: Callable[[], DetectionAlgorithm], observed: PartialGrid,
                  order: list[Cell]) -> bool:
    """Replay a fresh algorithm over a fully revealed grid in the recorded order."""
    alg = make_algorithm()
    seen = PartialGrid(observed.dims)
    for cell in order:
        move = alg.next_move(seen)
        if not isinstance(move, Query) or move.cell != cell:
            raise ProtocolError(f"algorithm is not deterministic: expected query {cell}, got {move}")
        seen.reveal(cell, observed[cell])
    move = alg.next_move(seen)
    if not isinstance(move, Answer):
        raise ProtocolError("algorithm kept querying after every cell was read")
    return move.has_cycle


def run_game(
    make_algorithm: Callable[[], DetectionAlgorithm],
    adversary: ComposedAdversary,
    policy: FinalChoicePolicy = FinalChoicePolicy.FORK_BOTH,
) -> GameTranscript:
    """Play one game; ``make_algorithm`` must return a fresh instance per call."""
    dims = adversary.dims
    dims.require_adversarial()
    if len(adversary.observed):
        raise UsageError("adversary must be fresh")
    transcript = GameTranscript(dims, policy)
    observed = PartialGrid(dims)
    alg = make_algorithm()
    final: GlobalFinalChoice | None = None

    for _ in range(dims.size + 1):
        move = alg.next_move(observed)
        if isinstance(move, Answer):
            break
        cell = move.cell
        if not dims.contains(cell):
            raise ProtocolError(f"algorithm queried out-of-range cell {cell}")
        if cell in observed:
            raise ProtocolError(f"algorithm repeated query {cell}")
        resp = adversary.respond(cell)
        if isinstance(resp, GlobalFinalChoice):
            transcript.queries.append((cell, None))
            final = resp
            break
        observed.reveal(cell, resp)
        transcript.queries.append((cell, resp))
    else:
        raise ProtocolError(f"algorithm did not answer within {dims.size + 1} moves")

    if final is None:
        # answered with cells still unread
        transcript.answer = move.has_cycle
        cycle_grid, acyclic_grid = adversary.witnesses()
        counter = acyclic_grid if move.has_cycle else cycle_grid
        if has_cycle(counter) == move.has_cycle:
            raise AssertionError("adversary failed to produce a contradicting completion")
        transcript.witnesses = {"cycle": cycle_grid, "acyclic": acyclic_grid, "counterexample": counter}
        transcript.verdict = Verdict.DEFEATED_EARLY_ANSWER
        return transcript

    final_cell = transcript.queries[-1][0]
    order = [c for c, _ in transcript.queries]
    transcript.final_choice = (final.cycle_symbol, final.acyclic_symbol)
    branches = {"cycle": True, "acyclic": False}
    if policy is FinalChoicePolicy.FORCE_CYCLE:
        branches = {"cycle": True}
    elif policy is FinalChoicePolicy.FORCE_ACYCLIC:
        branches = {"acyclic": False}

    answers = {}
    for name, want_cycle in branches.items():
        realized = adversary if len(branches) == 1 else adversary.copy()
        realized.commit(want_cycle)
        grid = Grid(dims, "".join(realized.observed[c] for c in dims.cells()))
        if has_cycle(grid) != want_cycle:
            raise AssertionError(f"adversary branch {name} does not realize its outcome")
        transcript.witnesses[name] = grid
        answers[name] = _answer_after(make_algorithm, realized.observed, order)

    wrong = [name for name, ans in answers.items() if ans != branches[name]]
    if len(branches) == 2:
        transcript.branch_answers = answers
        if wrong:
            transcript.verdict, transcript.branch = Verdict.INCORRECT_ON_BRANCH, wrong[0]
        else:
            transcript.verdict = Verdict.CORRECT_BOTH_BRANCHES
    else:
        (name,) = branches
        transcript.answer = answers[name]
        transcript.queries[-1] = (final_cell, transcript.witnesses[name][final_cell])
        transcript.branch = name
        transcript.verdict = Verdict.INCORRECT_ON_BRANCH if wrong else Verdict.CORRECT_ON_BRANCH
    return transcript


def replay_responses(transcript: GameTranscript) -> list[str | None]:
    """Responses a fresh adversary gives to the transcript's query order."""
    adv = ComposedAdversary.for_dims(transcript.dims.rows, transcript.dims.cols)
    out = []
    for cell, _ in transcript.queries:
        resp = adv.respond(cell)
        out.append(None if isinstance(resp, GlobalFinalChoice) else resp)
    return out


def play_on_grid(algorithm: DetectionAlgorithm, grid: Grid) -> tuple[bool, int]:
    """Run an algorithm against a fixed grid: (answer, number of reads)."""
    observed = PartialGrid(grid.dims)
    for _ in range(grid.dims.size + 1):
        move = algorithm.next_move(observed)
        if isinstance(move, Answer):
            return move.has_cycle, len(observed)
        observed.reveal(move.cell, grid[move.cell])
    raise ProtocolError("algorithm did not answer")
