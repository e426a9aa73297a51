"""
Sudoku grids used as cipher keys: generation, validation and solving.

Generation seeds the diagonal boxes with random permutations of 1..n and then
completes the board by backtracking. Backtracking always scans cells in
row-major order and tries candidates in ascending order, so the first solution
found is the lexicographically smallest completion and results are
reproducible across runs and implementations.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from sudocrypt.utils.logger import log

from .exceptions import InvalidArgumentError, InvalidKeyError, KeyParseError
from .prng import Permutation, PrngState, derive_permutation, next_u64

GRID_HEADER = "sudoku n="
# Search steps allowed per diagonal fill. Part of the generation contract:
# changing either constant changes which grid a seed produces.
GENERATION_STEP_BUDGET = 2_000
MAX_GENERATION_ATTEMPTS = 64


def box_size(n: int) -> int:
    """Return sqrt(n), raising if n is not a positive perfect square."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError(f"Grid size must be a positive integer, got {n!r}")
    box = math.isqrt(n)
    if box * box != n:
        raise InvalidArgumentError(f"Grid size must be a perfect square, got {n}")
    return box


@dataclass(frozen=True)
class SudokuGrid:
    """N x N grid of values 0..n, 0 meaning an empty cell."""

    n: int
    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        box_size(self.n)
        rows = tuple(tuple(int(v) for v in row) for row in self.cells)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise InvalidArgumentError(f"Grid must be {self.n}x{self.n}")
        for row in rows:
            for value in row:
                if not 0 <= value <= self.n:
                    raise InvalidArgumentError(
                        f"Cell value {value} outside 0..{self.n}"
                    )
        object.__setattr__(self, "cells", rows)

    @property
    def box(self) -> int:
        return math.isqrt(self.n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "SudokuGrid":
        return cls(len(rows), tuple(tuple(row) for row in rows))

    @classmethod
    def empty(cls, n: int) -> "SudokuGrid":
        return cls(n, tuple((0,) * n for _ in range(n)))

    def with_cell(self, row: int, col: int, value: int) -> "SudokuGrid":
        rows = [list(r) for r in self.cells]
        rows[row][col] = value
        return SudokuGrid.from_rows(rows)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.cells, dtype=np.int64)

    def empty_cells(self) -> int:
        return sum(row.count(0) for row in self.cells)

    @property
    def is_solved(self) -> bool:
        return validate(self, strict=True)


def _units(g: SudokuGrid) -> Iterator[List[int]]:
    n, box = g.n, g.box
    for row in g.cells:
        yield list(row)
    for c in range(n):
        yield [g.cells[r][c] for r in range(n)]
    for br in range(0, n, box):
        for bc in range(0, n, box):
            yield [
                g.cells[r][c] for r in range(br, br + box) for c in range(bc, bc + box)
            ]


def validate(g: SudokuGrid, strict: bool = False) -> bool:
    """Check row, column and box constraints; strict also rejects empty cells."""
    for unit in _units(g):
        filled = [v for v in unit if v]
        if len(filled) != len(set(filled)):
            return False
        if strict and len(filled) != g.n:
            return False
    return True


@dataclass(frozen=True)
class _Layout:
    """Flat-board index tables: units are rows, then columns, then boxes."""

    units: Tuple[Tuple[int, ...], ...]
    units_of: Tuple[Tuple[int, int, int], ...]
    peers: Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=None)
def _layout(n: int) -> _Layout:
    box = math.isqrt(n)
    box_of = [(i // n // box) * box + (i % n) // box for i in range(n * n)]
    units = [tuple(r * n + c for c in range(n)) for r in range(n)]
    units += [tuple(r * n + c for r in range(n)) for c in range(n)]
    units += [tuple(i for i in range(n * n) if box_of[i] == b) for b in range(n)]
    units_of = tuple((i // n, n + i % n, 2 * n + box_of[i]) for i in range(n * n))
    peers = tuple(
        tuple(sorted({j for u in units_of[i] for j in units[u]} - {i}))
        for i in range(n * n)
    )
    return _Layout(tuple(units), units_of, peers)


class _BudgetExceeded(Exception):
    pass


class _Backtracker:
    """Bitmask backtracking over a flat board, row-major and ascending.

    Each tentative placement is checked by propagating naked and hidden
    singles on a scratch copy of the board. The check rejects only placements
    that have no completion; solutions still appear in row-major ascending order.
    """

    def __init__(self, n: int, flat: Sequence[int]):
        self.n = n
        self.full = (1 << n) - 1
        self.layout = _layout(n)
        self.cells = list(flat)
        self.used = [0] * (3 * n)
        for i, v in enumerate(self.cells):
            if v:
                self._mark(self.cells, self.used, i, v)

    def _mark(self, cells: List[int], used: List[int], i: int, v: int) -> None:
        cells[i] = v
        bit = 1 << (v - 1)
        for u in self.layout.units_of[i]:
            used[u] |= bit

    def _unplace(self, i: int) -> None:
        bit = ~(1 << (self.cells[i] - 1))
        for u in self.layout.units_of[i]:
            self.used[u] &= bit
        self.cells[i] = 0

    def _allowed(self, used: List[int], i: int) -> int:
        a, b, c = self.layout.units_of[i]
        return self.full & ~(used[a] | used[b] | used[c])

    def _propagates(self, start: int) -> bool:
        """False if forcing singles from the placement at ``start`` hits a contradiction."""
        layout = self.layout
        cells, used = self.cells[:], self.used[:]
        queue = [start]
        while queue:
            j = queue.pop()
            for p in layout.peers[j]:
                if cells[p]:
                    continue
                allowed = self._allowed(used, p)
                if not allowed:
                    return False
                if not allowed & (allowed - 1):
                    self._mark(cells, used, p, allowed.bit_length())
                    queue.append(p)
            for u in layout.units_of[j]:
                missing = self.full & ~used[u]
                if not missing:
                    continue
                once = twice = 0
                for k in layout.units[u]:
                    if not cells[k]:
                        allowed = self._allowed(used, k)
                        twice |= once & allowed
                        once |= allowed
                if once & missing != missing:
                    return False
                single = missing & ~twice
                while single:
                    low = single & -single
                    single ^= low
                    for k in layout.units[u]:
                        if not cells[k] and self._allowed(used, k) & low:
                            self._mark(cells, used, k, low.bit_length())
                            queue.append(k)
                            break
        return True

    def solutions(self, budget: Optional[int] = None) -> Iterator[List[int]]:
        empties = [i for i, v in enumerate(self.cells) if not v]
        if not empties:
            yield list(self.cells)
            return
        if any(not self._allowed(self.used, i) for i in empties):
            return

        remaining = [0] * len(empties)
        remaining[0] = self._allowed(self.used, empties[0])
        depth, steps = 0, 0
        while depth >= 0:
            i = empties[depth]
            if self.cells[i]:
                self._unplace(i)
            mask = remaining[depth]
            placed = False
            while mask:
                low = mask & -mask
                mask ^= low
                steps += 1
                if budget is not None and steps > budget:
                    raise _BudgetExceeded()
                self._mark(self.cells, self.used, i, low.bit_length())
                if self._propagates(i):
                    placed = True
                    break
                self._unplace(i)
            remaining[depth] = mask
            if not placed:
                depth -= 1
                continue
            if depth + 1 == len(empties):
                yield list(self.cells)
                continue
            depth += 1
            remaining[depth] = self._allowed(self.used, empties[depth])


def _to_grid(n: int, flat: Sequence[int]) -> SudokuGrid:
    return SudokuGrid(n, tuple(tuple(flat[r * n : (r + 1) * n]) for r in range(n)))


def _flatten(g: SudokuGrid) -> List[int]:
    return [v for row in g.cells for v in row]


def solve(g: SudokuGrid) -> Optional[SudokuGrid]:
    """Return the first solution by deterministic backtracking, or None."""
    if not validate(g):
        return None
    solution = next(_Backtracker(g.n, _flatten(g)).solutions(), None)
    return None if solution is None else _to_grid(g.n, solution)


def count_solutions(g: SudokuGrid, limit: int = 2) -> int:
    """Count completions of ``g``, stopping once ``limit`` are found."""
    if not validate(g):
        return 0
    found = 0
    for _ in _Backtracker(g.n, _flatten(g)).solutions():
        found += 1
        if found >= limit:
            break
    return found


def _diagonal_fill(n: int, box: int, state: PrngState) -> Tuple[List[int], PrngState]:
    flat = [0] * (n * n)
    for b in range(box):
        state, box_seed = next_u64(state)
        values = derive_permutation(box_seed, n).map
        for k, v in enumerate(values):
            r, c = b * box + k // box, b * box + k % box
            flat[r * n + c] = v + 1
    return flat, state


def generate_with_stats(n: int, seed: int) -> Tuple[SudokuGrid, int]:
    """Generate a solved grid; also return how many diagonal fills were tried."""
    box = box_size(n)
    state = PrngState(seed & ((1 << 64) - 1))
    for attempt in range(1, MAX_GENERATION_ATTEMPTS + 1):
        flat, state = _diagonal_fill(n, box, state)
        try:
            solution = next(
                _Backtracker(n, flat).solutions(budget=GENERATION_STEP_BUDGET), None
            )
        except _BudgetExceeded:
            solution = None
        if solution is not None:
            if attempt > 1:
                log.debug(f"Sudoku n={n} seed={seed} needed {attempt} diagonal fills")
            return _to_grid(n, solution), attempt
        log.debug(f"Sudoku n={n} seed={seed}: diagonal fill {attempt} dead-ended")
    raise InvalidKeyError(
        f"Could not complete a {n}x{n} grid for seed {seed} "
        f"after {MAX_GENERATION_ATTEMPTS} attempts"
    )


def generate(n: int, seed: int) -> SudokuGrid:
    grid, _ = generate_with_stats(n, seed)
    return grid


def row_permutation(g: SudokuGrid, row: int) -> Permutation:
    """Turn a 1-based solved row into a 0-based permutation."""
    if not 0 <= row < g.n:
        raise InvalidArgumentError(f"Row {row} outside 0..{g.n - 1}")
    if not g.is_solved:
        raise InvalidKeyError("Grid is not solved; cannot derive a permutation")
    return Permutation(tuple(v - 1 for v in g.cells[row]))


def make_puzzle(g: SudokuGrid, blanks: int, seed: int) -> SudokuGrid:
    """Blank ``blanks`` seeded-random cells of a solved grid, keeping one solution."""
    if not g.is_solved:
        raise InvalidKeyError("Puzzles can only be cut from a solved grid")
    if not 0 <= blanks <= g.n * g.n:
        raise InvalidArgumentError(f"Cannot blank {blanks} cells of a {g.n}x{g.n} grid")

    flat = _flatten(g)
    removed = 0
    for position in derive_permutation(seed, g.n * g.n).map:
        if removed == blanks:
            break
        value = flat[position]
        flat[position] = 0
        if count_solutions(_to_grid(g.n, flat), limit=2) == 1:
            removed += 1
        else:
            flat[position] = value
    if removed < blanks:
        raise InvalidArgumentError(
            f"Only {removed} cells can be blanked while keeping a unique solution"
        )
    return _to_grid(g.n, flat)


def format_grid(g: SudokuGrid) -> str:
    lines = [f"{GRID_HEADER}{g.n}"]
    lines.extend(" ".join(str(v) for v in row) for row in g.cells)
    return "\n".join(lines) + "\n"


def parse_grid(lines: Sequence[str], first_line: int = 1) -> SudokuGrid:
    """Parse the grid text block; ``first_line`` numbers the header for errors."""
    if not lines:
        raise KeyParseError("missing grid header", first_line)
    header = lines[0]
    if not header.startswith(GRID_HEADER):
        raise KeyParseError(f"expected '{GRID_HEADER}<N>', got {header!r}", first_line)
    try:
        n = int(header[len(GRID_HEADER) :])
    except ValueError:
        raise KeyParseError(f"bad grid size in {header!r}", first_line)
    if n < 1:
        raise KeyParseError(f"bad grid size {n}", first_line)
    if len(lines) - 1 != n:
        raise KeyParseError(
            f"expected {n} grid rows, found {len(lines) - 1}", first_line + 1
        )

    rows = []
    for offset, line in enumerate(lines[1:], start=1):
        tokens = line.split(" ")
        if len(tokens) != n or not all(t.isdigit() for t in tokens):
            raise KeyParseError(
                f"grid row must hold {n} space-separated integers", first_line + offset
            )
        rows.append(tuple(int(t) for t in tokens))
    return SudokuGrid(n, tuple(rows))


def render_grid(g: SudokuGrid, alphabet: Optional[str] = None) -> str:
    """Human-readable grid, optionally mapping values 1..n onto ``alphabet``."""
    if alphabet is not None and len(alphabet) < g.n:
        raise InvalidArgumentError(
            f"Alphabet needs at least {g.n} symbols, got {len(alphabet)}"
        )
    width = 1 if alphabet else len(str(g.n))

    def symbol(v: int) -> str:
        if v == 0:
            return ".".rjust(width)
        return alphabet[v - 1] if alphabet else str(v).rjust(width)

    lines = []
    for r, row in enumerate(g.cells):
        if r and r % g.box == 0:
            lines.append("")
        groups = [
            " ".join(symbol(v) for v in row[c : c + g.box])
            for c in range(0, g.n, g.box)
        ]
        lines.append("  ".join(groups))
    return "\n".join(lines)
