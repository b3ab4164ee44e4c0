"""Puzzles, colorings and their text formats.

Cells are stored as small integer codes in read-only numpy arrays:
``EMPTY`` (0) for an unfilled cell / unknown, ``BLACK`` (1) and ``WHITE`` (2).
Coordinates are ``(row, col)``, 0-based, row 0 at the top.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

EMPTY = 0
BLACK = 1
WHITE = 2
# Unknown cells of a partial coloring share the code of empty clue cells.
UNKNOWN = EMPTY

_PUZZLE_CHARS = {"B": BLACK, "W": WHITE, ".": EMPTY}
_CODE_CHARS = {BLACK: "B", WHITE: "W", EMPTY: "."}


class Color(enum.IntEnum):
    BLACK = BLACK
    WHITE = WHITE

    @property
    def opposite(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK

    @property
    def char(self) -> str:
        return _CODE_CHARS[int(self)]


def opposite(code: int) -> int:
    """Swap BLACK and WHITE codes."""
    return 3 - code


class PuzzleFormatError(ValueError):
    """Malformed grid text; carries the 0-based line and column of the fault."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at row {line}" + (f" col {col}" if col is not None else "")
        super().__init__(message + where)


class DimensionError(ValueError):
    pass


class ClueViolation(ValueError):
    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(f"coloring contradicts clue at ({row}, {col})")


def _frozen(cells, allowed) -> np.ndarray:
    arr = np.array(cells, dtype=np.int8)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"cells must be a non-empty 2-D array, got shape {arr.shape}")
    lut = np.zeros(256, dtype=bool)
    lut[list(allowed)] = True
    if not lut[arr.view(np.uint8)].all():
        raise ValueError(f"cell codes must be drawn from {sorted(allowed)}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class _Grid:
    cells: np.ndarray

    @property
    def rows(self) -> int:
        return self.cells.shape[0]

    @property
    def cols(self) -> int:
        return self.cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape

    def __getitem__(self, rc):
        return int(self.cells[rc])

    def __eq__(self, other):
        return type(other) is type(self) and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((type(self).__name__, self.cells.shape, self.cells.tobytes()))


class Puzzle(_Grid):
    """Clue grid: every cell is EMPTY or a given BLACK/WHITE circle."""

    def __init__(self, cells):
        object.__setattr__(self, "cells", _frozen(cells, (EMPTY, BLACK, WHITE)))

    @classmethod
    def empty(cls, rows: int, cols: int) -> "Puzzle":
        return cls(np.zeros((rows, cols), dtype=np.int8))

    @property
    def empty_cells(self) -> list[tuple[int, int]]:
        return [tuple(map(int, rc)) for rc in np.argwhere(self.cells == EMPTY)]

    def __repr__(self):
        return f"Puzzle({self.rows}x{self.cols})"


class Coloring(_Grid):
    """Complete black/white assignment to every cell."""

    def __init__(self, cells):
        object.__setattr__(self, "cells", _frozen(cells, (BLACK, WHITE)))

    def __repr__(self):
        return f"Coloring({self.rows}x{self.cols})"


class PartialColoring(_Grid):
    """Solver working state; UNKNOWN cells are still open."""

    def __init__(self, cells):
        object.__setattr__(self, "cells", _frozen(cells, (UNKNOWN, BLACK, WHITE)))

    @classmethod
    def from_puzzle(cls, p: Puzzle) -> "PartialColoring":
        return cls(p.cells)

    def is_complete(self) -> bool:
        return not (self.cells == UNKNOWN).any()

    def to_coloring(self) -> Coloring:
        return Coloring(self.cells)

    def __repr__(self):
        return f"PartialColoring({self.rows}x{self.cols})"


def _split_lines(text: str) -> list[str]:
    if not text or not text.strip("\n"):
        raise PuzzleFormatError("empty input")
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()
    return [ln.rstrip("\r") for ln in lines]


def _parse_rows(text: str, table: dict[str, int]) -> list[list[int]]:
    lines = _split_lines(text)
    width = len(lines[0])
    rows = []
    for r, line in enumerate(lines):
        if len(line) == 0 or len(line) != width:
            raise PuzzleFormatError(
                f"ragged row: expected {width} characters, found {len(line)}", line=r
            )
        row = []
        for c, ch in enumerate(line):
            if ch not in table:
                raise PuzzleFormatError(f"illegal character {ch!r}", line=r, col=c)
            row.append(table[ch])
        rows.append(row)
    return rows


def parse_puzzle(text: str) -> Puzzle:
    return Puzzle(_parse_rows(text, _PUZZLE_CHARS))


def serialize_puzzle(p: Puzzle) -> str:
    return "".join("".join(_CODE_CHARS[v] for v in row) + "\n" for row in p.cells.tolist())


def parse_solution(text: str) -> Coloring:
    """Read solution text over {B, W, b, w}; case is ignored."""
    table = {"B": BLACK, "W": WHITE, "b": BLACK, "w": WHITE}
    return Coloring(_parse_rows(text, table))


def serialize_solution(p: Puzzle, c: Coloring) -> str:
    """Solution text: uppercase for given cells, lowercase where the puzzle was empty."""
    c = overlay(p, c)
    out = []
    for clue_row, color_row in zip(p.cells.tolist(), c.cells.tolist()):
        chars = []
        for clue, color in zip(clue_row, color_row):
            ch = _CODE_CHARS[color]
            chars.append(ch if clue != EMPTY else ch.lower())
        out.append("".join(chars) + "\n")
    return "".join(out)


def overlay(p: Puzzle, c: Coloring) -> Coloring:
    """Return ``c`` unchanged if it respects every clue of ``p``."""
    if p.shape != c.shape:
        raise DimensionError(f"puzzle is {p.rows}x{p.cols} but coloring is {c.rows}x{c.cols}")
    bad = np.argwhere((p.cells != EMPTY) & (p.cells != c.cells))
    if len(bad):
        r, col = map(int, bad[0])
        raise ClueViolation(r, col)
    return c


def respects(p: Puzzle, c: Coloring) -> bool:
    try:
        overlay(p, c)
    except (DimensionError, ClueViolation):
        return False
    return True
