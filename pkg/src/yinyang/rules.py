"""Rule checks for complete colorings and deductions over partial ones.

Three rule variants are supported:

* ``CONNECTED_ONLY``: each color class is one orthogonally connected group.
* ``YIN_YANG``: connectivity plus no monochromatic 2x2 window.
* ``TREE_PARTITION``: each color class induces a tree in the grid graph.

An empty color class counts as connected and as a tree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .grid import (
    BLACK,
    EMPTY,
    UNKNOWN,
    WHITE,
    Color,
    Coloring,
    DimensionError,
    PartialColoring,
    Puzzle,
)


class Variant(enum.Enum):
    CONNECTED_ONLY = "connected"
    YIN_YANG = "yinyang"
    TREE_PARTITION = "tree"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        aliases = {"connectedonly": "connected", "yin-yang": "yinyang", "treepartition": "tree"}
        key = name.strip().lower().replace("_", "")
        key = aliases.get(key, key)
        for v in cls:
            if v.value == key:
                return v
        raise ValueError(f"unknown variant {name!r}")

    @property
    def forbids_mono_squares(self) -> bool:
        return self is not Variant.CONNECTED_ONLY


@dataclass(frozen=True)
class Violation:
    kind: str  # "disconnected" | "mono_square" | "induced_cycle" | "clue_violated"
    color: Color | None = None
    row: int | None = None
    col: int | None = None

    def __str__(self):
        parts = [self.kind]
        if self.color is not None:
            parts.append(self.color.name.lower())
        if self.row is not None:
            parts.append(f"{self.row} {self.col}")
        return " ".join(parts)


@dataclass(frozen=True)
class VerifyReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _cells(c) -> np.ndarray:
    return c.cells if hasattr(c, "cells") else np.asarray(c)


_FOUR = ndimage.generate_binary_structure(2, 1)


def components(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """4-connected component labels of a boolean mask."""
    return ndimage.label(mask, structure=_FOUR)


def check_connectivity(c: Coloring, col: Color) -> bool:
    mask = _cells(c) == int(col)
    if not mask.any():
        return True
    return components(mask)[1] == 1


def mono_squares(c) -> list[tuple[int, int]]:
    """Top-left corners of monochromatic 2x2 windows, row-major."""
    a = _cells(c)
    tl, tr, bl, br = a[:-1, :-1], a[:-1, 1:], a[1:, :-1], a[1:, 1:]
    hit = (tl != EMPTY) & (tl == tr) & (tl == bl) & (tl == br)
    return [tuple(map(int, rc)) for rc in np.argwhere(hit)]


def check_no_mono_2x2(c: Coloring) -> bool:
    return not mono_squares(c)


def checkerboard_squares(c) -> list[tuple[int, int]]:
    """Top-left corners of 2x2 windows holding a diagonal pair of each color."""
    a = _cells(c)
    tl, tr, bl, br = a[:-1, :-1], a[:-1, 1:], a[1:, :-1], a[1:, 1:]
    hit = (tl != EMPTY) & (tr != EMPTY) & (tl == br) & (tr == bl) & (tl != tr)
    return [tuple(map(int, rc)) for rc in np.argwhere(hit)]


def check_diagonal_lemma(c: Coloring) -> bool:
    return not checkerboard_squares(c)


def induced_edge_count(mask: np.ndarray) -> int:
    return int((mask[:, 1:] & mask[:, :-1]).sum() + (mask[1:, :] & mask[:-1, :]).sum())


def is_tree_mask(mask: np.ndarray) -> bool:
    n = int(mask.sum())
    if n == 0:
        return True
    return components(mask)[1] == 1 and induced_edge_count(mask) == n - 1


def check_tree_partition(c: Coloring) -> bool:
    a = _cells(c)
    return is_tree_mask(a == BLACK) and is_tree_mask(a == WHITE)


def verify(p: Puzzle, c: Coloring, v: Variant) -> VerifyReport:
    if p.shape != c.shape:
        raise DimensionError(f"puzzle is {p.rows}x{p.cols} but coloring is {c.rows}x{c.cols}")
    a = c.cells
    out: list[Violation] = []
    for r, col in np.argwhere((p.cells != EMPTY) & (p.cells != a)):
        out.append(Violation("clue_violated", row=int(r), col=int(col)))
    for color in (Color.BLACK, Color.WHITE):
        mask = a == int(color)
        if mask.any() and components(mask)[1] != 1:
            out.append(Violation("disconnected", color=color))
    if v is Variant.YIN_YANG:
        out.extend(Violation("mono_square", row=r, col=col) for r, col in mono_squares(a))
    elif v is Variant.TREE_PARTITION:
        for color in (Color.BLACK, Color.WHITE):
            mask = a == int(color)
            # Acyclic iff every component satisfies |E| = |V| - 1.
            _, ncomp = components(mask)
            if induced_edge_count(mask) != int(mask.sum()) - ncomp:
                out.append(Violation("induced_cycle", color=color))
    return VerifyReport(tuple(out))


def connectivity_feasible(pc: PartialColoring, col: Color) -> bool:
    """False only if no completion can make ``col`` a single connected group."""
    a = _cells(pc)
    return _feasible(a, int(col))


def _feasible(a: np.ndarray, code: int) -> bool:
    colored = a == code
    if not colored.any():
        return True
    labels, _ = components(colored | (a == UNKNOWN))
    seen = labels[colored]
    return bool((seen == seen[0]).all())


class PropagationStatus(enum.Enum):
    PROGRESS = "progress"
    STABLE = "stable"
    CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class PropagationResult:
    status: PropagationStatus
    forced: tuple[tuple[int, int, Color], ...] = ()
    reason: str | None = None
    state: PartialColoring | None = field(default=None, compare=False)


class Contradiction(Exception):
    pass


# Window positions: 0=TL 1=TR 2=BL 3=BR; diagonal partner of i is 3 - i.
_OFFSETS = ((0, 0), (0, 1), (1, 0), (1, 1))


def window_conflicts(a: np.ndarray, mono: bool) -> str | None:
    """Describe the first complete window that already breaks a rule, if any."""
    if mono:
        sq = mono_squares(a)
        if sq:
            return f"monochromatic 2x2 at {sq[0]}"
    cb = checkerboard_squares(a)
    if cb:
        return f"checkerboard 2x2 at {cb[0]}"
    return None


def propagate_array(a: np.ndarray, mono: bool) -> list[tuple[int, int, int]]:
    """Apply window deductions to ``a`` in place until stable.

    Returns the forced ``(row, col, code)`` triples in the order applied and
    raises :class:`Contradiction` when a window cannot be completed.
    """
    forced: list[tuple[int, int, int]] = []
    if a.shape[0] < 2 or a.shape[1] < 2:
        return forced
    while True:
        why = window_conflicts(a, mono)
        if why:
            raise Contradiction(why)
        win = np.stack([a[:-1, :-1], a[:-1, 1:], a[1:, :-1], a[1:, 1:]])
        open_ = win == UNKNOWN
        single = np.argwhere(open_.sum(axis=0) == 1)
        if len(single) == 0:
            return forced
        pending: dict[tuple[int, int], int] = {}
        order: list[tuple[int, int]] = []
        for r, c in single.tolist():
            w = win[:, r, c]
            i = int(np.flatnonzero(w == UNKNOWN)[0])
            j = 3 - i
            k, m = [x for x in range(4) if x not in (i, j)]
            value = None
            if mono and w[j] == w[k] == w[m]:
                value = 3 - int(w[j])
            elif w[k] == w[m] and w[j] == 3 - w[k]:
                value = int(w[k])
            if value is None:
                continue
            cell = (r + _OFFSETS[i][0], c + _OFFSETS[i][1])
            prev = pending.get(cell)
            if prev is None:
                pending[cell] = value
                order.append(cell)
            elif prev != value:
                raise Contradiction(f"cell {cell} forced both ways")
        if not order:
            return forced
        for cell in order:
            a[cell] = pending[cell]
            forced.append((cell[0], cell[1], pending[cell]))


def propagate(pc: PartialColoring, v: Variant) -> PropagationResult:
    a = np.array(pc.cells)
    try:
        forced = propagate_array(a, v.forbids_mono_squares)
    except Contradiction as exc:
        return PropagationResult(PropagationStatus.CONTRADICTION, reason=str(exc))
    if not forced:
        return PropagationResult(PropagationStatus.STABLE, state=pc)
    return PropagationResult(
        PropagationStatus.PROGRESS,
        forced=tuple((r, c, Color(x)) for r, c, x in forced),
        state=PartialColoring(a),
    )
