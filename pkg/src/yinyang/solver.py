"""Exact backtracking solver and solution counter.

The search is a depth-first walk over partial colorings.  Each node runs the
2x2 window deductions to a fixpoint, then prunes on connectivity (every
colored cell of a color must share one component of color-or-unknown cells).
Complete colorings are checked with :func:`yinyang.rules.verify`, so pruning
only ever affects speed, never the answer.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import ndimage

from .grid import BLACK, UNKNOWN, WHITE, Coloring, Puzzle
from .rules import Contradiction, Variant, _feasible, components, induced_edge_count, propagate_array, verify


class BranchHeuristic(enum.Enum):
    FIRST_UNKNOWN = "first"
    MOST_CONSTRAINED = "most-constrained"


@dataclass(frozen=True)
class SolveConfig:
    variant: Variant = Variant.YIN_YANG
    solution_limit: int | None = None
    node_limit: int | None = None
    branch_heuristic: BranchHeuristic = BranchHeuristic.MOST_CONSTRAINED
    # Both switches exist so tests can confirm pruning never changes a count.
    propagation: bool = True
    connectivity_pruning: bool = True

    def __post_init__(self):
        if self.solution_limit is not None and self.solution_limit < 1:
            raise ValueError("solution_limit must be positive")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be positive")


@dataclass
class SolveStats:
    nodes_expanded: int = 0
    propagations: int = 0
    prunes_connectivity: int = 0
    prunes_window: int = 0
    solutions: int = 0
    elapsed: float = 0.0

    def as_dict(self, with_time: bool = True) -> dict:
        d = {
            "nodes_expanded": self.nodes_expanded,
            "propagations": self.propagations,
            "prunes_connectivity": self.prunes_connectivity,
            "prunes_window": self.prunes_window,
            "solutions": self.solutions,
        }
        if with_time:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    def lines(self, with_time: bool = True) -> list[str]:
        return [f"{k}={v}" for k, v in self.as_dict(with_time).items()]


class NodeLimitExceeded(RuntimeError):
    """The search hit ``node_limit`` before it could finish."""

    def __init__(self, stats: SolveStats):
        self.stats = stats
        super().__init__(f"node limit exhausted after {stats.nodes_expanded} nodes")


_CROSS = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def _pick_cell(a: np.ndarray, heuristic: BranchHeuristic) -> tuple[int, int]:
    open_ = a == UNKNOWN
    if heuristic is BranchHeuristic.FIRST_UNKNOWN:
        return tuple(map(int, np.argwhere(open_)[0]))
    colored = (~open_).astype(np.int16)
    score = ndimage.convolve(colored, _CROSS, mode="constant", cval=0)
    score = np.where(open_, score, -1)
    # argmax returns the first maximum in row-major order.
    return tuple(map(int, np.unravel_index(int(np.argmax(score)), a.shape)))


def _has_cycle(a: np.ndarray, code: int) -> bool:
    mask = a == code
    n = int(mask.sum())
    if n < 4:
        return False
    ncomp = components(mask)[1]
    return induced_edge_count(mask) > n - ncomp


def enumerate_solutions(
    p: Puzzle, cfg: SolveConfig | None = None, stats: SolveStats | None = None
) -> Iterator[Coloring]:
    """Yield every valid coloring of ``p`` once, in a fixed order.

    Black is tried before white at each branch.  ``stats`` (if given) is
    updated in place while the generator runs.
    """
    cfg = cfg or SolveConfig()
    stats = stats if stats is not None else SolveStats()
    start = time.perf_counter()
    mono = cfg.variant.forbids_mono_squares
    tree = cfg.variant is Variant.TREE_PARTITION
    stack = [np.array(p.cells, dtype=np.int8)]
    try:
        while stack:
            a = stack.pop()
            if cfg.node_limit is not None and stats.nodes_expanded >= cfg.node_limit:
                raise NodeLimitExceeded(stats)
            stats.nodes_expanded += 1
            if cfg.propagation:
                try:
                    stats.propagations += len(propagate_array(a, mono))
                except Contradiction:
                    stats.prunes_window += 1
                    continue
            if cfg.connectivity_pruning:
                if not (_feasible(a, BLACK) and _feasible(a, WHITE)):
                    stats.prunes_connectivity += 1
                    continue
                if tree and (_has_cycle(a, BLACK) or _has_cycle(a, WHITE)):
                    stats.prunes_connectivity += 1
                    continue
            if not (a == UNKNOWN).any():
                c = Coloring(a)
                if verify(p, c, cfg.variant).valid:
                    stats.solutions += 1
                    stats.elapsed = time.perf_counter() - start
                    yield c
                    if cfg.solution_limit is not None and stats.solutions >= cfg.solution_limit:
                        return
                continue
            cell = _pick_cell(a, cfg.branch_heuristic)
            for code in (WHITE, BLACK):  # pushed in reverse: BLACK is explored first
                child = a.copy()
                child[cell] = code
                stack.append(child)
    finally:
        stats.elapsed = time.perf_counter() - start


def solve_one(p: Puzzle, cfg: SolveConfig | None = None) -> tuple[Coloring | None, SolveStats]:
    stats = SolveStats()
    for c in enumerate_solutions(p, cfg, stats):
        return c, stats
    return None, stats


def count_solutions(p: Puzzle, cfg: SolveConfig | None = None) -> tuple[int, SolveStats]:
    stats = SolveStats()
    n = sum(1 for _ in enumerate_solutions(p, cfg, stats))
    return n, stats


class UniqueKind(enum.Enum):
    NONE = "none"
    UNIQUE = "unique"
    MULTIPLE = "multiple"


@dataclass(frozen=True)
class Uniqueness:
    kind: UniqueKind
    solution: Coloring | None = field(default=None, compare=False)
    stats: SolveStats | None = field(default=None, compare=False)


def is_unique(p: Puzzle, cfg: SolveConfig | None = None) -> Uniqueness:
    cfg = cfg or SolveConfig()
    probe = SolveConfig(
        variant=cfg.variant,
        solution_limit=2,
        node_limit=cfg.node_limit,
        branch_heuristic=cfg.branch_heuristic,
        propagation=cfg.propagation,
        connectivity_pruning=cfg.connectivity_pruning,
    )
    stats = SolveStats()
    found = list(enumerate_solutions(p, probe, stats))
    if not found:
        return Uniqueness(UniqueKind.NONE, stats=stats)
    if len(found) == 1:
        return Uniqueness(UniqueKind.UNIQUE, found[0], stats)
    return Uniqueness(UniqueKind.MULTIPLE, stats=stats)
