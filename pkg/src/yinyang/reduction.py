"""Compile orthogonal drawings of TRVB instances into Yin-Yang puzzles.

Every drawing cell becomes one gadget tile.  ``Reduction.CONNECTED9`` uses
9x9 tiles over an all-white background and targets the rules without the
2x2 constraint; ``Reduction.TREE16`` uses 16x16 tiles over alternating
black/white columns, adds a black top row and a white bottom row, and
targets full Yin-Yang.  Only vertex tiles keep empty cells.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import ndimage

from .gadget_lab import CertificationReport, certified, vertex_solutions
from .grid import BLACK, EMPTY, WHITE, Coloring, Puzzle, serialize_puzzle
from .tiles import Reduction, TileSet, load_tileset, tile_kind
from .trvb import Multigraph, OrthogonalDrawing, validate_drawing

Cell = tuple[int, int]

CELL_KINDS = (
    "filler",
    "tendril",
    "wire",
    "white_above",
    "vertex_decision",
    "vertex_companion",
    "vertex_path",
    "vertex_body",
    "top",
    "bottom",
    "exceptional",
)


class CompileError(ValueError):
    pass


class InvalidDrawing(CompileError):
    def __init__(self, report):
        self.report = report
        first = "; ".join(f"{k}: {d}" for k, d in report.violations[:3])
        super().__init__(f"drawing is not valid ({first})")


class UncertifiedTileSet(CompileError):
    def __init__(self, report: CertificationReport):
        self.report = report
        super().__init__(f"tile set {report.tileset} failed certification: {report.failures[0]}")


class MixedGadget(ValueError):
    """Decision cells of one vertex gadget disagree, so the coloring is no solution."""

    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"decision cells of vertex {vertex} are mixed")


@dataclass(eq=False)
class ReductionMap:
    """Where each puzzle cell came from.

    ``kinds`` and ``ids`` are ``rows x cols`` string arrays (``ids`` is ""
    when a cell belongs to no edge or vertex).  Coordinates refer to the
    final puzzle, extra Tree16 rows included.
    """

    reduction: Reduction
    kinds: np.ndarray
    ids: np.ndarray
    important: np.ndarray
    decision: dict[str, tuple[Cell, ...]] = field(default_factory=dict)
    companions: dict[str, tuple[Cell, ...]] = field(default_factory=dict)
    tiles: dict[tuple[int, int], tuple[str, Cell, str]] = field(default_factory=dict)
    exceptional: Cell | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.kinds.shape

    def cells_of(self, kind: str) -> list[Cell]:
        return [tuple(map(int, rc)) for rc in np.argwhere(self.kinds == kind)]


@dataclass(eq=False)
class CompiledInstance:
    puzzle: Puzzle
    map: ReductionMap
    drawing: OrthogonalDrawing
    tileset: TileSet

    @property
    def reduction(self) -> Reduction:
        return self.map.reduction

    @property
    def graph(self) -> Multigraph:
        return self.drawing.graph


def _wire_mask(ts: TileSet, sides: tuple[str, ...]) -> np.ndarray:
    n, r, c = ts.size, ts.wire_row, ts.wire_col
    m = np.zeros((n, n), dtype=bool)
    for s in sides:
        if s == "n":
            m[: r + 1, c] = True
        elif s == "s":
            m[r:, c] = True
        elif s == "w":
            m[r, : c + 1] = True
        elif s == "e":
            m[r, c:] = True
    return m


def _tree_paths(mask: np.ndarray, ends: list[Cell]) -> np.ndarray:
    """Union of shortest paths inside ``mask`` from the first end to the rest."""
    out = np.zeros_like(mask)
    if not ends:
        return out
    src = ends[0]
    prev = {src: None}
    queue = deque([src])
    while queue:
        r, c = queue.popleft()
        for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if 0 <= nr < mask.shape[0] and 0 <= nc < mask.shape[1] and mask[nr, nc] and (nr, nc) not in prev:
                prev[(nr, nc)] = (r, c)
                queue.append((nr, nc))
    for end in ends:
        x = end if end in prev else None
        while x is not None:
            out[x] = True
            x = prev[x]
    return out


def _vertex_roles(ts: TileSet) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell role names and importance for the vertex tile."""
    tile = ts.tiles["vertex"]
    unbroken = vertex_solutions(ts)["unbroken"]
    ends = [p.cell(ts.size) for p in ts.ports["vertex"]]
    path = _tree_paths(unbroken == BLACK, ends)
    roles = np.full(tile.shape, "vertex_body", dtype="<U16")
    roles[path] = "vertex_path"
    roles[(tile == EMPTY) & (unbroken == BLACK)] = "vertex_decision"
    roles[(tile == EMPTY) & (unbroken == WHITE)] = "vertex_companion"
    important = path | (roles == "vertex_decision")
    return roles, important


def compile_drawing(
    d: OrthogonalDrawing,
    g: Multigraph | None = None,
    which: Reduction | str = Reduction.TREE16,
    tileset: TileSet | None = None,
    certify: bool = True,
) -> CompiledInstance:
    """Tile the drawing into a puzzle and record where every cell came from."""
    g = g if g is not None else d.graph
    which = which if isinstance(which, Reduction) else Reduction.parse(which)
    report = validate_drawing(d, g)
    if not report.valid:
        raise InvalidDrawing(report)
    ts = tileset if tileset is not None else load_tileset(which)
    if ts.reduction is not which:
        raise CompileError(f"tile set {ts.name} does not belong to the {which.value} reduction")
    if certify:
        cert = certified(ts)
        if not cert.passed:
            raise UncertifiedTileSet(cert)
    n = ts.size
    off = 1 if which is Reduction.TREE16 else 0
    rows, cols = n * d.height + 2 * off, n * d.width
    cells = np.zeros((rows, cols), dtype=np.int8)
    kinds = np.full((rows, cols), "filler", dtype="<U16")
    ids = np.full((rows, cols), "", dtype=object)
    important = np.zeros((rows, cols), dtype=bool)
    vroles, vimportant = _vertex_roles(ts)
    blank = ts.tiles["blank"]
    features = d.cell_features()
    m = ReductionMap(which, kinds, ids, important)
    for y in range(d.height):
        for x in range(d.width):
            feat = features.get((x, y))
            kind = tile_kind(feat)
            tile = ts.tiles[kind]
            r0, c0 = off + y * n, x * n
            box = (slice(r0, r0 + n), slice(c0, c0 + n))
            cells[box] = tile
            kbox, ibox, imp = kinds[box], ids[box], important[box]
            kbox[blank == BLACK] = "tendril"
            label = ""
            if kind == "vertex":
                label = feat[1]
                kbox[...] = vroles
                imp |= vimportant
                ibox[...] = label
                loc = lambda role: tuple(  # noqa: E731
                    (r0 + int(r), c0 + int(c)) for r, c in np.argwhere(vroles == role)
                )
                m.decision[label] = loc("vertex_decision")
                m.companions[label] = loc("vertex_companion")
            elif kind != "blank":
                label = feat[1]
                wire = _wire_mask(ts, feat[2]) & (tile == BLACK)
                above = (tile == WHITE) & (blank == BLACK)
                kbox[wire] = "wire"
                kbox[above] = "white_above"
                ibox[wire | above] = label
                imp |= wire
            m.tiles[(x, y)] = (kind, (r0, c0), label)
    if off:
        cells[0, :], kinds[0, :] = BLACK, "top"
        cells[-1, :], kinds[-1, :] = WHITE, "bottom"
        m.exceptional = _exceptional_cell(cells, kinds, ts)
        if m.exceptional is not None:
            cells[m.exceptional] = BLACK
            kinds[m.exceptional] = "exceptional"
        elif g.edges:
            raise CompileError("no horizontal wire segment can take the exceptional cell")
    return CompiledInstance(Puzzle(cells), m, d, ts)


def _exceptional_cell(cells: np.ndarray, kinds: np.ndarray, ts: TileSet) -> Cell | None:
    """White cell to turn black so the wires meet the top row.

    Candidates sit above a horizontal wire cell at an odd column, are white,
    and have nothing but black between them and the top row.  The topmost
    candidate wins, then the leftmost.
    """
    wire_rows = {r for r in range(cells.shape[0]) if (r - 1) % ts.size == ts.wire_row}
    black_above = np.cumprod(cells == BLACK, axis=0).astype(bool)
    for r in sorted(wire_rows):
        if r < 2:
            continue
        for c in range(1, cells.shape[1], 2):
            if kinds[r, c] != "wire" or cells[r - 1, c] != WHITE:
                continue
            if black_above[r - 2, c]:
                return r - 1, c
    return None


compile = compile_drawing  # the name used throughout the docs


def embed_solution(ci: CompiledInstance, s) -> Coloring:
    """Fill each vertex gadget with its broken (``v`` in ``s``) or unbroken local solution."""
    s = set(s)
    unknown = s - set(ci.graph.vertices)
    if unknown:
        raise KeyError(f"unknown vertex id(s): {sorted(unknown)}")
    sols = vertex_solutions(ci.tileset)
    a = np.array(ci.puzzle.cells)
    for (kind, (r0, c0), label) in ci.map.tiles.values():
        if kind != "vertex":
            continue
        local = sols["broken" if label in s else "unbroken"]
        n = ci.tileset.size
        box = a[r0 : r0 + n, c0 : c0 + n]
        hole = box == EMPTY
        box[hole] = local[hole]
    return Coloring(a)


def extract_break_set(ci: CompiledInstance, c: Coloring) -> frozenset[str]:
    """Broken vertices read off the decision cells: all white means broken."""
    out = set()
    for v in ci.graph.vertices:
        vals = {c[rc] for rc in ci.map.decision[v]}
        if vals == {WHITE}:
            out.add(v)
        elif vals != {BLACK}:
            raise MixedGadget(v)
    return frozenset(out)


def classify_important_cells(ci: CompiledInstance) -> set[Cell]:
    return {tuple(map(int, rc)) for rc in np.argwhere(ci.map.important)}


# ---------------------------------------------------------------- structure


def tile_violations(ci: CompiledInstance, c: Coloring) -> list[str]:
    """Tiles whose restriction of ``c`` is not one of their certified completions."""
    sols = vertex_solutions(ci.tileset)
    n = ci.tileset.size
    out = []
    for (x, y), (kind, (r0, c0), label) in sorted(ci.map.tiles.items()):
        got = c.cells[r0 : r0 + n, c0 : c0 + n]
        given = ci.puzzle.cells[r0 : r0 + n, c0 : c0 + n]
        if kind == "vertex":
            ok = any(np.array_equal(got, s) for s in sols.values())
        else:
            ok = np.array_equal(got, given)
        if not ok:
            out.append(f"tile ({x}, {y}) {kind} {label}".rstrip())
    return out


def unimportant_black_violations(ci: CompiledInstance, c: Coloring) -> list[str]:
    """Unimportant black components that hold a cycle or hang off nothing.

    Each must be a tree touching an important cell or containing the top row.
    """
    imp = ci.map.important
    mask = (c.cells == BLACK) & ~imp
    labels, k = ndimage.label(mask)
    near = ndimage.binary_dilation(imp & (c.cells == BLACK))
    top = ci.map.kinds == "top"
    out = []
    for lab in range(1, k + 1):
        comp = labels == lab
        size = int(comp.sum())
        edges = int((comp[:, 1:] & comp[:, :-1]).sum() + (comp[1:, :] & comp[:-1, :]).sum())
        where = tuple(map(int, np.argwhere(comp)[0]))
        if edges != size - 1:
            out.append(f"cycle in unimportant black component at {where}")
        if not (comp & near).any() and not (comp & top).any():
            out.append(f"unimportant black component at {where} is detached")
    return out


# ---------------------------------------------------------------- sidecar


def serialize_map(m: ReductionMap) -> str:
    rows, cols = m.shape
    out = [f"reduction {m.reduction.value}", f"size {rows} {cols}"]
    for r in range(rows):
        for c in range(cols):
            line = f"cell {r} {c} {m.kinds[r, c]}"
            if m.ids[r, c]:
                line += f" {m.ids[r, c]}"
            if m.important[r, c]:
                line += " important"
            out.append(line)
    if m.exceptional is not None:
        out.append(f"exceptional {m.exceptional[0]} {m.exceptional[1]}")
    return "\n".join(out) + "\n"


def parse_map(text: str) -> ReductionMap:
    """Read a sidecar back.  Tile placements are not stored, so ``tiles`` stays empty."""
    reduction = None
    kinds = ids = important = None
    exceptional = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        try:
            if parts[0] == "reduction":
                reduction = Reduction.parse(parts[1])
            elif parts[0] == "size":
                rows, cols = int(parts[1]), int(parts[2])
                kinds = np.full((rows, cols), "filler", dtype="<U16")
                ids = np.full((rows, cols), "", dtype=object)
                important = np.zeros((rows, cols), dtype=bool)
            elif parts[0] == "cell":
                r, c, kind = int(parts[1]), int(parts[2]), parts[3]
                if kind not in CELL_KINDS:
                    raise ValueError(f"unknown cell kind {kind}")
                rest = parts[4:]
                if rest and rest[-1] == "important":
                    important[r, c] = True
                    rest = rest[:-1]
                kinds[r, c] = kind
                ids[r, c] = rest[0] if rest else ""
            elif parts[0] == "exceptional":
                exceptional = (int(parts[1]), int(parts[2]))
            else:
                raise ValueError(f"cannot parse {raw!r}")
        except (ValueError, IndexError, TypeError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if reduction is None or kinds is None:
        raise ValueError("sidecar needs 'reduction' and 'size' lines")
    m = ReductionMap(reduction, kinds, ids, important, exceptional=exceptional)
    for role, target in (("vertex_decision", m.decision), ("vertex_companion", m.companions)):
        for rc in m.cells_of(role):
            target.setdefault(str(ids[rc]), []).append(rc)
    m.decision = {k: tuple(v) for k, v in m.decision.items()}
    m.companions = {k: tuple(v) for k, v in m.companions.items()}
    return m


def write_compiled(ci: CompiledInstance, puzzle_path, map_path=None) -> None:
    Path(puzzle_path).write_text(serialize_puzzle(ci.puzzle))
    if map_path is not None:
        Path(map_path).write_text(serialize_map(ci.map))
