"""Model checker for gadget tiles.

A tile is judged inside a *boundary context*: the tile plus a two-cell
margin cut from the tiles a layout may put around it.  Completions of the
tile's empty cells are kept when the region shows no forbidden 2x2 window
and no one-color component walled off from the margin's outer frame.
Anything the checker keeps is a candidate; anything it drops cannot occur
in a global solution, so the test only ever errs on the permissive side.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .grid import BLACK, EMPTY, WHITE
from .rules import Variant
from .tiles import SIDES, TileSet

MARGIN = 2
MAX_EMPTY = 24
OUTSIDE = -1  # region cells that fall off the puzzle

_OPPOSITE_SIDE = {"n": "s", "s": "n", "e": "w", "w": "e"}
_STRAIGHT = {"n": "v", "s": "v", "e": "h", "w": "h"}
# Non-tile neighbours: the puzzle edge, and the extra rows of the Tree16 layout.
EDGE, TOP_ROW, BOTTOM_ROW = "edge", "top-row", "bottom-row"


class EnumerationBoundExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BoundaryContext:
    """A tile-sized hole surrounded by a fully colored margin.

    ``region`` is ``(size + 4) x (size + 4)``; the hole at ``[2:-2, 2:-2]`` is
    filled with the tile under test.  ``OUTSIDE`` marks cells past the
    puzzle edge.  ``closed`` means the region is the whole puzzle.
    """

    region: np.ndarray
    neighbors: tuple[tuple[str, str], ...]
    closed: bool = False

    def place(self, tile: np.ndarray) -> np.ndarray:
        out = self.region.copy()
        out[MARGIN:-MARGIN, MARGIN:-MARGIN] = tile
        return out

    def describe(self) -> str:
        return " ".join(f"{s}={k}" for s, k in self.neighbors)


def _band(ts: TileSet, kind: str) -> np.ndarray:
    n = ts.size
    out = np.full((n, n), OUTSIDE, dtype=np.int8)
    if kind == TOP_ROW:
        out[-1, :] = BLACK
    elif kind == BOTTOM_ROW:
        out[0, :] = WHITE
    return out


def build_context(ts: TileSet, neighbors: dict[str, np.ndarray | str]) -> BoundaryContext:
    """Context from one neighbour per side.

    Each entry is a colored tile array, or one of ``EDGE``, ``TOP_ROW`` and
    ``BOTTOM_ROW``.  Diagonal neighbours are plain blank tiles, or follow
    the side that ends the puzzle.
    """
    n = ts.size
    blank = ts.tiles["blank"]
    names = []
    grid = [[blank, None, blank], [None, None, None], [blank, None, blank]]
    spots = {"n": (0, 1), "s": (2, 1), "w": (1, 0), "e": (1, 2)}
    for side in SIDES:
        nb = neighbors.get(side, "blank")
        if isinstance(nb, str):
            names.append((side, nb))
            arr = blank if nb == "blank" else _band(ts, nb)
        else:
            names.append((side, "tile"))
            arr = np.asarray(nb)
        r, c = spots[side]
        grid[r][c] = arr
    # a side where the puzzle ends takes its diagonals with it
    for side, (r, c) in spots.items():
        kind = dict(names)[side]
        if kind in ("blank", "tile"):
            continue
        band = _band(ts, kind)
        if side in "ns":
            grid[r][0] = grid[r][2] = band
        else:
            grid[0][c] = grid[2][c] = band
    grid[1][1] = np.zeros((n, n), dtype=np.int8)
    world = np.block([[np.asarray(t, dtype=np.int8) for t in row] for row in grid])
    region = world[n - MARGIN : 2 * n + MARGIN, n - MARGIN : 2 * n + MARGIN].copy()
    # past the puzzle edge and the extra rows there is nothing left to reach
    closed = all(k in (EDGE, TOP_ROW, BOTTOM_ROW) for _, k in names)
    return BoundaryContext(region, tuple(names), closed=closed)


def context_at(grid: np.ndarray, r0: int, c0: int, size: int) -> BoundaryContext:
    """The real surroundings of the tile at ``(r0, c0)`` in a colored puzzle."""
    rows, cols = grid.shape
    region = np.full((size + 2 * MARGIN, size + 2 * MARGIN), OUTSIDE, dtype=np.int8)
    top, left = r0 - MARGIN, c0 - MARGIN
    rs, cs = max(top, 0), max(left, 0)
    re, ce = min(top + region.shape[0], rows), min(left + region.shape[1], cols)
    region[rs - top : re - top, cs - left : ce - left] = grid[rs:re, cs:ce]
    closed = (rs, cs, re, ce) == (0, 0, rows, cols)
    return BoundaryContext(region, (("all", "puzzle"),), closed=closed)


def standard_context(ts: TileSet, kind: str) -> BoundaryContext:
    """Straight wires on every port side, blank filler elsewhere."""
    sides = {p.side for p in ts.ports.get(kind, ())}
    return build_context(ts, {s: (ts.tiles[_STRAIGHT[s]] if s in sides else "blank") for s in SIDES})


# ---------------------------------------------------------------- local checks


def _bad_windows(batch: np.ndarray, mono: bool) -> np.ndarray:
    """Per-completion flag: some complete 2x2 window breaks a rule."""
    tl, tr = batch[:, :-1, :-1], batch[:, :-1, 1:]
    bl, br = batch[:, 1:, :-1], batch[:, 1:, 1:]
    full = (tl > 0) & (tr > 0) & (bl > 0) & (br > 0)
    bad = full & (tl == br) & (tr == bl) & (tl != tr)
    if mono:
        bad |= full & (tl == tr) & (tl == bl) & (tl == br)
    return bad.reshape(len(batch), -1).any(axis=1)


def isolated_component(region: np.ndarray, closed: bool = False) -> tuple[int, tuple[int, int]] | None:
    """First one-color component that cannot reach the region's outer frame.

    Returns ``(color, cell)`` or None.  For a closed region (the whole
    puzzle) a color only fails when it splits into several pieces.
    """
    frame = np.zeros(region.shape, dtype=bool)
    frame[0, :] = frame[-1, :] = frame[:, 0] = frame[:, -1] = True
    for color in (BLACK, WHITE):
        labels, k = ndimage.label(region == color)
        if k == 0:
            continue
        if closed:
            if k > 1:
                return color, tuple(map(int, np.argwhere(labels == 2)[0]))
            continue
        reach = set(np.unique(labels[frame & (labels > 0)]).tolist())
        for lab in range(1, k + 1):
            if lab not in reach:
                return color, tuple(map(int, np.argwhere(labels == lab)[0]))
    return None


def enumerate_local_completions(
    tile: np.ndarray, ctx: BoundaryContext, v: Variant
) -> list[np.ndarray]:
    """Admissible fillings of the tile's empty cells, as full tile arrays.

    Order: empty cells in row-major order, each tried Black then White, the
    first cell varying slowest.
    """
    tile = np.asarray(tile, dtype=np.int8)
    holes = [tuple(map(int, rc)) for rc in np.argwhere(tile == EMPTY)]
    if len(holes) > MAX_EMPTY:
        raise EnumerationBoundExceeded(f"{len(holes)} empty cells exceeds the bound {MAX_EMPTY}")
    base = ctx.place(tile)
    rows = np.array([r + MARGIN for r, _ in holes], dtype=int)
    cols = np.array([c + MARGIN for _, c in holes], dtype=int)
    out = []
    choices = itertools.product((BLACK, WHITE), repeat=len(holes))
    while True:
        chunk = list(itertools.islice(choices, 4096))
        if not chunk:
            break
        batch = np.repeat(base[None], len(chunk), axis=0)
        if holes:
            batch[:, rows, cols] = np.array(chunk, dtype=np.int8)
        keep = ~_bad_windows(batch, v.forbids_mono_squares)
        for region in batch[keep]:
            if isolated_component(region, ctx.closed) is None:
                done = region[MARGIN:-MARGIN, MARGIN:-MARGIN].copy()
                done.setflags(write=False)
                out.append(done)
    return out


# ---------------------------------------------------------------- signatures


def boundary_ring(size: int) -> list[tuple[int, int]]:
    """Tile boundary cells clockwise from the top-left corner."""
    last = size - 1
    ring = [(0, c) for c in range(size)]
    ring += [(r, last) for r in range(1, size)]
    ring += [(last, c) for c in range(last - 1, -1, -1)]
    ring += [(r, 0) for r in range(last - 1, 0, -1)]
    return ring


@dataclass(frozen=True)
class Crossing:
    """A maximal one-color run of boundary cells, named by its first cell."""

    color: int
    cells: tuple[tuple[int, int], ...]

    @property
    def label(self) -> str:
        r, c = self.cells[0]
        return f"{'BW'[self.color - 1]}{r},{c}"


@dataclass(frozen=True)
class PortSignature:
    black: tuple[tuple[str, ...], ...]
    white: tuple[tuple[str, ...], ...]
    port_classes: tuple[int, ...] = ()  # class index of each declared wire port
    faces_joined: tuple[tuple[int, int], ...] = ()  # face pairs linked by white

    @property
    def port_groups(self) -> int:
        return len(set(self.port_classes))

    def face_components(self, nfaces: int) -> int:
        parent = list(range(nfaces))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for a, b in self.faces_joined:
            parent[find(a)] = find(b)
        return len({find(i) for i in range(nfaces)})


def _crossings(done: np.ndarray) -> list[Crossing]:
    ring = boundary_ring(done.shape[0])
    colors = [int(done[rc]) for rc in ring]
    # rotate so the ring starts at a color change (unless it is one color)
    start = next((i for i in range(len(ring)) if colors[i] != colors[i - 1]), 0)
    out: list[Crossing] = []
    run: list[tuple[int, int]] = []
    for k in range(len(ring)):
        i = (start + k) % len(ring)
        if run and colors[i] != int(done[run[-1]]):
            out.append(Crossing(int(done[run[0]]), tuple(run)))
            run = []
        run.append(ring[i])
    out.append(Crossing(int(done[run[0]]), tuple(run)))
    return out


def port_signature(ts: TileSet, kind: str, done: np.ndarray) -> PortSignature:
    """Within-tile connectivity of the boundary crossings of a completed tile."""
    done = np.asarray(done)
    if (done == EMPTY).any():
        raise ValueError("port_signature needs a completed tile")
    ring = boundary_ring(ts.size)
    pos = {rc: i for i, rc in enumerate(ring)}
    crossings = _crossings(done)
    classes: dict[int, dict[int, list[str]]] = {BLACK: {}, WHITE: {}}
    owner: dict[tuple[int, int], tuple[int, int]] = {}
    for color in (BLACK, WHITE):
        labels, _ = ndimage.label(done == color)
        for x in crossings:
            if x.color != color:
                continue
            lab = int(labels[x.cells[0]])
            classes[color].setdefault(lab, []).append(x.label)
            for rc in x.cells:
                owner[rc] = (color, lab)
    black_keys = sorted(classes[BLACK])
    ports = sorted(ts.ports.get(kind, ()), key=lambda p: pos[p.cell(ts.size)])
    port_classes = []
    for p in ports:
        color, lab = owner[p.cell(ts.size)]
        port_classes.append(black_keys.index(lab) if color == BLACK else -1)
    # faces: boundary arcs between consecutive wire ports
    joined = set()
    if ports:
        marks = [pos[p.cell(ts.size)] for p in ports]
        face_of: dict[tuple[int, int], int] = {}
        for f, (a, b) in enumerate(zip(marks, marks[1:] + [marks[0] + len(ring)])):
            for i in range(a + 1, b):
                face_of[ring[i % len(ring)]] = f
        touched: dict[int, set[int]] = {}
        for x in crossings:
            if x.color == WHITE:
                lab = owner[x.cells[0]][1]
                touched.setdefault(lab, set()).update(face_of[rc] for rc in x.cells if rc in face_of)
        for faces in touched.values():
            for a, b in itertools.combinations(sorted(faces), 2):
                joined.add((a, b))

    def norm(d):
        return tuple(sorted(tuple(sorted(v)) for v in d.values()))

    return PortSignature(norm(classes[BLACK]), norm(classes[WHITE]), tuple(port_classes), tuple(sorted(joined)))


def is_unbroken(sig: PortSignature, nports: int = 4) -> bool:
    return sig.port_groups == 1 and min(sig.port_classes, default=0) >= 0 and not sig.faces_joined


def is_broken(sig: PortSignature, nports: int = 4) -> bool:
    return (
        sig.port_groups == nports
        and min(sig.port_classes, default=0) >= 0
        and sig.face_components(nports) == 1
    )


# ---------------------------------------------------------------- certification


@dataclass(frozen=True)
class Failure:
    kind: str  # "seam window violation" | "port signature mismatch" | "completion count" | ...
    tile: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind}: {self.tile} {self.detail}".rstrip()


@dataclass(frozen=True)
class CertificationReport:
    tileset: str
    failures: tuple[Failure, ...] = ()
    contexts: dict[str, int] = field(default_factory=dict, compare=False)
    completions: dict[str, int] = field(default_factory=dict, compare=False)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    def kinds(self) -> set[str]:
        return {f.kind for f in self.failures}

    def lines(self) -> list[str]:
        out = [f"tileset={self.tileset}", f"passed={'yes' if self.passed else 'no'}"]
        for k in sorted(self.completions):
            out.append(f"tile.{k}.contexts={self.contexts.get(k, 0)}")
            out.append(f"tile.{k}.completions={self.completions[k]}")
        out.extend(f"failure={f}" for f in self.failures)
        return out


def vertex_solutions(ts: TileSet) -> dict[str, np.ndarray]:
    """The unbroken and broken local solutions of the vertex tile.

    Taken from the standard context; raises ValueError unless there are
    exactly two and they carry the two expected signatures.
    """
    key = ts.fingerprint()
    if key not in _SOLUTIONS:
        _SOLUTIONS[key] = _vertex_solutions(ts)
    return _SOLUTIONS[key]


_SOLUTIONS: dict[bytes, dict[str, np.ndarray]] = {}
_REPORTS: dict[bytes, "CertificationReport"] = {}


def _vertex_solutions(ts: TileSet) -> dict[str, np.ndarray]:
    sols = enumerate_local_completions(ts.tiles["vertex"], standard_context(ts, "vertex"), ts.variant)
    out = {}
    for s in sols:
        sig = port_signature(ts, "vertex", s)
        if is_unbroken(sig):
            out.setdefault("unbroken", s)
        elif is_broken(sig):
            out.setdefault("broken", s)
    if len(sols) != 2 or len(out) != 2:
        raise ValueError(f"vertex tile of {ts.name} does not have the two expected local solutions")
    return out


def _has_port(ts: TileSet, kind: str, side: str) -> bool:
    return any(p.side == side for p in ts.ports.get(kind, ()))


def neighbor_options(ts: TileSet, kind: str, side: str) -> list[tuple[str, np.ndarray | str]]:
    """Fully given tiles a legal layout can put on ``side`` of a ``kind`` tile.

    Vertex tiles are left out: two touching vertices interact through their
    own empty cells, which is a global question.  Their seams are still
    checked, and the end-to-end tests cover such layouts.
    """
    want = _has_port(ts, kind, side)
    opp = _OPPOSITE_SIDE[side]
    out: list[tuple[str, np.ndarray | str]] = []
    seen = set()
    for other in ts.tiles:
        if _has_port(ts, other, opp) != want:
            continue
        arr = ts.tiles[other]
        if (arr == EMPTY).any() or arr.tobytes() in seen:
            continue
        seen.add(arr.tobytes())
        out.append((other, arr))
    if not want:
        if ts.variant is Variant.CONNECTED_ONLY:
            out.append((EDGE, EDGE))
        elif side == "n":
            out.append((TOP_ROW, TOP_ROW))
        elif side == "s":
            out.append((BOTTOM_ROW, BOTTOM_ROW))
        else:
            out.append((EDGE, EDGE))
    return out


def _seam_failures(ts: TileSet) -> list[Failure]:
    """Complete 2x2 windows straddling a seam between two tiles that may touch."""
    mono = ts.variant.forbids_mono_squares
    out = []
    kinds = list(ts.tiles)
    for a in kinds:
        for b in kinds:
            for side, pick in (("e", lambda x, y: np.hstack([x[:, -1:], y[:, :1]])),
                               ("s", lambda x, y: np.vstack([x[-1:, :], y[:1, :]]))):
                if _has_port(ts, a, side) != _has_port(ts, b, _OPPOSITE_SIDE[side]):
                    continue
                seam = pick(ts.tiles[a], ts.tiles[b])
                if _bad_windows(seam[None], mono)[0]:
                    out.append(Failure("seam window violation", a, f"{side} of it sits {b}"))
    if ts.variant is not Variant.CONNECTED_ONLY:
        n = ts.size
        for k in kinds:
            if not _has_port(ts, k, "n"):
                band = np.vstack([np.full((1, n), BLACK, np.int8), ts.tiles[k][:1]])
                if _bad_windows(band[None], mono)[0]:
                    out.append(Failure("seam window violation", k, "under the top row"))
            if not _has_port(ts, k, "s"):
                band = np.vstack([ts.tiles[k][-1:], np.full((1, n), WHITE, np.int8)])
                if _bad_windows(band[None], mono)[0]:
                    out.append(Failure("seam window violation", k, "above the bottom row"))
    return out


def _expected(ts: TileSet, kind: str):
    nports = len(ts.ports.get(kind, ()))
    if kind == "vertex":
        return 2, None
    if nports == 0:
        return 1, lambda sig: True
    return 1, lambda sig: sig.port_groups == 1 and min(sig.port_classes) >= 0 and not sig.faces_joined


def certify_tileset(ts: TileSet) -> CertificationReport:
    """Check every tile in every neighbour context plus all seams."""
    start = time.perf_counter()
    failures = _seam_failures(ts)
    counts: dict[str, int] = {}
    ncontexts: dict[str, int] = {}
    for kind in ts.tiles:
        want, ok = _expected(ts, kind)
        opts = [neighbor_options(ts, kind, s) for s in SIDES]
        distinct: set[bytes] = set()
        nctx = 0
        for combo in itertools.product(*opts):
            ctx = build_context(ts, {s: arr for s, (_, arr) in zip(SIDES, combo)})
            if ctx.closed and ts.ports.get(kind):
                continue
            nctx += 1
            sols = enumerate_local_completions(ts.tiles[kind], ctx, ts.variant)
            distinct.update(s.tobytes() for s in sols)
            where = " ".join(f"{s}={name}" for s, (name, _) in zip(SIDES, combo))
            if len(sols) != want:
                failures.append(Failure("completion count", kind, f"{len(sols)} completions with {where}"))
                continue
            sigs = [port_signature(ts, kind, s) for s in sols]
            if kind == "vertex":
                good = sorted((is_unbroken(g), is_broken(g)) for g in sigs) == [(False, True), (True, False)]
            else:
                good = all(ok(g) for g in sigs)
            if not good:
                failures.append(Failure("port signature mismatch", kind, f"with {where}"))
        counts[kind] = len(distinct)
        ncontexts[kind] = nctx
    # one line per (kind, tile) is enough to read a report
    uniq, seen = [], set()
    for f in failures:
        key = (f.kind, f.tile)
        if key not in seen:
            seen.add(key)
            uniq.append(f)
    return CertificationReport(ts.name, tuple(uniq), ncontexts, counts, time.perf_counter() - start)


def certified(ts: TileSet) -> CertificationReport:
    """Cached certify_tileset keyed on the tile set's text."""
    key = ts.fingerprint()
    if key not in _REPORTS:
        _REPORTS[key] = certify_tileset(ts)
    return _REPORTS[key]
