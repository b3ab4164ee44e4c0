"""Gadget tile sets and their text format.

A tile set file looks like::

    tileset tree16 16 12 11
    tile blank
    WBWB...
    ...
    port n 11 B

Tile rows use ``B``/``W`` for given circles and ``.`` for empty cells.
``port <side> <offset> <color>`` lines belong to the most recent tile and
mark where a wire leaves it; ``offset`` counts along the side (column for
``n``/``s``, row for ``e``/``w``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .grid import BLACK, EMPTY, WHITE
from .rules import Variant

SIDES = "nesw"
EDGE_KINDS = {
    ("e", "w"): "h",
    ("n", "s"): "v",
    ("e", "n"): "ne",
    ("n", "w"): "nw",
    ("e", "s"): "se",
    ("s", "w"): "sw",
}
TILE_KINDS = ("blank", "vertex", *EDGE_KINDS.values())
_CHARS = {"B": BLACK, "W": WHITE, ".": EMPTY}
_CODES = {v: k for k, v in _CHARS.items()}


class Reduction(enum.Enum):
    CONNECTED9 = "connected"
    TREE16 = "tree"

    @classmethod
    def parse(cls, name: str) -> "Reduction":
        key = name.strip().lower()
        for r in cls:
            if key in (r.value, r.tileset_name):
                return r
        raise ValueError(f"unknown reduction {name!r}")

    @property
    def tileset_name(self) -> str:
        return "connected9" if self is Reduction.CONNECTED9 else "tree16"

    @property
    def variant(self) -> Variant:
        """The puzzle rules the compiled instances are meant for."""
        return Variant.CONNECTED_ONLY if self is Reduction.CONNECTED9 else Variant.YIN_YANG


class TileFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class Port:
    side: str
    offset: int
    color: int = BLACK

    def cell(self, size: int) -> tuple[int, int]:
        """In-tile (row, col) of the boundary cell this port sits on."""
        last = size - 1
        return {
            "n": (0, self.offset),
            "s": (last, self.offset),
            "w": (self.offset, 0),
            "e": (self.offset, last),
        }[self.side]


@dataclass(frozen=True, eq=False)
class TileSet:
    name: str
    size: int
    wire_row: int
    wire_col: int
    tiles: dict[str, np.ndarray]
    ports: dict[str, tuple[Port, ...]] = field(default_factory=dict)

    @property
    def reduction(self) -> Reduction:
        return Reduction.parse(self.name)

    @property
    def variant(self) -> Variant:
        return self.reduction.variant

    def port_sides(self, kind: str) -> str:
        return "".join(sorted({p.side for p in self.ports.get(kind, ())}))

    def with_tile(self, kind: str, cells, ports=None) -> "TileSet":
        """Copy with one tile replaced; handy for sabotage experiments."""
        tiles = dict(self.tiles)
        arr = np.array(cells, dtype=np.int8)
        arr.setflags(write=False)
        tiles[kind] = arr
        all_ports = dict(self.ports)
        if ports is not None:
            all_ports[kind] = tuple(ports)
        return TileSet(self.name, self.size, self.wire_row, self.wire_col, tiles, all_ports)

    def fingerprint(self) -> bytes:
        return serialize_tileset(self).encode()


def parse_tileset(text: str) -> TileSet:
    header = None
    tiles: dict[str, list[list[int]]] = {}
    ports: dict[str, list[Port]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "tileset":
            if len(parts) != 5:
                raise TileFormatError("expected 'tileset <name> <size> <wire_row> <wire_col>'", lineno)
            try:
                header = (parts[1], *map(int, parts[2:]))
            except ValueError:
                raise TileFormatError("tile size and wire indices must be integers", lineno) from None
        elif header is None:
            raise TileFormatError("missing tileset header", lineno)
        elif parts[0] == "tile":
            if len(parts) != 2:
                raise TileFormatError("expected 'tile <kind>'", lineno)
            current = parts[1]
            if current in tiles:
                raise TileFormatError(f"duplicate tile {current}", lineno)
            tiles[current] = []
            ports[current] = []
        elif parts[0] == "port":
            if current is None:
                raise TileFormatError("port before any tile", lineno)
            if len(parts) != 4 or parts[1] not in SIDES or parts[3] not in ("B", "W"):
                raise TileFormatError("expected 'port <n|e|s|w> <offset> <B|W>'", lineno)
            try:
                offset = int(parts[2])
            except ValueError:
                raise TileFormatError("port offset must be an integer", lineno) from None
            if not 0 <= offset < header[1]:
                raise TileFormatError("port offset outside the tile", lineno)
            ports[current].append(Port(parts[1], offset, _CHARS[parts[3]]))
        else:
            if current is None:
                raise TileFormatError("tile row before any tile", lineno)
            if len(line) != header[1] or set(line) - set(_CHARS):
                raise TileFormatError(f"tile row must be {header[1]} characters over B, W, .", lineno)
            if ports[current]:
                raise TileFormatError("tile rows must come before port lines", lineno)
            tiles[current].append([_CHARS[ch] for ch in line])
    if header is None:
        raise TileFormatError("missing tileset header")
    name, size, wire_row, wire_col = header
    arrays = {}
    for kind, rows in tiles.items():
        if len(rows) != size:
            raise TileFormatError(f"tile {kind} has {len(rows)} rows, expected {size}")
        arr = np.array(rows, dtype=np.int8)
        arr.setflags(write=False)
        arrays[kind] = arr
    missing = [k for k in TILE_KINDS if k not in arrays]
    if missing:
        raise TileFormatError(f"missing tile kinds: {', '.join(missing)}")
    return TileSet(name, size, wire_row, wire_col, arrays, {k: tuple(v) for k, v in ports.items()})


def serialize_tileset(ts: TileSet) -> str:
    out = [f"tileset {ts.name} {ts.size} {ts.wire_row} {ts.wire_col}", ""]
    for kind, arr in ts.tiles.items():
        out.append(f"tile {kind}")
        out.extend("".join(_CODES[int(v)] for v in row) for row in arr)
        out.extend(f"port {p.side} {p.offset} {_CODES[p.color]}" for p in ts.ports.get(kind, ()))
        out.append("")
    return "\n".join(out)


def read_tileset(path) -> TileSet:
    return parse_tileset(Path(path).read_text())


def load_tileset(which: Reduction | str) -> TileSet:
    """One of the tile sets shipped with the package."""
    if not isinstance(which, Reduction):
        which = Reduction.parse(which)
    text = resources.files("yinyang.data").joinpath(f"{which.tileset_name}.tiles").read_text()
    return parse_tileset(text)


def tile_kind(feature: tuple | None) -> str:
    """Tile kind for a drawing-cell feature from ``OrthogonalDrawing.cell_features``."""
    if feature is None:
        return "blank"
    if feature[0] == "vertex":
        return "vertex"
    return EDGE_KINDS[tuple(feature[2])]
