"""ASCII and SVG pictures of puzzles, solutions and compiled instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .grid import BLACK, EMPTY, Coloring, DimensionError, Puzzle, overlay, serialize_puzzle, serialize_solution

if TYPE_CHECKING:
    from .reduction import ReductionMap

# overlay tints, painted under the circles
_TINTS = {
    "important": "#f6d8a8",
    "exceptional": "#e0464e",
}


@dataclass(frozen=True)
class RenderOptions:
    cell_size: int = 20
    show_given_vs_filled: bool = True
    overlay: "ReductionMap | None" = None

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")


def _check(p: Puzzle, c: Coloring | None) -> None:
    if c is not None and p.shape != c.shape:
        raise DimensionError(f"puzzle is {p.rows}x{p.cols} but coloring is {c.rows}x{c.cols}")
    # Given cells must agree as well; overlay raises if not.
    if c is not None:
        overlay(p, c)


def to_ascii(p: Puzzle, c: Coloring | None = None) -> str:
    _check(p, c)
    if c is None:
        return serialize_puzzle(p)
    return serialize_solution(p, c)


def to_svg(p: Puzzle, c: Coloring | None = None, o: RenderOptions | None = None) -> str:
    """Flat SVG: one background rect per cell, one circle per colored cell.

    With an overlay, important cells are tinted and the exceptional cell
    gets a red square carrying ``class="exceptional"``.
    """
    o = o or RenderOptions()
    _check(p, c)
    if o.overlay is not None and o.overlay.shape != p.shape:
        raise DimensionError("overlay map does not match the puzzle")
    s = o.cell_size
    rad = s * 0.4
    w, h = p.cols * s, p.rows * s
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
    ]
    grid = c.cells if c is not None else p.cells
    for r in range(p.rows):
        for col in range(p.cols):
            fill = "#ffffff"
            cls = "cell"
            if o.overlay is not None:
                if o.overlay.kinds[r, col] == "exceptional":
                    fill, cls = _TINTS["exceptional"], "exceptional"
                elif o.overlay.important[r, col]:
                    fill, cls = _TINTS["important"], "important"
            out.append(
                f'<rect class="{cls}" x="{col * s}" y="{r * s}" width="{s}" height="{s}" '
                f'fill="{fill}" stroke="#c8c8c8" stroke-width="0.5"/>'
            )
    for r in range(p.rows):
        for col in range(p.cols):
            code = int(grid[r, col])
            if code == EMPTY:
                continue
            filled = p.cells[r, col] == EMPTY
            color = "#000000" if code == BLACK else "#ffffff"
            extra = ' stroke-dasharray="2,2"' if filled and o.show_given_vs_filled else ""
            cls = "filled" if filled else "given"
            out.append(
                f'<circle class="{cls}" cx="{col * s + s / 2:g}" cy="{r * s + s / 2:g}" r="{rad:g}" '
                f'fill="{color}" stroke="#000000" stroke-width="1"{extra}/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
