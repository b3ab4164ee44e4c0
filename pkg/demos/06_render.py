"""Pictures: text for quick looks, SVG for figures.

Given circles are drawn solid; circles the solver filled in get a dotted
outline.  With a reduction sidecar the important cells are tinted and the
exceptional cell is painted red.
"""

import sys
from importlib.resources import files
from pathlib import Path

from yinyang.reduction import compile_drawing, embed_solution
from yinyang.render import RenderOptions, to_ascii, to_svg
from yinyang.trvb import parse_drawing

out = Path(sys.argv[1] if len(sys.argv) > 1 else "render_out")
out.mkdir(exist_ok=True)

d = parse_drawing((files("yinyang.data") / "corpus" / "two_parallel.drawing").read_text())
ci = compile_drawing(d, which="tree")
board = embed_solution(ci, {"u"})

rows = to_ascii(ci.puzzle, board).splitlines()
print("\n".join(r[:32] for r in rows[:18]))
print("... first 18 rows and 32 columns of", ci.puzzle.rows, "x", ci.puzzle.cols)
(out / "two_parallel.svg").write_text(to_svg(ci.puzzle, board, RenderOptions(cell_size=8, overlay=ci.map)))
(out / "two_parallel_puzzle.svg").write_text(to_svg(ci.puzzle, None, RenderOptions(cell_size=8)))
print("wrote", sorted(p.name for p in out.glob("*.svg")), "to", out)
