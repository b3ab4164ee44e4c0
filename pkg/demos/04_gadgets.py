"""Certifying the tile sets used by the reductions.

Each tile is checked against every neighbour it can meet in a legal
layout.  Straight and bent wire tiles must be fully forced, and the
vertex tile must admit exactly two local completions: one keeps its four
ports joined (unbroken), the other splits them and lets the white faces
meet through the middle (broken).
"""

from yinyang import gadget_lab as gl
from yinyang.grid import Coloring, Puzzle, serialize_solution
from yinyang.tiles import load_tileset

for name in ("connected9", "tree16"):
    ts = load_tileset(name)
    rep = gl.certify_tileset(ts)
    print(f"{name}: passed={rep.passed} in {rep.elapsed:.2f}s")
    for kind in sorted(rep.completions):
        print(f"  {kind:7s} contexts={rep.contexts[kind]:3d} completions={rep.completions[kind]}")

ts = load_tileset("connected9")
sols = gl.vertex_solutions(ts)
tile = ts.tiles["vertex"]
for label, cells in sols.items():
    sig = gl.port_signature(ts, "vertex", cells)
    print(f"\n{label} vertex, port groups={sig.port_groups}")
    # the solution printer shows the two filled-in cell sets in lowercase
    print(serialize_solution(Puzzle(tile), Coloring(cells)), end="")
