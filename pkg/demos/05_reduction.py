"""Compiling a TRVB drawing into a Yin-Yang puzzle and back.

Every grid square of the drawing becomes one tile.  The resulting puzzle
has exactly one solution per break set: ``embed_solution`` paints the
vertex gadgets for a chosen set and ``extract_break_set`` reads the set
back off any solved board.
"""

import itertools
from importlib.resources import files

from yinyang.reduction import classify_important_cells, compile_drawing, embed_solution, extract_break_set
from yinyang.rules import Variant, verify
from yinyang.solver import SolveConfig, count_solutions, enumerate_solutions
from yinyang.trvb import parse_drawing, solve_trvb

corpus = files("yinyang.data") / "corpus"
d = parse_drawing((corpus / "five_vertex.drawing").read_text())
g = d.graph
print("TRVB break sets:", sorted(",".join(sorted(s)) for s in solve_trvb(g)))

for which, rules in (("tree", Variant.YIN_YANG), ("connected", Variant.CONNECTED_ONLY)):
    ci = compile_drawing(d, which=which)
    m = ci.map
    print(f"\n{which}: {ci.puzzle.rows}x{ci.puzzle.cols}, {len(ci.puzzle.empty_cells)} empty cells,"
          f" {len(classify_important_cells(ci))} important cells, exceptional cell {m.exceptional}")
    n, stats = count_solutions(ci.puzzle, SolveConfig(variant=rules))
    print(f"  puzzle solutions={n} (nodes={stats.nodes_expanded})")
    for c in enumerate_solutions(ci.puzzle, SolveConfig(variant=rules)):
        print("  extracted:", ",".join(sorted(extract_break_set(ci, c))))

    # every subset embeds to a board that is valid exactly for the break sets
    ok = 0
    for k in range(len(g.vertices) + 1):
        for s in itertools.combinations(g.vertices, k):
            ok += verify(ci.puzzle, embed_solution(ci, s), rules).valid
    print(f"  embedded subsets that are valid boards: {ok} of {2 ** len(g.vertices)}")
