"""Tree-Residue Vertex Breaking on small drawings.

Breaking a vertex deletes it and gives each incident edge end its own
new leaf.  The question is whether some set of broken vertices leaves a
single tree.  Drawings place a 4-regular multigraph on a grid with
orthogonal edge routes; a few ship with the package.
"""

from importlib.resources import files

from yinyang.trvb import break_vertices, is_single_tree, parse_drawing, solve_trvb, validate_drawing

corpus = files("yinyang.data") / "corpus"

for name in ("two_parallel", "two_loops", "five_vertex"):
    d = parse_drawing((corpus / f"{name}.drawing").read_text())
    g = d.graph
    rep = validate_drawing(d)
    sols = solve_trvb(g)
    shown = [",".join(sorted(s)) for s in sols]
    print(f"{name}: {len(g.vertices)} vertices, {len(g.edges)} edges, drawing valid={rep.valid}")
    print(f"  break sets: {shown or 'none'}")

# Breaking k of n vertices leaves n + 3k vertices and 2n edges, so a tree
# needs 3k = n + 1.  Only graphs with n = 2 (mod 3) can be positive.
d = parse_drawing((corpus / "two_parallel.drawing").read_text())
for s in ([], ["u"], ["u", "v"]):
    r = break_vertices(d.graph, s)
    print(f"break {s or '-'}: {r.summary()} tree={is_single_tree(r)}")
