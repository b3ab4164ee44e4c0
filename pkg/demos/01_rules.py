"""Yin-Yang boards and the three rule variants.

A board is a grid of black (B) and white (W) circles.  The classic puzzle
asks that each color forms one orthogonally connected group and that no
2x2 window is a single color.  Two relatives drop or tighten that window
rule: ``connected`` keeps only connectivity, ``tree`` asks that each color
class induces a tree.
"""

from yinyang.grid import parse_puzzle, parse_solution
from yinyang.rules import Variant, check_diagonal_lemma, verify

puzzle = parse_puzzle("B..\n...\n..W\n")
print("puzzle:")
print(puzzle.rows, "x", puzzle.cols, "with", len(puzzle.empty_cells), "empty cells")

# A hook of black around a white corner satisfies every variant.
good = parse_solution("BBB\nBWB\nBWW\n")
for v in Variant:
    rep = verify(puzzle, good, v)
    print(f"{v.value:10s} valid={rep.valid}")

# A solid 2x2 white block is fine for `connected` but breaks the other two.
print()
block = parse_solution("BBB\nBWW\nBWW\n")
print("white 2x2 window present, so yinyang and tree reject it:")
for v in Variant:
    rep = verify(puzzle, block, v)
    print(f"  {v.value:10s} valid={rep.valid} {[str(x) for x in rep.violations]}")

# Any board where both colors are connected never shows a 2x2 checkerboard.
print()
print("checkerboard-free:", check_diagonal_lemma(good))
print("checkerboard-free for BW/WB:", check_diagonal_lemma(parse_solution("BW\nWB\n")))
