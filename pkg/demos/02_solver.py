"""Solving, counting and uniqueness.

The solver is an exact backtracking search with propagation of the 2x2
rules and a connectivity feasibility prune.  Counters make every run
reproducible, and a node limit keeps a run bounded.
"""

from yinyang.grid import parse_puzzle, serialize_solution
from yinyang.rules import Variant
from yinyang.solver import NodeLimitExceeded, SolveConfig, count_solutions, is_unique, solve_one

p = parse_puzzle("B...\n....\n....\n...W\n")

c, stats = solve_one(p, SolveConfig(variant=Variant.YIN_YANG))
print("one solution (lowercase = filled in):")
print(serialize_solution(p, c), end="")
print(*stats.lines(with_time=False))

print()
for v in Variant:
    n, stats = count_solutions(p, SolveConfig(variant=v))
    print(f"{v.value:10s} solutions={n:4d} nodes={stats.nodes_expanded}")

# On boards with a black and a white boundary clue the yinyang and tree
# rules accept exactly the same boards, as the counts above show.

print()
u = is_unique(parse_puzzle("BW.\n...\n"), SolveConfig())
print("uniqueness of a 2x3 puzzle:", u.kind.value)

try:
    count_solutions(parse_puzzle("....\n" * 4), SolveConfig(node_limit=5))
except NodeLimitExceeded as exc:
    print("node limit hit after", exc.stats.nodes_expanded, "nodes")
