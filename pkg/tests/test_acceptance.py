"""The eight acceptance criteria, one test each.

Every test records a single ``criterion N: PASS|FAIL ...`` line, printed in
the terminal summary (and to stdout when run as a script).  Budgets are
asserted alongside the properties.
"""

import itertools
import time
from contextlib import contextmanager

import numpy as np
import pytest

import oracle
from conftest import corpus_paths, load
from yinyang import gadget_lab as gl
from yinyang.grid import BLACK, EMPTY, WHITE, Color, Coloring, Puzzle
from yinyang.reduction import (
    compile_drawing,
    embed_solution,
    extract_break_set,
    tile_violations,
    unimportant_black_violations,
)
from yinyang.rules import Variant, check_connectivity, check_diagonal_lemma
from yinyang.solver import SolveConfig, count_solutions, enumerate_solutions
from yinyang.tiles import Reduction, load_tileset
from yinyang.trvb import parse_drawing, residue_is_tree_unionfind, solve_trvb

pytestmark = pytest.mark.acceptance

NODE_LIMIT = 2_000_000
_TRANSCRIPTS: dict[int, list[str]] = {}


@contextmanager
def criterion(n, report_line, budget=None):
    """Yield a dict for a detail string; record PASS/FAIL and elapsed time."""
    info = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        over = budget is not None and dt >= budget
        verdict = "PASS" if ok and not over else "FAIL"
        limit = f" / {budget:g}s" if budget else ""
        line = f"criterion {n}: {verdict} {info['detail']} ({dt:.2f}s{limit})".replace("  ", " ")
        report_line(line)
        print(line)
    assert not over, f"criterion {n} took {dt:.1f}s, budget {budget}s"


def shapes(max_cells):
    return [(r, c) for r in range(1, max_cells + 1) for c in range(1, max_cells // r + 1)]


# ---------------------------------------------------------------- 1


def test_criterion_1_diagonal_lemma(report_line):
    with criterion(1, report_line, budget=60) as info:
        boards = violations = valid = 0
        for r, c in shapes(12):
            batch = oracle.all_colorings(r, c)
            want = oracle.valid_mask(batch, "connected")
            for k, arr in enumerate(batch):
                col = Coloring(arr)
                ok = check_connectivity(col, Color.BLACK) and check_connectivity(col, Color.WHITE)
                assert ok == want[k], (r, c, arr)
                if ok:
                    valid += 1
                    violations += not check_diagonal_lemma(col)
            boards += len(batch)
        info["detail"] = f"boards={boards} connected_valid={valid} violations={violations}"
        assert violations == 0


# ---------------------------------------------------------------- 2


def three_by_three_family():
    ring = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]
    for b, w in itertools.permutations(ring, 2):
        for center in (EMPTY, BLACK, WHITE):
            a = np.zeros((3, 3), dtype=np.int8)
            a[b], a[w], a[1, 1] = BLACK, WHITE, center
            yield a


def random_four_by_four(rng, n):
    ring = [(r, c) for r in range(4) for c in range(4) if r in (0, 3) or c in (0, 3)]
    out = []
    while len(out) < n:
        a = np.where(rng.random((4, 4)) < 0.25, rng.integers(1, 3, (4, 4)), 0).astype(np.int8)
        i, j = rng.choice(len(ring), 2, replace=False)
        a[ring[i]], a[ring[j]] = BLACK, WHITE
        out.append(a)
    return out


def solution_set(p, variant):
    cfg = SolveConfig(variant=variant, node_limit=NODE_LIMIT)
    return {c.cells.tobytes() for c in enumerate_solutions(p, cfg)}


def test_criterion_2_yinyang_equals_tree(report_line):
    with criterion(2, report_line, budget=120) as info:
        fixed = list(three_by_three_family())
        rand = random_four_by_four(np.random.default_rng(2), 200)
        mismatches = oracle_mismatches = 0
        for a in fixed + rand:
            p = Puzzle(a)
            yy, tp = solution_set(p, Variant.YIN_YANG), solution_set(p, Variant.TREE_PARTITION)
            mismatches += yy != tp
        for a in fixed:
            want = {s.tobytes() for s in oracle.solutions(a, "tree")}
            oracle_mismatches += solution_set(Puzzle(a), Variant.YIN_YANG) != want
        info["detail"] = f"fixed={len(fixed)} random={len(rand)} mismatches={mismatches} oracle_mismatches={oracle_mismatches}"
        assert mismatches == 0 and oracle_mismatches == 0


# ---------------------------------------------------------------- 3


def criterion_3_transcript(per_variant=500, seed=3):
    rng = np.random.default_rng(seed)
    table = shapes(12)
    lines = []
    for v in Variant:
        for i in range(per_variant):
            r, c = table[rng.integers(len(table))]
            density = rng.choice([0.0, 0.15, 0.3, 0.5])
            a = np.where(rng.random((r, c)) < density, rng.integers(1, 3, (r, c)), 0).astype(np.int8)
            got, stats = count_solutions(Puzzle(a), SolveConfig(variant=v, node_limit=NODE_LIMIT))
            want = oracle.count(a, v.value)
            text = "".join(".BW"[x] for x in a.ravel())
            lines.append(f"{v.value} {i} {r}x{c} {text} count={got} oracle={want} nodes={stats.nodes_expanded}")
    return lines


def test_criterion_3_solver_vs_oracle(report_line):
    with criterion(3, report_line, budget=120) as info:
        lines = criterion_3_transcript()
        _TRANSCRIPTS.setdefault(3, lines)
        bad = [ln for ln in lines if ln.split("count=")[1].split()[0] != ln.split("oracle=")[1].split()[0]]
        info["detail"] = f"instances={len(lines)} mismatches={len(bad)}"
        assert not bad, bad[:3]


# ---------------------------------------------------------------- 4


def test_criterion_4_trvb_facts(report_line):
    with criterion(4, report_line, budget=1) as info:
        results = {}
        for name, expected in (("two_parallel", 2), ("two_loops", 0)):
            g = load(name).graph
            sols = set(solve_trvb(g))
            independent = set(oracle.trvb_solutions(g.vertices, g.edges))
            subsets = [frozenset(s) for k in range(len(g.vertices) + 1) for s in itertools.combinations(g.vertices, k)]
            uf = {s for s in subsets if residue_is_tree_unionfind(g, s)}
            assert sols == independent == uf
            assert len(sols) == expected
            results[name] = len(sols)
        info["detail"] = " ".join(f"{k}={v}" for k, v in results.items())


# ---------------------------------------------------------------- 5


def test_criterion_5_certification(report_line):
    with criterion(5, report_line) as info:
        parts, failed = [], []
        for which in ("connected9", "tree16"):
            ts = load_tileset(which)
            rep = gl.certify_tileset(ts)
            ctx = gl.standard_context(ts, "vertex")
            sols = gl.enumerate_local_completions(ts.tiles["vertex"], ctx, ts.variant)
            sigs = [gl.port_signature(ts, "vertex", x) for x in sols]
            kinds = sorted("broken" if gl.is_broken(g) else "unbroken" if gl.is_unbroken(g) else "?" for g in sigs)
            parts.append(f"{which}:passed={rep.passed},vertex={len(sols)},{rep.elapsed:.2f}s")
            if not rep.passed or kinds != ["broken", "unbroken"] or rep.completions["vertex"] != 2 or rep.elapsed >= 60:
                failed.append((which, rep.lines()))
        info["detail"] = " ".join(parts) + " budget=60s each"
        assert not failed, failed


# ---------------------------------------------------------------- 6


def small_corpus():
    out = []
    for path in corpus_paths():
        d = parse_drawing(path.read_text())
        if len(d.graph.vertices) <= 4 or path.stem == "five_vertex":
            out.append((path.stem, d))
    return out


def criterion_6_transcript():
    lines = []
    two_vertex_time = None
    for name, d in small_corpus():
        g = d.graph
        trvb = sorted(sorted(s) for s in oracle.trvb_solutions(g.vertices, g.edges))
        assert trvb == sorted(sorted(s) for s in solve_trvb(g))
        for which, rules in ((Reduction.TREE16, Variant.YIN_YANG), (Reduction.CONNECTED9, Variant.CONNECTED_ONLY)):
            ci = compile_drawing(d, which=which)
            t0 = time.perf_counter()
            cfg = SolveConfig(variant=rules, node_limit=NODE_LIMIT)
            found = sorted(sorted(extract_break_set(ci, c)) for c in enumerate_solutions(ci.puzzle, cfg))
            dt = time.perf_counter() - t0
            if name == "two_parallel" and which is Reduction.TREE16:
                two_vertex_time = dt
            identity = all(
                extract_break_set(ci, embed_solution(ci, s)) == frozenset(s)
                for k in range(len(g.vertices) + 1)
                for s in itertools.combinations(g.vertices, k)
            )
            lines.append(
                f"{name} {which.value} {ci.puzzle.rows}x{ci.puzzle.cols} puzzle={len(found)} trvb={len(trvb)} "
                f"sets_equal={found == trvb} solvable_agrees={bool(found) == bool(trvb)} identity={identity}"
            )
    return lines, two_vertex_time


def _criterion_6_ok(line):
    f = dict(x.split("=") for x in line.split()[3:])
    ok = f["solvable_agrees"] == "True" and f["identity"] == "True"
    if " tree " in line:
        ok &= f["puzzle"] == f["trvb"]
    return ok


def test_criterion_6_end_to_end(report_line):
    with criterion(6, report_line, budget=20 * 60) as info:
        lines, two = criterion_6_transcript()
        _TRANSCRIPTS.setdefault(6, lines)
        bad = [ln for ln in lines if not _criterion_6_ok(ln)]
        parsimonious = all(ln.split("puzzle=")[1].split()[0] == ln.split("trvb=")[1].split()[0] for ln in lines)
        info["detail"] = (
            f"runs={len(lines)} failures={len(bad)} two_vertex_tree16={two:.2f}s parsimonious_both={parsimonious}"
        )
        assert not bad, bad
        assert two < 120


# ---------------------------------------------------------------- 7


def test_criterion_7_structure(report_line):
    with criterion(7, report_line) as info:
        checked = 0
        problems = []
        for path in corpus_paths():
            d = parse_drawing(path.read_text())
            ci = compile_drawing(d, which="tree")
            cfg = SolveConfig(variant=Variant.YIN_YANG, node_limit=NODE_LIMIT)
            for c in enumerate_solutions(ci.puzzle, cfg):
                checked += 1
                problems += [(path.stem, v) for v in tile_violations(ci, c)]
                problems += [(path.stem, v) for v in unimportant_black_violations(ci, c)]
        info["detail"] = f"solutions={checked} violations={len(problems)}"
        assert checked > 0 and not problems, problems[:3]


# ---------------------------------------------------------------- 8


def test_criterion_8_determinism(report_line):
    with criterion(8, report_line) as info:
        first3 = _TRANSCRIPTS.get(3) or criterion_3_transcript()
        first6 = _TRANSCRIPTS.get(6) or criterion_6_transcript()[0]
        again3 = criterion_3_transcript()
        again6 = criterion_6_transcript()[0]
        same3 = "\n".join(first3).encode() == "\n".join(again3).encode()
        same6 = "\n".join(first6).encode() == "\n".join(again6).encode()
        info["detail"] = f"criterion3_identical={same3} criterion6_identical={same6}"
        assert same3 and same6


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
