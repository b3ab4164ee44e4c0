"""Command line entry point.

Exit status: 0 success or a positive answer, 1 a clean negative answer
(unsolvable, not unique, invalid, failed certification), 2 bad usage or
unreadable input.  Facts go to stdout one per line as ``key=value``.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import gadget_lab, reduction
from .grid import ClueViolation, DimensionError, PuzzleFormatError, parse_puzzle, parse_solution, serialize_solution
from .render import RenderOptions, to_ascii, to_svg
from .rules import Variant, verify
from .solver import (
    BranchHeuristic,
    NodeLimitExceeded,
    SolveConfig,
    SolveStats,
    UniqueKind,
    enumerate_solutions,
    is_unique,
)
from .tiles import Reduction, TileFormatError, load_tileset, read_tileset
from .trvb import (
    DrawingFormatError,
    TooManyVertices,
    break_vertices,
    is_single_tree,
    parse_drawing,
    solve_trvb,
    validate_drawing,
)

OK, NO, ERR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(*lines: str) -> None:
    for line in lines:
        print(line)


def _fmt_set(s) -> str:
    return ",".join(sorted(s)) if s else "-"


def _read(path: str) -> str:
    return Path(path).read_text()


def _config(args, limit=None) -> SolveConfig:
    return SolveConfig(
        variant=Variant.parse(args.variant),
        solution_limit=limit,
        node_limit=args.node_limit,
        branch_heuristic=BranchHeuristic(args.heuristic),
    )


# ---------------------------------------------------------------- commands


def cmd_solve(args) -> int:
    p = parse_puzzle(_read(args.puzzle))
    stats = SolveStats()
    if args.unique:
        u = is_unique(p, _config(args))
        stats = u.stats
        _emit(f"unique={u.kind.value}")
        if u.kind is UniqueKind.UNIQUE:
            sys.stdout.write(serialize_solution(p, u.solution))
        status = OK if u.kind is UniqueKind.UNIQUE else NO
    elif args.count:
        n = sum(1 for _ in enumerate_solutions(p, _config(args), stats))
        _emit(f"count={n}")
        status = OK if n else NO
    else:
        limit = args.enumerate or 1
        sols = list(enumerate_solutions(p, _config(args, limit), stats))
        if not sols:
            _emit("UNSAT")
        for i, c in enumerate(sols):
            if args.enumerate:
                _emit(f"solution={i + 1}")
            sys.stdout.write(serialize_solution(p, c))
        if args.enumerate:
            _emit(f"solutions={len(sols)}")
        status = OK if sols else NO
    if args.stats:
        _emit(*stats.lines(with_time=not args.no_time))
    return status


def cmd_verify(args) -> int:
    p = parse_puzzle(_read(args.puzzle))
    c = parse_solution(_read(args.solution))
    rep = verify(p, c, Variant.parse(args.variant))
    _emit(f"valid={'yes' if rep.valid else 'no'}")
    _emit(*(f"violation={v}" for v in rep.violations))
    return OK if rep.valid else NO


def cmd_trvb(args) -> int:
    d = parse_drawing(_read(args.drawing))
    g = d.graph
    if args.action == "validate":
        rep = validate_drawing(d)
        _emit(f"valid={'yes' if rep.valid else 'no'}")
        _emit(*(f"violation={k}: {what}" for k, what in rep.violations))
        return OK if rep.valid else NO
    if args.action == "solve":
        sols = solve_trvb(g)
        _emit(f"vertices={len(g.vertices)}", f"solutions={len(sols)}")
        _emit(*(f"breakset={_fmt_set(s)}" for s in sols))
        return OK if sols else NO
    # break
    chosen = [v for v in (args.set or "").split(",") if v]
    broken = break_vertices(g, chosen)
    _emit(f"broken={_fmt_set(chosen)}")
    _emit(*(f"{k}={v}" for k, v in broken.summary().items()))
    _emit(f"tree={'yes' if is_single_tree(broken) else 'no'}")
    return OK


def _tileset(args):
    which = Reduction.parse(args.variant)
    ts = read_tileset(args.tiles) if args.tiles else load_tileset(which)
    return which, ts


def cmd_reduce(args) -> int:
    d = parse_drawing(_read(args.drawing))
    which, ts = _tileset(args)
    try:
        ci = reduction.compile_drawing(d, which=which, tileset=ts)
    except reduction.UncertifiedTileSet as exc:
        _emit("compiled=no", *(f"failure={f}" for f in exc.report.failures))
        return NO
    reduction.write_compiled(ci, args.out, args.map)
    m = ci.map
    _emit(
        "compiled=yes",
        f"rows={ci.puzzle.rows}",
        f"cols={ci.puzzle.cols}",
        f"empty={len(ci.puzzle.empty_cells)}",
        f"vertex_gadgets={len(m.decision)}",
        f"exceptional={'-' if m.exceptional is None else '%d,%d' % m.exceptional}",
    )
    return OK


def cmd_roundtrip(args) -> int:
    d = parse_drawing(_read(args.drawing))
    which, ts = _tileset(args)
    ci = reduction.compile_drawing(d, which=which, tileset=ts)
    rules = Variant.parse(args.rules) if args.rules else which.variant
    cfg = SolveConfig(variant=rules, node_limit=args.node_limit)
    g = d.graph
    trvb = solve_trvb(g)
    stats = SolveStats()
    found = [reduction.extract_break_set(ci, c) for c in enumerate_solutions(ci.puzzle, cfg, stats)]
    embed_ok = roundtrip_ok = True
    for k in range(len(g.vertices) + 1):
        for s in itertools.combinations(g.vertices, k):
            c = reduction.embed_solution(ci, s)
            roundtrip_ok &= reduction.extract_break_set(ci, c) == frozenset(s)
            embed_ok &= verify(ci.puzzle, c, rules).valid == (frozenset(s) in trvb)
    extracted_ok = sorted(map(sorted, found)) == sorted(map(sorted, trvb))
    parsimonious = len(found) == len(trvb)
    agree = bool(found) == bool(trvb)
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    _emit(
        f"reduction={which.value}",
        f"rules={rules.value}",
        f"puzzle={len(found)}",
        f"trvb={len(trvb)}",
        f"parsimonious={yn(parsimonious)}",
        f"solvable_agrees={yn(agree)}",
        f"extracted_match={yn(extracted_ok)}",
        f"extract_embed_identity={yn(roundtrip_ok)}",
        f"embed_valid_iff_trvb={yn(embed_ok)}",
    )
    if args.stats:
        _emit(*stats.lines(with_time=not args.no_time))
    return OK if agree and extracted_ok and roundtrip_ok and embed_ok and parsimonious else NO


def cmd_gadget(args) -> int:
    path = Path(args.tileset)
    if path.exists():
        ts = read_tileset(path)
    elif args.tileset in ("connected9", "tree16", "connected", "tree"):
        ts = load_tileset(args.tileset)
    else:
        raise FileNotFoundError(f"no tile set at {args.tileset}")
    rep = gadget_lab.certify_tileset(ts)
    _emit(*rep.lines())
    return OK if rep.passed else NO


def cmd_render(args) -> int:
    p = parse_puzzle(_read(args.puzzle))
    c = parse_solution(_read(args.solution)) if args.solution else None
    if args.format == "ascii":
        text = to_ascii(p, c)
    else:
        m = reduction.parse_map(_read(args.map)) if args.map else None
        text = to_svg(p, c, RenderOptions(args.cell_size, not args.solid, m))
    if args.out:
        Path(args.out).write_text(text)
        _emit(f"written={args.out}")
    else:
        sys.stdout.write(text)
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="yinyang", description="Yin-Yang puzzles and TRVB reductions.")
    sub = ap.add_subparsers(dest="command", required=True)
    variants = [v.value for v in Variant]

    def search_opts(sp):
        sp.add_argument("--node-limit", type=int, default=None)
        sp.add_argument("--heuristic", choices=[h.value for h in BranchHeuristic], default="most-constrained")
        sp.add_argument("--stats", action="store_true", help="print search counters")
        sp.add_argument("--no-time", action="store_true", help="leave elapsed time out of --stats")

    sp = sub.add_parser("solve", help="solve, count or check uniqueness")
    sp.add_argument("puzzle")
    sp.add_argument("--variant", choices=variants, default="yinyang")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--enumerate", type=int, metavar="N")
    mode.add_argument("--unique", action="store_true")
    search_opts(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a solution against a puzzle")
    sp.add_argument("puzzle")
    sp.add_argument("solution")
    sp.add_argument("--variant", choices=variants, default="yinyang")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("trvb", help="work with a TRVB drawing")
    sp.add_argument("drawing")
    sp.add_argument("action", choices=["solve", "break", "validate"])
    sp.add_argument("--set", help="comma separated vertex ids to break")
    sp.set_defaults(func=cmd_trvb)

    red = ["connected", "tree"]
    sp = sub.add_parser("reduce", help="compile a drawing into a puzzle")
    sp.add_argument("drawing")
    sp.add_argument("--variant", choices=red, default="tree")
    sp.add_argument("--out", required=True)
    sp.add_argument("--map")
    sp.add_argument("--tiles", help="tile set file instead of the shipped one")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("roundtrip", help="compare puzzle and TRVB solution sets")
    sp.add_argument("drawing")
    sp.add_argument("--variant", choices=red, default="tree")
    sp.add_argument("--rules", choices=variants, help="puzzle rules to count under")
    sp.add_argument("--tiles")
    search_opts(sp)
    sp.set_defaults(func=cmd_roundtrip, heuristic="most-constrained")

    sp = sub.add_parser("gadget", help="certify a tile set")
    sp.add_argument("tileset", help="tile set file, or connected9 / tree16")
    sp.add_argument("action", nargs="?", choices=["check"], default="check")
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("render", help="draw a puzzle as text or SVG")
    sp.add_argument("puzzle")
    sp.add_argument("solution", nargs="?")
    sp.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    sp.add_argument("--out")
    sp.add_argument("--map", help="reduction sidecar to overlay (svg only)")
    sp.add_argument("--cell-size", type=int, default=20)
    sp.add_argument("--solid", action="store_true", help="no dotted outline for filled cells")
    sp.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NodeLimitExceeded as exc:
        print(f"error=node limit exhausted after {exc.stats.nodes_expanded} nodes", file=sys.stderr)
        return ERR
    except (
        OSError,
        PuzzleFormatError,
        DrawingFormatError,
        TileFormatError,
        DimensionError,
        ClueViolation,
        TooManyVertices,
        reduction.CompileError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error={exc}", file=sys.stderr)
        return ERR


if __name__ == "__main__":
    sys.exit(main())
