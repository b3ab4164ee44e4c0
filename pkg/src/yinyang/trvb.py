"""Tree-residue vertex breaking on planar 4-regular multigraphs.

Also holds the orthogonal grid drawings that the puzzle reductions consume.
Drawings are inputs here; nothing in this module computes an embedding.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable

Point = tuple[int, int]

# Port directions as (dx, dy) with y growing downward.
DIRECTIONS = {"n": (0, -1), "e": (1, 0), "s": (0, 1), "w": (-1, 0)}
_DIR_NAME = {v: k for k, v in DIRECTIONS.items()}


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (edge id, end 0, end 1); loops allowed

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        if len({e[0] for e in self.edges}) != len(self.edges):
            raise ValueError("duplicate edge id")
        known = set(self.vertices)
        for eid, u, v in self.edges:
            if u not in known or v not in known:
                raise ValueError(f"edge {eid} has an unknown endpoint")

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def degrees(self) -> dict[str, int]:
        d = Counter({v: 0 for v in self.vertices})
        for _, u, w in self.edges:
            d[u] += 1
            d[w] += 1
        return dict(d)

    def is_four_regular(self) -> bool:
        return all(d == 4 for d in self.degrees().values())

    def summary(self) -> dict[str, int]:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "leaves": sum(1 for d in self.degrees().values() if d == 1),
            "components": count_components(self),
        }


def break_vertices(g: Multigraph, s: Iterable[str]) -> Multigraph:
    """Delete each vertex of ``s``; every edge end at it moves to a fresh leaf.

    Fresh leaves are named ``<vertex>/<edge>/<end>`` so repeated breaking in
    any order produces the same graph.
    """
    s = set(s)
    unknown = s - set(g.vertices)
    if unknown:
        raise KeyError(f"unknown vertex id(s): {sorted(unknown)}")
    vertices = [v for v in g.vertices if v not in s]
    edges = []
    for eid, u, w in g.edges:
        ends = []
        for i, x in enumerate((u, w)):
            if x in s:
                x = f"{x}/{eid}/{i}"
                vertices.append(x)
            ends.append(x)
        edges.append((eid, ends[0], ends[1]))
    return Multigraph(tuple(vertices), tuple(edges))


def _adjacency(g: Multigraph) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for _, u, w in g.edges:
        adj[u].append(w)
        adj[w].append(u)
    return adj


def count_components(g: Multigraph) -> int:
    adj = _adjacency(g)
    seen: set[str] = set()
    n = 0
    for start in g.vertices:
        if start in seen:
            continue
        n += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return n


def is_single_tree(g: Multigraph) -> bool:
    if not g.vertices:
        return False
    return len(g.edges) == len(g.vertices) - 1 and count_components(g) == 1


class TooManyVertices(ValueError):
    pass


def solve_trvb(g: Multigraph, max_vertices: int = 20) -> list[frozenset[str]]:
    """All break sets whose residue is one tree, in bitmask order.

    Bit ``i`` of the mask stands for ``g.vertices[i]``.
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise TooManyVertices(f"{n} vertices exceeds the enumeration bound {max_vertices}")
    out = []
    for mask in range(1 << n):
        s = frozenset(v for i, v in enumerate(g.vertices) if mask >> i & 1)
        if is_single_tree(break_vertices(g, s)):
            out.append(s)
    return out


def residue_is_tree_unionfind(g: Multigraph, s: Iterable[str]) -> bool:
    """Second tree test that never builds the broken graph.

    Every edge end at a broken vertex is its own node; a union that joins
    two nodes already in one set closes a cycle.
    """
    s = set(s)
    parent: dict[object, object] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in g.vertices:
        if v not in s:
            find(v)
    for k, (_, u, w) in enumerate(g.edges):
        a = (k, 0) if u in s else u
        b = (k, 1) if w in s else w
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    roots = {find(x) for x in list(parent)}
    return len(roots) == 1


# ---------------------------------------------------------------- drawings


class DrawingFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class OrthogonalDrawing:
    """Grid drawing of a multigraph: ``width`` x ``height`` cells, x right, y down."""

    width: int
    height: int
    positions: dict[str, Point]
    routes: dict[str, tuple[Point, ...]]  # corner points, endpoint to endpoint
    graph: Multigraph = field(compare=False)

    def route_cells(self, eid: str) -> list[Point]:
        """Every lattice point along a route, both endpoints included."""
        pts = self.routes[eid]
        cells = [pts[0]]
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if x1 != x2 and y1 != y2:
                raise DrawingFormatError(f"edge {eid}: segment is not axis-parallel")
            dx = (x2 > x1) - (x2 < x1)
            dy = (y2 > y1) - (y2 < y1)
            x, y = x1, y1
            while (x, y) != (x2, y2):
                x, y = x + dx, y + dy
                cells.append((x, y))
        return cells

    def cell_features(self) -> dict[Point, tuple]:
        """Map each occupied drawing cell to ``("vertex", id)`` or ``("edge", id, sides)``.

        ``sides`` is the sorted pair of compass sides the route uses to
        enter and leave that cell.
        """
        out: dict[Point, tuple] = {p: ("vertex", v) for v, p in self.positions.items()}
        for eid in self.routes:
            cells = self.route_cells(eid)
            for prev, cur, nxt in zip(cells, cells[1:], cells[2:]):
                sides = tuple(sorted((_side(cur, prev), _side(cur, nxt))))
                out[cur] = ("edge", eid, sides)
        return out


def _side(at: Point, toward: Point) -> str:
    return _DIR_NAME[(toward[0] - at[0], toward[1] - at[1])]


def parse_drawing(text: str) -> OrthogonalDrawing:
    width = height = None
    positions: dict[str, Point] = {}
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    routes: dict[str, tuple[Point, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "dim" and len(parts) == 3:
                width, height = int(parts[1]), int(parts[2])
                if width < 1 or height < 1:
                    raise DrawingFormatError("dimensions must be positive", lineno)
            elif parts[0] == "v" and len(parts) == 4:
                vid = parts[1]
                if vid in positions:
                    raise DrawingFormatError(f"duplicate vertex {vid}", lineno)
                positions[vid] = (int(parts[2]), int(parts[3]))
                vertices.append(vid)
            elif parts[0] == "e" and len(parts) >= 4 and (len(parts) - 4) % 2 == 0:
                eid, u, v = parts[1:4]
                if eid in routes:
                    raise DrawingFormatError(f"duplicate edge {eid}", lineno)
                coords = [int(x) for x in parts[4:]]
                routes[eid] = tuple(zip(coords[::2], coords[1::2]))
                edges.append((eid, u, v))
            else:
                raise DrawingFormatError(f"cannot parse {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, DrawingFormatError):
                raise
            raise DrawingFormatError(str(exc), lineno) from None
    if width is None:
        raise DrawingFormatError("missing 'dim W H' line")
    try:
        graph = Multigraph(tuple(vertices), tuple(edges))
    except ValueError as exc:
        raise DrawingFormatError(str(exc)) from None
    return OrthogonalDrawing(width, height, positions, routes, graph)


def serialize_drawing(d: OrthogonalDrawing) -> str:
    lines = [f"dim {d.width} {d.height}"]
    for v in d.graph.vertices:
        x, y = d.positions[v]
        lines.append(f"v {v} {x} {y}")
    for eid, u, v in d.graph.edges:
        pts = " ".join(f"{x} {y}" for x, y in d.routes.get(eid, ()))
        lines.append(f"e {eid} {u} {v} {pts}".rstrip())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DrawingReport:
    violations: tuple[tuple[str, str], ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}


def validate_drawing(d: OrthogonalDrawing, g: Multigraph | None = None) -> DrawingReport:
    """Check a drawing is planar, in bounds, and uses one port per side at each vertex."""
    g = g if g is not None else d.graph
    bad: list[tuple[str, str]] = []

    def inside(p: Point) -> bool:
        return 0 <= p[0] < d.width and 0 <= p[1] < d.height

    occupied: dict[Point, str] = {}
    for v in g.vertices:
        if v not in d.positions:
            bad.append(("unplaced vertex", v))
            continue
        p = d.positions[v]
        if not inside(p):
            bad.append(("out of bounds", f"vertex {v} at {p}"))
        if p in occupied:
            bad.append(("vertex overlap", f"{occupied[p]} and {v} at {p}"))
        occupied[p] = f"vertex {v}"
    for v in d.positions:
        if v not in g.vertices:
            bad.append(("unknown vertex", v))

    ports: dict[str, Counter] = {v: Counter() for v in g.vertices}
    for eid, u, v in g.edges:
        pts = d.routes.get(eid)
        if not pts:
            bad.append(("unrouted edge", eid))
            continue
        if len(pts) < 2:
            bad.append(("degenerate route", eid))
            continue
        if pts[0] != d.positions.get(u) or pts[-1] != d.positions.get(v):
            bad.append(("endpoint mismatch", eid))
            continue
        if any((a[0] != b[0]) == (a[1] != b[1]) for a, b in zip(pts, pts[1:])):
            bad.append(("non-orthogonal segment", eid))
            continue
        cells = d.route_cells(eid)
        ports[u][_side(cells[0], cells[1])] += 1
        ports[v][_side(cells[-1], cells[-2])] += 1
        interior = cells[1:-1]
        if len(set(interior)) != len(interior) or (u == v and len(cells) < 5):
            bad.append(("self intersection", eid))
        for p in interior:
            if not inside(p):
                bad.append(("out of bounds", f"edge {eid} at {p}"))
            owner = occupied.get(p)
            if owner is None:
                occupied[p] = f"edge {eid}"
            elif owner.startswith("vertex"):
                bad.append(("route through vertex", f"edge {eid} at {p}"))
            elif owner != f"edge {eid}":
                bad.append(("route intersection", f"{owner} and edge {eid} at {p}"))
    for eid in d.routes:
        if eid not in {e[0] for e in g.edges}:
            bad.append(("unknown edge", eid))
    for v, used in ports.items():
        for side in "nesw":
            if used[side] != 1:
                bad.append(("port discipline", f"vertex {v} side {side} used {used[side]} times"))
    return DrawingReport(tuple(bad))
