"""Deterministic SVG and text pictures of tangles, matchings and puzzles.

Output depends only on the object: coordinates are integers or fixed
decimals and elements are emitted in a fixed order, so the same object
always gives the same bytes.
"""
from __future__ import annotations

from .matchings import SubGraph
from .puzzles import Puzzle, excess_edges, piece_of, triangle_corners
from .tangles import PathTangle

UNIT = 20
PAD = 20
COLORS = {"blue": "#1f4fd1", "red": "#d12a1f", 0: "#1f4fd1", 1: "#d12a1f", 2: "#1c9c3c"}


def _num(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" '
            f'height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _polyline(pts, color: str, width: float = 3, dash: str | None = None) -> str:
    coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline points="{coords}" fill="none" stroke="{color}" '
            f'stroke-width="{_num(width)}" stroke-linejoin="round"{extra}/>')


# -- tangles ----------------------------------------------------------------------


def tangle_svg(t: PathTangle) -> str:
    N = t.N
    xmin, xmax, ymax = -2, 2 * N, N
    sx = lambda X: PAD + (X - xmin) * UNIT
    sy = lambda Y: PAD + (ymax - Y) * UNIT
    body = []
    for color, fam in (("blue", t.blue), ("red", t.red)):
        for X, Y in sorted({pt for p in fam.paths for pt in p}):
            body.append(f'<circle cx="{_num(sx(X))}" cy="{_num(sy(Y))}" r="2.5" '
                        f'fill="{COLORS[color]}"/>')
    for color, fam in (("blue", t.blue), ("red", t.red)):
        for p in fam.paths:
            body.append(_polyline([(sx(x), sy(y)) for x, y in p], COLORS[color]))
    return _svg(2 * PAD + (xmax - xmin) * UNIT, 2 * PAD + ymax * UNIT, body)


def tangle_ascii(t: PathTangle) -> str:
    """Rows from top to bottom; ``b``/``r`` mark points used by a blue/red path."""
    N = t.N
    used = {}
    for mark, fam in (("b", t.blue), ("r", t.red)):
        for p in fam.paths:
            for pt in p:
                used[pt] = mark
    lines = [f"tangle u={t.u} v={t.v} w={t.w}"]
    for Y in range(N - 1, -1, -1):
        lines.append("".join(used.get((X, Y), ".") for X in range(-1, 2 * N)))
    for name, fam in (("blue", t.blue), ("red", t.red)):
        for k, p in enumerate(fam.paths):
            lines.append(f"{name}[{k}]: " + " ".join(f"{x},{y}" for x, y in p))
    return "\n".join(lines) + "\n"


# -- matchings ----------------------------------------------------------------------


def _grid_xy(r: int, x: int, N: int):
    return PAD + (x + N) * UNIT, PAD + (r - 1) * UNIT


def matching_svg(G: SubGraph, mask: int) -> str:
    g = G.grid
    N = G.N
    verts = G.vertices
    body = []
    for e, (a, b) in enumerate(g.edges):
        if a in verts and b in verts:
            (ra, xa), (rb, xb) = g.coords[a], g.coords[b]
            on = (mask >> e) & 1
            body.append(_polyline([_grid_xy(ra, xa, N), _grid_xy(rb, xb, N)],
                                  "#000000" if on else "#cccccc", 4 if on else 1))
    for v in sorted(verts):
        r, x = g.coords[v]
        cx, cy = _grid_xy(r, x, N)
        if g.odd[v]:
            body.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="4" fill="white" stroke="black"/>')
        else:
            body.append(f'<rect x="{_num(cx - 4)}" y="{_num(cy - 4)}" width="8" height="8" '
                        f'fill="white" stroke="black"/>')
    return _svg(2 * PAD + 2 * N * UNIT, 2 * PAD + (N - 1) * UNIT, body)


def matching_ascii(G: SubGraph, mask: int) -> str:
    """``o`` odd vertex, ``#`` even vertex, ``-``/``|`` matched edges."""
    g = G.grid
    N = G.N
    verts = G.vertices
    on = {g.edges[e] for e in g.edge_bits(mask)}
    on |= {(b, a) for a, b in on}
    rows = [[" "] * (4 * N + 1) for _ in range(2 * N - 1)]
    for v in verts:
        r, x = g.coords[v]
        rows[2 * (r - 1)][2 * (x + N)] = "o" if g.odd[v] else "#"
    for a, b in on:
        (ra, xa), (rb, xb) = g.coords[a], g.coords[b]
        if ra == rb and xb == xa + 1:
            rows[2 * (ra - 1)][2 * (xa + N) + 1] = "-"
        elif xa == xb and rb == ra + 1:
            rows[2 * ra - 1][2 * (xa + N)] = "|"
    head = f"{G.side} graph, boundary={G.boundary} w={G.w}"
    return "\n".join([head] + ["".join(r).rstrip() for r in rows]) + "\n"


# -- puzzles ------------------------------------------------------------------------


def _edge_points(e):
    t, k, m = e
    a, b, c = triangle_corners(("U", k, m))
    return {"/": (a, c), "\\": (b, c), "-": (a, b)}[t]


def puzzle_svg(P: Puzzle) -> str:
    N = P.N
    scale = UNIT / 2
    sx = lambda X: PAD + (X + 1) * scale
    sy = lambda Y: PAD + (2 * N - 1 - Y) * scale
    exc = excess_edges(P.kind, P.location) if P.kind != "KT" else {}
    body = []
    for e, (inner, outer) in sorted(P.labels().items()):
        (x1, y1), (x2, y2) = _edge_points(e)
        pts = [(sx(x1), sy(y1)), (sx(x2), sy(y2))]
        body.append(_polyline(pts, COLORS[inner], 3))
        if e in exc:
            body.append(_polyline(pts, COLORS[outer], 1.5, dash="3,3"))
    if P.kind in ("DHD", "DHU"):
        k, m = P.location
        tri = ("D", k, m) if P.kind == "DHD" else ("U", k, m)
        pts = [(sx(x), sy(y)) for x, y in triangle_corners(tri)]
        body.append(_polyline(pts + pts[:1], "#000000", 1, dash="2,2"))
    return _svg(2 * PAD + (4 * N) * scale, 2 * PAD + (2 * N) * scale, body)


def puzzle_ascii(P: Puzzle) -> str:
    """Piece names row by row from the top; ``*`` marks the excess triangle."""
    from .puzzles import TriangularGrid
    N = P.N
    lines = [f"puzzle {P.kind} at {P.location} boundary={P.boundary()}"]
    grid = TriangularGrid(N)
    for k in range(N - 1, -1, -1):
        cells = []
        for tri in grid.triangle_order():
            if tri[1] != k:
                continue
            p = piece_of(tri[0], P.triangle_labels(tri))
            cells.append(p.name if p else "*" + "".join(map(str, P.triangle_labels(tri))))
        lines.append(" " * (2 * k) + " ".join(cells))
    return "\n".join(lines) + "\n"
