"""Puzzles on the triangular grid of size ``N``.

Geometry.  Row ``k`` (``0 <= k < N``, from the bottom) holds up-triangles
``U(k,m)`` for ``0 <= m < N-k`` and down-triangles ``D(k,m)`` for
``0 <= m < N-k-1``.  Every edge is indexed by the up-triangle it bounds:
``('/',k,m)`` is the left side of ``U(k,m)``, ``('\\',k,m)`` its right side
and ``('-',k,m)`` its base.  ``D(k,m)`` is bounded by ``('\\',k,m)`` on the
left, ``('/',k,m+1)`` on the right and ``('-',k+1,m)`` on top.

In the tangle plane the midpoint of ``('/',k,m)`` is the blue point
``(k+2m, k)``, that of ``('\\',k,m)`` the red point ``(k+2m+1, k)``, and
``('-',k,m)`` sits at ``(k+2m+1/2, k-1/2)``.

Each edge carries two labels: the *inner* one seen from its up-triangle and
the *outer* one seen from the other side (a down-triangle or the outside).
They agree except on the two edges of a BD/RD/gd excess.  Boundary words are
read off the outer labels, left to right: the left side bottom to top, the
right side top to bottom, the bottom side left to right.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from . import _puzzle_convention as convention
from .algebra import LaurentPoly, Q, lr_words
from .matchings import PathFamily, end_points, start_points
from .tangles import PathTangle, classify_excess1_type, local_census
from .words import Word, check_word, covered_by, covers, inversions

Edge = tuple  # (type, k, m)
KINDS = ("KT", "BD", "RD", "DHD", "DHU", "gd")
EXCESS1_KINDS = ("BD", "RD", "DHD", "DHU")
CONTENT = ("blue_up", "red_up", "blue_horizontal", "red_horizontal")


# -- grid ---------------------------------------------------------------------


@dataclass(frozen=True)
class TriangularGrid:
    N: int

    @property
    def up(self) -> list[tuple[int, int]]:
        return [(k, m) for k in range(self.N) for m in range(self.N - k)]

    @property
    def down(self) -> list[tuple[int, int]]:
        return [(k, m) for k in range(self.N - 1) for m in range(self.N - k - 1)]

    @property
    def edges(self) -> list[Edge]:
        return [(t, k, m) for k, m in self.up for t in ("/", "\\", "-")]

    def left(self) -> list[Edge]:
        return [("/", j, 0) for j in range(self.N)]

    def right(self) -> list[Edge]:
        return [("\\", self.N - j, j - 1) for j in range(1, self.N + 1)]

    def bottom(self) -> list[Edge]:
        return [("-", 0, i) for i in range(self.N)]

    def is_boundary(self, e: Edge) -> bool:
        t, k, m = e
        return ((t == "/" and m == 0) or (t == "\\" and m == self.N - 1 - k)
                or (t == "-" and k == 0))

    def triangle_order(self) -> list[tuple[str, int, int]]:
        """Row by row from the bottom, left to right, alternating U and D."""
        out = []
        for k in range(self.N):
            for m in range(self.N - k):
                out.append(("U", k, m))
                if m < self.N - k - 1:
                    out.append(("D", k, m))
        return out


def triangle_edges(tri) -> tuple[tuple[Edge, str], ...]:
    """``((edge, side), ...)`` in the order ``/``, ``\\``, ``-``."""
    kind, k, m = tri
    if kind == "U":
        return ((("/", k, m), "in"), (("\\", k, m), "in"), (("-", k, m), "in"))
    return ((("/", k, m + 1), "out"), (("\\", k, m), "out"), (("-", k + 1, m), "out"))


def triangle_corners(tri) -> tuple[tuple[int, int], ...]:
    """Corners in doubled tangle coordinates."""
    kind, k, m = tri
    x = 2 * k + 4 * m
    if kind == "U":
        return ((x - 1, 2 * k - 1), (x + 3, 2 * k - 1), (x + 1, 2 * k + 1))
    return ((x + 1, 2 * k + 1), (x + 5, 2 * k + 1), (x + 3, 2 * k - 1))


def edge_triangles(N: int, e: Edge) -> list[tuple[str, int, int]]:
    t, k, m = e
    out = [("U", k, m)]
    if t == "/" and m > 0:
        out.append(("D", k, m - 1))
    elif t == "\\" and m < N - 1 - k:
        out.append(("D", k, m))
    elif t == "-" and k > 0:
        out.append(("D", k - 1, m))
    return out


# -- pieces -------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    name: str
    orientation: str  # 'U' or 'D'
    labels: tuple[int, int, int]  # on the /, \ and - edges
    content: frozenset


def content_labels(content: Iterable[str]) -> tuple[int, int, int]:
    """Labels a set of half-steps induces on a triangle's ``/``, ``\\``, ``-`` edges.

    In an up-triangle the steps arrive at the edge points; in a down-triangle
    they leave them.  Either way the rules are the same.
    """
    c = set(content)
    slash = 2 if "red_horizontal" in c else 0 if c & {"blue_up", "blue_horizontal"} else 1
    back = 2 if "blue_horizontal" in c else 1 if c & {"red_up", "red_horizontal"} else 0
    dash = 0 if "blue_up" in c else 1 if "red_up" in c else 2
    return slash, back, dash


def _content_ok(c: set, allow_double: bool = False) -> bool:
    if {"blue_up", "red_up"} <= c:
        return False  # crossing up steps
    if {"blue_horizontal", "red_horizontal"} <= c:
        return allow_double
    if {"blue_up", "blue_horizontal"} <= c or {"red_up", "red_horizontal"} <= c:
        return False  # a point reached twice
    if "red_horizontal" in c and "blue_up" not in c:
        return False  # midpoint of a red horizontal must be blue
    if "blue_horizontal" in c and "red_up" not in c:
        return False
    return True


def semantics_violations(p: Piece) -> list[str]:
    """Check a piece's labels against the meaning of each label value."""
    c = p.content
    s, b, d = p.labels
    out = []
    blue_at_slash = bool(c & {"blue_up", "blue_horizontal"})
    red_at_back = bool(c & {"red_up", "red_horizontal"})
    if s == 0 and not (blue_at_slash and "red_horizontal" not in c):
        out.append("/=0 needs a blue path through a non-midpoint")
    if s == 1 and blue_at_slash:
        out.append("/=1 forbids blue")
    if s == 2 and not ("red_horizontal" in c and blue_at_slash):
        out.append("/=2 needs a red horizontal midpoint used by blue")
    if b == 0 and red_at_back:
        out.append("\\=0 forbids red")
    if b == 1 and not (red_at_back and "blue_horizontal" not in c):
        out.append("\\=1 needs a red path through a non-midpoint")
    if b == 2 and not ("blue_horizontal" in c and red_at_back):
        out.append("\\=2 needs a blue horizontal midpoint used by red")
    if (d == 0) != ("blue_up" in c) or (d == 1) != ("red_up" in c):
        out.append("- label disagrees with the up step crossing it")
    return out


def _name_pieces(orientation: str, found: dict) -> dict[str, tuple]:
    by_content = {frozenset(c): lab for c, lab in found.items()}
    empty = frozenset()
    names = {
        5: empty,
        4: frozenset({"red_horizontal", "blue_up"}),
        3: frozenset({"blue_horizontal", "red_up"}),
    }
    rest = [c for c in by_content if c not in names.values()]
    # pieces 1 and 3 carry /-label 0, pieces 2 and 5 carry /-label 1
    one = [c for c in rest if by_content[c][0] == 0]
    two = [c for c in rest if by_content[c][0] == 1]
    if len(one) != 1 or len(two) != 1 or by_content[names[3]][0] != 0 or by_content[empty][0] != 1:
        raise AssertionError(f"cannot pin piece names: {found}")
    names[1], names[2] = one[0], two[0]
    return {f"{orientation}{i}": names[i] for i in sorted(names)}


def derive_piece_catalog() -> tuple[list[Piece], list[Piece]]:
    """Enumerate all consistent half-step fillings of the two triangle shapes."""
    out = []
    for orientation in ("U", "D"):
        found = {}
        for r in range(len(CONTENT) + 1):
            for c in combinations(CONTENT, r):
                if _content_ok(set(c)):
                    found[frozenset(c)] = content_labels(c)
        if len(found) != 5:
            raise AssertionError(f"{orientation}: expected 5 pieces, got {len(found)}: {found}")
        if len(set(found.values())) != 5:
            raise AssertionError("piece labelings are not distinct")
        names = _name_pieces(orientation, found)
        out.append([Piece(n, orientation, found[c], c) for n, c in names.items()])
    return out[0], out[1]


DOUBLE = frozenset({"blue_horizontal", "red_horizontal"})
ALL_TWO = (2, 2, 2)


@lru_cache(maxsize=None)
def _catalog():
    up, down = derive_piece_catalog()
    return ({p.labels: p for p in up}, {p.labels: p for p in down})


def piece_of(orientation: str, labels: tuple[int, int, int]) -> Piece | None:
    up, down = _catalog()
    return (up if orientation == "U" else down).get(tuple(labels))


# -- puzzles ------------------------------------------------------------------


def excess_edges(kind: str, loc) -> dict[Edge, tuple[int, int]]:
    """``{edge: (inner, outer)}`` of the mismatched edges of an excess."""
    if kind == "BD":
        k, m = loc
        return {("/", k, m): (0, 1), ("/", k - 1, m): (1, 0)}
    if kind == "RD":
        k, m = loc
        return {("\\", k, m): (1, 0), ("\\", k - 1, m + 1): (0, 1)}
    if kind == "gd":
        k, m = loc
        return {("-", k, m): (0, 1), ("-", k, m + 1): (1, 0)}
    return {}


def excess_triangle(kind: str, loc):
    if kind == "DHD":
        return ("D",) + tuple(loc)
    if kind == "DHU":
        return ("U",) + tuple(loc)
    return None


def excess_locations(N: int, kind: str) -> list[tuple[int, int]]:
    if kind in ("BD", "RD"):
        return [(k, m) for k in range(1, N) for m in range(N - k)]
    if kind == "DHD":
        return [(k, m) for k in range(N - 1) for m in range(N - k - 1)]
    if kind == "DHU":
        # no edge on the boundary
        return [(k, m) for k in range(1, N) for m in range(1, N - k - 1)]
    if kind == "gd":
        return [(k, m) for k in range(N - 1) for m in range(N - k - 1)]
    if kind == "KT":
        return [None]
    raise ValueError(f"unknown kind {kind!r}")


def excess_center(kind: str, loc) -> tuple[int, int] | None:
    """Doubled coordinates of the corner between the two excess edges."""
    if kind == "BD":
        k, m = loc
        return (2 * k + 4 * m - 1, 2 * k - 1)
    if kind == "RD":
        k, m = loc
        return (2 * k + 4 * m + 3, 2 * k - 1)
    return None


def diagonal_of(kind: str, loc) -> int:
    """Index of the ``\\``-diagonal through the excess center (1 at the far left)."""
    x, y = excess_center(kind, loc)
    return (x + y + 2) // 4


@dataclass(frozen=True)
class Puzzle:
    N: int
    kind: str
    location: tuple | None
    inner: tuple[int, ...]
    outer: tuple[int, ...]

    @property
    def grid(self) -> TriangularGrid:
        return TriangularGrid(self.N)

    def labels(self) -> dict[Edge, tuple[int, int]]:
        return dict(zip(_edge_list(self.N), zip(self.inner, self.outer)))

    def label(self, e: Edge, side: str = "in") -> int:
        i = _edge_index(self.N)[e]
        return self.inner[i] if side == "in" else self.outer[i]

    def triangle_labels(self, tri) -> tuple[int, int, int]:
        return tuple(self.label(e, s) for e, s in triangle_edges(tri))

    def boundary(self) -> tuple[Word, Word, Word]:
        g = self.grid
        raw = ["".join(str(self.label(e, "out")) for e in side)
               for side in (g.left(), g.right(), g.bottom())]
        return convention.decode(raw)

    @property
    def height(self) -> int:
        return self.location[0]

    def to_json(self) -> dict:
        labels = {f"{t}{k},{m}": self.label((t, k, m)) for t, k, m in _edge_list(self.N)}
        out = {"N": self.N, "labels": labels, "excess": None}
        if self.kind != "KT":
            exc = {"type": self.kind, "location": list(self.location)}
            ee = excess_edges(self.kind, self.location)
            if ee:
                exc["edges"] = {f"{t}{k},{m}": list(v) for (t, k, m), v in ee.items()}
            out["excess"] = exc
        return out


@lru_cache(maxsize=None)
def _edge_list(N: int) -> tuple[Edge, ...]:
    return tuple(TriangularGrid(N).edges)


@lru_cache(maxsize=None)
def _edge_index(N: int) -> dict[Edge, int]:
    return {e: i for i, e in enumerate(_edge_list(N))}


def validate_puzzle(P: Puzzle) -> list[str]:
    problems = []
    ee = excess_edges(P.kind, P.location)
    special = excess_triangle(P.kind, P.location)
    g = P.grid
    for e, (a, b) in P.labels().items():
        if e in ee:
            if (a, b) != ee[e]:
                problems.append(f"excess edge {e} labeled {(a, b)}")
        elif a != b:
            problems.append(f"edge {e} has mismatched labels {(a, b)}")
        if g.is_boundary(e) and b not in (0, 1):
            problems.append(f"boundary edge {e} labeled {b}")
    for tri in g.triangle_order():
        lab = P.triangle_labels(tri)
        if tri == special:
            if lab != ALL_TWO:
                problems.append(f"excess triangle {tri} labeled {lab}")
        elif piece_of(tri[0], lab) is None:
            problems.append(f"triangle {tri} labeled {lab} is not a piece")
    if P.kind == "DHU" and any(g.is_boundary(e) for e, _ in triangle_edges(special)):
        problems.append("DHU triangle touches the boundary")
    return problems


# -- the solver ----------------------------------------------------------------


def _solve(N: int, kind: str, loc, triangles, fixed: dict[Edge, tuple[int, int]],
           boundary_free: bool) -> Iterator[dict[Edge, tuple[int, int]]]:
    """Fill the triangles in ``triangles`` (in order) with pieces.

    ``fixed`` maps edges to known ``(inner, outer)`` labels.  Edges outside
    ``fixed`` get one value on both sides, except the excess edges whose
    pair is imposed.  Unfixed boundary edges must get outer label 0 or 1.
    Yields the assignment of the initially unfixed edges.
    """
    ee = excess_edges(kind, loc)
    special = excess_triangle(kind, loc)
    g = TriangularGrid(N)
    bnd = {e for e in g.edges if g.is_boundary(e)}
    up, down = _catalog()
    val: dict[Edge, tuple[int, int]] = dict(fixed)
    free_start = set(val)
    for e, pair in ee.items():
        if e in val and val[e] != pair:
            return
        val[e] = pair
    tris = list(triangles)
    sides = [triangle_edges(t) for t in tris]
    pieces = [[ALL_TWO] if t == special else list((up if t[0] == "U" else down))
              for t in tris]

    def rec(i: int):
        if i == len(tris):
            yield {e: val[e] for e in val if e not in free_start}
            return
        es = sides[i]
        known = [val[e][0 if s == "in" else 1] if e in val else None for e, s in es]
        for lab in pieces[i]:
            if any(kv is not None and kv != lv for kv, lv in zip(known, lab)):
                continue
            added = []
            ok = True
            for (e, s), kv, lv in zip(es, known, lab):
                if kv is None:
                    if e in bnd and boundary_free and lv == 2:
                        ok = False
                        break
                    val[e] = (lv, lv)
                    added.append(e)
            if ok:
                yield from rec(i + 1)
            for e in added:
                del val[e]

    yield from rec(0)


def _assemble(N: int, kind: str, loc, val: dict[Edge, tuple[int, int]]) -> Puzzle:
    el = _edge_list(N)
    return Puzzle(N, kind, None if loc is None else tuple(loc),
                  tuple(val[e][0] for e in el), tuple(val[e][1] for e in el))


@lru_cache(maxsize=None)
def _all_puzzles(N: int, kind: str) -> dict[tuple[Word, Word, Word], tuple[Puzzle, ...]]:
    g = TriangularGrid(N)
    out = defaultdict(list)
    for loc in excess_locations(N, kind):
        fixed = {}
        for sol in _solve(N, kind, loc, g.triangle_order(), fixed, boundary_free=True):
            P = _assemble(N, kind, loc, sol)
            out[P.boundary()].append(P)
    return {b: tuple(ps) for b, ps in out.items()}


def enumerate_puzzles(u: Word, v: Word, w: Word, kind: str = "KT") -> list[Puzzle]:
    for a in (u, v, w):
        check_word(a)
    if not (len(u) == len(v) == len(w)) or not w:
        raise ValueError("words must be nonempty and of equal length")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    return list(_all_puzzles(len(w), kind).get((u, v, w), ()))


def count_puzzles(u: Word, v: Word, w: Word, kind: str = "KT") -> int:
    return len(enumerate_puzzles(u, v, w, kind))


# -- boundary convention calibration ---------------------------------------------


def _flip(s: str) -> str:
    return s.translate(str.maketrans("01", "10"))


def calibrate_boundary_convention(max_n: int = 4) -> tuple[bool, bool, bool]:
    """Find the complement flags (left, right, bottom) for which KT-puzzle
    counts equal LR coefficients on all excess-0 triples up to ``max_n``."""
    from .words import all_words
    raw_counts = {}
    for n in range(1, max_n + 1):
        for raw, ps in _raw_kt(n).items():
            raw_counts[raw] = len(ps)
    good = []
    for flags in [(a, b, c) for a in (False, True) for b in (False, True) for c in (False, True)]:
        ok = True
        for n in range(1, max_n + 1):
            words = list(all_words(n))
            for u in words:
                for v in words:
                    for w in words:
                        if not (u.count("0") == v.count("0") == w.count("0")):
                            continue
                        if inversions(w) != inversions(u) + inversions(v):
                            continue
                        raw = tuple(_flip(x) if f else x for x, f in zip((u, v, w), flags))
                        if raw_counts.get(raw, 0) != lr_words(u, v, w):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            good.append(flags)
    if len(good) != 1:
        raise AssertionError(f"boundary convention not unique: {good}")
    return good[0]


@lru_cache(maxsize=None)
def _raw_kt(N: int) -> dict[tuple[str, str, str], tuple]:
    g = TriangularGrid(N)
    out = defaultdict(list)
    for sol in _solve(N, "KT", None, g.triangle_order(), {}, boundary_free=True):
        raw = tuple("".join(str(sol[e][1]) for e in side)
                    for side in (g.left(), g.right(), g.bottom()))
        out[raw].append(sol)
    return {k: tuple(v) for k, v in out.items()}


def convention_source(flags: tuple[bool, bool, bool]) -> str:
    """Source text of the generated constants module for ``flags``."""
    l, r, b = flags
    return (
        '"""Generated by ``tfpl.puzzles.calibrate_boundary_convention``; do not edit.\n\n'
        "Each flag says whether the boundary word on that side is the complement\n"
        'of the outer edge labels."""\n\n'
        f"COMPLEMENT_LEFT = {l}\n"
        f"COMPLEMENT_RIGHT = {r}\n"
        f"COMPLEMENT_BOTTOM = {b}\n\n\n"
        "def _flip(s):\n"
        '    return s.translate(str.maketrans("01", "10"))\n\n\n'
        "def decode(raw):\n"
        '    """Boundary words ``(u, v, w)`` from the raw outer labels of the three sides."""\n'
        "    flags = (COMPLEMENT_LEFT, COMPLEMENT_RIGHT, COMPLEMENT_BOTTOM)\n"
        "    return tuple(_flip(x) if f else x for x, f in zip(raw, flags))\n"
    )


# -- tangles <-> puzzles ------------------------------------------------------------


def _step_maps(fam: PathFamily):
    arr, dep = {}, {}
    for p in fam.paths:
        for a, b in zip(p, p[1:]):
            dep[a] = b
            arr[b] = a
    return arr, dep


def puzzle_from_tangle(t: PathTangle) -> Puzzle:
    N = t.N
    exc = inversions(t.w) - inversions(t.u) - inversions(t.v)
    if exc not in (0, 1):
        raise ValueError(f"excess {exc} not supported")
    b_arr, b_dep = _step_maps(t.blue)
    r_arr, r_dep = _step_maps(t.red)
    blue_starts = {p[0] for p in t.blue.paths}
    red_starts = {p[0] for p in t.red.paths}
    blue_ends = {p[-1] for p in t.blue.paths}
    red_ends = {p[-1] for p in t.red.paths}
    red_mids = {((a[0] + b[0]) // 2, a[1]) for b, a in r_arr.items() if a[1] == b[1]}
    blue_mids = {((a[0] + b[0]) // 2, a[1]) for b, a in b_arr.items() if a[1] == b[1]}

    def not_down(a, b):
        return b[1] >= a[1]

    val = {}
    for e in _edge_list(N):
        typ, k, m = e
        if typ == "/":
            P = (k + 2 * m, k)
            if P in red_mids:
                val[e] = (2, 2)
                continue
            arr = P in blue_starts or (P in b_arr and not_down(b_arr[P], P))
            dep = P in blue_ends or (P in b_dep and not_down(P, b_dep[P]))
            val[e] = (0 if arr else 1, 0 if dep else 1)
        elif typ == "\\":
            R = (k + 2 * m + 1, k)
            if R in blue_mids:
                val[e] = (2, 2)
                continue
            arr = R in red_starts or (R in r_arr and not_down(r_arr[R], R))
            dep = R in red_ends or (R in r_dep and not_down(R, r_dep[R]))
            val[e] = (1 if arr else 0, 1 if dep else 0)
        else:
            P, R = (k + 2 * m, k), (k + 2 * m + 1, k)
            if k == 0:
                lab = 0 if P in blue_starts else 1 if R in red_starts else 2
            else:
                lab = (0 if b_arr.get(P) == (k + 2 * m + 1, k - 1)
                       else 1 if r_arr.get(R) == (k + 2 * m, k - 1) else 2)
            val[e] = (lab, lab)
    if exc == 0:
        kind, loc = "KT", None
    else:
        kind = classify_excess1_type(local_census(t))
        loc = _locate_excess(t, kind)
    return _assemble(N, kind, loc, val)


def _locate_excess(t: PathTangle, kind: str):
    for fam, want in ((t.blue, "BD"), (t.red, "RD")):
        if kind != want:
            continue
        for p in fam.paths:
            for a, b in zip(p, p[1:]):
                if b[1] < a[1]:
                    X, Y = a
                    return (Y, (X - Y) // 2) if kind == "BD" else (Y, (X - Y - 1) // 2)
    red_h = {a: b for p in t.red.paths for a, b in zip(p, p[1:]) if a[1] == b[1]}
    red_h_end = {b: a for a, b in red_h.items()}
    for p in t.blue.paths:
        for a, b in zip(p, p[1:]):
            if a[1] != b[1]:
                continue
            X, Y = a
            if kind == "DHD" and (X - 1, Y) in red_h:
                return (Y, (X - 2 - Y) // 2)
            if kind == "DHU" and (X - 1, Y) in red_h_end:
                return (Y, (X - 2 - Y) // 2)
    raise ValueError(f"no {kind} pattern found")


def _content(P: Puzzle, tri) -> frozenset:
    lab = P.triangle_labels(tri)
    if lab == ALL_TWO:
        return DOUBLE
    return piece_of(tri[0], lab).content


def tangle_from_puzzle(P: Puzzle, u: Word | None = None, v: Word | None = None,
                       w: Word | None = None) -> PathTangle:
    if P.kind not in ("KT",) + EXCESS1_KINDS:
        raise ValueError(f"no tangle for kind {P.kind}")
    N = P.N
    if u is None:
        u, v, w = P.boundary()
    succ_b, succ_r = {}, {}
    for k, m in TriangularGrid(N).up:
        c = _content(P, ("U", k, m))
        if "blue_up" in c and k > 0:
            succ_b[(k + 2 * m + 1, k - 1)] = (k + 2 * m, k)
        if "red_up" in c and k > 0:
            succ_r[(k + 2 * m, k - 1)] = (k + 2 * m + 1, k)
        if "blue_horizontal" in c:
            succ_b[(k + 2 * m + 2, k)] = (k + 2 * m, k)
        if "red_horizontal" in c:
            succ_r[(k + 2 * m - 1, k)] = (k + 2 * m + 1, k)
    if P.kind == "BD":
        k, m = P.location
        succ_b[(k + 2 * m, k)] = (k + 2 * m - 1, k - 1)
    elif P.kind == "RD":
        k, m = P.location
        succ_r[(k + 2 * m + 1, k)] = (k + 2 * m + 2, k - 1)

    def follow(starts, succ, color, ends):
        paths = []
        used = 0
        for s in starts:
            p = [s]
            while p[-1] in succ:
                p.append(succ[p[-1]])
                if len(p) > 4 * N * N:
                    raise ValueError("cycle in puzzle paths")
            used += len(p) - 1
            paths.append(tuple(p))
        if used != len(succ) or [p[-1] for p in paths] != ends:
            raise ValueError(f"{color} steps do not form the expected paths")
        return PathFamily(color, N, tuple(paths))

    blue = follow(start_points("odd", w), succ_b, "blue", end_points("odd", u))
    red = follow(start_points("even", w), succ_r, "red", end_points("even", v))
    return PathTangle(u, v, w, blue, red)


# -- moves ----------------------------------------------------------------------------


RIGHT_MOVES = {
    "BD": (("B", "BD", (-1, 1)), ("BB", "BD", (0, 1)), ("BR", "RD", (0, 0))),
    "RD": (("R", "RD", (1, 0)), ("RR", "RD", (0, 1)), ("RB", "BD", (0, 2))),
}
LEFT_MOVES = {
    "BD": (("B", "BD", (1, -1)), ("BB", "BD", (0, -1)), ("RB", "RD", (0, -2))),
    "RD": (("R", "RD", (-1, 0)), ("RR", "RD", (0, -1)), ("BR", "BD", (0, 0))),
}
INTERMEDIATE = {"BR": "DHD", "RB": "DHU"}


class MoveError(ValueError):
    pass


def _window(N: int, centers, radius: int) -> list:
    g = TriangularGrid(N)
    tris = g.triangle_order()
    win = {t for t in tris if set(triangle_corners(t)) & set(centers)}
    for _ in range(radius):
        edges = {e for t in win for e, _ in triangle_edges(t)}
        win |= {t for t in tris if any(e in edges for e, _ in triangle_edges(t))}
    return [t for t in tris if t in win]


def _window_solutions(P: Puzzle, kind: str, loc, window) -> list[Puzzle]:
    N = P.N
    g = TriangularGrid(N)
    wset = set(window)
    labels = P.labels()
    fixed = {}
    for e, pair in labels.items():
        inside = all(t in wset for t in edge_triangles(N, e))
        if not inside:
            fixed[e] = pair
        elif g.is_boundary(e):
            fixed[e] = (None, pair[1])
    # boundary edges inside the window keep their outer label only
    out = []
    for sol in _solve_partial(N, kind, loc, window, fixed):
        full = {**{e: p for e, p in fixed.items() if p[0] is not None}, **sol}
        Q_ = _assemble(N, kind, loc, full)
        if not validate_puzzle(Q_) and Q_.boundary() == P.boundary():
            out.append(Q_)
    return out


def _solve_partial(N, kind, loc, window, fixed):
    """Like :func:`_solve` but boundary edges may be fixed on the outer side only."""
    outer_only = {e: p[1] for e, p in fixed.items() if p[0] is None}
    full_fixed = {e: p for e, p in fixed.items() if p[0] is not None}
    ee = excess_edges(kind, loc)
    for e, b in outer_only.items():
        if e in ee and ee[e][1] != b:
            return
    for sol in _solve(N, kind, loc, window, full_fixed, boundary_free=True):
        if all(sol.get(e, (None, b))[1] == b for e, b in outer_only.items()):
            yield sol


def _valid_loc(N: int, kind: str, loc) -> bool:
    return tuple(loc) in set(excess_locations(N, kind))


def _moves(P: Puzzle, table, max_radius: int = 2) -> list[tuple[str, Puzzle]]:
    if P.kind not in ("BD", "RD"):
        raise MoveError(f"moves apply to BD/RD puzzles, not {P.kind}")
    k, m = P.location
    for radius in range(max_radius + 1):
        found = []
        for label, kind, (dk, dm) in table[P.kind]:
            loc = (k + dk, m + dm)
            if not _valid_loc(P.N, kind, loc):
                continue
            win = _window(P.N, (excess_center(P.kind, P.location), excess_center(kind, loc)), radius)
            for Q_ in _window_solutions(P, kind, loc, win):
                found.append((label, Q_))
        if found:
            return found
    return []


def applicable_moves(P: Puzzle, direction: str = "right") -> list[tuple[str, Puzzle]]:
    """All ``(label, result)`` found by the window search (normally one)."""
    return _moves(P, RIGHT_MOVES if direction == "right" else LEFT_MOVES)


def on_right_boundary(P: Puzzle) -> bool:
    return P.kind == "RD" and diagonal_of(P.kind, P.location) == P.N


def on_left_boundary(P: Puzzle) -> bool:
    return P.kind == "BD" and P.location[1] == 0


def move_right(P: Puzzle) -> tuple[Puzzle, str]:
    if on_right_boundary(P):
        raise MoveError("excess already on the right boundary")
    found = applicable_moves(P, "right")
    if len(found) != 1:
        raise MoveError(f"expected one right move, found {[f[0] for f in found]}")
    label, Q_ = found[0]
    return Q_, label


def move_left(P: Puzzle) -> tuple[Puzzle, str]:
    if on_left_boundary(P):
        raise MoveError("excess already on the left boundary")
    found = applicable_moves(P, "left")
    if len(found) != 1:
        raise MoveError(f"expected one left move, found {[f[0] for f in found]}")
    label, Q_ = found[0]
    return Q_, label


def move_intermediate(P: Puzzle, label: str) -> Puzzle:
    """The DHD (for BR) or DHU (for RB) puzzle passed through by a type flip."""
    kind = INTERMEDIATE[label]
    Q_, got = move_right(P)
    if got != label:
        raise MoveError(f"move {label} does not apply")
    centers = (excess_center(P.kind, P.location), excess_center(Q_.kind, Q_.location))
    win = _window(P.N, centers, 0)
    found = []
    for loc in excess_locations(P.N, kind):
        if excess_triangle(kind, loc) in win:
            found += _window_solutions(P, kind, loc, win)
    if len(found) != 1:
        raise MoveError(f"expected one {kind} intermediate, found {len(found)}")
    return found[0]


@dataclass(frozen=True)
class PathRecord:
    path: tuple[Puzzle, ...]
    moves: tuple[str, ...]
    counts: dict
    height_left: int
    height_right: int

    @property
    def puzzle_left(self) -> Puzzle:
        return self.path[0]

    @property
    def puzzle_right(self) -> Puzzle:
        return self.path[-1]


def path_of(P: Puzzle) -> PathRecord:
    left = []
    cur = P
    while not on_left_boundary(cur):
        cur, label = move_left(cur)
        left.append(cur)
        if len(left) > 4 * P.N * P.N:
            raise MoveError("left walk does not terminate")
    path = [cur]
    moves = []
    while not on_right_boundary(cur):
        cur, label = move_right(cur)
        path.append(cur)
        moves.append(label)
        if len(path) > 4 * P.N * P.N:
            raise MoveError("right walk does not terminate")
    if P not in path:
        raise MoveError("puzzle not on its own path")
    counts = {x: moves.count(x) for x in ("B", "BB", "BR", "R", "RR", "RB")}
    return PathRecord(tuple(path), tuple(moves), counts, path[0].height, path[-1].height)


def path_identities(P: Puzzle, rec: PathRecord | None = None) -> dict[str, tuple[int, int]]:
    """``{name: (lhs, rhs)}`` for the move-count identities along ``Path(P)``."""
    rec = rec or path_of(P)
    c, N = rec.counts, P.N
    hl, hr = rec.height_left, rec.height_right
    u, v, _ = P.boundary()
    return {
        "size": (len(rec.path), sum(c.values()) + 1),
        "br_rb": (c["BR"], c["RB"] + 1),
        "height": (c["R"] - c["B"], hr - hl),
        "left": (c["BB"] + c["BR"] + c["R"] + c["RR"] + c["RB"], N - hl),
        "right": (c["B"] + c["BB"] + c["BR"] + c["RR"] + c["RB"], N - hr),
        "v_ones": (c["BB"] + c["RB"], v[:N - hr].count("1")),
        "u_zeros": (c["RR"] + c["RB"], u[N - (N - hl):].count("0") if hl < N else 0),
    }


# -- rotation -------------------------------------------------------------------------


_ROT_TYPE = {"/": "-", "\\": "/", "-": "\\"}


def rotate(P: Puzzle) -> Puzzle:
    """Rotate by 120 degrees so that the right side becomes the left side."""
    N = P.N
    labels = P.labels()
    new = {}
    for (t, k, m), pair in labels.items():
        new[(_ROT_TYPE[t], m, N - 1 - k - m)] = pair
    if P.kind == "RD":
        k, m = P.location
        kind, loc = "BD", (m + 1, N - 1 - k - m)
    elif P.kind == "BD":
        k, m = P.location
        kind, loc = "gd", (m, N - 1 - k - m)
    elif P.kind == "KT":
        kind, loc = "KT", None
    else:
        raise ValueError(f"rotation not set up for {P.kind}")
    return _assemble(N, kind, loc, new)


# -- closed forms ---------------------------------------------------------------------


def _c(u, v, w) -> int:
    return lr_words(u, v, w)


def predict_excess0(u: Word, v: Word, w: Word) -> int:
    if inversions(w) - inversions(u) - inversions(v) != 0:
        raise ValueError("excess must be 0")
    return _c(u, v, w)


def predict_counts(u: Word, v: Word, w: Word) -> dict:
    """All closed forms for excess-1 boundaries, keyed by a short name."""
    if inversions(w) - inversions(u) - inversions(v) != 1:
        raise ValueError("excess must be 1")
    U = [(up, L0, L1, R0, R1, _c(up, v, w)) for up, L0, L1, R0, R1 in covers(u)]
    V = [(vp, L0, L1, R0, R1, _c(u, vp, w)) for vp, L0, L1, R0, R1 in covers(v)]
    W = [(wm, L0, L1, R0, R1, _c(u, v, wm)) for wm, L0, L1, R0, R1 in covered_by(w)]
    su = lambda f: sum(f(*x[1:5]) * x[5] for x in U)
    sv = lambda f: sum(f(*x[1:5]) * x[5] for x in V)
    sw = lambda f: sum(f(*x[1:5]) * x[5] for x in W)
    n1u, n1v = u.count("1"), v.count("1")
    out = {
        "BD_with_B": sv(lambda L0, L1, R0, R1: L0) - su(lambda L0, L1, R0, R1: R0),
        "BD": sv(lambda L0, L1, R0, R1: L0 + L1 + 1) - su(lambda L0, L1, R0, R1: R0),
        "RD_with_R": su(lambda L0, L1, R0, R1: R1) - sv(lambda L0, L1, R0, R1: L1),
        "RD": su(lambda L0, L1, R0, R1: R0 + R1 + 1) - sv(lambda L0, L1, R0, R1: L1),
        "BD_or_RD": su(lambda L0, L1, R0, R1: R1 + 1) + sv(lambda L0, L1, R0, R1: L0 + 1),
        "DHD": (su(lambda L0, L1, R0, R1: L1) + sv(lambda L0, L1, R0, R1: L1 + 1)
                - sw(lambda L0, L1, R0, R1: L1)),
        "DHU": (su(lambda L0, L1, R0, R1: L1) + sv(lambda L0, L1, R0, R1: L1)
                - sw(lambda L0, L1, R0, R1: L1)),
        "oriented": (su(lambda L0, L1, R0, R1: n1u + L1)
                     + sv(lambda L0, L1, R0, R1: (L0 + L1 + 1) + L1 + 1)
                     - 2 * sw(lambda L0, L1, R0, R1: L1)),
        "plain": (sv(lambda L0, L1, R0, R1: n1v + (L0 + L1 + 1) + 1)
                  - sw(lambda L0, L1, R0, R1: L1)),
        # the same sum without the extra "+1", which is what the rho
        # evaluation of the weighted formula gives
        "plain_derived": (sv(lambda L0, L1, R0, R1: n1v + (L0 + L1 + 1))
                          - sw(lambda L0, L1, R0, R1: L1)),
        # move-classified counts
        "moves_BB_BR_R": su(lambda L0, L1, R0, R1: R1 + 1),
        "moves_RB_RR": su(lambda L0, L1, R0, R1: R0),
        "moves_B_RB_RR": sv(lambda L0, L1, R0, R1: L0),
        "moves_BB_BR": sv(lambda L0, L1, R0, R1: L1 + 1),
        "moves_BB_RB": sv(lambda L0, L1, R0, R1: L1),
    }
    qq = Q + Q ** -1
    weighted = LaurentPoly()
    for _, L0, L1, R0, R1, c in U:
        weighted = weighted + (qq * L1 + (R1 + 1)) * c
    for _, L0, L1, R0, R1, c in V:
        weighted = weighted + (qq * L1 + Q + (L0 + 1)) * c
    for _, L0, L1, R0, R1, c in W:
        weighted = weighted - qq * (L1 * c)
    out["weighted"] = weighted
    return out


def classify_by_moves(u: Word, v: Word, w: Word) -> Counter:
    """Counts of BD/RD puzzles by the right move that applies (``'end'`` on the boundary)."""
    c: Counter = Counter()
    for kind in ("BD", "RD"):
        for P in enumerate_puzzles(u, v, w, kind):
            if on_right_boundary(P):
                c[(kind, "end")] += 1
            else:
                c[(kind, move_right(P)[1])] += 1
    return c
