"""Blue-red path tangles.

A tangle superimposes the blue family (from the odd matching, travelling
leftwards) and the red family (from the even matching, travelling
rightwards).  Local patterns are read from pairs of adjacent points
``(P, P + (1, 0))`` on one row:

* a blue point ``P`` followed by a red point sits on an even vertex of the
  grid; the blue step *arriving* at ``P`` and the red step *arriving* at
  ``P + (1, 0)`` give the two edge directions through that vertex;
* a red point ``P`` followed by a blue point sits on an odd vertex; the
  red step *leaving* ``P`` and the blue step *leaving* ``P + (1, 0)`` give
  the directions.

A missing step means a rightward edge, except at boundary vertices where
the external stub supplies the direction.  Pattern names are the turn
followed by the parity of the vertex it happens at, e.g. ``lde`` is a
left-then-down turn on an even vertex.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .matchings import (PathFamily, even_graph, matching_to_paths, odd_graph,
                        paths_to_matching)
from .tfpl_core import OrientedTFPL, boundary_of
from .words import Word, inversions

CROSSING_PATTERNS = ("ldo", "lde", "ulo", "ule", "dlo", "dle", "luo", "lue")
EXCESS_PATTERNS = ("BD", "RD", "DHD", "DHU")

_BLUE_DIR = {(-1, -1): "d", (-1, 1): "u", (-2, 0): "l"}
_RED_DIR = {(1, 1): "d", (1, -1): "u", (2, 0): "l"}


@dataclass(frozen=True)
class PathTangle:
    u: Word
    v: Word
    w: Word
    blue: PathFamily
    red: PathFamily

    @property
    def N(self) -> int:
        return len(self.w)

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "w": self.w,
                "blue": self.blue.to_json(), "red": self.red.to_json()}


def tangle_from(f: OrientedTFPL) -> PathTangle:
    u, v, w = boundary_of(f)
    blue = matching_to_paths(odd_graph(u, w), f.odd_to_even)
    red = matching_to_paths(even_graph(v, w), f.even_to_odd)
    return PathTangle(u, v, w, blue, red)


def tangle_to_oriented(t: PathTangle) -> OrientedTFPL:
    mo = paths_to_matching(odd_graph(t.u, t.w), t.blue)
    me = paths_to_matching(even_graph(t.v, t.w), t.red)
    if mo & me:
        raise ValueError("tangle encodes matchings sharing an edge")
    return OrientedTFPL(t.N, mo, me)


def _steps(fam: PathFamily):
    for k, p in enumerate(fam.paths):
        for a, b in zip(p, p[1:]):
            yield k, a, b


def validate_tangle(t: PathTangle) -> list[str]:
    """Violations of the tangle rules; an empty list means valid."""
    problems = []
    mids: dict = {}
    for color, fam in (("blue", t.blue), ("red", t.red)):
        for _, (x1, y1), (x2, y2) in _steps(fam):
            if y1 != y2:
                mids.setdefault((x1 + x2, y1 + y2), []).append(color)
    for m, cols in mids.items():
        if "blue" in cols and "red" in cols:
            problems.append(f"diagonal steps cross at {(m[0] / 2, m[1] / 2)}")
    pts = {c: {pt for p in fam.paths for pt in p} for c, fam in (("blue", t.blue), ("red", t.red))}
    for color, fam, other in (("blue", t.blue, "red"), ("red", t.red, "blue")):
        for _, (x1, y1), (x2, y2) in _steps(fam):
            if y1 == y2:
                mid = ((x1 + x2) // 2, y1)
                if mid not in pts[other]:
                    problems.append(f"{color} horizontal step with unused midpoint {mid}")
    for fam in (t.blue, t.red):
        seen: set = set()
        for p in fam.paths:
            for pt in p:
                if pt in seen:
                    problems.append(f"{fam.color} paths meet at {pt}")
                seen.add(pt)
    return problems


# -- census -----------------------------------------------------------------


@dataclass(frozen=True)
class LocalCensus:
    counts: tuple[tuple[str, int], ...]

    def __getitem__(self, k: str) -> int:
        return dict(self.counts).get(k, 0)

    def as_dict(self) -> dict[str, int]:
        return dict(self.counts)

    def turn(self, t: str) -> int:
        """Parity-summed turn count, e.g. ``turn('ld') = ldo + lde``."""
        return self[t + "o"] + self[t + "e"]


def _arrivals(fam: PathFamily, table) -> dict:
    return {b: table[(b[0] - a[0], b[1] - a[1])] for _, a, b in _steps(fam)}


def _departures(fam: PathFamily, table) -> dict:
    return {a: table[(b[0] - a[0], b[1] - a[1])] for _, a, b in _steps(fam)}


def _vertex_windows(t: PathTangle) -> Iterable[tuple[str, str, str]]:
    """``(parity, incoming direction, outgoing direction)`` per used grid vertex."""
    N = t.N
    b_in, r_in = _arrivals(t.blue, _BLUE_DIR), _arrivals(t.red, _RED_DIR)
    r_out, b_out = _departures(t.red, _RED_DIR), _departures(t.blue, _BLUE_DIR)
    bottom = {(2 * i, 0): i for i in range(N)}            # left point of B_{i+1}
    left = {(j - 2, j - 1): j for j in range(1, N + 1)}     # left point of L_j
    right = {(N - 1 + j, N - j): j for j in range(1, N + 1)}  # left point of R_j
    for Y in range(N):
        for X in range(-1, 2 * N):
            if (X + Y) % 2 == 0:
                # even vertex between blue point X and red point X+1
                if Y == 0 and X in range(0, 2 * N, 2):
                    i = bottom[X, 0]
                    if t.w[i] == "0":
                        yield "e", "u", r_in.get((X + 1, Y), "r")
                    else:
                        yield "e", b_in.get((X, Y), "r"), "d"
                    continue
                if Y <= X <= 2 * N - 2 - Y:
                    yield "e", b_in.get((X, Y), "r"), r_in.get((X + 1, Y), "r")
            else:
                # odd vertex between red point X and blue point X+1
                if (X, Y) in left:
                    if t.u[left[X, Y] - 1] == "1":
                        yield "o", "r", b_out.get((X + 1, Y), "r")
                    continue
                if (X, Y) in right:
                    if t.v[right[X, Y] - 1] == "0":
                        yield "o", r_out.get((X, Y), "r"), "r"
                    continue
                if Y + 1 <= X <= 2 * N - 2 - Y:
                    yield "o", r_out.get((X, Y), "r"), b_out.get((X + 1, Y), "r")


def local_census(t: PathTangle) -> LocalCensus:
    c: Counter = Counter()
    for parity, d1, d2 in _vertex_windows(t):
        if d1 == d2 == "l":
            # overlapping blue and red horizontal steps: blue left of red on an
            # odd vertex, red left of blue on an even vertex
            c["DHD" if parity == "o" else "DHU"] += 1
        elif d1 != d2 and d1 + d2 in ("ld", "ul", "dl", "lu"):
            c[d1 + d2 + parity] += 1
    for _, a, b in _steps(t.blue):
        if b[1] < a[1]:
            c["BD"] += 1
        elif b[1] == a[1]:
            c["blue_horizontal"] += 1
    for _, a, b in _steps(t.red):
        if b[1] < a[1]:
            c["RD"] += 1
        elif b[1] == a[1]:
            c["red_horizontal"] += 1
    keys = EXCESS_PATTERNS + CROSSING_PATTERNS + ("blue_horizontal", "red_horizontal")
    return LocalCensus(tuple((k, c[k]) for k in keys))


def classify_excess1_type(c: LocalCensus) -> str:
    present = [k for k in EXCESS_PATTERNS if c[k]]
    if len(present) != 1 or c[present[0]] != 1:
        raise ValueError(f"not a single excess pattern: {c.as_dict()}")
    return present[0]


def excess_checks(t: PathTangle) -> dict[str, int]:
    """Residuals (lhs - rhs) of the excess and twow identities; all should be 0."""
    c = local_census(t)
    du, dv, dw = inversions(t.u), inversions(t.v), inversions(t.w)
    turns4 = c["lue"] + c["ulo"] + c["dle"] + c["ldo"]
    hh = c["DHD"] + c["DHU"]
    return {
        "excess": (dw - du - dv) - (c["BD"] + c["RD"] + hh + turns4),
        "prelim": (c["blue_horizontal"] + c["red_horizontal"] - dw) - (hh + turns4),
        "twow1": dw - (c["ule"] + c["dlo"] - c["ldo"] - c["lue"]),
        "twow2": dw - (c["luo"] + c["lde"] - c["dle"] - c["ulo"]),
    }


def brweight_exponent(t: PathTangle, alpha, beta) -> Fraction:
    c = local_census(t)
    a, b = Fraction(alpha), Fraction(beta)
    return (a * c.turn("ld") + (1 - a) * c.turn("ul")
            - b * c.turn("dl") - (1 - b) * c.turn("lu"))


# -- intersecting pairs -------------------------------------------------------


def _horizontal_mids(fam: PathFamily, k: int) -> set:
    p = fam.paths[k]
    return {((a[0] + b[0]) // 2, a[1]) for a, b in zip(p, p[1:]) if a[1] == b[1]}


def intersecting_pairs(t: PathTangle) -> list[tuple[int, int]]:
    """``(blue index, red index)`` of paths touching each other."""
    out = []
    for kb, pb in enumerate(t.blue.paths):
        sb = set(pb)
        hb = _horizontal_mids(t.blue, kb)
        for kr, pr in enumerate(t.red.paths):
            if (sb & _horizontal_mids(t.red, kr)) or (hb & set(pr)):
                out.append((kb, kr))
    return out


def pair_to_inversion(t: PathTangle, pair: tuple[int, int]) -> tuple[int, int]:
    """The inversion ``(i, j)`` of ``w`` given by the red and blue start points."""
    kb, kr = pair
    j = t.blue.paths[kb][0][0] // 2 + 1
    i = (t.red.paths[kr][0][0] + 1) // 2
    return i, j


def _height(path, X2: int, color: str):
    """Height of ``path`` at doubled abscissa ``X2`` (piecewise linear), with
    the path continued to minus/plus infinity off its ends."""
    xs = [2 * p[0] for p in path]
    lo, hi = min(xs), max(xs)
    if X2 < lo:
        # blue leaves on the left boundary (above); red starts at the bottom
        return float("inf") if color == "blue" else float("-inf")
    if X2 > hi:
        return float("-inf") if color == "blue" else float("inf")
    for a, b in zip(path, path[1:]):
        x1, x2 = sorted((2 * a[0], 2 * b[0]))
        if x1 <= X2 <= x2:
            ya, yb = (a[1], b[1]) if 2 * a[0] == x1 else (b[1], a[1])
            return Fraction(ya) + Fraction(yb - ya) * Fraction(X2 - x1, x2 - x1)
    return Fraction(path[0][1])


def pair_extremities(t: PathTangle, pair: tuple[int, int]) -> dict[str, int]:
    """Counts of segment extremities of an intersecting pair by who is above.

    Keys: ``left_blue_above``, ``left_red_above``, ``right_blue_above``,
    ``right_red_above``.
    """
    kb, kr = pair
    pb, pr = t.blue.paths[kb], t.red.paths[kr]
    xs = sorted({2 * p[0] for p in pb} | {2 * p[0] for p in pr})
    grid = range(xs[0] - 1, xs[-1] + 2)
    sign = []
    for X2 in grid:
        hb, hr = _height(pb, X2, "blue"), _height(pr, X2, "red")
        sign.append(0 if hb == hr else (1 if hb > hr else -1))
    out = dict.fromkeys(("left_blue_above", "left_red_above",
                         "right_blue_above", "right_red_above"), 0)
    for k in range(1, len(sign)):
        if sign[k] == 0 and sign[k - 1] != 0:
            out["left_blue_above" if sign[k - 1] > 0 else "left_red_above"] += 1
        if sign[k - 1] == 0 and sign[k] != 0:
            out["right_blue_above" if sign[k] > 0 else "right_red_above"] += 1
    return out
