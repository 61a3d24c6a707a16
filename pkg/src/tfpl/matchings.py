"""Perfect matchings of the odd and even subgraphs, their path encodings and
determinant counts.

Path points use integer coordinates ``(X, Y)`` where a horizontal edge of
row ``r`` with midpoint column ``m`` sits at ``X = m + N - 1/2``,
``Y = N - r``.  Blue points have ``X + Y`` even, red points ``X + Y`` odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .algebra import integer_determinant
from .tfpl_core import Grid, build_grid
from .words import Word, check_word, inversions

DIRS = ("U", "D", "L", "R")


@dataclass(frozen=True)
class SubGraph:
    """``G_o(u,w)`` (``side='odd'``) or ``G_e(v,w)`` (``side='even'``)."""

    side: str
    boundary: Word  # u for the odd side, v for the even side
    w: Word

    @property
    def N(self) -> int:
        return len(self.w)

    @property
    def grid(self) -> Grid:
        return build_grid(self.N)

    @property
    def vertices(self) -> frozenset[int]:
        return _vertices(self.side, self.boundary, self.w)


def odd_graph(u: Word, w: Word) -> SubGraph:
    _check_pair(u, w)
    return SubGraph("odd", u, w)


def even_graph(v: Word, w: Word) -> SubGraph:
    _check_pair(v, w)
    return SubGraph("even", v, w)


def _check_pair(a: Word, w: Word) -> None:
    check_word(a)
    check_word(w)
    if len(a) != len(w) or not w:
        raise ValueError("words must be nonempty and of equal length")


@lru_cache(maxsize=None)
def _vertices(side: str, a: Word, w: Word) -> frozenset[int]:
    g = build_grid(len(w))
    drop = set()
    if side == "odd":
        drop.update(g.R)
        drop.update(g.B[i] for i, c in enumerate(w) if c == "0")
        drop.update(g.L[i] for i, c in enumerate(a) if c == "0")
    elif side == "even":
        drop.update(g.L)
        drop.update(g.B[i] for i, c in enumerate(w) if c == "1")
        drop.update(g.R[i] for i, c in enumerate(a) if c == "1")
    else:
        raise ValueError(f"unknown side {side!r}")
    return frozenset(range(g.n_vertices)) - drop


def _diag_key(g: Grid, v: int):
    r, x = g.coords[v]
    return (x - r, r)


@lru_cache(maxsize=None)
def _matchings(side: str, a: Word, w: Word) -> tuple[int, ...]:
    g = build_grid(len(w))
    verts = sorted(_vertices(side, a, w), key=lambda v: _diag_key(g, v))
    vset = set(verts)
    nbrs = {v: [(n, e) for n, e in g.adj[v] if n in vset] for v in verts}
    n_odd = sum(g.odd[v] for v in verts)
    if 2 * n_odd != len(verts):
        return ()
    out: list[int] = []
    matched: set[int] = set()
    pos = 0

    def rec(k: int, mask: int):
        while k < len(verts) and verts[k] in matched:
            k += 1
        if k == len(verts):
            out.append(mask)
            return
        v = verts[k]
        matched.add(v)
        for n, e in nbrs[v]:
            if n not in matched:
                matched.add(n)
                rec(k + 1, mask | (1 << e))
                matched.discard(n)
        matched.discard(v)

    rec(pos, 0)
    return tuple(sorted(out))


def enumerate_matchings(graph: SubGraph) -> list[int]:
    """All perfect matchings of ``graph`` as edge bitmasks."""
    return list(_matchings(graph.side, graph.boundary, graph.w))


def odd_matchings(u: Word, w: Word) -> tuple[int, ...]:
    return _matchings("odd", u, w)


def even_matchings(v: Word, w: Word) -> tuple[int, ...]:
    return _matchings("even", v, w)


def _split64(masks: Sequence[int]) -> np.ndarray:
    arr = np.zeros((len(masks), 2), dtype=np.uint64)
    for k, m in enumerate(masks):
        arr[k, 0] = m & 0xFFFFFFFFFFFFFFFF
        arr[k, 1] = m >> 64
    return arr


@lru_cache(maxsize=256)
def _packed(side: str, a: Word, w: Word) -> np.ndarray:
    ms = _matchings(side, a, w)
    if any(m >> 128 for m in ms):
        raise ValueError("grid too large for packed masks")
    return _split64(ms)


def _disjoint_index(u: Word, v: Word, w: Word) -> tuple[np.ndarray, np.ndarray]:
    A = _packed("odd", u, w)
    B = _packed("even", v, w)
    if not len(A) or not len(B):
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    ii, jj = [], []
    chunk = max(1, 4_000_000 // max(1, len(B)))
    for s in range(0, len(A), chunk):
        a = A[s:s + chunk]
        clash = ((a[:, None, 0] & B[None, :, 0]) | (a[:, None, 1] & B[None, :, 1])) != 0
        i, j = np.nonzero(~clash)
        ii.append(i + s)
        jj.append(j)
    return np.concatenate(ii), np.concatenate(jj)


def disjoint_pairs(u: Word, v: Word, w: Word) -> list[tuple[int, int]]:
    """All edge-disjoint pairs (odd matching, even matching) in sorted order."""
    if not (u.count("0") == v.count("0") == w.count("0")):
        return []
    mos, mes = odd_matchings(u, w), even_matchings(v, w)
    ii, jj = _disjoint_index(u, v, w)
    return sorted((mos[i], mes[j]) for i, j in zip(ii.tolist(), jj.tolist()))


def count_disjoint_pairs(u: Word, v: Word, w: Word) -> int:
    if not (u.count("0") == v.count("0") == w.count("0")):
        return 0
    return len(_disjoint_index(u, v, w)[0])


# -- split / merge ------------------------------------------------------------


def split_matchings(f) -> tuple[int, int]:
    """The odd->even and even->odd edge sets of an oriented TFPL."""
    return f.odd_to_even, f.even_to_odd


def merge_matchings(N: int, mo: int, me: int):
    from .tfpl_core import OrientedTFPL, validate_oriented
    if mo & me:
        raise ValueError("matchings share an edge")
    f = OrientedTFPL(N, mo, me)
    validate_oriented(f)
    return f


def is_perfect(graph: SubGraph, mask: int) -> bool:
    g = graph.grid
    seen: set[int] = set()
    verts = graph.vertices
    for e in g.edge_bits(mask):
        a, b = g.edges[e]
        if a not in verts or b not in verts or a in seen or b in seen:
            return False
        seen.update((a, b))
    return seen == verts


# -- census -----------------------------------------------------------------


def edge_direction(g: Grid, e: int, side: str) -> str:
    """Direction of edge ``e`` oriented odd->even (odd side) or even->odd."""
    a, b = g.edges[e]  # a odd, b even
    if side == "even":
        a, b = b, a
    s = g.step(a, b)
    return {"u": "U", "d": "D", "l": "L", "r": "R"}[s]


def direction_census(graph: SubGraph, mask: int) -> dict[str, int]:
    g = graph.grid
    c = dict.fromkeys(DIRS, 0)
    for e in g.edge_bits(mask):
        c[edge_direction(g, e, graph.side)] += 1
    return c


def census_identities(graph: SubGraph, mask: int) -> dict[str, tuple[int, int]]:
    """``{name: (lhs, rhs)}`` for the three edge-count identities of the side."""
    c = direction_census(graph, mask)
    N, w = graph.N, graph.w
    n0, n1 = w.count("0"), w.count("1")
    dw, da = inversions(w), inversions(graph.boundary)
    total = sum(c.values())
    if graph.side == "odd":
        return {"o1": (total, N * (N - 1) // 2 + n1),
                "o2": (c["L"] + c["D"], dw - da),
                "o3": (c["U"] + c["L"], n0 * (n0 - 1) // 2 + dw)}
    return {"e1": (total, N * (N - 1) // 2 + n0),
            "e2": (c["L"] + c["U"], dw - da),
            "e3": (c["D"] + c["L"], n1 * (n1 - 1) // 2 + dw)}


# -- paths --------------------------------------------------------------------


@dataclass(frozen=True)
class PathFamily:
    color: str  # 'blue' or 'red'
    N: int
    paths: tuple[tuple[tuple[int, int], ...], ...]

    def steps(self) -> list[str]:
        """Step strings over U/D/H, each path read in its direction of travel."""
        out = []
        for p in self.paths:
            s = []
            for (x1, y1), (x2, y2) in zip(p, p[1:]):
                s.append("H" if y1 == y2 else "U" if y2 > y1 else "D")
            out.append("".join(s))
        return out

    def to_json(self) -> dict:
        return {"color": self.color, "N": self.N, "paths": [list(map(list, p)) for p in self.paths],
                "steps": self.steps()}


def blue_left(g: Grid, v: int) -> tuple[int, int]:
    r, x = g.coords[v]
    return (x + g.N - 1, g.N - r)


def blue_right(g: Grid, v: int) -> tuple[int, int]:
    r, x = g.coords[v]
    return (x + g.N, g.N - r)


red_left = blue_left
red_right = blue_right


def _segment(g: Grid, e: int, side: str):
    """Path segment ``(start, end)`` in travel direction, or ``None`` for R edges."""
    a, b = g.edges[e]  # a odd, b even
    d = edge_direction(g, e, side)
    if d == "R":
        return None
    if side == "odd":
        # blue travels leftwards: from right of the odd end to left of the even end
        return blue_right(g, a), blue_left(g, b)
    # red travels rightwards: from left of the odd end to right of the even end
    return red_left(g, a), red_right(g, b)


def start_points(side: str, w: Word) -> list[tuple[int, int]]:
    if side == "odd":
        return [(2 * i - 2, 0) for i in range(1, len(w) + 1) if w[i - 1] == "0"]
    return [(2 * i - 1, 0) for i in range(1, len(w) + 1) if w[i - 1] == "1"]


def end_points(side: str, a: Word) -> list[tuple[int, int]]:
    N = len(a)
    if side == "odd":
        return [(j - 1, j - 1) for j in range(1, N + 1) if a[j - 1] == "0"]
    return [(N - 1 + j, N - j) for j in range(1, N + 1) if a[j - 1] == "1"]


def matching_to_paths(graph: SubGraph, mask: int) -> PathFamily:
    g = graph.grid
    succ: dict[tuple[int, int], tuple[int, int]] = {}
    for e in g.edge_bits(mask):
        seg = _segment(g, e, graph.side)
        if seg is None:
            continue
        if seg[0] in succ:
            raise ValueError("two segments leave the same point")
        succ[seg[0]] = seg[1]
    paths = []
    used = 0
    for s in start_points(graph.side, graph.w):
        p = [s]
        while p[-1] in succ:
            p.append(succ[p[-1]])
        used += len(p) - 1
        paths.append(tuple(p))
    if used != len(succ):
        raise ValueError("segments not covered by paths from the start points")
    ends = [p[-1] for p in paths]
    if ends != end_points(graph.side, graph.boundary):
        raise ValueError("paths do not end at the expected points")
    return PathFamily("blue" if graph.side == "odd" else "red", graph.N, tuple(paths))


def paths_to_matching(graph: SubGraph, fam: PathFamily) -> int:
    g = graph.grid
    N = g.N
    mask = 0
    covered: set[int] = set()

    def vert(X, Y, shift):
        return g.index.get((N - Y, X - N + shift))

    for p in fam.paths:
        for (x1, y1), (x2, y2) in zip(p, p[1:]):
            if graph.side == "odd":
                a = vert(x1, y1, 0)       # odd vertex left of the start point
                b = vert(x2, y2, 1)       # even vertex right of the end point
            else:
                a = vert(x1, y1, 1)       # odd vertex right of the start point
                b = vert(x2, y2, 0)       # even vertex left of the end point
            if a is None or b is None or (a, b) not in g.edge_index:
                raise ValueError(f"step {(x1, y1)}->{(x2, y2)} is not a matching edge")
            mask |= 1 << g.edge_index[a, b]
            covered.update((a, b))
    # leftover vertices form rightward edges from the source parity
    source_odd = graph.side == "odd"
    for v in sorted(graph.vertices - covered):
        if g.odd[v] != source_odd or v in covered:
            continue
        r, x = g.coords[v]
        nb = g.index.get((r, x + 1))
        if nb is None or nb in covered or nb not in graph.vertices:
            raise ValueError("leftover vertex cannot be matched")
        mask |= 1 << g.edge_index[v, nb]
        covered.update((v, nb))
    if covered != graph.vertices:
        raise ValueError("path family does not give a perfect matching")
    return mask


def paths_nonintersecting(fam: PathFamily) -> bool:
    seen: set = set()
    for p in fam.paths:
        for pt in p:
            if pt in seen:
                return False
            seen.add(pt)
    return True


# -- counting -----------------------------------------------------------------


def schroeder_prefix_count(n: int, m: int) -> int:
    """Paths ``(0,0) -> (2n+m, m)`` with steps (1,1),(1,-1),(2,0) staying >= 0."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")

    def c(a, b):
        return comb(a, b) if 0 <= b <= a else 0

    return sum((c(2 * n - 2 * p + m, n - p) - c(2 * n - 2 * p + m, n - p - 1))
               * c(2 * n + m - p, p) for p in range(n + 1))


def odd_entry(i: int, j: int) -> int:
    """Blue paths from ``(2i-2, 0)`` to ``(j-1, j-1)``."""
    return schroeder_prefix_count(i - j, j - 1) if i >= j else 0


def even_entry(i: int, j: int, N: int) -> int:
    """Red paths from ``(2i-1, 0)`` to ``(N-1+j, N-j)``."""
    return schroeder_prefix_count(j - i, N - j) if j >= i else 0


def even_entry_shifted(i: int, j: int, N: int) -> int:
    """The even-side entry with the binomial tops shifted by ``N + 1``."""
    def c(a, b):
        return comb(a, b) if 0 <= b <= a else 0
    if j < i:
        return 0
    t = j - 2 * i + N + 1
    return sum((c(t - 2 * p, j - i - p) - c(t - 2 * p, j - i - p - 1)) * c(t - p, p)
               for p in range(j - i + 1))


def lgv_matrix(side: str, a: Word, w: Word, shifted: bool = False) -> list[list[int]]:
    _check_pair(a, w)
    N = len(w)
    if side == "odd":
        I = [k + 1 for k, c in enumerate(w) if c == "0"]
        J = [k + 1 for k, c in enumerate(a) if c == "0"]
        if len(I) != len(J):
            raise ValueError("u and w need the same number of 0s")
        return [[odd_entry(i, j) for j in J] for i in I]
    I = [k + 1 for k, c in enumerate(w) if c == "1"]
    J = [k + 1 for k, c in enumerate(a) if c == "1"]
    if len(I) != len(J):
        raise ValueError("v and w need the same number of 1s")
    f = even_entry_shifted if shifted else even_entry
    return [[f(i, j, N) for j in J] for i in I]


def count_matchings_det(side: str, a: Word, w: Word, shifted: bool = False) -> int:
    return integer_determinant(lgv_matrix(side, a, w, shifted))


def matching_count_upper_bound(u: Word, v: Word, w: Word) -> int:
    """Product of the two determinants; only an upper bound for oriented counts."""
    return count_matchings_det("odd", u, w) * count_matchings_det("even", v, w)
