"""The triangular grid, plain and oriented TFPLs, and their statistics.

Vertices are ``(r, x)`` with row ``r = 1..N`` counted from the top and the
centred column ``x = -r..r``.  A vertex is odd when ``x + r`` is even, so
the leftmost and rightmost vertex of every row is odd.

``L_i`` is the leftmost vertex of row ``N - i + 1`` (so ``L_1`` is bottom
left), ``R_i`` the rightmost vertex of row ``i`` and ``B_i`` the ``i``-th even
vertex of the bottom row, all numbered from left to right.

Edges are stored as bits of Python ints.  Every edge is recorded as
``(odd endpoint, even endpoint)``; an oriented configuration is the pair of
disjoint edge sets oriented odd->even and even->odd.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .algebra import LaurentPoly
from .words import (DirectedExtendedLinkPattern, ExtendedLinkPattern, Word,
                    check_word, star, word_stats)

TURNS_CW = ("ur", "rd", "dl", "lu")
TURNS_CCW = ("ru", "dr", "ld", "ul")
R_PRIME = ("dl", "lu")
L_PRIME = ("ld", "ul")


class Grid:
    """The graph ``G^N`` with its distinguished vertices."""

    def __init__(self, N: int):
        if N < 1:
            raise ValueError(f"grid size must be positive, got {N}")
        self.N = N
        self.coords: list[tuple[int, int]] = [
            (r, x) for r in range(1, N + 1) for x in range(-r, r + 1)]
        self.index = {c: i for i, c in enumerate(self.coords)}
        self.odd = [(x + r) % 2 == 0 for r, x in self.coords]
        edges = []
        for r, x in self.coords:
            for nb in ((r, x + 1), (r + 1, x)):
                if nb in self.index:
                    a, b = self.index[r, x], self.index[nb]
                    edges.append((a, b) if self.odd[a] else (b, a))
        self.edges: list[tuple[int, int]] = edges
        self.edge_index = {}
        self.adj: list[list[tuple[int, int]]] = [[] for _ in self.coords]
        for e, (a, b) in enumerate(edges):
            self.edge_index[a, b] = self.edge_index[b, a] = e
            self.adj[a].append((b, e))
            self.adj[b].append((a, e))
        self.L = [self.index[N - i, -(N - i)] for i in range(N)]
        self.R = [self.index[i + 1, i + 1] for i in range(N)]
        self.B = [self.index[N, -N + 2 * i + 1] for i in range(N)]
        self.role: dict[int, tuple[str, int]] = {}
        for name, fam in (("L", self.L), ("R", self.R), ("B", self.B)):
            for i, v in enumerate(fam):
                self.role[v] = (name, i)
        self.reflect_vertex = [self.index[r, -x] for r, x in self.coords]
        self.reflect_edge = [self.edge_index[self.reflect_vertex[a], self.reflect_vertex[b]]
                             for a, b in edges]

    @property
    def n_vertices(self) -> int:
        return len(self.coords)

    def step(self, a: int, b: int) -> str:
        """Direction letter of the step ``a -> b`` (rows grow downwards)."""
        (r1, x1), (r2, x2) = self.coords[a], self.coords[b]
        if r1 == r2:
            return "r" if x2 > x1 else "l"
        return "u" if r2 < r1 else "d"

    def edge_bits(self, mask: int) -> Iterator[int]:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def label(self, v: int) -> str:
        r, x = self.coords[v]
        return f"{r},{x}"


@lru_cache(maxsize=None)
def build_grid(N: int) -> Grid:
    return Grid(N)


# -- configurations ---------------------------------------------------------


@dataclass(frozen=True)
class PlainTFPL:
    N: int
    edges: int

    @property
    def grid(self) -> Grid:
        return build_grid(self.N)

    def to_json(self) -> dict:
        g = self.grid
        return {"N": self.N, "edges": [[g.label(g.edges[e][0]), g.label(g.edges[e][1])]
                                       for e in g.edge_bits(self.edges)]}


@dataclass(frozen=True)
class OrientedTFPL:
    """``odd_to_even`` and ``even_to_odd`` are disjoint edge bitmasks."""

    N: int
    odd_to_even: int
    even_to_odd: int

    @property
    def grid(self) -> Grid:
        return build_grid(self.N)

    @property
    def edges(self) -> int:
        return self.odd_to_even | self.even_to_odd

    def arcs(self) -> list[tuple[int, int]]:
        g = self.grid
        out = [g.edges[e] for e in g.edge_bits(self.odd_to_even)]
        out += [g.edges[e][::-1] for e in g.edge_bits(self.even_to_odd)]
        return sorted(out)

    def underlying(self) -> PlainTFPL:
        return PlainTFPL(self.N, self.edges)

    def to_json(self) -> dict:
        g = self.grid
        return {"N": self.N, "dir": "source->target",
                "edges": [[g.label(a), g.label(b)] for a, b in self.arcs()]}


def oriented_from_json(d: dict) -> OrientedTFPL:
    g = build_grid(int(d["N"]))
    oe = eo = 0
    for a, b in d["edges"]:
        va = g.index[tuple(map(int, a.split(",")))]
        vb = g.index[tuple(map(int, b.split(",")))]
        e = g.edge_index[va, vb]
        if g.odd[va]:
            oe |= 1 << e
        else:
            eo |= 1 << e
    return OrientedTFPL(g.N, oe, eo)


def _successors(f: OrientedTFPL) -> tuple[dict[int, int], dict[int, int]]:
    g = f.grid
    nxt, prv = {}, {}
    for a, b in f.arcs():
        if a in nxt or b in prv:
            raise ValueError("vertex with two outgoing or two incoming edges")
        nxt[a] = b
        prv[b] = a
    return nxt, prv


def validate_oriented(f: OrientedTFPL) -> None:
    """Raise ``ValueError`` unless ``f`` satisfies the local oriented rules."""
    g = f.grid
    if f.odd_to_even & f.even_to_odd:
        raise ValueError("edge used in both orientations")
    if f.edges >> len(g.edges):
        raise ValueError("edge index out of range")
    nxt, prv = _successors(f)
    for v in range(g.n_vertices):
        i, o = v in prv, v in nxt
        role = g.role.get(v, ("", 0))[0]
        if role == "L":
            ok = not i
        elif role == "R":
            ok = not o
        elif role == "B":
            ok = i != o
        else:
            ok = i and o
        if not ok:
            raise ValueError(f"bad degrees at vertex {g.coords[v]}")


def boundary_of(f: OrientedTFPL) -> tuple[Word, Word, Word]:
    validate_oriented(f)
    g = f.grid
    nxt, prv = _successors(f)
    u = "".join("1" if v in nxt else "0" for v in g.L)
    v_ = "".join("0" if v in prv else "1" for v in g.R)
    w = "".join("1" if v in prv else "0" for v in g.B)
    return u, v_, w


def _degrees(g: Grid, edges: int) -> list[int]:
    deg = [0] * g.n_vertices
    for e in g.edge_bits(edges):
        a, b = g.edges[e]
        deg[a] += 1
        deg[b] += 1
    return deg


def _plain_adj(g: Grid, edges: int) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for e in g.edge_bits(edges):
        a, b = g.edges[e]
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return adj


def _walk(adj: dict[int, list[int]], start: int) -> list[int]:
    """Vertices of the open path starting at the degree-1 vertex ``start``."""
    path = [start]
    prev, cur = None, start
    while True:
        nbrs = [x for x in adj.get(cur, ()) if x != prev]
        if not nbrs:
            return path
        prev, cur = cur, nbrs[0]
        path.append(cur)


def plain_boundary_of(f: PlainTFPL) -> tuple[Word, Word, Word, ExtendedLinkPattern]:
    """Boundary words and extended link pattern of a plain TFPL."""
    g = f.grid
    deg = _degrees(g, f.edges)
    for v in range(g.n_vertices):
        role = g.role.get(v, ("", 0))[0]
        want = {"L": (0, 1), "R": (0, 1), "B": (1,)}.get(role, (2,))
        if deg[v] not in want:
            raise ValueError(f"bad degree {deg[v]} at vertex {g.coords[v]}")
    adj = _plain_adj(g, f.edges)
    u = "".join("1" if deg[v] else "0" for v in g.L)
    v_ = "".join("0" if deg[v] else "1" for v in g.R)
    w = ["?"] * g.N
    left, right, pairs = [], [], []
    for side in (g.L, g.R):
        for s in side:
            if deg[s]:
                end = _walk(adj, s)[-1]
                role, i = g.role.get(end, ("", 0))
                if role == g.role[s][0]:
                    raise ValueError(f"path joins two {role} vertices")
    for i, b in enumerate(g.B):
        role, j = g.role[_walk(adj, b)[-1]]
        if role == "L" or (role == "B" and j < i):
            w[i] = "1"
            if role == "L":
                left.append(i + 1)
            else:
                pairs.append((j + 1, i + 1))
        else:
            w[i] = "0"
            if role == "R":
                right.append(i + 1)
    pi = ExtendedLinkPattern(g.N, tuple(left), tuple(right), tuple(sorted(pairs)))
    return u, v_, "".join(w), pi


def is_valid_plain(f: PlainTFPL) -> bool:
    try:
        plain_boundary_of(f)
    except ValueError:
        return False
    return True


# -- turns ------------------------------------------------------------------


def _in_out_dirs(f: OrientedTFPL) -> Iterator[tuple[int, str, str]]:
    """``(vertex, incoming step, outgoing step)`` with boundary stubs included."""
    g = f.grid
    nxt, prv = _successors(f)
    for v in range(g.n_vertices):
        if v not in nxt and v not in prv:
            continue
        role = g.role.get(v, ("", 0))[0]
        if v in prv:
            din = g.step(prv[v], v)
        elif role == "L":
            din = "r"
        else:  # bottom vertex sending its path upwards
            din = "u"
        if v in nxt:
            dout = g.step(v, nxt[v])
        elif role == "R":
            dout = "r"
        else:
            dout = "d"
        yield v, din, dout


@dataclass(frozen=True)
class TurnCensus:
    counts: tuple[tuple[str, int], ...]
    rl: int
    n_cw: int
    n_ccw: int

    def __getitem__(self, t: str) -> int:
        return dict(self.counts).get(t, 0)

    def as_dict(self) -> dict[str, int]:
        return {t: self[t] for t in TURNS_CW + TURNS_CCW}


def _components(f: OrientedTFPL):
    """Yield ``(kind, vertex list)`` for every path of ``f`` in its direction."""
    g = f.grid
    nxt, prv = _successors(f)
    seen = set()
    starts = [v for v in range(g.n_vertices) if v in nxt and v not in prv]
    for s in starts:
        path = [s]
        while path[-1] in nxt:
            path.append(nxt[path[-1]])
        seen.update(path)
        yield "open", path
    for v in sorted(nxt):
        if v in seen:
            continue
        loop = [v]
        while nxt[loop[-1]] != v:
            loop.append(nxt[loop[-1]])
        seen.update(loop)
        yield "closed", loop


def _loop_turns(g: Grid, loop: list[int]) -> Counter:
    c: Counter = Counter()
    n = len(loop)
    for k in range(n):
        a, b, d = loop[k - 1], loop[k], loop[(k + 1) % n]
        din, dout = g.step(a, b), g.step(b, d)
        if din != dout:
            c[din + dout] += 1
    return c


def loop_is_clockwise(g: Grid, loop: list[int]) -> bool:
    c = _loop_turns(g, loop)
    diff = c["dl"] - c["ld"]
    if diff not in (1, -1):
        raise AssertionError(f"closed loop with dl-ld = {diff}")
    return diff == 1


def directed_pattern_of(f: OrientedTFPL) -> DirectedExtendedLinkPattern:
    g = f.grid
    left, right, pairs = [], [], []
    for kind, path in _components(f):
        if kind != "open":
            continue
        (rs, i), (re_, j) = g.role[path[0]], g.role[path[-1]]
        if rs == "B" and re_ == "B":
            pairs.append((min(i, j) + 1, max(i, j) + 1, i + 1))
        elif rs == "B" and re_ == "R":
            right.append(i + 1)
        elif rs == "L" and re_ == "B":
            left.append(j + 1)
    pairs.sort()
    pi = ExtendedLinkPattern(g.N, tuple(sorted(left)), tuple(sorted(right)),
                             tuple((a, b) for a, b, _ in pairs))
    return DirectedExtendedLinkPattern(pi, tuple(s for _, _, s in pairs))


def turn_census(f: OrientedTFPL) -> TurnCensus:
    g = f.grid
    c: Counter = Counter()
    for _, din, dout in _in_out_dirs(f):
        if din != dout:
            c[din + dout] += 1
    n_cw = n_ccw = 0
    for kind, path in _components(f):
        if kind == "closed":
            if loop_is_clockwise(g, path):
                n_cw += 1
            else:
                n_ccw += 1
    rl = directed_pattern_of(f).rl()
    return TurnCensus(tuple(sorted(c.items())), rl, n_cw, n_ccw)


def weight_exponent(f: OrientedTFPL, t_cw: str = "dl", t_ccw: str = "ld") -> int:
    if t_cw not in R_PRIME or t_ccw not in L_PRIME:
        raise ValueError("turn choice outside R' x L'")
    c: Counter = Counter()
    for _, din, dout in _in_out_dirs(f):
        c[din + dout] += 1
    return c[t_ccw] - c[t_cw]


def weight(f: OrientedTFPL, t_cw: str = "dl", t_ccw: str = "ld") -> LaurentPoly:
    return LaurentPoly.q(weight_exponent(f, t_cw, t_ccw))


def rl_of(f: OrientedTFPL) -> int:
    return directed_pattern_of(f).rl()


# -- orientation and symmetry -------------------------------------------------


def canonical_orient(f: PlainTFPL) -> OrientedTFPL:
    """Orient closed paths clockwise and bottom-to-bottom paths left to right."""
    g = f.grid
    adj = _plain_adj(g, f.edges)
    oe = eo = 0

    def put(path):
        nonlocal oe, eo
        for a, b in zip(path, path[1:]):
            e = g.edge_index[a, b]
            if g.odd[a]:
                oe |= 1 << e
            else:
                eo |= 1 << e

    done = set()
    ends = [v for v in adj if len(adj[v]) == 1]
    for s in ends:
        if s in done:
            continue
        path = _walk(adj, s)
        done.update(path)
        (ra, i), (rb, j) = g.role[path[0]], g.role[path[-1]]
        rank = {"L": 0, "B": 1, "R": 2}
        if (rank[ra], i) > (rank[rb], j):
            path.reverse()
        put(path)
    for s in sorted(adj):
        if s in done:
            continue
        loop = [s]
        prev, cur = s, adj[s][0]
        while cur != s:
            loop.append(cur)
            prev, cur = cur, [x for x in adj[cur] if x != prev][0]
        done.update(loop)
        if not loop_is_clockwise(g, loop):
            loop.reverse()
        put(loop + [loop[0]])
    return OrientedTFPL(g.N, oe, eo)


def _reflect_mask(g: Grid, mask: int) -> int:
    out = 0
    for e in g.edge_bits(mask):
        out |= 1 << g.reflect_edge[e]
    return out


def vertical_reflect(f):
    """Mirror left/right; oriented configurations also get every edge reversed."""
    g = f.grid
    if isinstance(f, PlainTFPL):
        return PlainTFPL(f.N, _reflect_mask(g, f.edges))
    return OrientedTFPL(f.N, _reflect_mask(g, f.even_to_odd), _reflect_mask(g, f.odd_to_even))


# -- enumeration --------------------------------------------------------------


def _check_triple(u: Word, v: Word, w: Word) -> int:
    for x in (u, v, w):
        check_word(x)
    if not (len(u) == len(v) == len(w)):
        raise ValueError("boundary words must have equal length")
    if not u:
        raise ValueError("boundary words must be nonempty")
    return len(u)


def enumerate_oriented(u: Word, v: Word, w: Word) -> list[OrientedTFPL]:
    """All oriented TFPLs with boundary ``(u,v;w)``, via disjoint matching pairs."""
    from .matchings import disjoint_pairs
    N = _check_triple(u, v, w)
    return [OrientedTFPL(N, mo, me) for mo, me in disjoint_pairs(u, v, w)]


def count_oriented(u: Word, v: Word, w: Word) -> int:
    from .matchings import count_disjoint_pairs
    _check_triple(u, v, w)
    return count_disjoint_pairs(u, v, w)


def _plain_search(N: int, u: Word | None = None, v: Word | None = None) -> Iterator[int]:
    """Edge sets meeting the local degree rules of a TFPL (paths not checked)."""
    g = build_grid(N)
    allowed: list[tuple[int, ...]] = []
    for vert in range(g.n_vertices):
        role, i = g.role.get(vert, ("", 0))
        if role == "L":
            allowed.append((0, 1) if u is None else (int(u[i]),))
        elif role == "R":
            allowed.append((0, 1) if v is None else (1 - int(v[i]),))
        elif role == "B":
            allowed.append((1,))
        else:
            allowed.append((2,))
    cap = [max(a) for a in allowed]
    forward: list[list[tuple[int, int]]] = [[] for _ in range(g.n_vertices)]
    for vert in range(g.n_vertices):
        for nb, e in g.adj[vert]:
            if nb > vert:
                forward[vert].append((nb, e))
    deg = [0] * g.n_vertices
    nv = g.n_vertices

    def rec(vert: int, mask: int):
        if vert == nv:
            yield mask
            return
        fw = forward[vert]
        k = len(fw)
        for sub in range(1 << k):
            add = bin(sub).count("1")
            if deg[vert] + add not in allowed[vert]:
                continue
            ok = True
            for t in range(k):
                if sub >> t & 1 and deg[fw[t][0]] >= cap[fw[t][0]]:
                    ok = False
                    break
            if not ok:
                continue
            m = mask
            for t in range(k):
                if sub >> t & 1:
                    deg[fw[t][0]] += 1
                    m |= 1 << fw[t][1]
            yield from rec(vert + 1, m)
            for t in range(k):
                if sub >> t & 1:
                    deg[fw[t][0]] -= 1

    return rec(0, 0)


@lru_cache(maxsize=None)
def all_plain(N: int) -> dict[tuple[Word, Word, Word], tuple[PlainTFPL, ...]]:
    """Every TFPL of size ``N`` bucketed by boundary."""
    out: dict[tuple[Word, Word, Word], list[PlainTFPL]] = {}
    for mask in _plain_search(N):
        f = PlainTFPL(N, mask)
        try:
            u, v, w, _ = plain_boundary_of(f)
        except ValueError:
            continue
        out.setdefault((u, v, w), []).append(f)
    return {k: tuple(x) for k, x in out.items()}


@lru_cache(maxsize=None)
def _plain_uv(u: Word, v: Word) -> dict[Word, tuple[PlainTFPL, ...]]:
    N = len(u)
    out: dict[Word, list[PlainTFPL]] = {}
    for mask in _plain_search(N, u, v):
        f = PlainTFPL(N, mask)
        try:
            _, _, w, _ = plain_boundary_of(f)
        except ValueError:
            continue
        out.setdefault(w, []).append(f)
    return {k: tuple(x) for k, x in out.items()}


def enumerate_plain(u: Word, v: Word, w: Word) -> list[PlainTFPL]:
    """All TFPLs with boundary ``(u,v;w)`` by direct subgraph search."""
    _check_triple(u, v, w)
    return list(_plain_uv(u, v).get(w, ()))


def weighted_count(u: Word, v: Word, w: Word, restrict_rl0: bool = False,
                   t_cw: str = "dl", t_ccw: str = "ld") -> LaurentPoly:
    total = LaurentPoly()
    for f in enumerate_oriented(u, v, w):
        if restrict_rl0 and rl_of(f):
            continue
        total = total + weight(f, t_cw, t_ccw)
    return total


def excess(u: Word, v: Word, w: Word) -> int:
    return word_stats(w)[2] - word_stats(u)[2] - word_stats(v)[2]


def reflect_triple(u: Word, v: Word, w: Word) -> tuple[Word, Word, Word]:
    return star(v), star(u), star(w)
