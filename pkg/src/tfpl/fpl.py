"""Fully Packed Loops on the square grid and their link patterns.

Vertices of ``Q_n`` are ``(r, c)`` with row ``r`` counted from the top and
column ``c`` from the left.  Each boundary vertex carries one external stub
per free side (two at the corners), ``4n`` stubs in all.  Listing them
counterclockwise from the top of the left side and keeping every other one
gives the ``2n`` selected stubs, numbered ``1..2n`` in that order.  For
``n = 3`` (``*`` = selected stub, ``o`` = unselected)::

          o     6     o
          |     *     |
    1 *--(0,0)-(0,1)-(0,2)--* 5
    o --(1,0)-(1,1)-(1,2)--o
    2 *--(2,0)-(2,1)-(2,2)--* 4
          |     *     |
          o     3     o

Selected stubs always belong to the configuration; unselected ones never do.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import ssyt_count
from .tfpl_core import enumerate_plain
from .words import (ExtendedLinkPattern, Word, conjugate, is_dyck, pattern_to_word,
                    shape_of, star, trim, word_to_pattern, words_with_content)

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]
LinkPattern = tuple[tuple[int, int], ...]


def boundary_stubs(n: int) -> list[tuple[Vertex, str]]:
    """All ``4n`` stubs as ``(vertex, side)`` in counterclockwise order."""
    out = [((r, 0), "L") for r in range(n)]
    out += [((n - 1, c), "B") for c in range(n)]
    out += [((r, n - 1), "R") for r in reversed(range(n))]
    out += [((0, c), "T") for c in reversed(range(n))]
    return out


@lru_cache(maxsize=None)
def selected_stubs(n: int) -> tuple[tuple[Vertex, str], ...]:
    """Selected stubs; the stub at index ``k`` carries label ``k + 1``."""
    return tuple(boundary_stubs(n)[::2])


@dataclass(frozen=True)
class FPLConfig:
    n: int
    edges: frozenset  # internal edges ((r, c), (r', c')) with the smaller vertex first

    @property
    def external(self) -> tuple[tuple[Vertex, str], ...]:
        return selected_stubs(self.n)

    def degree(self, v: Vertex) -> int:
        return (sum(v in e for e in self.edges)
                + sum(s[0] == v for s in self.external))

    def to_json(self) -> dict:
        return {"n": self.n,
                "edges": [[list(a), list(b)] for a, b in sorted(self.edges)],
                "external": [[list(v), side, k + 1]
                             for k, (v, side) in enumerate(self.external)]}


def is_valid_fpl(F: FPLConfig) -> bool:
    n = F.n
    for a, b in F.edges:
        if not (a < b and abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1):
            return False
        if not all(0 <= x < n for x in a + b):
            return False
    return all(F.degree((r, c)) == 2 for r in range(n) for c in range(n))


def _forced_degrees(n: int) -> list[list[int]]:
    deg = [[0] * n for _ in range(n)]
    for (r, c), _ in selected_stubs(n):
        deg[r][c] += 1
    return deg


def _search(n: int, prefix: tuple[int, ...] = ()):
    """Yield edge masks as (right-edge bits, down-edge bits) per vertex.

    ``prefix`` fixes the choices of the first few vertices (row-major)."""
    forced = _forced_degrees(n)
    right = [[0] * n for _ in range(n)]
    down = [[0] * n for _ in range(n)]
    cells = [(r, c) for r in range(n) for c in range(n)]

    def rec(k: int):
        if k == len(cells):
            yield tuple(tuple(row) for row in right), tuple(tuple(row) for row in down)
            return
        r, c = cells[k]
        have = forced[r][c] + (c > 0 and right[r][c - 1]) + (r > 0 and down[r - 1][c])
        need = 2 - have
        opts = [(a, b) for a in ((0, 1) if c < n - 1 else (0,))
                for b in ((0, 1) if r < n - 1 else (0,)) if a + b == need]
        if k < len(prefix):
            opts = [o for o in opts if 2 * o[0] + o[1] == prefix[k]]
        for a, b in opts:
            right[r][c], down[r][c] = a, b
            yield from rec(k + 1)
        right[r][c] = down[r][c] = 0

    yield from rec(0)


def _to_config(n: int, right, down) -> FPLConfig:
    edges = set()
    for r in range(n):
        for c in range(n):
            if right[r][c]:
                edges.add(((r, c), (r, c + 1)))
            if down[r][c]:
                edges.add(((r, c), (r + 1, c)))
    return FPLConfig(n, frozenset(edges))


def _enumerate_prefix(args) -> list[FPLConfig]:
    n, prefix = args
    return [_to_config(n, rt, dn) for rt, dn in _search(n, prefix)]


def _first_row_prefixes(n: int) -> list[tuple[int, ...]]:
    # every choice code for the first row; infeasible ones simply yield nothing
    out = [()]
    for _ in range(n):
        out = [p + (x,) for p in out for x in range(4)]
    return out


def enumerate_fpls(n: int, threads: int | None = 1) -> list[FPLConfig]:
    """All FPL configurations of size ``n``, in a fixed order.

    With ``threads > 1`` the search is split by first-row choices; the
    result does not depend on the thread count."""
    if n < 1:
        raise ValueError("n must be positive")
    threads = threads or os.cpu_count() or 1
    if threads <= 1 or n < 4:
        return _enumerate_prefix((n, ()))
    jobs = [(n, p) for p in _first_row_prefixes(n)]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        parts = list(ex.map(_enumerate_prefix, jobs))
    return [F for part in parts for F in part]


def count_fpls(n: int) -> int:
    return sum(1 for _ in _search(n))


def count_asms(n: int) -> int:
    """Alternating sign matrices of size ``n`` by a row transfer on column sums.

    Independent of the loop enumeration; used as its oracle."""
    from itertools import product

    def rows(state):
        # rows whose nonzero entries alternate +1, -1, ..., +1 and keep
        # every column partial sum in {0, 1}
        for row in product((-1, 0, 1), repeat=n):
            nz = [x for x in row if x]
            if not nz or nz[0] != 1 or nz[-1] != 1:
                continue
            if any(a == b for a, b in zip(nz, nz[1:])):
                continue
            new = tuple(s + x for s, x in zip(state, row))
            if all(x in (0, 1) for x in new):
                yield new

    layer = Counter({(0,) * n: 1})
    for _ in range(n):
        nxt: Counter = Counter()
        for st, k in layer.items():
            for new in rows(st):
                nxt[new] += k
        layer = nxt
    return layer[(1,) * n]


# -- link patterns ------------------------------------------------------------


def link_pattern_of(F: FPLConfig) -> LinkPattern:
    """Pairs ``(i, j)``, ``i < j``, of selected stubs joined by a path of ``F``."""
    adj: dict = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for a, b in F.edges:
        link(a, b)
    for k, (v, _) in enumerate(F.external):
        link(("ext", k + 1), v)
    pairs = []
    seen = set()
    for k in range(1, 2 * F.n + 1):
        if k in seen:
            continue
        prev, cur = ("ext", k), adj[("ext", k)][0]
        while not (isinstance(cur[0], str)):
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        seen |= {k, cur[1]}
        pairs.append((k, cur[1]))
    return tuple(sorted(pairs))


def is_noncrossing(pi: LinkPattern) -> bool:
    return not any(i < k < j < l for i, j in pi for k, l in pi)


@lru_cache(maxsize=None)
def link_pattern_counts(n: int) -> dict[LinkPattern, int]:
    return dict(Counter(link_pattern_of(F) for F in enumerate_fpls(n)))


def a_pi(n: int, pi: LinkPattern) -> int:
    return link_pattern_counts(n).get(normalize(pi), 0)


def normalize(pi) -> LinkPattern:
    return tuple(sorted(tuple(sorted(p)) for p in pi))


def noncrossing_patterns(n: int) -> list[LinkPattern]:
    """All noncrossing perfect matchings of ``1..2n``, via Dyck words."""
    return [word_to_pattern(w).pairs for w in words_with_content(n, n) if is_dyck(w)]


def reflect(pi: LinkPattern) -> LinkPattern:
    m = 2 * len(pi)
    return normalize((m + 1 - i, m + 1 - j) for i, j in pi)


def nest(pi: LinkPattern, m: int) -> LinkPattern:
    """``pi`` surrounded by ``m`` nested arches."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = len(pi)
    outer = [(i, 2 * n + 2 * m + 1 - i) for i in range(1, m + 1)]
    return normalize(outer + [(i + m, j + m) for i, j in pi])


def pattern_word(pi: LinkPattern) -> Word:
    return pattern_to_word(ExtendedLinkPattern(2 * len(pi), pairs=normalize(pi)))


# -- the decomposition formula ------------------------------------------------


def ssyt_or_empty(shape, k: int) -> int:
    """Tableau count with entries in ``1..k``; an empty alphabet only fills
    the empty shape."""
    if k <= 0:
        return 1 if not any(shape) else 0
    return ssyt_count(shape, k)


def ssyt_polynomial(shape, k: int) -> int:
    """The hook-content product evaluated at any integer ``k``.

    Agrees with ``ssyt_or_empty`` for ``k >= 0``; for ``k < 0`` it may be
    nonzero (and negative) on nonempty shapes."""
    lam = trim(shape)
    conj = conjugate(lam)
    val = Fraction(1)
    for i, row in enumerate(lam):
        for j in range(row):
            val *= Fraction(k + j - i, (row - j - 1) + (conj[j] - i - 1) + 1)
    assert val.denominator == 1
    return int(val)


SSYT_MODES = {"polynomial": ssyt_polynomial, "combinatorial": ssyt_or_empty}


def dyck_words(n: int) -> list[Word]:
    return [w for w in words_with_content(n, n) if is_dyck(w)]


def tfpl_side(n: int, pi: LinkPattern, m: int, mode: str = "polynomial") -> int:
    """Sum over pairs of Dyck words of tableau counts times TFPL counts.

    ``mode`` picks how the right-hand tableau factor is read when its
    alphabet size ``m - 2n + 1`` is negative; see ``SSYT_MODES``."""
    ssyt = SSYT_MODES[mode]
    wp = pattern_word(pi)[1:-1]
    total = 0
    for s in dyck_words(n):
        a = ssyt(shape_of(s), n)
        if not a:
            continue
        for t in dyck_words(n):
            b = ssyt(shape_of(star(t)), m - 2 * n + 1)
            if not b:
                continue
            total += a * len(enumerate_plain(s[1:-1], t[1:-1], wp)) * b
    return total


def verify_fpl_identity(n: int, pi: LinkPattern, m: int,
                        mode: str = "polynomial") -> tuple[int, int]:
    """``(A_{pi cup m}, TFPL-side sum)``; the two should agree.

    The left side comes from loop enumeration on the square grid, the right
    side from triangle enumeration and tableau counts only."""
    if len(pi) != n:
        raise ValueError("pattern size differs from n")
    return a_pi(n + m, nest(pi, m)), tfpl_side(n, pi, m, mode)
