"""Binary words, Ferrers shapes and extended link patterns.

Words are plain strings over ``'0'`` and ``'1'``.  Positions in link patterns
are 1-based, as in the usual pictures of arches drawn over ``1..N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

Word = str
Shape = tuple


def check_word(u: str) -> str:
    if not isinstance(u, str) or any(c not in "01" for c in u):
        raise ValueError(f"not a 01-word: {u!r}")
    return u


def word_stats(u: Word) -> tuple[int, int, int]:
    """Return ``(zeros, ones, inversions)`` of ``u``."""
    check_word(u)
    ones = inv = 0
    for c in u:
        if c == "1":
            ones += 1
        else:
            inv += ones
    return len(u) - ones, ones, inv


def inversions(u: Word) -> int:
    return word_stats(u)[2]


def dominance_leq(u: Word, v: Word) -> bool:
    """True iff every prefix of ``u`` has at most as many 1s as that of ``v``."""
    check_word(u)
    check_word(v)
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    a = b = 0
    for x, y in zip(u, v):
        a += x == "1"
        b += y == "1"
        if a > b:
            return False
    return True


def shape_of(u: Word) -> Shape:
    """Ferrers shape of ``u``.

    Each 0 of ``u``, read from right to left, contributes a row whose length
    is the number of 1s to its left.  Rows come out weakly decreasing and the
    cell count is ``d(u)``.
    """
    check_word(u)
    parts = []
    ones_before = u.count("1")
    for c in reversed(u):
        if c == "0":
            parts.append(ones_before)
        else:
            ones_before -= 1
    return trim(parts)


def trim(parts: Sequence[int]) -> Shape:
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def conjugate(shape: Sequence[int]) -> Shape:
    shape = trim(shape)
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


def shape_contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``mu`` is a subdiagram of ``lam``."""
    lam, mu = trim(lam), trim(mu)
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


def star(u: Word) -> Word:
    """Reverse-complement of ``u``."""
    check_word(u)
    return "".join("1" if c == "0" else "0" for c in reversed(u))


def covers(u: Word) -> list[tuple[Word, int, int, int, int]]:
    """All ``u+`` obtained by turning one factor ``01`` of ``u`` into ``10``.

    Entries are ``(u+, L0, L1, R0, R1)`` where ``Li``/``Ri`` count the letter
    ``i`` to the left/right of the swapped factor.
    """
    check_word(u)
    out = []
    for i in range(len(u) - 1):
        if u[i] == "0" and u[i + 1] == "1":
            left, right = u[:i], u[i + 2:]
            out.append((left + "10" + right, left.count("0"), left.count("1"),
                        right.count("0"), right.count("1")))
    return out


def covered_by(w: Word) -> list[tuple[Word, int, int, int, int]]:
    """All ``w-`` with ``w-`` covered by ``w``; same statistics as :func:`covers`."""
    check_word(w)
    out = []
    for i in range(len(w) - 1):
        if w[i] == "1" and w[i + 1] == "0":
            left, right = w[:i], w[i + 2:]
            out.append((left + "01" + right, left.count("0"), left.count("1"),
                        right.count("0"), right.count("1")))
    return out


def words_with_content(n0: int, n1: int) -> Iterator[Word]:
    """All words with ``n0`` zeros and ``n1`` ones, in lexicographic order."""
    n = n0 + n1
    for ones in combinations(range(n), n1):
        s = ["0"] * n
        for i in ones:
            s[i] = "1"
        yield "".join(s)


def all_words(n: int) -> Iterator[Word]:
    for k in range(n + 1):
        yield from words_with_content(n - k, k)


def is_dyck(u: Word) -> bool:
    """Dyck words here open with 0: every prefix has at least as many 0s as 1s."""
    h = 0
    for c in u:
        h += 1 if c == "0" else -1
        if h < 0:
            return False
    return h == 0


# -- link patterns ---------------------------------------------------------


@dataclass(frozen=True)
class ExtendedLinkPattern:
    """Left points, right points and a noncrossing set of pairs on ``1..n``."""

    n: int
    left: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pts = list(self.left) + list(self.right)
        for i, j in self.pairs:
            if not i < j:
                raise ValueError(f"pair {(i, j)} not increasing")
            pts += [i, j]
        if sorted(pts) != list(range(1, self.n + 1)):
            raise ValueError("points do not partition 1..n")
        if self.left and self.right and max(self.left) > min(self.right):
            raise ValueError("a left point exceeds a right point")
        fixed = set(self.left) | set(self.right)
        for a, (i, j) in enumerate(self.pairs):
            if any(i < p < j for p in fixed):
                raise ValueError(f"pair {(i, j)} straddles a left/right point")
            for k, l in self.pairs[a + 1:]:
                if i < k < j < l or k < i < l < j:
                    raise ValueError(f"pairs {(i, j)} and {(k, l)} cross")

    def to_json(self) -> dict:
        return {"left": list(self.left), "right": list(self.right),
                "pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class DirectedExtendedLinkPattern:
    """A pattern with a source chosen in every pair.

    ``sources[k]`` is the source of ``pattern.pairs[k]``.
    """

    pattern: ExtendedLinkPattern
    sources: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if len(self.sources) != len(self.pattern.pairs):
            raise ValueError("one source per pair required")
        for s, p in zip(self.sources, self.pattern.pairs):
            if s not in p:
                raise ValueError(f"source {s} not in pair {p}")

    def rl(self) -> int:
        """Number of pairs whose larger element is the source."""
        return sum(s == p[1] for s, p in zip(self.sources, self.pattern.pairs))

    def source_sink_word(self) -> Word:
        """0 at sources (and right points), 1 at sinks (and left points)."""
        w = ["0"] * self.pattern.n
        for l in self.pattern.left:
            w[l - 1] = "1"
        for s, (i, j) in zip(self.sources, self.pattern.pairs):
            w[(j if s == i else i) - 1] = "1"
        return "".join(w)


def pattern_to_word(pi: ExtendedLinkPattern) -> Word:
    w = ["0"] * pi.n
    for l in pi.left:
        w[l - 1] = "1"
    for _, j in pi.pairs:
        w[j - 1] = "1"
    return "".join(w)


def word_to_pattern(w: Word) -> ExtendedLinkPattern:
    check_word(w)
    stack: list[int] = []
    left, pairs = [], []
    for pos, c in enumerate(w, 1):
        if c == "0":
            stack.append(pos)
        elif stack:
            pairs.append((stack.pop(), pos))
        else:
            left.append(pos)
    return ExtendedLinkPattern(len(w), tuple(left), tuple(stack), tuple(sorted(pairs)))


def pattern_from_json(d: dict, n: int | None = None) -> ExtendedLinkPattern:
    left = tuple(d.get("left", ()))
    right = tuple(d.get("right", ()))
    pairs = tuple(sorted(tuple(p) for p in d.get("pairs", ())))
    if n is None:
        n = len(left) + len(right) + 2 * len(pairs)
    return ExtendedLinkPattern(n, left, right, pairs)


def directed_pattern(w: Word, w_prime: Word) -> DirectedExtendedLinkPattern | None:
    """The directed pattern on ``w'``'s pattern whose source-sink word is ``w``.

    Returns ``None`` when ``w'`` is not feasible for ``w``.
    """
    if len(w) != len(w_prime):
        raise ValueError("length mismatch")
    pi = word_to_pattern(w_prime)
    for p in pi.left + pi.right:
        if w[p - 1] != w_prime[p - 1]:
            return None
    sources = []
    for i, j in pi.pairs:
        a, b = w[i - 1], w[j - 1]
        if a == b:
            return None
        sources.append(i if a == "0" else j)
    return DirectedExtendedLinkPattern(pi, tuple(sources))


def feasibility(w: Word) -> list[tuple[Word, int]]:
    """All ``(w', g)`` with ``w'`` feasible for ``w``.

    ``w'`` is feasible when ``w`` arises from ``w'`` by reversing some arches
    of ``w'``'s link pattern; ``g`` counts the reversed arches.  Candidates
    are restricted to words of the same content that lie below ``w``.
    """
    check_word(w)
    out = []
    for wp in words_with_content(w.count("0"), w.count("1")):
        if not dominance_leq(wp, w):
            continue
        d = directed_pattern(w, wp)
        if d is not None:
            out.append((wp, d.rl()))
    return out
