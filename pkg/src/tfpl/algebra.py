"""Exact coefficient rings and the small amount of linear algebra and
symmetric-function arithmetic the enumerations need."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .words import (Word, conjugate, feasibility, inversions, shape_of, trim,
                    words_with_content)


class LaurentPoly:
    """Laurent polynomial in ``q`` with integer coefficients.

    Stored as a sparse ``{exponent: coefficient}`` map without zero entries.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self._c = {int(e): int(c) for e, c in coeffs.items() if c}

    @classmethod
    def q(cls, e: int = 1) -> "LaurentPoly":
        return cls({e: 1})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls(x)
        return NotImplemented

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be inverted")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial with non-unit coefficient")
            return LaurentPoly({e * k: v ** (-k)})
        out = LaurentPoly(1)
        for _ in range(k):
            out = out * self
        return out

    def at(self, x) -> Fraction:
        """Evaluate at a nonzero rational ``x``."""
        x = Fraction(x)
        return sum((Fraction(v) * x ** e for e, v in self._c.items()), Fraction(0))

    def at_one(self) -> int:
        return sum(self._c.values())

    def bar(self) -> "LaurentPoly":
        """Substitute ``q -> 1/q``."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{self._c[e]}*q^{e}" for e in sorted(self._c))

    @classmethod
    def parse(cls, s: str) -> "LaurentPoly":
        """Inverse of ``str``: terms ``c*q^e`` joined by ``+``."""
        s = s.strip()
        if s == "0":
            return cls()
        c: dict[int, int] = {}
        for term in s.split("+"):
            m = re.fullmatch(r"\s*(-?\d+)\*q\^(-?\d+)\s*", term)
            if not m:
                raise ValueError(f"bad Laurent term {term!r}")
            e = int(m.group(2))
            c[e] = c.get(e, 0) + int(m.group(1))
        return cls(c)


Q = LaurentPoly.q()


@dataclass(frozen=True)
class Eisenstein:
    """``a + b*rho`` with ``rho**2 = rho - 1``."""

    a: int = 0
    b: int = 0

    @staticmethod
    def coerce(x):
        if isinstance(x, Eisenstein):
            return x
        if isinstance(x, int):
            return Eisenstein(x, 0)
        return NotImplemented

    def __add__(self, o):
        o = Eisenstein.coerce(o)
        if o is NotImplemented:
            return o
        return Eisenstein(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, o):
        o = Eisenstein.coerce(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, o):
        o = Eisenstein.coerce(o)
        if o is NotImplemented:
            return o
        # (a + b r)(c + d r) = ac + (ad + bc) r + bd (r - 1)
        a, b, c, d = self.a, self.b, o.a, o.b
        return Eisenstein(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Eisenstein(1, 0), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def norm(self) -> int:
        # N(a + b r) = a^2 + ab + b^2 for r a primitive 6th root of unity
        return self.a * self.a + self.a * self.b + self.b * self.b

    def inverse(self) -> "Eisenstein":
        n = self.norm()
        if n != 1:
            raise ValueError(f"{self} is not a unit")
        # conjugate of r is 1 - r
        return Eisenstein(self.a + self.b, -self.b)

    def __str__(self):
        return f"{self.a} + {self.b}*rho"


RHO = Eisenstein(0, 1)
RHO_INV = Eisenstein(1, -1)


def eval_at_rho(p: LaurentPoly) -> Eisenstein:
    """Substitute ``q = rho`` and ``1/q = 1 - rho``."""
    out = Eisenstein()
    for e, c in p.coeffs.items():
        out = out + c * (RHO ** e if e >= 0 else RHO_INV ** (-e))
    return out


# -- feasibility matrix ------------------------------------------------------


@dataclass
class FeasibilityMatrix:
    order: list[Word]
    entries: dict[tuple[Word, Word], LaurentPoly]

    def __getitem__(self, key: tuple[Word, Word]) -> LaurentPoly:
        return self.entries.get(key, LaurentPoly())

    def rows(self) -> list[list[LaurentPoly]]:
        return [[self[w, x] for x in self.order] for w in self.order]

    def to_json(self) -> dict:
        return {"order": list(self.order),
                "entries": {f"{w}|{x}": str(p) for (w, x), p in self.entries.items() if p}}

    def __matmul__(self, other: "FeasibilityMatrix") -> "FeasibilityMatrix":
        if self.order != other.order:
            raise ValueError("orders differ")
        ent = {}
        for w in self.order:
            for x in self.order:
                s = LaurentPoly()
                for y in self.order:
                    a = self.entries.get((w, y))
                    if a:
                        b = other.entries.get((y, x))
                        if b:
                            s = s + a * b
                if s:
                    ent[w, x] = s
        return FeasibilityMatrix(list(self.order), ent)


def word_order(n0: int, n1: int) -> list[Word]:
    """Words of given content sorted by (inversions, lexicographic)."""
    return sorted(words_with_content(n0, n1), key=lambda w: (inversions(w), w))


def feasibility_matrix(n0: int, n1: int) -> FeasibilityMatrix:
    if n0 < 0 or n1 < 0:
        raise ValueError("negative content")
    ent = {}
    for w in word_order(n0, n1):
        for wp, g in feasibility(w):
            ent[w, wp] = LaurentPoly.q(g)
    return FeasibilityMatrix(word_order(n0, n1), ent)


def identity_matrix(order: Sequence[Word]) -> FeasibilityMatrix:
    return FeasibilityMatrix(list(order), {(w, w): LaurentPoly(1) for w in order})


def invert_unitriangular(M: FeasibilityMatrix) -> FeasibilityMatrix:
    """Inverse of a lower unitriangular matrix by forward substitution."""
    order = M.order
    n = len(order)
    for i, w in enumerate(order):
        if M[w, w] != 1:
            raise ValueError(f"diagonal entry at {w} is not 1")
        for x in order[i + 1:]:
            if M[w, x]:
                raise ValueError(f"entry ({w},{x}) above the diagonal")
    inv: dict[tuple[Word, Word], LaurentPoly] = {}
    for j in range(n):
        col = {j: LaurentPoly(1)}
        for i in range(j + 1, n):
            s = LaurentPoly()
            for k in range(j, i):
                a = M.entries.get((order[i], order[k]))
                if a and k in col:
                    s = s + a * col[k]
            if s:
                col[i] = -s
        for i, p in col.items():
            inv[order[i], order[j]] = p
    return FeasibilityMatrix(list(order), inv)


_INV_CACHE: dict[tuple[int, int], FeasibilityMatrix] = {}


def inverse_feasibility_matrix(n0: int, n1: int) -> FeasibilityMatrix:
    key = (n0, n1)
    if key not in _INV_CACHE:
        _INV_CACHE[key] = invert_unitriangular(feasibility_matrix(n0, n1))
    return _INV_CACHE[key]


# -- integer linear algebra -------------------------------------------------


def integer_determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    M = [list(map(int, r)) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -- tableaux ---------------------------------------------------------------


def ssyt_count(shape: Sequence[int], m: int) -> int:
    """Semistandard tableaux of ``shape`` with entries in ``1..m`` (hook-content)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    lam = trim(shape)
    conj = conjugate(lam)
    val = Fraction(1)
    for i, row in enumerate(lam):
        for j in range(row):
            hook = (row - j - 1) + (conj[j] - i - 1) + 1
            val *= Fraction(m + j - i, hook)
    if val.denominator != 1:
        raise ArithmeticError("hook-content product is not an integer")
    return int(val)


def lr_coefficient(mu: Sequence[int], nu: Sequence[int], lam: Sequence[int]) -> int:
    """Littlewood-Richardson coefficient by counting LR tableaux of shape
    ``lam/mu`` and content ``nu``."""
    mu, nu, lam = trim(mu), trim(nu), trim(lam)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    if len(mu) > len(lam) or any(a > b for a, b in zip(mu, lam)):
        return 0
    mu_ = list(mu) + [0] * (len(lam) - len(mu))
    cells = []  # reading order: rows top to bottom, each right to left
    for i, row in enumerate(lam):
        for j in range(row - 1, mu_[i] - 1, -1):
            cells.append((i, j))
    k = len(nu)
    fill: dict[tuple[int, int], int] = {}
    used = [0] * (k + 1)

    def rec(t: int) -> int:
        if t == len(cells):
            return 1
        i, j = cells[t]
        lo = 1
        above = fill.get((i - 1, j))
        if above is not None:
            lo = above + 1
        hi = k
        right = fill.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        total = 0
        for x in range(lo, hi + 1):
            if used[x] >= nu[x - 1]:
                continue
            if x > 1 and used[x] + 1 > used[x - 1]:
                continue
            used[x] += 1
            fill[i, j] = x
            total += rec(t + 1)
            del fill[i, j]
            used[x] -= 1
        return total

    return rec(0)


def _ssyt(shape: Shape, n: int) -> Iterable[dict]:
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    fill: dict = {}

    def rec(t):
        if t == len(cells):
            yield dict(fill)
            return
        i, j = cells[t]
        lo = max(fill.get((i, j - 1), 1), fill.get((i - 1, j), 0) + 1)
        for x in range(lo, n + 1):
            fill[i, j] = x
            yield from rec(t + 1)
            del fill[i, j]

    return rec(0)


def schur_monomials(shape: Sequence[int], n: int) -> Counter:
    """Monomial expansion of the Schur polynomial in ``n`` variables."""
    out: Counter = Counter()
    for t in _ssyt(trim(shape), n):
        e = [0] * n
        for x in t.values():
            e[x - 1] += 1
        out[tuple(e)] += 1
    return out


def lr_coefficient_by_expansion(mu: Sequence[int], nu: Sequence[int],
                                lam: Sequence[int]) -> int:
    """Independent LR oracle: expand ``s_mu * s_nu`` into monomials and peel
    off Schur polynomials by leading exponent."""
    mu, nu, lam = trim(mu), trim(nu), trim(lam)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    n = max(len(lam), len(mu), len(nu), 1)
    a, b = schur_monomials(mu, n), schur_monomials(nu, n)
    prod: Counter = Counter()
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            prod[tuple(x + y for x, y in zip(e1, e2))] += c1 * c2
    coeffs: dict[Shape, int] = {}
    while True:
        prod = Counter({e: c for e, c in prod.items() if c})
        if not prod:
            break
        lead = max(prod)
        c = prod[lead]
        sh = trim(lead)
        coeffs[sh] = c
        for e, d in schur_monomials(sh, n).items():
            prod[e] -= c * d
    return coeffs.get(lam, 0)


def partitions(n: int, max_part: int | None = None) -> Iterable[Shape]:
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, max_part), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def lr_words(u: Word, v: Word, w: Word) -> int:
    """``c_{u,v}^w``: the LR coefficient of the shapes of three words."""
    return lr_coefficient(shape_of(u), shape_of(v), shape_of(w))
