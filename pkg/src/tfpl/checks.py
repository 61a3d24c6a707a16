"""Verification suites shared by the command line and the test-suite.

Every suite walks all boundaries up to a size bound, computes each claimed
identity from two independent sides and records mismatches.  Work is split
per boundary so that it can run on a process pool; results are merged in
input order, so reports do not depend on the thread count.

A few identities are known to fail as literally stated.  They are still
computed, but reported under ``discrepancies`` rather than ``failures``
unless ``literal=True``.
"""
from __future__ import annotations

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import (Eisenstein, eval_at_rho, inverse_feasibility_matrix,
                      lr_coefficient_by_expansion, lr_words)
from .matchings import (SubGraph, census_identities, count_matchings_det,
                        enumerate_matchings, is_perfect, matching_to_paths, merge_matchings,
                        paths_to_matching, split_matchings)
from .tfpl_core import (L_PRIME, R_PRIME, canonical_orient, count_oriented,
                        enumerate_oriented, enumerate_plain, excess, rl_of,
                        turn_census, weight_exponent, weighted_count)
from .words import all_words, dominance_leq, inversions, shape_of, words_with_content

# a length 8 pair checked on top of the sweep over all short pairs
BIG_MATCHING_INSTANCE = ("00101001", "01100010")

EXC1_WEIGHT = {"BD": 0, "RD": 0, "DHD": 1, "DHU": -1}


@dataclass
class SuiteReport:
    suite: str
    max_size: int
    checked: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.suite, "max_size": self.max_size,
                "checked": dict(sorted(self.checked.items())),
                "failures": self.failures,
                "discrepancies": self.discrepancies,
                "ok": self.ok, "seconds": round(self.seconds, 3)}


def triples(N: int) -> Iterable[tuple[str, str, str]]:
    """All ``(u, v, w)`` of length ``N`` with equal numbers of 0s."""
    for n1 in range(N + 1):
        ws = list(words_with_content(N - n1, n1))
        for u in ws:
            for v in ws:
                for w in ws:
                    yield u, v, w


def triples_upto(max_size: int, exc: int | None = None):
    for N in range(1, max_size + 1):
        for t in triples(N):
            if exc is None or excess(*t) == exc:
                yield t


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("TFPL_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, threads)


def _map(fn: Callable, items: list, threads: int) -> list:
    if threads <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (8 * threads))))


# each per-item check returns (checked counter, failures, discrepancies)


def _necessary(t):
    u, v, w = t
    c = count_oriented(u, v, w)
    fails = []
    if c and not (dominance_leq(u, w) and dominance_leq(v, w)
                  and inversions(u) + inversions(v) <= inversions(w)):
        fails.append({"boundary": t, "oriented": c})
    return Counter(triples=1, nonzero=bool(c)), fails, []


def _excess_formula(t):
    from .tangles import excess_checks, local_census, tangle_from
    fails = []
    n = 0
    for f in enumerate_oriented(*t):
        n += 1
        tg = tangle_from(f)
        res = {k: x for k, x in excess_checks(tg).items() if x}
        tc, lc = turn_census(f), local_census(tg)
        for turn in ("ld", "ul", "dl", "lu"):
            if tc[turn] != lc.turn(turn):
                res["turn_" + turn] = tc[turn] - lc.turn(turn)
        if res:
            fails.append({"boundary": t, "config": f.to_json(), "residuals": res})
    return Counter(configs=n), fails, []


def _excess0(t):
    u, v, w = t
    from .puzzles import count_puzzles
    fs = enumerate_oriented(u, v, w)
    vals = {
        "oriented": len(fs),
        "plain": len(enumerate_plain(u, v, w)),
        "puzzles": count_puzzles(u, v, w, "KT"),
        "lr_tableaux": lr_words(u, v, w),
        "lr_expansion": lr_coefficient_by_expansion(shape_of(u), shape_of(v), shape_of(w)),
    }
    fails = []
    if len(set(vals.values())) != 1:
        fails.append({"boundary": t, "counts": vals})
    for f in fs:
        tc = turn_census(f)
        if tc.rl or tc.n_cw or tc.n_ccw:
            fails.append({"boundary": t, "config": f.to_json(),
                          "rl": tc.rl, "loops": tc.n_cw + tc.n_ccw})
    return Counter(triples=1, configs=len(fs)), fails, []


def _excess1(t):
    u, v, w = t
    from .puzzles import EXCESS1_KINDS, classify_by_moves, count_puzzles, predict_counts
    from .tangles import classify_excess1_type, local_census, tangle_from
    pred = predict_counts(u, v, w)
    fs = enumerate_oriented(u, v, w)
    kinds = {k: count_puzzles(u, v, w, k) for k in EXCESS1_KINDS}
    by_tangle = Counter(classify_excess1_type(local_census(tangle_from(f))) for f in fs)
    mv = classify_by_moves(u, v, w)
    observed = dict(kinds)
    observed.update({
        "BD_or_RD": kinds["BD"] + kinds["RD"],
        "BD_with_B": mv[("BD", "B")],
        "RD_with_R": mv[("RD", "R")],
        "oriented": len(fs),
        "plain_derived": len(enumerate_plain(u, v, w)),
    })
    fails, disc = [], []
    for k, x in observed.items():
        if pred[k] != x:
            fails.append({"boundary": t, "formula": k, "predicted": pred[k], "observed": x})
    for k in EXCESS1_KINDS:
        if by_tangle[k] != kinds[k]:
            fails.append({"boundary": t, "type": k, "tangles": by_tangle[k], "puzzles": kinds[k]})
    wc = weighted_count(u, v, w)
    if pred["weighted"] != wc:
        fails.append({"boundary": t, "formula": "weighted",
                      "predicted": str(pred["weighted"]), "observed": str(wc)})
    if pred["plain"] != observed["plain_derived"]:
        disc.append({"boundary": t, "formula": "plain",
                     "predicted": pred["plain"], "observed": observed["plain_derived"]})
    return Counter(triples=1, configs=len(fs)), fails, disc


def _inversion_group(uv):
    """All ``w`` for one ``(u, v)`` pair, sharing the weighted counts."""
    u, v = uv
    n1 = u.count("1")
    Minv = inverse_feasibility_matrix(len(u) - n1, n1)
    oriented = {w: eval_at_rho(weighted_count(u, v, w)) for w in Minv.order}
    fails = []
    n = 0
    for w in Minv.order:
        n += 1
        t = len(enumerate_plain(u, v, w))
        tbar = eval_at_rho(weighted_count(u, v, w, restrict_rl0=True))
        inv = Eisenstein()
        for wp in Minv.order:
            m = Minv[w, wp]
            if m:
                inv = inv + eval_at_rho(m) * oriented[wp]
        if inv != Eisenstein(t, 0):
            fails.append({"boundary": (u, v, w), "plain": t, "inverted": str(inv)})
        if tbar != Eisenstein(t, 0):
            fails.append({"boundary": (u, v, w), "plain": t, "rl0_at_rho": str(tbar)})
    return Counter(triples=n), fails, []


def _admissible_pairs(max_size: int):
    for N in range(1, max_size + 1):
        for a in all_words(N):
            for w in all_words(N):
                yield a, w


def _determinant(item):
    side, a, w = item
    key = "0" if side == "odd" else "1"
    if a.count(key) != w.count(key):
        return Counter(), [], []
    det = count_matchings_det(side, a, w)
    ex = len(enumerate_matchings(SubGraph(side, a, w)))
    fails = [] if det == ex else [{"side": side, "a": a, "w": w, "det": det, "exhaustive": ex}]
    return Counter({f"{side}_graphs": 1}), fails, []


def _identities(item):
    side, a, w = item
    key = "0" if side == "odd" else "1"
    if a.count(key) != w.count(key):
        return Counter(), [], []
    G = SubGraph(side, a, w)
    fails = []
    ms = enumerate_matchings(G)
    for m in ms:
        bad = {k: lr for k, lr in census_identities(G, m).items() if lr[0] != lr[1]}
        if bad:
            fails.append({"side": side, "a": a, "w": w, "matching": m, "identities": bad})
    return Counter(matchings=len(ms)), fails, []


def _bijections(t):
    from .puzzles import puzzle_from_tangle, tangle_from_puzzle
    from .tangles import tangle_from, tangle_to_oriented, validate_tangle
    from .matchings import even_graph, odd_graph
    u, v, w = t
    ex = excess(u, v, w)
    fails = []
    n = 0
    for f in enumerate_oriented(u, v, w):
        n += 1
        mo, me = split_matchings(f)
        if merge_matchings(f.N, mo, me) != f:
            fails.append({"boundary": t, "step": "matchings"})
        for g, m in ((odd_graph(u, w), mo), (even_graph(v, w), me)):
            if not is_perfect(g, m):
                fails.append({"boundary": t, "step": "perfect"})
            if paths_to_matching(g, matching_to_paths(g, m)) != m:
                fails.append({"boundary": t, "step": "paths"})
        tg = tangle_from(f)
        if validate_tangle(tg) or tangle_to_oriented(tg) != f:
            fails.append({"boundary": t, "step": "tangle"})
        if ex <= 1:
            P = puzzle_from_tangle(tg)
            if P.boundary() != t or tangle_from_puzzle(P) != tg:
                fails.append({"boundary": t, "step": "puzzle"})
    for p in enumerate_plain(u, v, w):
        o = canonical_orient(p)
        if o.underlying() != p or rl_of(o):
            fails.append({"boundary": t, "step": "plain"})
    return Counter(configs=n), fails, []


def _moves(t):
    from .puzzles import (applicable_moves, count_puzzles, enumerate_puzzles,
                          on_left_boundary, on_right_boundary, path_identities)
    u, v, w = t
    fails = []
    chain = Counter()
    n = 0
    for kind in ("BD", "RD"):
        for P in enumerate_puzzles(u, v, w, kind):
            n += 1
            if not on_right_boundary(P):
                fwd = applicable_moves(P, "right")
                if len(fwd) != 1:
                    fails.append({"boundary": t, "puzzle": P.to_json(),
                                  "right_moves": [m for m, _ in fwd]})
                    continue
                chain[(kind, fwd[0][0])] += 1
                back = applicable_moves(fwd[0][1], "left")
                if len(back) != 1 or back[0][1] != P:
                    fails.append({"boundary": t, "puzzle": P.to_json(), "step": "left inverse"})
            if not on_left_boundary(P) and len(applicable_moves(P, "left")) != 1:
                fails.append({"boundary": t, "puzzle": P.to_json(), "step": "left unique"})
            bad = {k: ab for k, ab in path_identities(P).items() if ab[0] != ab[1]}
            if bad:
                fails.append({"boundary": t, "puzzle": P.to_json(), "identities": bad})
    for lab, kind, src in (("BR", "DHD", "BD"), ("RB", "DHU", "RD")):
        c = count_puzzles(u, v, w, kind)
        if chain[(src, lab)] != c:
            fails.append({"boundary": t, "move": lab, "moves": chain[(src, lab)], kind: c})
    return Counter(puzzles=n), fails, []


def _weights(t):
    from .tangles import brweight_exponent, classify_excess1_type, local_census, tangle_from
    u, v, w = t
    ex = excess(u, v, w)
    fails, disc = [], []
    n = 0
    for f in enumerate_oriented(u, v, w):
        n += 1
        ref = weight_exponent(f)
        tg = tangle_from(f)
        for a, b in ((0, 0), (1, 0), (0, 1), (1, 1)):
            x = brweight_exponent(tg, a, b)
            if x != ref:
                (fails if a == b else disc).append(
                    {"boundary": t, "alpha": a, "beta": b, "exponent": str(x), "turns": ref})
        for tcw in R_PRIME:
            for tccw in L_PRIME:
                x = weight_exponent(f, tcw, tccw)
                if x != ref:
                    matched = (tcw, tccw) in (("dl", "ld"), ("lu", "ul"))
                    (fails if matched else disc).append(
                        {"boundary": t, "choice": [tcw, tccw], "exponent": x, "default": ref})
        if ex == 1:
            ty = classify_excess1_type(local_census(tg))
            if ref != EXC1_WEIGHT[ty]:
                fails.append({"boundary": t, "type": ty, "exponent": ref})
    return Counter(configs=n), fails, disc


def _fpl(item):
    from .fpl import verify_fpl_identity
    n, pi, m = item
    lhs, rhs = verify_fpl_identity(n, pi, m)
    fails = [] if lhs == rhs else [{"n": n, "m": m, "pattern": pi, "fpl": lhs, "tfpl": rhs}]
    return Counter(patterns=1), fails, []


FPL_CASES = ((2, 3), (2, 4), (3, 3))


def _fpl_items(max_size: int):
    from .fpl import noncrossing_patterns
    return [(n, pi, m) for n, m in FPL_CASES if n + m <= max_size
            for pi in noncrossing_patterns(n)]


def _matching_items(max_size: int, extra: bool):
    items = [(side, a, w) for a, w in _admissible_pairs(max_size) for side in ("odd", "even")]
    if extra:
        a, w = BIG_MATCHING_INSTANCE
        items += [("odd", a, w), ("even", a, w)]
    return items


SUITES: dict[str, tuple[Callable, Callable[[int], list]]] = {
    "necessary": (_necessary, lambda n: list(triples_upto(n))),
    "excess-formula": (_excess_formula, lambda n: list(triples_upto(n))),
    "excess0-lr": (_excess0, lambda n: list(triples_upto(n, exc=0))),
    "excess1": (_excess1, lambda n: list(triples_upto(n, exc=1))),
    "inversion-rho": (_inversion_group,
                      lambda n: sorted({(u, v) for u, v, _ in triples_upto(n)},
                                       key=lambda p: (len(p[0]), p))),
    "determinants": (_determinant, lambda n: _matching_items(n, extra=True)),
    "identities": (_identities, lambda n: _matching_items(n, extra=False)),
    "bijections": (_bijections, lambda n: list(triples_upto(n))),
    "moves": (_moves, lambda n: list(triples_upto(n, exc=1))),
    "weights": (_weights, lambda n: list(triples_upto(n))),
    "fpl-identity": (_fpl, _fpl_items),
}

DEFAULT_SIZES = {"necessary": 5, "excess-formula": 5, "excess0-lr": 6, "excess1": 6,
                 "inversion-rho": 5, "determinants": 6, "identities": 5, "bijections": 5,
                 "moves": 5, "weights": 5, "fpl-identity": 6}


def run_suite(name: str, max_size: int | None = None, threads: int | None = 1,
              literal: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if max_size is None:
        max_size = DEFAULT_SIZES[name]
    fn, items = SUITES[name]
    t0 = time.perf_counter()
    rep = SuiteReport(name, max_size)
    for checked, fails, disc in _map(fn, items(max_size), _resolve_threads(threads)):
        rep.checked.update(checked)
        rep.failures += fails
        rep.discrepancies += disc
    if literal:
        rep.failures += rep.discrepancies
    rep.seconds = time.perf_counter() - t0
    return rep
