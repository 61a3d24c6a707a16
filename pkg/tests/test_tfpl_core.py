from collections import Counter

import pytest

from tfpl.algebra import LaurentPoly, eval_at_rho, Eisenstein
from tfpl.checks import triples
from tfpl.tfpl_core import (L_PRIME, R_PRIME, all_plain, boundary_of, build_grid,
                            canonical_orient, count_oriented, enumerate_oriented,
                            enumerate_plain, excess, is_valid_plain, plain_boundary_of,
                            reflect_triple, rl_of, turn_census, validate_oriented,
                            vertical_reflect, weight, weight_exponent, weighted_count)
from tfpl.words import feasibility, pattern_to_word, star


def test_grid_sizes():
    assert build_grid(6).n_vertices == 48
    g = build_grid(1)
    assert g.n_vertices == 3
    assert g.L == [0] and g.R == [2] and g.B == [1]
    g8 = build_grid(8)
    assert len(g8.B) == len(g8.L) == len(g8.R) == 8


def test_size_one():
    fs = [f for t in triples(1) for f in enumerate_oriented(*t)]
    assert sorted(boundary_of(f) for f in fs) == [("0", "0", "0"), ("1", "1", "1")]


def test_small_examples():
    assert count_oriented("01", "01", "01") == 1
    assert boundary_of(enumerate_oriented("01", "01", "01")[0]) == ("01", "01", "01")
    assert len(enumerate_plain("01", "01", "01")) == 1
    assert count_oriented("01", "01", "10") == 3
    assert len(enumerate_plain("01", "01", "10")) == 2
    assert enumerate_oriented("01", "10", "01") == []


# totals over all boundaries of one size (exhaustive search, cross-checked
# against the orientation count below)
@pytest.mark.parametrize("N,oriented,plain", [(1, 2, 2), (2, 8, 7), (3, 48, 36), (4, 466, 281)])
def test_totals(N, oriented, plain):
    assert sum(count_oriented(*t) for t in triples(N)) == oriented
    assert sum(len(v) for v in all_plain(N).values()) == plain


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_oriented_totals_from_plain(N):
    # every oriented TFPL forgets to a plain one with the same u, v; each
    # closed path and each bottom-to-bottom path can be oriented both ways
    by_uv = Counter()
    for (u, v, w), fs in all_plain(N).items():
        for p in fs:
            loops = turn_census(canonical_orient(p))
            arches = len(plain_boundary_of(p)[3].pairs)
            by_uv[u, v] += 2 ** (loops.n_cw + loops.n_ccw + arches)
    direct = Counter()
    for u, v, w in triples(N):
        direct[u, v] += count_oriented(u, v, w)
    assert +direct == +by_uv


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_enumeration_contracts(N):
    for t in triples(N):
        fs = enumerate_oriented(*t)
        assert len(set(fs)) == len(fs)
        for f in fs:
            validate_oriented(f)
            assert boundary_of(f) == t
        ps = enumerate_plain(*t)
        assert len(ps) <= len(fs)
        for p in ps:
            assert is_valid_plain(p)
            u, v, w, pi = plain_boundary_of(p)
            assert (u, v, w) == t and pattern_to_word(pi) == w
            o = canonical_orient(p)
            assert o.underlying() == p and boundary_of(o) == t and rl_of(o) == 0
        if excess(*t) == 0:
            assert len(ps) == len(fs)


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_vertical_symmetry(N):
    for u, v, w in triples(N):
        r = reflect_triple(u, v, w)
        assert r == (star(v), star(u), star(w))
        fs = enumerate_oriented(u, v, w)
        assert sorted(map(repr, (vertical_reflect(f) for f in fs))) == \
            sorted(map(repr, enumerate_oriented(*r)))
        for f in fs:
            assert vertical_reflect(vertical_reflect(f)) == f
        assert len(enumerate_plain(u, v, w)) == len(enumerate_plain(*r))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_turn_identity_for_matched_choices(N):
    for t in triples(N):
        for f in enumerate_oriented(*t):
            tc = turn_census(f)
            for tcw, tccw in (("dl", "ld"), ("lu", "ul")):
                assert tc[tccw] - tc[tcw] == tc.rl + tc.n_ccw - tc.n_cw


def test_mixed_turn_choice_counterexample():
    # the single oriented TFPL with boundary (10, 01; 10) has no loop and
    # RL = 0, yet the mixed choices give exponents +1 and -1
    (f,) = enumerate_oriented("10", "01", "10")
    tc = turn_census(f)
    assert (tc.rl, tc.n_cw, tc.n_ccw) == (0, 0, 0)
    assert weight_exponent(f, "dl", "ld") == weight_exponent(f, "lu", "ul") == 0
    assert weight_exponent(f, "dl", "ul") == 1
    assert weight_exponent(f, "lu", "ld") == -1


def test_weight_choice_validation():
    (f,) = enumerate_oriented("01", "01", "01")
    with pytest.raises(ValueError):
        weight_exponent(f, "ld", "dl")
    assert weight(f) == LaurentPoly(1)
    assert set(R_PRIME) == {"dl", "lu"} and set(L_PRIME) == {"ld", "ul"}


def test_weighted_example():
    q = LaurentPoly.q
    assert weighted_count("0101", "0101", "1010") == q(-1) + 6 + 3 * q(1)
    rl0 = weighted_count("0101", "0101", "1010", restrict_rl0=True)
    assert rl0 == q(-1) + 6 + q(1)
    assert eval_at_rho(rl0) == Eisenstein(7, 0)
    assert len(enumerate_plain("0101", "0101", "1010")) == 7


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_reorientation_relation(N):
    # oriented count = sum over feasible w' of q^g times the RL = 0 count
    for u, v, w in triples(N):
        rhs = LaurentPoly()
        for wp, g in feasibility(w):
            rhs = rhs + LaurentPoly.q(g) * weighted_count(u, v, wp, restrict_rl0=True)
        assert weighted_count(u, v, w) == rhs


def test_excess_zero_weight_is_one():
    for N in range(1, 5):
        for t in triples(N):
            if excess(*t) == 0:
                assert weighted_count(*t) == LaurentPoly(count_oriented(*t))
