from collections import Counter

import pytest

from tfpl.checks import EXC1_WEIGHT, triples
from tfpl.tangles import (brweight_exponent, classify_excess1_type, excess_checks,
                          intersecting_pairs, local_census, pair_extremities,
                          pair_to_inversion, tangle_from, tangle_to_oriented,
                          validate_tangle)
from tfpl.tfpl_core import enumerate_oriented, excess, turn_census, weight_exponent


def _all(N):
    for t in triples(N):
        for f in enumerate_oriented(*t):
            yield t, f


def test_smallest_tangle():
    (f,) = enumerate_oriented("01", "01", "01")
    t = tangle_from(f)
    assert t.blue.paths == (((0, 0),),)
    assert t.red.paths == (((3, 0),),)
    assert not any(local_census(t).as_dict().values())


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_round_trip_and_validity(N):
    for _, f in _all(N):
        t = tangle_from(f)
        assert validate_tangle(t) == []
        assert tangle_to_oriented(t) == f


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_excess_identities(N):
    for (u, v, w), f in _all(N):
        t = tangle_from(f)
        assert excess_checks(t) == dict.fromkeys(("excess", "prelim", "twow1", "twow2"), 0)
        c = local_census(t)
        tc = turn_census(f)
        for turn in ("ld", "ul", "dl", "lu"):
            assert c.turn(turn) == tc[turn]


@pytest.mark.parametrize("N", [2, 3, 4])
def test_excess_one_types_and_weights(N):
    seen = Counter()
    for t, f in _all(N):
        if excess(*t) != 1:
            continue
        ty = classify_excess1_type(local_census(tangle_from(f)))
        seen[ty] += 1
        assert weight_exponent(f) == EXC1_WEIGHT[ty]
    assert set(seen) <= set(EXC1_WEIGHT)
    # DHU needs an interior up-triangle, which first exists at length 4
    assert ("DHU" in seen) == (N >= 4)
    if N >= 3:
        assert {"BD", "RD", "DHD"} <= set(seen)


def test_classify_rejects_excess_zero():
    (f,) = enumerate_oriented("01", "01", "01")
    with pytest.raises(ValueError):
        classify_excess1_type(local_census(tangle_from(f)))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_brweight_matched_coefficients(N):
    for _, f in _all(N):
        t = tangle_from(f)
        ref = weight_exponent(f)
        assert brweight_exponent(t, 0, 0) == brweight_exponent(t, 1, 1) == ref
        assert brweight_exponent(t, "1/2", "1/2") == ref


def test_brweight_unmatched_coefficients_fail():
    (f,) = enumerate_oriented("10", "01", "10")
    t = tangle_from(f)
    assert brweight_exponent(t, 0, 0) == 0
    assert brweight_exponent(t, 1, 0) == -1
    assert brweight_exponent(t, 0, 1) == 1


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_intersecting_pairs_are_inversions(N):
    for (u, v, w), f in _all(N):
        t = tangle_from(f)
        for pair in intersecting_pairs(t):
            i, j = pair_to_inversion(t, pair)
            assert i < j and w[i - 1] == "1" and w[j - 1] == "0"
            ext = pair_extremities(t, pair)
            assert ext["left_blue_above"] - ext["right_blue_above"] == 1
            assert ext["right_red_above"] - ext["left_red_above"] == 1
