import pytest

from tfpl.checks import BIG_MATCHING_INSTANCE, triples
from tfpl.matchings import (SubGraph, census_identities, count_disjoint_pairs,
                            count_matchings_det, disjoint_pairs, enumerate_matchings,
                            even_graph, is_perfect, matching_count_upper_bound,
                            matching_to_paths, merge_matchings, odd_graph,
                            paths_nonintersecting, paths_to_matching,
                            schroeder_prefix_count, split_matchings)
from tfpl.tfpl_core import count_oriented, enumerate_oriented
from tfpl.words import all_words


def _pairs(N, side):
    key = "0" if side == "odd" else "1"
    for a in all_words(N):
        for w in all_words(N):
            if a.count(key) == w.count(key):
                yield a, w


def _brute_schroeder(n, m):
    # walk the lattice directly
    target = (2 * n + m, m)
    count = 0

    def go(x, y):
        nonlocal count
        if (x, y) == target:
            count += 1
            return
        if x >= target[0]:
            return
        for dx, dy in ((1, 1), (1, -1), (2, 0)):
            if y + dy >= 0:
                go(x + dx, y + dy)

    go(0, 0)
    return count


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("m", range(4))
def test_schroeder_formula(n, m):
    assert schroeder_prefix_count(n, m) == _brute_schroeder(n, m)


def test_large_schroeder_numbers():
    assert [schroeder_prefix_count(n, 0) for n in range(6)] == [1, 2, 6, 22, 90, 394]


@pytest.mark.parametrize("side", ["odd", "even"])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_determinant_matches_search(side, N):
    for a, w in _pairs(N, side):
        assert count_matchings_det(side, a, w) == len(enumerate_matchings(SubGraph(side, a, w)))


def test_big_instance():
    a, w = BIG_MATCHING_INSTANCE
    assert count_matchings_det("odd", a, w) == len(enumerate_matchings(odd_graph(a, w))) == 840
    assert count_matchings_det("even", a, w) == len(enumerate_matchings(even_graph(a, w))) == 624


def test_shifted_even_entry_disagrees():
    assert count_matchings_det("even", "01", "10") == 2
    assert len(enumerate_matchings(even_graph("01", "10"))) == 2
    assert count_matchings_det("even", "01", "10", shifted=True) == 4


def test_bad_pairs_rejected():
    with pytest.raises(ValueError):
        odd_graph("01", "011")
    with pytest.raises(ValueError):
        count_matchings_det("odd", "01", "11")


@pytest.mark.parametrize("side", ["odd", "even"])
@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_census_identities_and_paths(side, N):
    for a, w in _pairs(N, side):
        G = SubGraph(side, a, w)
        for m in enumerate_matchings(G):
            assert is_perfect(G, m)
            for lhs, rhs in census_identities(G, m).values():
                assert lhs == rhs
            fam = matching_to_paths(G, m)
            assert paths_nonintersecting(fam)
            assert paths_to_matching(G, fam) == m


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_oriented_are_disjoint_pairs(N):
    for u, v, w in triples(N):
        c = count_oriented(u, v, w)
        assert c == count_disjoint_pairs(u, v, w) == len(disjoint_pairs(u, v, w))
        assert c <= matching_count_upper_bound(u, v, w)
        for f in enumerate_oriented(u, v, w):
            mo, me = split_matchings(f)
            assert mo & me == 0
            assert merge_matchings(N, mo, me) == f


def test_upper_bound_can_be_strict():
    assert count_oriented("01", "01", "10") == 3
    assert matching_count_upper_bound("01", "01", "10") == 4
