import pytest

from tfpl.algebra import ssyt_count
from tfpl.fpl import (FPLConfig, a_pi, boundary_stubs, count_asms, count_fpls, enumerate_fpls,
                      is_noncrossing, is_valid_fpl, link_pattern_counts, link_pattern_of, nest,
                      noncrossing_patterns, pattern_word, reflect, selected_stubs,
                      ssyt_or_empty, ssyt_polynomial, tfpl_side, verify_fpl_identity)


def test_stub_numbering():
    assert [s for s in selected_stubs(3)] == [
        ((0, 0), "L"), ((2, 0), "L"), ((2, 1), "B"), ((2, 2), "R"), ((0, 2), "R"), ((0, 1), "T")]
    assert len(boundary_stubs(4)) == 16 and len(selected_stubs(4)) == 8


def test_asm_oracle():
    # alternating sign matrix numbers, from the row transfer
    assert [count_asms(n) for n in range(1, 7)] == [1, 2, 7, 42, 429, 7436]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fpl_count_is_asm_count(n):
    fs = enumerate_fpls(n)
    assert len(fs) == len(set(fs)) == count_fpls(n) == count_asms(n)
    assert all(is_valid_fpl(F) for F in fs)


def test_fpl_count_size_six():
    assert sum(link_pattern_counts(6).values()) == count_asms(6)


def test_invalid_fpl():
    assert not is_valid_fpl(FPLConfig(2, frozenset()))
    with pytest.raises(ValueError):
        enumerate_fpls(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_link_patterns(n):
    counts = link_pattern_counts(n)
    pats = noncrossing_patterns(n)
    assert set(counts) == set(pats)
    for pi, c in counts.items():
        assert is_noncrossing(pi)
        assert counts[reflect(pi)] == c


def test_small_pattern_counts():
    assert link_pattern_counts(2) == {((1, 2), (3, 4)): 1, ((1, 4), (2, 3)): 1}
    assert link_pattern_counts(3) == {
        ((1, 2), (3, 4), (5, 6)): 2, ((1, 6), (2, 3), (4, 5)): 2,
        ((1, 2), (3, 6), (4, 5)): 1, ((1, 4), (2, 3), (5, 6)): 1, ((1, 6), (2, 5), (3, 4)): 1}
    # both extreme patterns of size 4 have the same count
    assert a_pi(4, ((1, 2), (3, 4), (5, 6), (7, 8))) == a_pi(4, ((1, 8), (2, 3), (4, 5), (6, 7))) == 7


def test_link_pattern_of_is_involution():
    for F in enumerate_fpls(4):
        pi = link_pattern_of(F)
        pts = sorted(x for p in pi for x in p)
        assert pts == list(range(1, 9))


def test_nest():
    assert nest(((1, 2),), 1) == ((1, 4), (2, 3))
    pi = ((1, 2), (3, 4))
    assert nest(pi, 0) == pi
    assert nest(pi, 2) == ((1, 8), (2, 7), (3, 4), (5, 6))
    with pytest.raises(ValueError):
        nest(pi, -1)


def test_pattern_word():
    assert pattern_word(((1, 4), (2, 3))) == "0011"
    assert pattern_word(((1, 2), (3, 4))) == "0101"


def test_crossing_detected():
    assert not is_noncrossing(((1, 3), (2, 4)))


@pytest.mark.parametrize("shape", [(1,), (2,), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2, 1)])
def test_ssyt_polynomial_agrees_on_nonnegative_alphabets(shape):
    for k in range(0, 5):
        assert ssyt_polynomial(shape, k) == ssyt_or_empty(shape, k)
        if k:
            assert ssyt_or_empty(shape, k) == ssyt_count(shape, k)


def test_ssyt_polynomial_negative():
    assert ssyt_polynomial((1, 1), -1) == 1
    assert ssyt_polynomial((2, 1), -1) == 0
    assert ssyt_or_empty((1, 1), -1) == 0
    assert ssyt_polynomial((), -3) == ssyt_or_empty((), -3) == 1


@pytest.mark.parametrize("n,m", [(2, 3), (2, 4), (3, 3)])
def test_identity(n, m):
    for pi in noncrossing_patterns(n):
        lhs, rhs = verify_fpl_identity(n, pi, m)
        assert lhs == rhs


@pytest.mark.parametrize("n,m", [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)])
def test_identity_small_m(n, m):
    # here the right-hand alphabet is empty or negative
    for pi in noncrossing_patterns(n):
        lhs, rhs = verify_fpl_identity(n, pi, m)
        assert lhs == rhs


def test_combinatorial_reading_of_negative_alphabets():
    # reading SSYT over a negative alphabet as 0 breaks the identity once
    # m < 2n - 1 and the shape is nonempty
    assert [tfpl_side(2, pi, 2, "combinatorial") for pi in noncrossing_patterns(2)] == [4, 1]
    assert [tfpl_side(2, pi, 2) for pi in noncrossing_patterns(2)] == [3, 1]
    pats = noncrossing_patterns(3)
    assert [tfpl_side(3, pi, 3, "combinatorial") for pi in pats] == [97, 21, 21, 7, 1]
    assert [a_pi(6, nest(pi, 3)) for pi in pats] == [34, 10, 10, 5, 1]


def test_identity_rejects_size_mismatch():
    with pytest.raises(ValueError):
        verify_fpl_identity(3, ((1, 2), (3, 4)), 1)


def test_parallel_enumeration_is_deterministic():
    assert enumerate_fpls(5, threads=2) == enumerate_fpls(5, threads=1)
