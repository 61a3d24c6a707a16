"""Acceptance criteria 1-12, each run at its full size.

Every criterion prints one PASS/FAIL line (also collected in the terminal
summary).  Two stricter readings that are known to fail are kept as strict
xfails so that the failure itself stays checked.
"""
from functools import lru_cache

import pytest

from conftest import ACCEPTANCE_LINES
from tfpl import _puzzle_convention as conv
from tfpl.checks import BIG_MATCHING_INSTANCE, run_suite
from tfpl.fpl import count_asms, link_pattern_counts
from tfpl.matchings import SubGraph, count_matchings_det, enumerate_matchings
from tfpl.puzzles import calibrate_boundary_convention, derive_piece_catalog, semantics_violations


@lru_cache(maxsize=None)
def suite(name, size, literal=False):
    return run_suite(name, size, threads=None, literal=literal)


def report(number, title, ok, detail=""):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def summary(rep):
    checked = ", ".join(f"{k}={v}" for k, v in sorted(rep.checked.items()))
    return f"size<={rep.max_size}: {checked}; failures={len(rep.failures)}"


def test_criterion_01_necessary_conditions():
    rep = suite("necessary", 5)
    report(1, "necessary conditions", rep.ok and rep.checked["nonzero"] > 0, summary(rep))


def test_criterion_02_excess_formula():
    rep = suite("excess-formula", 5)
    report(2, "excess formula and turn identities", rep.ok, summary(rep))


def test_criterion_03_excess_zero_is_lr():
    rep = suite("excess0-lr", 6)
    report(3, "excess 0: TFPLs = puzzles = LR", rep.ok, summary(rep))


def test_criterion_04_excess_one():
    rep = suite("excess1", 6)
    report(4, "excess 1 closed forms", rep.ok,
           summary(rep) + f"; plain closed form off on {len(rep.discrepancies)} boundaries")


@pytest.mark.xfail(strict=True, reason="the plain closed form as printed has an extra +1")
def test_criterion_04_plain_closed_form_as_printed():
    rep = suite("excess1", 6, literal=True)
    assert rep.ok


def test_criterion_05_inversion_at_rho():
    rep = suite("inversion-rho", 5)
    report(5, "inversion at rho", rep.ok, summary(rep))


def test_criterion_06_determinants():
    rep = suite("determinants", 6)
    a, w = BIG_MATCHING_INSTANCE
    big = (count_matchings_det("odd", a, w), len(enumerate_matchings(SubGraph("odd", a, w))),
           count_matchings_det("even", a, w), len(enumerate_matchings(SubGraph("even", a, w))))
    report(6, "determinant counts (with the size 8 instance)", rep.ok and big == (840, 840, 624, 624),
           summary(rep) + f"; size 8: odd {big[0]}, even {big[2]}")


def test_criterion_07_matching_identities():
    rep = suite("identities", 5)
    report(7, "matching identities", rep.ok, summary(rep))


def test_criterion_08_bijections():
    rep = suite("bijections", 5)
    report(8, "bijection round trips", rep.ok, summary(rep))


def test_criterion_09_moves():
    rep = suite("moves", 6)
    report(9, "move engine uniqueness, path identities, BR/RB chains", rep.ok, summary(rep))


def test_criterion_10_weights():
    rep = suite("weights", 5)
    report(10, "weight invariance (matched choices) and excess 1 weights", rep.ok,
           summary(rep) + f"; mixed choices differ on {len(rep.discrepancies)} checks")


@pytest.mark.xfail(strict=True, reason="mixed turn choices and alpha != beta change the exponent")
def test_criterion_10_all_choices_literal():
    rep = suite("weights", 5, literal=True)
    assert rep.ok


def test_criterion_11_fpl_decomposition():
    rep = suite("fpl-identity", 6)
    total = sum(link_pattern_counts(6).values())
    ok = rep.ok and rep.checked["patterns"] == 2 + 2 + 5 and total == count_asms(6)
    report(11, "FPL decomposition", ok, summary(rep) + f"; FPLs of size 6: {total}")


def test_criterion_12_piece_catalog():
    up, down = derive_piece_catalog()
    clean = all(not semantics_violations(p) for p in up + down)
    flags = calibrate_boundary_convention(4)
    expected = (conv.COMPLEMENT_LEFT, conv.COMPLEMENT_RIGHT, conv.COMPLEMENT_BOTTOM)
    ok = len(up) == len(down) == 5 and clean and flags == expected
    report(12, "piece catalog and boundary calibration", ok, f"calibrated complement flags {flags}")
