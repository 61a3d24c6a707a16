import json

import pytest
from click.testing import CliRunner

from tfpl.cli import main
from tfpl.tfpl_core import enumerate_oriented, oriented_from_json


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, list(args))

    return _run


def test_count_examples(run):
    r = run("count", "otfpl", "-u", "01", "-v", "01", "-w", "01")
    assert r.exit_code == 0 and r.output.strip() == "1"
    r = run("count", "otfpl", "-u", "01", "-v", "10", "-w", "01")
    assert r.exit_code == 0 and r.output.strip() == "0"
    r = run("count", "tfpl", "-u", "0101", "-v", "0101", "-w", "1010")
    assert r.output.strip() == "7"
    r = run("count", "otfpl", "-u", "0101", "-v", "0101", "-w", "1010", "--weighted")
    assert r.output.strip() == "1*q^-1 + 6*q^0 + 3*q^1"


def test_count_matchings_both_methods(run):
    a, w = "00101001", "01100010"
    search = run("count", "matchings", "--odd", "-u", a, "-w", w, "--json")
    det = run("count", "matchings", "--odd", "-u", a, "-w", w, "--det", "--json")
    s, d = json.loads(search.output), json.loads(det.output)
    assert s["count"] == d["count"] == 840
    assert (s["method"], d["method"]) == ("search", "determinant")
    r = run("count", "matchings", "--even", "-v", a, "-w", w)
    assert r.output.strip() == "624"


def test_count_puzzles_and_fpl(run):
    assert run("count", "puzzles", "-u", "01", "-v", "01", "-w", "10", "--kind", "BD").output.strip() == "1"
    assert run("count", "puzzles", "-u", "01", "-v", "01", "-w", "10").output.strip() == "0"
    assert run("count", "fpl", "--size", "4").output.strip() == "42"
    assert run("count", "fpl", "--pattern", "1-6,2-3,4-5").output.strip() == "2"


@pytest.mark.parametrize("args", [
    ("count", "otfpl", "-u", "012", "-v", "01", "-w", "01"),
    ("count", "otfpl", "-u", "011", "-v", "01", "-w", "01"),
    ("count", "otfpl", "-u", "01", "-v", "01"),
    ("count", "matchings", "-u", "01", "-w", "01"),
    ("count", "fpl", "--pattern", "1-3,2-4"),
    ("count", "fpl"),
    ("verify", "no-such-suite"),
    ("verify", "moves", "--max-size", "0"),
    ("render", "tangle", "-u", "01", "-v", "01", "-w", "01", "--index", "5"),
])
def test_usage_errors(run, args):
    assert run(*args).exit_code == 2


def test_enumerate_round_trip(run):
    r = run("enumerate", "otfpl", "-u", "01", "-v", "01", "-w", "10")
    lines = r.output.splitlines()
    fs = [oriented_from_json(json.loads(x)) for x in lines]
    assert fs == enumerate_oriented("01", "01", "10")
    assert all(json.loads(x)["dir"] == "source->target" for x in lines)
    r = run("enumerate", "tfpl", "-u", "01", "-v", "01", "-w", "10", "--limit", "1")
    assert len(r.output.splitlines()) == 1


def test_verify_pass(run):
    r = run("verify", "excess0-lr", "--max-size", "3", "--threads", "1")
    assert r.exit_code == 0
    assert r.output.strip().endswith("PASS")
    r = run("verify", "necessary", "--max-size", "3", "--threads", "1", "--json")
    rep = json.loads(r.output)
    assert rep["ok"] and rep["failures"] == [] and rep["command"] == ["verify", "necessary"]


def test_verify_failure_exit_code(run):
    # the literal closed form for plain counts is off on excess-1 boundaries
    r = run("verify", "excess1", "--max-size", "2", "--threads", "1", "--literal")
    assert r.exit_code == 1
    assert "counterexample" in r.output and r.output.strip().endswith("FAIL")


def test_threads_do_not_change_reports(run):
    one = json.loads(run("verify", "weights", "--max-size", "4", "--threads", "1", "--json").output)
    two = json.loads(run("verify", "weights", "--max-size", "4", "--threads", "2", "--json").output)
    for rep in (one, two):
        rep.pop("seconds")
    assert one == two


@pytest.mark.parametrize("obj,extra", [
    ("tangle", ["-u", "0101", "-v", "0011", "-w", "1001"]),
    ("puzzle", ["-u", "01", "-v", "01", "-w", "10", "--kind", "BD"]),
    ("matching", ["-u", "01", "-w", "10"]),
])
@pytest.mark.parametrize("fmt", ["svg", "ascii"])
def test_render_is_deterministic(run, obj, extra, fmt):
    a = run("render", obj, *extra, "--format", fmt)
    b = run("render", obj, *extra, "--format", fmt)
    assert a.exit_code == 0 and a.output == b.output
    if fmt == "svg":
        assert a.output.startswith("<svg") and a.output.rstrip().endswith("</svg>")


def test_render_colors(run):
    svg = run("render", "tangle", "-u", "0101", "-v", "0011", "-w", "1001").output
    assert 'stroke="#1f4fd1"' in svg and 'stroke="#d12a1f"' in svg
    svg = run("render", "puzzle", "-u", "01", "-v", "01", "-w", "01").output
    for color in ("#1f4fd1", "#d12a1f", "#1c9c3c"):  # edge labels 0, 1, 2
        assert f'stroke="{color}"' in svg


def test_render_to_file(run, tmp_path):
    out = tmp_path / "t.svg"
    r = run("render", "tangle", "-u", "01", "-v", "01", "-w", "01", "--out", str(out))
    assert r.exit_code == 0
    assert json.loads(r.output)["out"] == str(out)
    assert out.read_text().startswith("<svg")
