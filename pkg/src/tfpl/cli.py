"""Command line front end.

    tfpl count otfpl -u 01 -v 01 -w 01
    tfpl enumerate tfpl -u 0101 -v 0101 -w 1010
    tfpl count matchings --odd -u 00101001 -w 01100010 --det
    tfpl verify excess0-lr --max-size 6
    tfpl render tangle -u 0101 -v 0011 -w 1001 --format svg --out t.svg

Exit codes: 0 success, 1 a verified identity failed, 2 usage error.
"""
from __future__ import annotations

import json
import os
import sys
import time

import click

from .words import check_word

EXIT_FAIL = 1


def _word(ctx, param, value):
    if value is None:
        return None
    try:
        return check_word(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from None


def _same_length(**words):
    given = {k: w for k, w in words.items() if w is not None}
    if len({len(w) for w in given.values()}) > 1:
        raise click.UsageError("inconsistent word lengths: "
                               + ", ".join(f"-{k} {w}" for k, w in given.items()))
    if any(not w for w in given.values()):
        raise click.UsageError("words must be nonempty")


def _need(**words):
    missing = [k for k, w in words.items() if w is None]
    if missing:
        raise click.UsageError("missing " + ", ".join(f"-{k}" for k in missing))


def _emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def _threads(value):
    if value is not None:
        return value
    env = os.environ.get("TFPL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise click.UsageError(f"TFPL_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _parse_pattern(text: str):
    try:
        pairs = [tuple(int(x) for x in p.split("-")) for p in text.split(",") if p]
    except ValueError:
        raise click.BadParameter(f"pattern {text!r} is not of the form 1-2,3-4") from None
    if any(len(p) != 2 for p in pairs):
        raise click.BadParameter(f"pattern {text!r} is not of the form 1-2,3-4")
    from .fpl import is_noncrossing, normalize
    pi = normalize(pairs)
    pts = sorted(x for p in pi for x in p)
    if pts != list(range(1, len(pts) + 1)) or not is_noncrossing(pi):
        raise click.BadParameter(f"pattern {text!r} is not a noncrossing pairing of 1..2n")
    return pi


@click.group()
def main():
    """Counting and verification tools for triangular fully packed loops."""


word_opts = [
    click.option("-u", callback=_word, help="left boundary word (0/1)"),
    click.option("-v", callback=_word, help="right boundary word (0/1)"),
    click.option("-w", callback=_word, help="bottom boundary word (0/1)"),
]


def with_words(f):
    for opt in reversed(word_opts):
        f = opt(f)
    return f


@main.command()
@click.argument("subject", type=click.Choice(["tfpl", "otfpl", "matchings", "puzzles", "fpl"]))
@with_words
@click.option("--weighted", is_flag=True, help="Laurent polynomial in q (oriented only)")
@click.option("--odd/--even", "odd", default=None, help="matching side")
@click.option("--det", is_flag=True, help="matchings: use the determinant instead of search")
@click.option("--kind", default="KT", type=click.Choice(["KT", "BD", "RD", "DHD", "DHU"]),
              help="puzzle kind")
@click.option("--size", type=int, help="fpl: grid size")
@click.option("--pattern", help="fpl: link pattern such as 1-4,2-3")
@click.option("--json", "as_json", is_flag=True)
def count(subject, u, v, w, weighted, odd, det, kind, size, pattern, as_json):
    """Exact counts for one boundary."""
    t0 = time.perf_counter()
    rep = {"command": ["count", subject], "boundary": {"u": u, "v": v, "w": w}}
    if subject in ("tfpl", "otfpl", "puzzles"):
        _need(u=u, v=v, w=w)
        _same_length(u=u, v=v, w=w)
        if not (u.count("0") == v.count("0") == w.count("0")):
            value = 0
        elif subject == "tfpl":
            from .tfpl_core import enumerate_plain
            value = len(enumerate_plain(u, v, w))
        elif subject == "otfpl":
            from .tfpl_core import count_oriented, weighted_count
            value = str(weighted_count(u, v, w)) if weighted else count_oriented(u, v, w)
        else:
            from .puzzles import count_puzzles
            from .tfpl_core import excess
            ex = excess(u, v, w)
            if (kind == "KT") != (ex == 0) or ex > 1:
                value = 0
            else:
                value = count_puzzles(u, v, w, kind)
            rep["kind"] = kind
    elif subject == "matchings":
        if odd is None:
            raise click.UsageError("choose --odd or --even")
        a = u if odd else v
        _need(**({"u": u} if odd else {"v": v}), w=w)
        _same_length(a=a, w=w)
        side = "odd" if odd else "even"
        key = "0" if odd else "1"
        rep["side"] = side
        rep["method"] = "determinant" if det else "search"
        if a.count(key) != w.count(key):
            value = 0
        elif det:
            from .matchings import count_matchings_det
            value = count_matchings_det(side, a, w)
        else:
            from .matchings import SubGraph, enumerate_matchings
            value = len(enumerate_matchings(SubGraph(side, a, w)))
    else:
        from .fpl import a_pi, enumerate_fpls
        if pattern:
            pi = _parse_pattern(pattern)
            n = len(pi)
            if size is not None and size != n:
                raise click.UsageError("--size disagrees with the pattern")
            value = a_pi(n, pi)
            rep["pattern"] = [list(p) for p in pi]
        else:
            if size is None or size < 1:
                raise click.UsageError("fpl needs --size n >= 1 or --pattern")
            value = len(enumerate_fpls(size))
        rep["size"] = size
    rep["count"] = value
    rep["seconds"] = round(time.perf_counter() - t0, 3)
    _emit(rep, as_json, [str(value)])


@main.command("enumerate")
@click.argument("subject", type=click.Choice(["tfpl", "otfpl"]))
@with_words
@click.option("--limit", type=int, help="stop after this many configurations")
def enumerate_cmd(subject, u, v, w, limit):
    """Print configurations as JSON edge lists, one per line."""
    _need(u=u, v=v, w=w)
    _same_length(u=u, v=v, w=w)
    from .tfpl_core import enumerate_oriented, enumerate_plain
    if not (u.count("0") == v.count("0") == w.count("0")):
        items = []
    else:
        items = (enumerate_plain if subject == "tfpl" else enumerate_oriented)(u, v, w)
    for f in items[:limit] if limit is not None else items:
        click.echo(json.dumps(f.to_json(), sort_keys=True))


@main.command()
@click.argument("suite")
@click.option("--max-size", type=int, help="largest boundary length (suite default if omitted)")
@click.option("--threads", type=int, help="worker processes (default: TFPL_THREADS or all cores)")
@click.option("--literal", is_flag=True, help="count known discrepancies as failures")
@click.option("--json", "as_json", is_flag=True)
def verify(suite, max_size, threads, literal, as_json):
    """Run a verification suite; nonzero exit on any failure."""
    from .checks import SUITES, run_suite
    if suite not in SUITES:
        raise click.BadParameter(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}",
                                 param_hint="SUITE")
    if max_size is not None and max_size < 1:
        raise click.BadParameter("must be positive", param_hint="--max-size")
    rep = run_suite(suite, max_size, _threads(threads), literal)
    out = rep.to_json()
    out["command"] = ["verify", suite]
    lines = [f"suite {suite} (max size {rep.max_size}): "
             + ", ".join(f"{k}={v}" for k, v in sorted(rep.checked.items())),
             f"failures: {len(rep.failures)}",
             f"known discrepancies: {len(rep.discrepancies)}"]
    for f in rep.failures[:5]:
        lines.append("counterexample: " + json.dumps(f, sort_keys=True, default=str))
    lines.append("PASS" if rep.ok else "FAIL")
    if as_json:
        click.echo(json.dumps(out, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            click.echo(line)
    sys.exit(0 if rep.ok else EXIT_FAIL)


@main.command()
@click.argument("obj", type=click.Choice(["tangle", "matching", "puzzle"]))
@with_words
@click.option("--odd/--even", "odd", default=True, help="matching side")
@click.option("--kind", default="KT", type=click.Choice(["KT", "BD", "RD", "DHD", "DHU"]))
@click.option("--index", default=0, type=int, help="which object in enumeration order")
@click.option("--format", "fmt", default="svg", type=click.Choice(["svg", "ascii"]))
@click.option("--out", type=click.Path(dir_okay=False), help="output file (default stdout)")
def render(obj, u, v, w, odd, kind, index, fmt, out):
    """Draw a tangle, a matching or a puzzle."""
    from . import render as R
    if obj == "matching":
        a = u if odd else v
        _need(**({"u": u} if odd else {"v": v}), w=w)
        _same_length(a=a, w=w)
        from .matchings import SubGraph, enumerate_matchings
        G = SubGraph("odd" if odd else "even", a, w)
        key = "0" if odd else "1"
        items = enumerate_matchings(G) if a.count(key) == w.count(key) else []
        draw = (lambda m: R.matching_svg(G, m)) if fmt == "svg" else (lambda m: R.matching_ascii(G, m))
    else:
        _need(u=u, v=v, w=w)
        _same_length(u=u, v=v, w=w)
        if obj == "tangle":
            from .tangles import tangle_from
            from .tfpl_core import enumerate_oriented
            items = [tangle_from(f) for f in enumerate_oriented(u, v, w)] \
                if u.count("0") == v.count("0") == w.count("0") else []
            draw = R.tangle_svg if fmt == "svg" else R.tangle_ascii
        else:
            from .puzzles import enumerate_puzzles
            items = enumerate_puzzles(u, v, w, kind) \
                if u.count("0") == v.count("0") == w.count("0") else []
            draw = R.puzzle_svg if fmt == "svg" else R.puzzle_ascii
    if not 0 <= index < len(items):
        raise click.UsageError(f"no {obj} with index {index} (there are {len(items)})")
    text = draw(items[index])
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
        click.echo(json.dumps({"command": ["render", obj], "out": out, "bytes": len(text.encode())}))
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
