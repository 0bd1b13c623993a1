"""Shared generators and an in-process CLI runner for the test suite."""

from __future__ import annotations

import contextlib
import io
import random
from fractions import Fraction

from onng import LinePointSet, PointSet
from onng.cli import main as cli_main


def rand_line_set(rng: random.Random, n: int) -> LinePointSet:
    """Strictly increasing rationals with one common denominator <= 1e6 and
    numerators < 1e7; small enough that squared spans stay inside int64."""
    q = rng.randint(1, 10**6)
    nums = sorted(rng.sample(range(10**7), n))
    return LinePointSet(tuple(Fraction(p, q) for p in nums))


def rand_point_set(rng: random.Random, n: int, d: int) -> PointSet:
    """Points on the 1e-9 grid in the unit cube, duplicates redrawn; same
    scheme the CLI generator uses."""
    seen = set()
    rows = []
    while len(rows) < n:
        row = tuple(rng.randrange(10**9) for _ in range(d))
        if row in seen:
            continue
        seen.add(row)
        rows.append(tuple(Fraction(c, 10**9) for c in row))
    return PointSet(d, tuple(rows))


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process; returns (exit_code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = cli_main(argv)
        except SystemExit as e:  # argparse error path
            code = e.code if isinstance(e.code, int) else 1
    return code, out.getvalue(), err.getvalue()
