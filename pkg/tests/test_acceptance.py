"""
The acceptance battery, one test per criterion, each held to its runtime
budget.  A PASS/FAIL line per criterion is printed in the terminal summary.
"""

from __future__ import annotations

import pytest

from smcloc.acceptance import CRITERIA, run_criterion, six_chamber_table
from smcloc.coxeter import RootDatum

LINES: list[str] = []

SIX_CHAMBER_REASON = (
    "the stated table has y^2 - y for v = s2 and v = s2 s1; exact chamber limits, the "
    "twisted R-polynomials and the example's own intermediate expression all give y^2 + y"
)


def _criterion(number: int):
    marks = [pytest.mark.xfail(strict=True, reason=SIX_CHAMBER_REASON)] if number == 5 else []
    return pytest.param(number, marks=marks, id=f"criterion{number}")


@pytest.mark.parametrize("number", [_criterion(n) for n in sorted(CRITERIA)])
def test_criterion(number):
    res = run_criterion(number)
    LINES.append(res.line())
    print(res.line())
    for msg in res.failures():
        print("    " + msg)
    assert res.within_budget, f"{res.seconds:.1f}s over budget {res.budget}s"
    assert res.passed, "; ".join(res.failures())


def test_six_chamber_limits_computed_values():
    # every part of criterion 5 except the literal table, with the computed values
    res = run_criterion(5)
    failing = [name for name, ok, _ in res.checks if not ok]
    assert failing == ["six-chamber table equals (-y-1, 0, y^2-y, 0, y^2-y, 0) as stated"]
    R = RootDatum.parse("GL3").ring("y")
    y = R.gen("y")
    assert six_chamber_table() == [-y - 1, R.zero(), y * y + y, R.zero(), y * y + y, R.zero()]
