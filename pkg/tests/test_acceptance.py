"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary.
"""

import pytest

from calogero.validation import CRITERIA, run_criterion

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("cid", sorted(CRITERIA))
def test_criterion(cid):
    result = run_criterion(cid)
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
