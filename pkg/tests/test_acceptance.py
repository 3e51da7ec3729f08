"""The twelve acceptance criteria, one test each.

Run with ``pytest -s tests/test_acceptance.py`` to see the pass/fail lines.
"""

import pytest

from charloc.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA], ids=[f"criterion_{n:02d}" for n, *_ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.ok, result.detail
    assert result.seconds <= result.budget, f"took {result.seconds:.2f}s, budget {result.budget}s"
