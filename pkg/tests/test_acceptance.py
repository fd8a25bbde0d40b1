"""Acceptance criteria 1-10, each at its stated tolerance.

Each criterion records one PASS/FAIL line; the lines are printed together
in the "acceptance criteria" section at the end of the pytest run.
"""

import pytest

from zsl import acceptance


@pytest.mark.slow
@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA])
def test_criterion(number, acceptance_log):
    result = acceptance.run_criterion(number)
    acceptance_log[number] = result.line()
    assert result.passed, result.line()
