"""Acceptance gate: every criterion at full scale, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import pytest

from frobenii.acceptance import ALL_CHECKS, DEFAULT_SEED


@pytest.mark.parametrize("check", ALL_CHECKS, ids=lambda fn: fn.__name__)
def test_criterion(check):
    result = check(scale=1.0, seed=DEFAULT_SEED)
    print(result.line())
    for failure in result.failures[:5]:
        print(f"    {failure}")
    assert result.passed, result.detail
