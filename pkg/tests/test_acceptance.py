"""Acceptance suite: every reproduction check at its stated tolerance and time limit.

Each check prints one [PASS]/[FAIL] line.  Check 6 is expected to fail; see
the README for the analysis.
"""

import pytest

from legdoubles.repro import CHECKS, run_check


@pytest.mark.parametrize("key", list(CHECKS), ids=[f"criterion_{k}" for k in CHECKS])
def test_acceptance(key, capsys):
    res = run_check(key)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
    assert res.in_time, f"took {res.elapsed:.1f}s, limit {res.limit}s"
