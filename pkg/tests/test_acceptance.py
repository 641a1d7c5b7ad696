"""Acceptance suite: one test per criterion, each printing its pass/fail line.

Every tolerance is exact (integer/rational equality); the sample-level
criteria run at their stated seeds and trial counts, so the whole suite is
deterministic.
"""

import pytest

from mvcrystals.verify import CRITERIA, run_criterion

CRITERIA_IDS = [cid for cid, _, _ in CRITERIA]
TIME_BUDGETS = {1: 60.0, 7: 300.0}


@pytest.mark.parametrize("cid", CRITERIA_IDS)
def test_criterion(cid, capsys):
    res = run_criterion(cid)
    mark = "PASS" if res.passed else "FAIL"
    with capsys.disabled():
        print(f"\nCRITERION {res.cid:2d} [{mark}] ({res.seconds:.1f}s) {res.name}")
    assert res.passed, f"criterion {cid} failed: {res.details}"
    if cid in TIME_BUDGETS:
        assert res.seconds < TIME_BUDGETS[cid], \
            f"criterion {cid} exceeded its runtime target"
