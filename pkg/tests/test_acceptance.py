"""Acceptance criteria 1-14; the PASS/FAIL lines are also collected into the terminal summary."""
import time

import pytest

from gelfandlab.acceptance import CRITERIA, TOTAL_BUDGET, format_row, run_criterion

_elapsed = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, acceptance_rows):
    t0 = time.perf_counter()
    res = run_criterion(number)
    _elapsed.append(time.perf_counter() - t0)
    acceptance_rows.append(format_row(res))
    print("\n" + format_row(res))
    assert res.value_ok, res.detail
    assert res.passed, f"over time budget: {res.elapsed:.1f}s > {res.budget}s"


def test_criterion_14_total_runtime(acceptance_rows):
    total = sum(_elapsed)
    ok = len(_elapsed) == len(CRITERIA) and total < TOTAL_BUDGET
    line = f"[{'PASS' if ok else 'FAIL'}] 14 full suite under 10 minutes: {len(_elapsed)} rows, total {total:.1f} s"
    acceptance_rows.append(line)
    print("\n" + line)
    assert len(_elapsed) == len(CRITERIA)
    assert total < TOTAL_BUDGET
