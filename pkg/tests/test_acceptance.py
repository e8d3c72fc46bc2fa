"""Acceptance criteria 1-10 at their stated tolerances and runtime budgets.

Run directly (python tests/test_acceptance.py) or under pytest; either way one
PASS/FAIL line per criterion is printed.
"""

import sys

import pytest

from divisikit.sweeps import SWEEPS, run_sweep

# seconds
BUDGET = {1: 60, 2: 5, 3: 600, 4: 300, 5: 120, 6: 120, 7: 60, 8: 120, 9: 600, 10: 300}


@pytest.mark.parametrize("criterion", sorted(SWEEPS))
def test_criterion(criterion):
    from conftest import ACCEPTANCE_LINES

    res = run_sweep(criterion)
    in_time = res.seconds < BUDGET[criterion]
    line = res.line() if in_time else res.line().replace("PASS", "FAIL") + f" over budget {BUDGET[criterion]}s"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert res.passed, res.detail
    assert in_time, f"{res.seconds:.1f}s exceeds {BUDGET[criterion]}s"


if __name__ == "__main__":
    failed = 0
    for c in sorted(SWEEPS):
        r = run_sweep(c)
        ok = r.passed and r.seconds < BUDGET[c]
        failed += not ok
        print(r.line() if ok else r.line().replace("PASS", "FAIL"), flush=True)
    sys.exit(1 if failed else 0)
