"""Acceptance criteria 1-10 at their stated sample sizes; one summary line each."""

import pytest

from isotopy.acceptance import CRITERIA, run_criterion, status_of


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    title = CRITERIA[number][0]
    checks = run_criterion(number)
    status = status_of(checks)
    failed = [c for c in checks if c["status"] != "pass"]
    with capsys.disabled():
        print(f"\ncriterion {number:2d} ({title}): {status.upper()} [{len(checks) - len(failed)}/{len(checks)} checks]")
    assert status == "pass", failed
