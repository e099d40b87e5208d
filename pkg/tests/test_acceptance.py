"""Acceptance criteria 1-10, each an exact check (tolerance: equality).

Run directly with ``python3 tests/test_acceptance.py`` for a plain report, or
through pytest, which prints the same one-line verdicts in its summary.
"""
import sys

import pytest

from quasiinv.acceptance import CRITERIA, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number)
    RESULTS[number] = res
    print(res.line(timing=True))
    assert res.passed, res.detail


def main():
    results = [run_criterion(c[0]) for c in CRITERIA]
    for res in results:
        print(res.line(timing=True), flush=True)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
