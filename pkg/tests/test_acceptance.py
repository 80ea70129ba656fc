"""One check per acceptance criterion, run at its exact tolerance.

``pytest tests/test_acceptance.py -s`` shows the PASS/FAIL lines as they run;
they are also repeated in the terminal summary.
"""
import pytest

from distrel.suites import DEFAULT_SEED, run_suite

from conftest import ACCEPTANCE_LINES

CRITERIA = [
    (1, "d1-characterization"),
    (2, "d2-characterization"),
    (3, "d3-uniqueness-n6"),
    (4, "d4-crossing"),
    (5, "um-recurrences"),
    (6, "coefficient-identities"),
    (7, "near0-structure"),
    (8, "n4-formula"),
    (9, "transform-certificates"),
    (10, "lmrttg-known"),
]


@pytest.mark.parametrize("number, name", CRITERIA, ids=[name for _, name in CRITERIA])
def test_criterion(number, name):
    result = run_suite(name, seed=DEFAULT_SEED, workers=1)
    line = f"[{number:2d}] {result.summary()} ({result.seconds:.1f}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, "\n".join(result.failures[:10])


if __name__ == "__main__":
    failed = 0
    for number, name in CRITERIA:
        result = run_suite(name)
        print(f"[{number:2d}] {result.summary()} ({result.seconds:.1f}s)")
        failed += not result.passed
    raise SystemExit(1 if failed else 0)
