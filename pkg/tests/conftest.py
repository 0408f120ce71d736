import pytest

from dkp_s3.verifier import Grid2D

# criterion number -> (passed, summary); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def grid():
    return Grid2D.chebyshev(64, 64)


@pytest.fixture(scope="session")
def small_grid():
    return Grid2D.chebyshev(24, 24)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
