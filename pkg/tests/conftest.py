import math

import numpy as np
import pytest

ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the terminal summary prints every line."""

    def record(label, ok, detail=""):
        ACCEPTANCE.append((label, bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())


# closed forms written out here, independently of leeosc.fixtures
r = math.sqrt


@pytest.fixture(scope="session")
def case1_S():
    return np.array(
        [
            [-r(5 / 7), -r(1 / 35), 0, 3 / r(35)],
            [0, 3 / r(10), 0, 1 / r(10)],
            [0, 0, 1, 0],
            [r(2 / 7), -1 / r(14), 0, 3 / r(14)],
        ]
    )


@pytest.fixture(scope="session")
def case2_S():
    # the matrix display form (the coefficient list a1..d4 is the same matrix)
    s17, s2 = r(17), r(2)
    return np.array(
        [
            [-r((17 - s17) / 102), -r(1 / 3 + 4 / (3 * s17)), r((17 + s17) / 102), 1 / r(51 + 12 * s17)],
            [-r((2 + s2) / 6), 0.5 * r((2 - s2) / 3), -r((2 - s2) / 6), 1 / r(12 - 6 * s2)],
            [r((17 + s17) / 102), r(1 / 3 - 4 / (3 * s17)), r(1 / 6 - 1 / (6 * s17)), 1 / r(51 - 12 * s17)],
            [1 / r(3 * (2 + s2)), -0.5 * r((2 + s2) / 3), -r((2 + s2) / 6), 1 / r(12 + 6 * s2)],
        ]
    )
