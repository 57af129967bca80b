import numpy as np
import pytest

from dlwt import BoundaryMode

BOUNDARIES = [BoundaryMode.PERIODIC, BoundaryMode.SYMMETRIC]
ORDER_PAIRS = [(0, 0), (2, 0), (2, 2), (4, 0), (4, 2), (4, 4)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record an acceptance result; it is also echoed in the terminal summary."""

    def record(number: int, name: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA[number] = (name, bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        name, passed, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {name}: {detail}")
