import numpy as np
import pytest

from opcalc.funcrep import DEFAULT_INTERVAL

_ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def interval():
    return DEFAULT_INTERVAL


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(name, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {name}" + (f"  ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
