import mpmath
import pytest


@pytest.fixture
def mp():
    """mpmath at 40 digits, restored afterwards."""
    with mpmath.workdps(40):
        yield mpmath


def mp_beta(d, p):
    """Textbook (unrationalised) form of the edge-law base, in extended precision."""
    with mpmath.workdps(40):
        d, p = mpmath.mpf(d), mpmath.mpf(p)
        if p == 0:
            return mpmath.mpf(0)
        return ((d + 1) - mpmath.sqrt((d + 1) ** 2 - 4 * d * p**2)) / (2 * d * p)


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line: call with (label, passed, detail)."""

    def record(label, passed, detail):
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
