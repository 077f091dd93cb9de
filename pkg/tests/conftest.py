import math
import sys

import pytest


def envelope_close(a, b, env, tol):
    return abs(a - b) <= tol * env


@pytest.fixture
def sqrt_pi():
    return math.sqrt(math.pi)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
