import math

import pytest

from unruh_qfi.core import EnvironmentModel, Kind

ACCEPTANCE_LINES = []


def model_for(kind, X, z=0.5):
    kind = Kind(kind)
    return EnvironmentModel(kind, X, z if kind.has_boundary else None)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}  ({detail})")
        assert ok, f"criterion {number} failed: {title} ({detail})"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


ALL_KINDS = list(Kind)
HALF_PI = math.pi / 2
