from fractions import Fraction as F

import pytest

from walkcover.grid import TorusGrid

h, q, e, s = F(1, 2), F(1, 4), F(1, 8), F(1, 16)

# 1-D, 5-node fixtures printed alongside the model definition.
RING_M = [
    [0, h, 0, 0, h],
    [h, 0, h, 0, 0],
    [0, h, 0, h, 0],
    [0, 0, h, 0, h],
    [h, 0, 0, h, 0],
]
RING_M_ABSORBED = [row[:] for row in RING_M]
RING_M_ABSORBED[2] = [0, 0, 1, 0, 0]
RING_V = [
    [0, h, 0, h, 0],
    [q, 0, h, 0, q],
    [e, e, h, e, e],
    [e, s, F(5, 8), s, e],
    [F(3, 32), s, F(11, 16), s, F(3, 32)],
]

a, b = F(3, 4), F(1, 4)
RING_BIASED_M_ABSORBED = [
    [0, a, 0, 0, 0, 0, 0, 0, 0, b],
    [0, 0, a, 0, 0, b, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, a, 0, 0, b, 0, 0],
    [a, 0, 0, 0, 0, 0, 0, 0, b, 0],
    [0, b, 0, 0, 0, 0, 0, 0, 0, a],
    [0, 0, b, 0, 0, a, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, b, 0, 0, a, 0, 0],
    [b, 0, 0, 0, 0, 0, 0, 0, a, 0],
]
RING_BIASED_V0 = [0, 0, 0, a, 0, 0, b, 0, 0, 0]


@pytest.fixture
def ring5():
    return TorusGrid.ring(5)


@pytest.fixture
def torus5():
    return TorusGrid.torus(5)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion."""

    def _report(number, text, ok):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
