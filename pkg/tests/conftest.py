"""Shared fixtures: the worked example systems used across the suite."""

from __future__ import annotations

import pytest

from chordaltd import parse_system

P_TEXT = """\
x2 + x1
x3 + x1
x4^2 + x2
x4^3 + x3
x5 + x2
x5 + x3 + x2
"""

Q_TEXT = """\
x2 + x1
x3 + x1
x3
x4^2 + x2
x4^3 + x3
x5 + x2
"""

ILLUS_TEXT = """\
x2 + x1 + 2
(x2 + 2)x3 + x1
(x3 + x2)x4 + x3 - 1
x4 + x2
"""

P_EDGES = {(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (2, 5), (3, 5)}
Q_EDGES = {(1, 2), (1, 3), (2, 4), (3, 4), (2, 5)}
ILLUS_EDGES = {(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)}


@pytest.fixture
def system_p():
    return parse_system(P_TEXT)


@pytest.fixture
def system_q():
    return parse_system(Q_TEXT)


@pytest.fixture
def system_illus():
    return parse_system(ILLUS_TEXT)
