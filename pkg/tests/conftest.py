from fractions import Fraction as F
from pathlib import Path

import pytest

from shapley_committee.io import parse_profile

FIXTURES = Path(__file__).parent / "fixtures"


def load(name):
    path = FIXTURES / name
    return parse_profile(path.read_bytes(), "dense" if path.suffix == ".csv" else "sparse")


# Exact scores confirmed by the permutation oracle (test_shapley.py re-derives them).
EXAMPLE1_SCORES = (F(5, 6), F(4, 3), F(11, 6))
EXAMPLE2_SCORES = (F(3, 2), F(1), F(3, 2))
TABLE4_SCORES = (F(41, 60), F(-29, 60), F(13, 30), F(-11, 15), F(1, 10))
EXAMPLE3_SECOND_SCORES = (F(-1, 60), F(-1, 60), F(1, 15), F(1, 15), F(-1, 10))


@pytest.fixture
def example1():
    return load("table2.csv")


@pytest.fixture
def example2():
    return load("table3.csv")


@pytest.fixture
def table4():
    return load("table4.json")


@pytest.fixture
def example3_second():
    return load("example3_second.json")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
