from pathlib import Path

import numpy as np
import pytest

from codequiv.field import field_make
from codequiv.io import read_code

DATA = Path(__file__).resolve().parents[1] / "src" / "codequiv" / "data"


@pytest.fixture(scope="session")
def f4():
    return field_make(2, 2)


@pytest.fixture(scope="session")
def f9():
    return field_make(3, 2)


@pytest.fixture(scope="session")
def c1():
    return read_code(DATA / "g1.code")


@pytest.fixture(scope="session")
def c2():
    return read_code(DATA / "g2.code")


@pytest.fixture(scope="session")
def c3():
    return read_code(DATA / "c3.code")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
