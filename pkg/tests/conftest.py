import math

import numpy as np
import pytest
from hypothesis import settings

from kreinframes.frame import partition
from kreinframes.io import ex35_vectors, ex314_vectors
from kreinframes.krein import make_space_from_signature

from oracles import ACCEPTANCE_LINES

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

R2, R3, R5, R6, R7 = (math.sqrt(k) for k in (2, 3, 5, 6, 7))


@pytest.fixture
def s21():
    return make_space_from_signature(2, 1)


@pytest.fixture
def ex35(s21):
    return partition(s21, ex35_vectors())


@pytest.fixture
def ex314(s21):
    return partition(s21, ex314_vectors())


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
