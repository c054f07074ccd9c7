import os
import random
import sys

import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from kfc.complex import box_sum  # noqa: E402

SEED = int(os.environ.get("KFC_SEED", "0"))


@st.composite
def box_centers(draw, max_boxes=16, max_exp=1, lo=-3, hi=3):
    n = draw(st.integers(0, max_boxes))
    coord = st.integers(lo, hi)
    return [(draw(coord), draw(coord), draw(st.integers(1, max_exp))) for _ in range(n)]


@st.composite
def box_sums(draw, max_boxes=16, max_exp=1):
    return box_sum(draw(box_centers(max_boxes, max_exp)))


@pytest.fixture
def rng():
    return random.Random(SEED)


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
