import numpy as np
import pytest
from hypothesis import strategies as st

from braket import Ket, SpaceLabel

ACCEPTANCE_LINES: list[str] = []

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
scalars = st.builds(complex, finite, finite)


@st.composite
def ket_pairs(draw, max_dim=5, conjugated=None):
    n = draw(st.integers(1, max_dim))
    conj = draw(st.booleans()) if conjugated is None else conjugated
    space = SpaceLabel(n, conj)
    x = draw(st.lists(scalars, min_size=n, max_size=n))
    y = draw(st.lists(scalars, min_size=n, max_size=n))
    return Ket(space, x), Ket(space, y)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
