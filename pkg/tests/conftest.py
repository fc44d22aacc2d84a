import pytest
from hypothesis import strategies as st

from maxlin.gf2_core import LinearSystem, WeightedEquation

ACCEPTANCE_LINES = []


@st.composite
def systems(draw, max_vars=6, max_eqs=8, max_weight=5):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(0, max_eqs))
    eqs = []
    for _ in range(m):
        lhs = draw(st.integers(1, (1 << n) - 1))
        eqs.append(WeightedEquation(lhs, draw(st.integers(0, 1)), draw(st.integers(1, max_weight))))
    return LinearSystem(n, tuple(eqs))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    # z1+z2=0, z2+z3=0, z1+z3=1 with unit weights: lhs sum to 0, rhs to 1
    return LinearSystem.build(3, [([0, 1], 0, 1), ([1, 2], 0, 1), ([0, 2], 1, 1)])
