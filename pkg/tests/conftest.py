import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from spcls.fixtures import five_state_example
from spcls.generate import _space, intersection_closure
from spcls.bits import full_mask

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def ex5():
    return five_state_example()


@pytest.fixture
def ex5_path():
    return FIXTURES / "ex5.json"


@st.composite
def closure_spaces(draw, max_points=6):
    n = draw(st.integers(0, max_points))
    full = full_mask(n)
    gens = draw(st.lists(st.integers(0, full), max_size=2 * n + 1))
    return _space(n, intersection_closure(set(gens) | {full}) | {0})


def seeded_spaces(count, seed=7, max_points=6):
    from spcls.generate import random_closure_space

    rng = random.Random(seed)
    return [random_closure_space(rng, max_points, 40) for _ in range(count)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
