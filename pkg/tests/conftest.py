import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from oddspec.graph import build  # noqa: E402


@st.composite
def small_graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, mask) if keep]
    return n, edges


@pytest.fixture
def k4():
    return build(4, list(combinations(range(4), 2)))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for num in sorted(verdicts):
            terminalreporter.write_line(verdicts[num])
