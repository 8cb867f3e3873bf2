import numpy as np
import pytest
from hypothesis import strategies as st

from medgraph import AttributedGraph, GraphSet, Permutation

ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, status, text in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"criterion {key}: {status}  {text}")


weights = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_subnormal=False)


@st.composite
def graphs(draw, n=None, min_n=1, max_n=4):
    if n is None:
        n = draw(st.integers(min_value=min_n, max_value=max_n))
    v = draw(st.lists(weights, min_size=n, max_size=n))
    e = np.zeros((n, n))
    for r in range(n):
        for s in range(r + 1, n):
            e[r, s] = e[s, r] = draw(weights)
    return AttributedGraph(np.array(v), e)


@st.composite
def perms(draw, n):
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def graph_sets(draw, min_n=1, max_n=3, min_m=1, max_m=3):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    m = draw(st.integers(min_value=min_m, max_value=max_m))
    return GraphSet(tuple(draw(graphs(n=n)) for _ in range(m)))


def single(w):
    return AttributedGraph(np.array([w]), np.zeros((1, 1)))


@pytest.fixture
def micro():
    """Two single-vertex graphs with weights 0 and 1."""
    return GraphSet((single(0.0), single(1.0)))
