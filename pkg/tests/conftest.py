from pathlib import Path

import pytest
from hypothesis import strategies as st

from graphshare.graph import ColoredGraph, Coloring, Graph, triangle_size

TESTDATA = Path(__file__).parent / "testdata"

# Example 1 of the conversion scheme: 4 vertices, 3 colors.
EXAMPLE1_EDGES = [(1, 3), (1, 4), (2, 3), (3, 4)]
EXAMPLE1_COLORS = (0, 0, 2, 1)


@pytest.fixture
def example1() -> ColoredGraph:
    return ColoredGraph(Graph.from_edges(4, EXAMPLE1_EDGES), Coloring(3, EXAMPLE1_COLORS))


@pytest.fixture
def testdata() -> Path:
    return TESTDATA


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n):
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=triangle_size(n), max_size=triangle_size(n)))
    return Graph(n, tuple(bits))


@st.composite
def colored_graphs(draw, min_n=1, max_n=8, max_k=6, min_k=1):
    g = draw(graphs(min_n, max_n))
    k = draw(st.integers(min_k, max_k))
    colors = draw(st.lists(st.integers(0, k - 1), min_size=g.n, max_size=g.n))
    return ColoredGraph(g, Coloring(k, tuple(colors)))


# One line per acceptance criterion, filled by test_acceptance.py.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
