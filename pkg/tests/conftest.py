import numpy as np
import pytest
from hypothesis import strategies as st

from gridbtw.graph import build_graph


def path3():
    return build_graph([(0, 1), (1, 2)], 3)


def diamond():
    return build_graph([(0, 1), (0, 2), (1, 3), (2, 3)], 4)


def star4():
    return build_graph([(0, 1), (0, 2), (0, 3)], 4)


def k2():
    return build_graph([(0, 1)], 2)


def complete(n):
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def barbell_2_3():
    # K2 {0,1} -- bridge (1,2) -- K3 {2,3,4}
    return build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)], 5)


def diamond_chain(k):
    """k diamonds in series: 2**k shortest paths end to end."""
    edges = []
    for i in range(k):
        a, b, c, d = 3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3
        edges += [(a, b), (a, c), (b, d), (c, d)]
    return build_graph(edges, 3 * k + 1)


@pytest.fixture
def p3():
    return path3()


@pytest.fixture
def dia():
    return diamond()


def random_connected(rng, n, extra):
    perm = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        edges.add((min(a, b), max(a, b)))
    cap = n * (n - 1) // 2
    while len(edges) < min(n - 1 + extra, cap):
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return build_graph(sorted(edges), n)


@st.composite
def connected_graphs(draw, min_nodes=2, max_nodes=12, max_density=3):
    n = draw(st.integers(min_nodes, max_nodes))
    extra = draw(st.integers(0, max_density * n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected(np.random.default_rng(seed), n, extra)


@st.composite
def any_graphs(draw, max_nodes=12):
    """Possibly disconnected simple graphs, including isolated nodes."""
    n = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(chosen, n)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
