import itertools

import networkx as nx
import numpy as np
import pytest

from ddcolor.graph import build_graph


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), list(h.edges()))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.node_count))
    h.add_edges_from(g.edges().tolist())
    return h


def complete(n):
    return build_graph(n, itertools.combinations(range(n), 2))


def star(leaves):
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def min_defective_edges(g, q):
    """Brute force over all q**n colorings."""
    e = g.edges()
    best = len(e)
    for block in _colorings(g.node_count, q):
        counts = (block[:, e[:, 0]] == block[:, e[:, 1]]).sum(axis=1)
        best = min(best, int(counts.min()))
    return best


def _colorings(n, q, chunk=20000):
    total = q ** n
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = (idx[:, None] // q ** np.arange(n)[None, :]) % q
        yield digits


@pytest.fixture
def triangle():
    return complete(3)


@pytest.fixture
def k4():
    return complete(4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
