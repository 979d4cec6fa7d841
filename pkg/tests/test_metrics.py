import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from ddcolor.coloring import Coloring, WeightScheme, lci
from ddcolor.graph import GraphValidationError, build_graph
from ddcolor.metrics import (defective_subgraph, fraction_defective, max_defective_degree,
                             measure, r_max)

from conftest import complete, star, to_nx
from test_coloring import colored_graphs


def test_fraction_defective_examples():
    tri = complete(3)
    assert fraction_defective(tri, Coloring([0, 0, 0], 1)) == 1.0
    assert fraction_defective(tri, Coloring([0, 1, 2], 3)) == 0.0
    assert fraction_defective(tri, Coloring([0, 0, 1], 2)) == pytest.approx(1 / 3)
    assert fraction_defective(build_graph(3, []), Coloring([0, 0, 0], 1)) == 0.0


def test_defective_subgraph_examples():
    tri = complete(3)
    assert defective_subgraph(tri, Coloring([0, 1, 2], 3)).edge_count == 0
    assert defective_subgraph(tri, Coloring([2, 2, 2], 3)) == tri
    sub = defective_subgraph(tri, Coloring([0, 0, 1], 2))
    assert sub.edges().tolist() == [[0, 1]]
    assert sub.node_count == 3


def test_r_max_examples():
    tri = complete(3)
    assert r_max(tri, Coloring([0, 1, 2], 3)) == 1
    assert r_max(complete(6), Coloring([0] * 6, 1)) == 6
    assert r_max(tri, Coloring([0, 0, 1], 2)) == 2
    with pytest.raises(GraphValidationError):
        r_max(build_graph(0, []), Coloring([], 1))


def test_max_defective_degree_examples():
    assert max_defective_degree(complete(3), Coloring([0, 1, 2], 3)) == 0
    assert max_defective_degree(star(5), Coloring([0] * 6, 1)) == 5
    assert max_defective_degree(complete(3), Coloring([0, 0, 1], 2)) == 1


def test_measure_examples():
    rec = measure(complete(4), Coloring([0, 0, 1, 2], 3))
    assert rec.f_d == pytest.approx(1 / 6)
    assert rec.r_max == 2
    assert rec.max_defective_degree == 1
    assert rec.defective_edge_count == 1
    assert sorted(rec.defective_component_sizes) == [1, 1, 2]

    rec = measure(build_graph(4, []), Coloring([0, 1, 0, 1], 2))
    assert rec.f_d == 0 and rec.r_max == 1


def oracle_r_max(g, col):
    h = to_nx(g)
    keep = [(u, v) for u, v in h.edges() if col[u] == col[v]]
    d = nx.Graph()
    d.add_nodes_from(h)
    d.add_edges_from(keep)
    return max(len(c) for c in nx.connected_components(d))


@settings(max_examples=200, deadline=None)
@given(colored_graphs())
def test_measure_properties(data):
    g, col, _ = data
    rec = measure(g, col)
    m = g.edge_count
    assert 0 <= rec.f_d <= 1
    if m:
        assert rec.f_d == rec.defective_edge_count / m
    assert rec.r_max == max(rec.defective_component_sizes) == oracle_r_max(g, col)
    assert sum(rec.defective_component_sizes) == g.node_count
    assert rec.max_defective_degree <= g.max_degree
    assert (rec.r_max == g.node_count) == nx.is_connected(to_nx(defective_subgraph(g, col)))

    w = WeightScheme.for_graph(g, 0.0)
    assert sum(lci(g, col, w, u) for u in range(g.node_count)) == 2 * rec.defective_edge_count

    perm = np.random.default_rng(0).permutation(col.q)
    relabeled = Coloring(perm[col.colors], col.q)
    assert r_max(g, relabeled) == rec.r_max
