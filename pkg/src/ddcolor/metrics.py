"""Diversity measures for a colored graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coloring import Coloring
from .graph import Graph, GraphValidationError, _from_pairs, connected_components


@dataclass(frozen=True)
class MetricsRecord:
    f_d: float
    r_max: int
    defective_edge_count: int
    defective_component_sizes: tuple[int, ...]
    max_defective_degree: int

    def as_dict(self) -> dict:
        return {
            "f_d": self.f_d,
            "r_max": self.r_max,
            "defective_edges": self.defective_edge_count,
            "max_defective_degree": self.max_defective_degree,
            "defective_components": len(self.defective_component_sizes),
        }


def _defective_edges(g: Graph, col: Coloring) -> np.ndarray:
    e = g.edges()
    return e[col.colors[e[:, 0]] == col.colors[e[:, 1]]]


def fraction_defective(g: Graph, col: Coloring) -> float:
    """Share of edges whose endpoints have the same color; 0 for edgeless graphs."""
    m = g.edge_count
    return len(_defective_edges(g, col)) / m if m else 0.0


def defective_subgraph(g: Graph, col: Coloring) -> Graph:
    """Same node set, keeping only the monochromatic edges."""
    d = _defective_edges(g, col)
    return _from_pairs(g.node_count, d[:, 0], d[:, 1])


def r_max(g: Graph, col: Coloring) -> int:
    """Node count of the largest color-induced component.

    Isolated nodes count as components of size 1, so a proper coloring
    gives 1.
    """
    if g.node_count == 0:
        raise GraphValidationError("graph has no nodes")
    return connected_components(defective_subgraph(g, col)).largest


def max_defective_degree(g: Graph, col: Coloring) -> int:
    return defective_subgraph(g, col).max_degree


def measure(g: Graph, col: Coloring) -> MetricsRecord:
    if g.node_count == 0:
        raise GraphValidationError("graph has no nodes")
    d = _defective_edges(g, col)
    sub = _from_pairs(g.node_count, d[:, 0], d[:, 1])
    sizes = connected_components(sub).component_sizes
    m = g.edge_count
    return MetricsRecord(
        f_d=len(d) / m if m else 0.0,
        r_max=int(sizes.max()),
        defective_edge_count=len(d),
        defective_component_sizes=tuple(int(s) for s in sizes),
        max_defective_degree=sub.max_degree,
    )
