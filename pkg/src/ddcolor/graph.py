"""Immutable simple undirected graphs in compressed sparse row form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc


class GraphValidationError(ValueError):
    """Raised when input cannot form a simple undirected graph."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Adjacency is stored as CSR arrays with each neighbor list sorted
    ascending. Both arrays are read-only; build instances with
    :func:`build_graph`.
    """

    indptr: np.ndarray
    indices: np.ndarray

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.node_count else 0

    def _check(self, u) -> int:
        u = int(u)
        if not 0 <= u < self.node_count:
            raise IndexError(f"node {u} out of range for graph with {self.node_count} nodes")
        return u

    def degree(self, u) -> int:
        u = self._check(u)
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u) -> np.ndarray:
        u = self._check(u)
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def has_edge(self, u, v) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.neighbors(u).tolist() for u in range(self.node_count)]

    def edges(self) -> np.ndarray:
        """Return an ``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        src = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_scipy(self) -> csr_matrix:
        n = self.node_count
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


def _from_pairs(n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
    # us < vs elementwise, pairs already unique
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indptr.setflags(write=False)
    indices.setflags(write=False)
    return Graph(indptr, indices)


def build_graph(n: int, edges: Iterable) -> Graph:
    """Build a simple undirected graph on ``n`` nodes from node pairs.

    Duplicate pairs, including reversed duplicates, collapse to a single edge.
    Out-of-range endpoints raise ``IndexError``; self-loops raise
    :class:`GraphValidationError`.
    """
    n = int(n)
    if n < 0:
        raise GraphValidationError("node count must be non-negative")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphValidationError("edges must be a sequence of node pairs")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = arr[(arr < 0) | (arr >= n)][0]
        raise IndexError(f"edge endpoint {bad} out of range for {n} nodes")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise GraphValidationError(f"self-loop at node {arr[loops][0, 0]}")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = np.unique(lo * max(n, 1) + hi)
    return _from_pairs(n, keys // max(n, 1), keys % max(n, 1))


@dataclass(frozen=True)
class ComponentLabeling:
    """Component id per node, ids ordered by each component's smallest node."""

    labels: np.ndarray
    component_sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.component_sizes)

    @property
    def largest(self) -> int:
        return int(self.component_sizes.max()) if self.count else 0


def connected_components(g: Graph) -> ComponentLabeling:
    n = g.node_count
    if n == 0:
        return ComponentLabeling(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64))
    k, raw = _cc(g.to_scipy(), directed=False)
    # relabel so component ids follow first appearance in node order
    _, first = np.unique(raw, return_index=True)
    rank = np.empty(k, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(k)
    labels = rank[raw]
    return ComponentLabeling(labels, np.bincount(labels, minlength=k))


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``nodes``, relabeled densely in ascending node order."""
    nodes = np.unique(np.asarray(nodes, dtype=np.int64))
    new_id = np.full(g.node_count, -1, dtype=np.int64)
    new_id[nodes] = np.arange(len(nodes))
    e = g.edges()
    if len(e):
        e = new_id[e]
        e = e[(e >= 0).all(axis=1)]
    sub = _from_pairs(len(nodes), e[:, 0], e[:, 1]) if len(e) else build_graph(len(nodes), [])
    return sub, {int(old): i for i, old in enumerate(nodes)}


def largest_connected_component(g: Graph) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the largest component plus the old to new id map.

    Ties between equally large components go to the one containing the
    smallest node id.
    """
    if g.node_count == 0:
        raise GraphValidationError("graph has no nodes")
    comp = connected_components(g)
    best = int(np.argmax(comp.component_sizes))
    return induced_subgraph(g, np.flatnonzero(comp.labels == best))
