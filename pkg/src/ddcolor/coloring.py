"""Local Conflict Index and the dynamic decentralized coloring (DDC) process.

The LCI of node ``u`` under a coloring is the weighted number of neighbors
sharing its color, with neighbor ``v`` weighted by ``deg(v) ** beta``. DDC
starts from a uniform random coloring and repeatedly picks a node uniformly
at random; a node with at least one same-colored neighbor moves to a color
minimizing its LCI, breaking ties uniformly at random.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernel
from .generators import make_rng
from .graph import Graph

TIE_RTOL = _kernel.TIE_RTOL


@dataclass
class Coloring:
    """Mutable assignment of colors ``0..q-1`` to the nodes of a graph."""

    colors: np.ndarray
    q: int

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=np.int64)
        if self.q < 1:
            raise ValueError("q must be at least 1")
        if self.colors.ndim != 1:
            raise ValueError("colors must be one-dimensional")
        if len(self.colors) and (self.colors.min() < 0 or self.colors.max() >= self.q):
            raise ValueError(f"colors must lie in [0, {self.q})")

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, u) -> int:
        return int(self.colors[u])

    def copy(self) -> Coloring:
        return Coloring(self.colors.copy(), self.q)

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.colors, other.colors)


@dataclass(frozen=True)
class WeightScheme:
    """Per-node weights ``w_v = k_v ** beta``.

    Isolated nodes get weight 0 when ``beta < 0``; they never occur as
    anybody's neighbor, so the value has no effect.
    """

    beta: float
    weights: np.ndarray

    @classmethod
    def for_graph(cls, g: Graph, beta: float = 0.0) -> WeightScheme:
        k = g.degrees.astype(np.float64)
        if beta == 0:
            w = np.ones_like(k)
        else:
            w = np.zeros_like(k)
            pos = k > 0
            w[pos] = k[pos] ** beta
        if not np.all(np.isfinite(w)):
            raise ValueError(f"beta={beta} gives non-finite weights")
        w.setflags(write=False)
        return cls(float(beta), w)

    @property
    def exact(self) -> bool:
        # unit weights: sums are small integers, compare exactly
        return self.beta == 0


def random_coloring(n: int, q: int, seed) -> Coloring:
    """I.i.d. uniform colors; same draw that :func:`run_ddc` starts from."""
    if q < 1:
        raise ValueError("q must be at least 1")
    return Coloring(make_rng(seed).integers(0, q, size=n), q)


def _color_totals(g: Graph, col: Coloring, w: WeightScheme, u) -> np.ndarray:
    nbrs = g.neighbors(u)
    return np.bincount(col.colors[nbrs], weights=w.weights[nbrs], minlength=col.q)


def candidate_lci(g: Graph, col: Coloring, w: WeightScheme, u, c: int) -> float:
    """LCI of ``u`` if it were recolored to ``c``."""
    if not 0 <= c < col.q:
        raise ValueError(f"color {c} outside [0, {col.q})")
    nbrs = g.neighbors(u)
    same = col.colors[nbrs] == c
    return float(w.weights[nbrs][same].sum())


def lci(g: Graph, col: Coloring, w: WeightScheme, u) -> float:
    return candidate_lci(g, col, w, u, col[g._check(u)])


def has_defect(g: Graph, col: Coloring, u) -> bool:
    """True iff ``u`` shares its color with some neighbor."""
    return bool(np.any(col.colors[g.neighbors(u)] == col.colors[u]))


def _minimizers(totals: np.ndarray, exact: bool) -> np.ndarray:
    lo = totals.min()
    if exact:
        return np.flatnonzero(totals == lo)
    tol = TIE_RTOL * np.maximum(1.0, np.maximum(np.abs(totals), abs(lo)))
    return np.flatnonzero(np.abs(totals - lo) <= tol)


def best_colors(g: Graph, col: Coloring, w: WeightScheme, u) -> set[int]:
    """Colors minimizing the LCI of ``u``.

    Values within a relative ``1e-9`` of the minimum count as tied, except
    with ``beta == 0`` where the integer sums are compared exactly.
    """
    return set(_minimizers(_color_totals(g, col, w, u), w.exact).tolist())


def _update(g, col, w, u, tie_draw: float) -> bool:
    if not has_defect(g, col, u):
        return False
    best = _minimizers(_color_totals(g, col, w, u), w.exact)
    new = int(best[int(tie_draw * len(best))])
    if new == col.colors[u]:
        return False
    col.colors[u] = new
    return True


def ddc_step(g: Graph, col: Coloring, w: WeightScheme, u, rng: np.random.Generator) -> bool:
    """Recolor ``u`` if it has a defective edge; return whether its color changed.

    One uniform draw is taken from ``rng`` only when ``u`` is defective.
    """
    u = g._check(u)
    if not has_defect(g, col, u):
        return False
    return _update(g, col, w, u, rng.random())


def defective_edge_count(g: Graph, col: Coloring) -> int:
    e = g.edges()
    return int(np.count_nonzero(col.colors[e[:, 0]] == col.colors[e[:, 1]]))


class Termination(str, enum.Enum):
    PROPER = "Proper"
    PATIENCE = "Patience"
    MAX_SWEEPS = "MaxSweeps"


@dataclass(frozen=True)
class DdcConfig:
    q: int
    beta: float = 0.0
    seed: int = 0
    max_sweeps: int = 1000
    patience_sweeps: int = 50
    record_trajectory: bool = False

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be at least 1")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")
        if self.patience_sweeps < 1:
            raise ValueError("patience_sweeps must be at least 1")


@dataclass
class DdcResult:
    final_coloring: Coloring
    sweeps_run: int
    updates_applied: int
    terminated_by: Termination
    defective_edges: int
    edge_count: int
    trajectory: list[tuple[int, float]] | None = None

    @property
    def f_d(self) -> float:
        return self.defective_edges / self.edge_count if self.edge_count else 0.0


def run_ddc(g: Graph, cfg: DdcConfig, *, engine: str = "compiled",
            on_step: Callable[[int, Coloring], None] | None = None) -> DdcResult:
    """Run DDC on ``g`` until it is proper, stalls, or hits ``cfg.max_sweeps``.

    A sweep is ``n`` node selections drawn uniformly with replacement. The
    run stops with ``Patience`` once ``patience_sweeps`` consecutive sweeps
    end without a new lowest defective-edge count.

    ``engine="python"`` runs the same schedule on the same random stream
    through :func:`ddc_step`-style updates and invokes ``on_step(u, coloring)``
    after every selection; it exists for verification and is slow.
    """
    if engine not in ("compiled", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    if on_step is not None and engine != "python":
        raise ValueError("on_step requires engine='python'")
    n, m = g.node_count, g.edge_count
    rng = make_rng(cfg.seed)
    col = Coloring(rng.integers(0, cfg.q, size=n), cfg.q)
    w = WeightScheme.for_graph(g, cfg.beta)
    defects = defective_edge_count(g, col)

    def frac(d):
        return d / m if m else 0.0

    trajectory = [(0, frac(defects))] if cfg.record_trajectory else None
    best, stale, sweeps, updates = defects, 0, 0, 0
    status = Termination.PROPER if defects == 0 else None

    while status is None:
        nodes = rng.integers(0, n, size=n)
        ties = rng.random(n)
        if engine == "compiled":
            defects, changed = _kernel.sweep(g.indptr, g.indices, w.weights, col.colors,
                                             cfg.q, nodes, ties, w.exact, defects)
        else:
            changed = 0
            for u, t in zip(nodes.tolist(), ties.tolist()):
                changed += _update(g, col, w, u, t)
                if on_step is not None:
                    on_step(u, col)
            defects = defective_edge_count(g, col)
        sweeps += 1
        updates += changed
        if trajectory is not None:
            trajectory.append((sweeps, frac(defects)))
        if defects < best:
            best, stale = defects, 0
        else:
            stale += 1
        if defects == 0:
            status = Termination.PROPER
        elif stale >= cfg.patience_sweeps:
            status = Termination.PATIENCE
        elif sweeps >= cfg.max_sweeps:
            status = Termination.MAX_SWEEPS

    return DdcResult(col, sweeps, updates, status, int(defects), m, trajectory)
