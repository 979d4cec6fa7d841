"""Seeded random network generators.

Every generator takes an integer seed and draws from a fresh
``numpy.random.Generator(PCG64(seed))`` stream, so identical parameters and
seed give an identical graph on any platform numpy supports.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .graph import Graph, _from_pairs

logger = logging.getLogger(__name__)

MAX_PARITY_RETRIES = 1000


class GenerationError(RuntimeError):
    pass


def make_rng(seed) -> np.random.Generator:
    """PCG64 stream for an unsigned 64-bit seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def _check_prob(name, p):
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def _block_pairs(n: int, group: np.ndarray, prob: np.ndarray, rng) -> tuple[np.ndarray, np.ndarray]:
    """Include each pair ``i < j`` independently with ``prob[group[i], group[j]]``."""
    us, vs = [], []
    for i in range(n - 1):
        j = np.arange(i + 1, n)
        p = prob[group[i], group[j]]
        hit = j[rng.random(n - 1 - i) < p]
        if len(hit):
            us.append(np.full(len(hit), i, dtype=np.int64))
            vs.append(hit)
    if not us:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(us), np.concatenate(vs)


def gen_er(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p): every pair is an edge independently with probability p."""
    _check_prob("p", p)
    if n < 1:
        raise ValueError("n must be at least 1")
    us, vs = _block_pairs(n, np.zeros(n, dtype=np.int64), np.array([[p]]), make_rng(seed))
    return _from_pairs(n, us, vs)


def gen_two_community(n: int, p_in: float, p_out: float, seed) -> Graph:
    """Two-block planted partition.

    Nodes ``0..ceil(n/2)-1`` form the first group and the rest the second.
    Within-group pairs connect with ``p_in``, cross-group pairs with ``p_out``.
    """
    _check_prob("p_in", p_in)
    _check_prob("p_out", p_out)
    if n < 1:
        raise ValueError("n must be at least 1")
    group = (np.arange(n) >= (n + 1) // 2).astype(np.int64)
    prob = np.array([[p_in, p_out], [p_out, p_in]])
    us, vs = _block_pairs(n, group, prob, make_rng(seed))
    return _from_pairs(n, us, vs)


def powerlaw_degree_sequence(n: int, gamma: float, k_min: int, rng) -> np.ndarray:
    """Sample n degrees from P(k) proportional to k^-gamma on [k_min, n-1].

    Uses inverse-CDF sampling on the discrete distribution. If the degree sum
    is odd, one randomly chosen node's degree is redrawn until it is even.
    """
    k_max = n - 1
    if k_min > k_max:
        raise GenerationError(f"k_min={k_min} exceeds n-1={k_max}")
    support = np.arange(k_min, k_max + 1)
    cdf = np.cumsum(support.astype(float) ** -gamma)
    cdf /= cdf[-1]

    def draw(size):
        return support[np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), len(support) - 1)]

    degs = draw(n)
    for _ in range(MAX_PARITY_RETRIES):
        if degs.sum() % 2 == 0:
            return degs
        degs[rng.integers(n)] = draw(1)[0]
    raise GenerationError("could not obtain an even degree sum")


def erased_configuration_model(degrees: np.ndarray, rng) -> Graph:
    """Random stub matching with self-loops and multi-edges deleted."""
    n = len(degrees)
    stubs = np.repeat(np.arange(n, dtype=np.int64), degrees)
    if len(stubs) % 2:
        raise GenerationError("degree sum must be even")
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keys = np.unique(lo * n + hi)
    erased = len(stubs) // 2 - len(keys)
    if erased:
        logger.debug("configuration model erased %d stub pairs", erased)
    return _from_pairs(n, keys // n, keys % n)


def gen_powerlaw_config(n: int, gamma: float, k_min: int, seed) -> Graph:
    """Scale-free graph from the erased configuration model.

    Degrees follow a discrete power law with exponent ``gamma`` truncated to
    ``[k_min, n-1]``; realized degrees can fall below ``k_min`` where loops
    or multi-edges were erased.
    """
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    if k_min < 1:
        raise ValueError("k_min must be at least 1")
    if n < 2:
        raise GenerationError("need at least 2 nodes for stub matching")
    rng = make_rng(seed)
    degs = powerlaw_degree_sequence(n, gamma, k_min, rng)
    return erased_configuration_model(degs, rng)


@dataclass(frozen=True)
class ER:
    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        _check_prob("p", self.p)


@dataclass(frozen=True)
class SF:
    n: int
    gamma: float
    k_min: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.gamma <= 1:
            raise ValueError("gamma must exceed 1")
        if not 1 <= self.k_min < max(self.n, 2):
            raise ValueError("k_min must satisfy 1 <= k_min < n")


@dataclass(frozen=True)
class TwoCommunity:
    n: int
    p_in: float
    p_out: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        _check_prob("p_in", self.p_in)
        _check_prob("p_out", self.p_out)


@dataclass(frozen=True)
class File:
    """Edge-list file; see :func:`ddcolor.io.load_edge_list` for the options."""

    path: str
    take_largest_component: bool = True
    base: int | None = None


GraphSpec = Union[ER, SF, TwoCommunity, File]


def realize(spec: GraphSpec, seed=0) -> Graph:
    """Produce the graph described by ``spec``. File specs ignore the seed."""
    if isinstance(spec, ER):
        return gen_er(spec.n, spec.p, seed)
    if isinstance(spec, SF):
        return gen_powerlaw_config(spec.n, spec.gamma, spec.k_min, seed)
    if isinstance(spec, TwoCommunity):
        return gen_two_community(spec.n, spec.p_in, spec.p_out, seed)
    if isinstance(spec, File):
        from .io import load_edge_list_cached
        return load_edge_list_cached(str(Path(spec.path)), spec.take_largest_component, spec.base)
    raise TypeError(f"unknown graph spec {spec!r}")


def is_random(spec: GraphSpec) -> bool:
    return not isinstance(spec, File)


__all__ = [
    "ER", "SF", "TwoCommunity", "File", "GraphSpec", "GenerationError",
    "gen_er", "gen_two_community", "gen_powerlaw_config", "realize", "make_rng",
    "powerlaw_degree_sequence", "erased_configuration_model",
]
