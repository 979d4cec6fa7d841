"""Batch sweeps over graph ensembles, color counts and degree-bias exponents."""

from __future__ import annotations

import logging
import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coloring import DdcConfig, random_coloring, run_ddc
from .generators import File, GenerationError, GraphSpec, is_random, realize
from .metrics import measure

logger = logging.getLogger(__name__)

RANDOM = "Random"
DDC = "DDC"
SCHEMES = (RANDOM, DDC)
_SCHEME_CODE = {RANDOM: 0, DDC: 1}
_GRAPH_STREAM = 2


def _beta_key(beta) -> int:
    # bit pattern of the double, so 0.1 and 0.1000000001 get distinct streams
    if beta is None:
        return 0
    return struct.unpack("<Q", struct.pack("<d", float(beta) + 0.0))[0]


def derive_seed(base_seed: int, *coords: int) -> int:
    """64-bit child seed that depends only on ``base_seed`` and ``coords``."""
    ss = np.random.SeedSequence(int(base_seed), spawn_key=tuple(int(c) for c in coords))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def coloring_seed(base_seed, scheme, q, beta, run) -> int:
    return derive_seed(base_seed, _SCHEME_CODE[scheme], q, _beta_key(beta), run)


def graph_seed(base_seed, run) -> int:
    return derive_seed(base_seed, _GRAPH_STREAM, run)


@dataclass(frozen=True)
class SweepSpec:
    graph_spec: GraphSpec
    q_values: Sequence[int]
    beta_values: Sequence[float] = (0.0,)
    schemes: Sequence[str] = (DDC,)
    runs_per_point: int = 150
    base_seed: int = 0
    regenerate_graph_per_run: bool | None = None
    max_sweeps: int = 1000
    patience_sweeps: int = 50

    def __post_init__(self):
        if self.runs_per_point < 1:
            raise ValueError("runs_per_point must be at least 1")
        if not self.q_values or not self.beta_values or not self.schemes:
            raise ValueError("q_values, beta_values and schemes must be nonempty")
        bad = set(self.schemes) - set(SCHEMES)
        if bad:
            raise ValueError(f"unknown schemes {sorted(bad)}")
        if self.regenerate_graph_per_run is None:
            object.__setattr__(self, "regenerate_graph_per_run", is_random(self.graph_spec))

    def cells(self):
        """(scheme, q, beta) triples in canonical order; Random has beta None."""
        for scheme in sorted(self.schemes, key=_SCHEME_CODE.get):
            for q in sorted(self.q_values):
                betas = [None] if scheme == RANDOM else sorted(self.beta_values)
                for beta in betas:
                    yield scheme, q, beta


@dataclass(frozen=True)
class SweepRow:
    scheme: str
    q: int
    beta: float | None
    run: int
    seed: int
    f_d: float
    r_max: int
    defective_edges: int
    max_defective_degree: int
    sweeps: int
    terminated_by: str | None

    def as_record(self) -> dict:
        return {
            "scheme": self.scheme, "q": self.q, "beta": self.beta, "run": self.run,
            "seed": self.seed, "f_d": self.f_d, "r_max": self.r_max,
            "defective_edges": self.defective_edges,
            "max_defective_degree": self.max_defective_degree,
            "sweeps": self.sweeps, "terminated_by": self.terminated_by,
        }

    def sort_key(self):
        return (_SCHEME_CODE[self.scheme], self.q, -math.inf if self.beta is None else self.beta, self.run)


class SweepRows(list):
    """Rows of a sweep; ``failures`` counts runs whose graph could not be generated."""

    failures: int = 0


def _color_once(g, scheme, q, beta, seed, spec: SweepSpec):
    if scheme == RANDOM:
        col = random_coloring(g.node_count, q, seed)
        sweeps, term = 0, None
    else:
        res = run_ddc(g, DdcConfig(q=q, beta=beta, seed=seed,
                                   max_sweeps=spec.max_sweeps,
                                   patience_sweeps=spec.patience_sweeps))
        col, sweeps, term = res.final_coloring, res.sweeps_run, res.terminated_by.value
    return col, sweeps, term


def _run_job(spec: SweepSpec, run: int) -> list[SweepRow] | None:
    gseed = graph_seed(spec.base_seed, run if spec.regenerate_graph_per_run else 0)
    try:
        g = realize(spec.graph_spec, gseed)
    except GenerationError as exc:
        logger.warning("run %d: graph generation failed: %s", run, exc)
        return None
    rows = []
    for scheme, q, beta in spec.cells():
        seed = coloring_seed(spec.base_seed, scheme, q, beta, run)
        col, sweeps, term = _color_once(g, scheme, q, beta, seed, spec)
        rec = measure(g, col)
        rows.append(SweepRow(scheme, q, beta, run, seed, rec.f_d, rec.r_max,
                             rec.defective_edge_count, rec.max_defective_degree,
                             sweeps, term))
    return rows


def _run_job_args(args):
    return _run_job(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepRows:
    """Color and measure every (scheme, q, beta, run) cell of ``spec``.

    All cells of one run share a graph realization. Output order is canonical
    regardless of ``workers``.
    """
    jobs = [(spec, run) for run in range(spec.runs_per_point)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job_args, jobs))
    else:
        results = [_run_job(*j) for j in jobs]
    out = SweepRows()
    for res in results:
        if res is None:
            out.failures += 1
        else:
            out.extend(res)
    out.sort(key=SweepRow.sort_key)
    if out.failures:
        logger.warning("%d of %d runs skipped after generation failures", out.failures, len(jobs))
    return out


@dataclass(frozen=True)
class PointSummary:
    scheme: str
    q: int
    beta: float | None
    runs: int
    f_d_mean: float
    f_d_stderr: float
    r_max_mean: float
    r_max_stderr: float


def _mean_se(values) -> tuple[float, float]:
    x = np.asarray(values, dtype=float)
    if len(x) < 2:
        return float(x.mean()), 0.0
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(len(x)))


def summarize(rows) -> list[PointSummary]:
    """Mean and standard error of f_d and R_max per (scheme, q, beta)."""
    groups: dict = {}
    for r in rows:
        rec = r if isinstance(r, dict) else r.as_record()
        groups.setdefault((rec["scheme"], rec["q"], rec["beta"]), []).append(rec)
    out = []
    for (scheme, q, beta), recs in groups.items():
        fm, fs = _mean_se([r["f_d"] for r in recs])
        rm, rs = _mean_se([r["r_max"] for r in recs])
        out.append(PointSummary(scheme, q, beta, len(recs), fm, fs, rm, rs))
    out.sort(key=lambda p: (_SCHEME_CODE.get(p.scheme, 9), p.q, -math.inf if p.beta is None else p.beta))
    return out


def beta_grid(step: float = 0.1, lo: float = -2.0, hi: float = 2.0) -> list[float]:
    """Closed grid lo, lo+step, ..., hi (hi included when step divides the span)."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    k = int(math.floor((hi - lo) / step + 1e-9))
    return [round(lo + i * step, 12) for i in range(k + 1)]


@dataclass(frozen=True)
class BetaSearchResult:
    q: int
    beta_star: float
    objective: str
    grid: list[tuple[float, float]] = field(default_factory=list)


OBJECTIVES = ("f_d", "r_max")


def search_betas(rows, objectives=OBJECTIVES) -> dict[tuple[int, str], BetaSearchResult]:
    """Best beta per (q, objective) from DDC rows; ties go to the smallest beta."""
    result = {}
    points = [p for p in summarize(r for r in rows if (r["scheme"] if isinstance(r, dict) else r.scheme) == DDC)]
    for q in sorted({p.q for p in points}):
        at_q = sorted((p for p in points if p.q == q), key=lambda p: p.beta)
        for obj in objectives:
            grid = [(p.beta, p.f_d_mean if obj == "f_d" else p.r_max_mean) for p in at_q]
            best = min(grid, key=lambda bv: (bv[1], bv[0]))
            result[q, obj] = BetaSearchResult(q, best[0], obj, grid)
    return result


def find_optimal_beta(graph_spec: GraphSpec, q: int, grid_step: float = 0.1, runs: int = 20,
                      objective: str = "f_d", seed: int = 0, *, grid=None, workers: int = 1,
                      **sweep_kw) -> BetaSearchResult:
    """Grid search over beta in [-2, 2] minimizing the mean ``objective``."""
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    betas = list(grid) if grid is not None else beta_grid(grid_step)
    spec = SweepSpec(graph_spec, [q], betas, (DDC,), runs, seed, **sweep_kw)
    return search_betas(run_sweep(spec, workers), (objective,))[q, objective]


def convergence_profile(graph_spec: GraphSpec, q: int, beta: float = 0.0, runs: int = 20,
                        seed: int = 0, *, max_sweeps: int = 1000, patience_sweeps: int = 50,
                        regenerate_graph_per_run: bool | None = None) -> list[tuple[int, float]]:
    """Mean f_d after each sweep across runs.

    Runs that stop early contribute their final f_d to every later sweep.
    """
    if regenerate_graph_per_run is None:
        regenerate_graph_per_run = not isinstance(graph_spec, File)
    trajectories = []
    g = None
    for run in range(runs):
        if g is None or regenerate_graph_per_run:
            g = realize(graph_spec, graph_seed(seed, run if regenerate_graph_per_run else 0))
        cfg = DdcConfig(q=q, beta=beta, seed=coloring_seed(seed, DDC, q, beta, run),
                        max_sweeps=max_sweeps, patience_sweeps=patience_sweeps,
                        record_trajectory=True)
        trajectories.append([f for _, f in run_ddc(g, cfg).trajectory])
    length = max(len(t) for t in trajectories)
    padded = np.array([t + [t[-1]] * (length - len(t)) for t in trajectories])
    return [(i, float(v)) for i, v in enumerate(padded.mean(axis=0))]
