"""File formats: edge lists, coloring files, sweep rows and run manifests.

Edge list
    One ``u v`` pair of integer labels per line, whitespace separated.
    Lines starting with ``#`` are comments. A ``# nodes: N`` comment, as
    written by :func:`write_edge_list`, fixes the node count so isolated
    nodes survive a round trip.

Coloring
    Optional ``# q: Q`` comment, then one ``node color`` line per node.

Rows
    CSV with the header in :data:`CSV_FIELDS`, floats printed with 9
    significant digits, or a JSON array of objects with the same keys.
"""

from __future__ import annotations

import csv
import datetime as _dt
import functools
import io as _io
import json
import math
import os
import re
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .coloring import Coloring
from .graph import Graph, GraphValidationError, build_graph, largest_connected_component

_NODES_RE = re.compile(r"^#\s*nodes\s*:\s*(\d+)\s*$")
_Q_RE = re.compile(r"^#\s*q\s*:\s*(\d+)\s*$")


class EdgeListParseError(ValueError):
    def __init__(self, path, lineno, line):
        super().__init__(f"{path}:{lineno}: expected two integer labels, got {line!r}")
        self.path = path
        self.lineno = lineno


@dataclass(frozen=True)
class EdgeListFile:
    """What the loader learned about an edge-list file."""

    path: str
    base: int
    labels: np.ndarray  # labels[i] is the file label of dense node i
    raw_pairs: int
    self_loops_dropped: int
    duplicates_dropped: int


def _read_pairs(path) -> tuple[np.ndarray, int | None]:
    declared = None
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                if (hit := _NODES_RE.match(s)) is not None:
                    declared = int(hit.group(1))
                continue
            tok = s.split()
            if len(tok) != 2:
                raise EdgeListParseError(path, lineno, s)
            try:
                pairs.append((int(tok[0]), int(tok[1])))
            except ValueError:
                raise EdgeListParseError(path, lineno, s) from None
    return np.array(pairs, dtype=np.int64).reshape(-1, 2), declared


def read_edge_list(path, *, drop_self_loops=True, dedup=True, base=None) -> tuple[Graph, EdgeListFile]:
    """Parse an edge list into a graph plus ingestion details.

    With ``base=None`` labels are remapped densely in ascending order, unless
    the file declares ``# nodes: N``, in which case labels are taken as
    0-based ids. An explicit ``base`` subtracts it from every label and keeps
    any gaps as isolated nodes.
    """
    path = os.fspath(path)
    pairs, declared = _read_pairs(path)
    if len(pairs) == 0 and not declared:
        raise GraphValidationError(f"{path}: no edges found")
    raw = len(pairs)

    if base is None and declared is not None:
        base = 0
    if base is None:
        labels, ids = np.unique(pairs, return_inverse=True)
        ids = ids.reshape(-1, 2)
        n = len(labels)
        detected = int(labels[0]) if len(labels) and labels[0] in (0, 1) else 0
    else:
        if base not in (0, 1):
            raise ValueError("base must be 0 or 1")
        ids = pairs - base
        if ids.size and ids.min() < 0:
            raise GraphValidationError(f"{path}: label below base {base}")
        n = int(ids.max()) + 1 if ids.size else 0
        if declared is not None:
            n = max(n, declared)
        labels = np.arange(n, dtype=np.int64) + base
        detected = base

    loops = ids[:, 0] == ids[:, 1]
    n_loops = int(loops.sum())
    if n_loops:
        if not drop_self_loops:
            raise GraphValidationError(f"{path}: self-loop at label {pairs[loops][0, 0]}")
        ids = ids[~loops]
    key = np.minimum(ids[:, 0], ids[:, 1]) * max(n, 1) + np.maximum(ids[:, 0], ids[:, 1])
    n_dup = len(key) - len(np.unique(key))
    if n_dup and not dedup:
        raise GraphValidationError(f"{path}: {n_dup} duplicate edges")
    g = build_graph(n, ids)
    return g, EdgeListFile(path, detected, labels, raw, n_loops, n_dup)


def load_edge_list(path, *, drop_self_loops=True, dedup=True, take_largest_component=False,
                   base=None, return_mapping=False):
    """Load a graph from an edge-list file.

    With ``return_mapping=True`` also returns a dict from file label to node id
    in the returned graph.
    """
    g, info = read_edge_list(path, drop_self_loops=drop_self_loops, dedup=dedup, base=base)
    mapping = {int(lab): i for i, lab in enumerate(info.labels)}
    if take_largest_component:
        g, sub = largest_connected_component(g)
        mapping = {int(info.labels[old]): new for old, new in sub.items()}
    return (g, mapping) if return_mapping else g


@functools.lru_cache(maxsize=8)
def load_edge_list_cached(path: str, take_largest_component: bool, base) -> Graph:
    return load_edge_list(path, take_largest_component=take_largest_component, base=base)


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# nodes: {g.node_count}\n")
        for u, v in g.edges().tolist():
            fh.write(f"{u} {v}\n")


def write_coloring(col: Coloring, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# q: {col.q}\n")
        for u, c in enumerate(col.colors.tolist()):
            fh.write(f"{u} {c}\n")


def read_coloring(path, n: int | None = None) -> Coloring:
    """Read a coloring file; every node ``0..n-1`` must appear exactly once."""
    q = None
    entries = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                if (hit := _Q_RE.match(s)) is not None:
                    q = int(hit.group(1))
                continue
            tok = s.split()
            try:
                u, c = int(tok[0]), int(tok[1])
                if len(tok) != 2:
                    raise ValueError
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: expected 'node color', got {s!r}") from None
            if u in entries:
                raise ValueError(f"{path}:{lineno}: node {u} listed twice")
            entries[u] = c
    size = n if n is not None else len(entries)
    if sorted(entries) != list(range(size)):
        raise ValueError(f"{path}: coloring must list nodes 0..{size - 1} exactly once")
    colors = np.array([entries[u] for u in range(size)], dtype=np.int64)
    if q is None:
        q = int(colors.max()) + 1 if size else 1
    return Coloring(colors, q)


CSV_FIELDS = ("scheme", "q", "beta", "run", "seed", "f_d", "r_max", "defective_edges",
              "max_defective_degree", "sweeps", "terminated_by")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.9g}"
    return str(value)


def _as_record(row) -> dict:
    return row if isinstance(row, dict) else row.as_record()


def rows_to_csv(rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in rows:
        rec = _as_record(row)
        w.writerow([_fmt(rec[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps([{k: _as_record(r)[k] for k in CSV_FIELDS} for r in rows], indent=1) + "\n"


def write_rows(rows, fmt: str, path) -> None:
    """Write sweep rows as ``csv`` or ``json``; ``path`` of ``-`` means stdout."""
    if fmt == "csv":
        text = rows_to_csv(rows)
    elif fmt == "json":
        text = rows_to_json(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _write_text(text, path)


def _write_text(text, path):
    if path in (None, "-"):
        import sys
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_rows(path, fmt: str | None = None) -> list[dict]:
    """Parse rows back from :func:`write_rows` output as plain dicts."""
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    text = Path(path).read_text()
    if fmt == "json":
        return json.loads(text)
    out = []
    for rec in csv.DictReader(_io.StringIO(text)):
        out.append({
            "scheme": rec["scheme"],
            "q": int(rec["q"]),
            "beta": float(rec["beta"]) if rec["beta"] else None,
            "run": int(rec["run"]),
            "seed": int(rec["seed"]),
            "f_d": float(rec["f_d"]),
            "r_max": int(rec["r_max"]),
            "defective_edges": int(rec["defective_edges"]),
            "max_defective_degree": int(rec["max_defective_degree"]),
            "sweeps": int(rec["sweeps"]),
            "terminated_by": rec["terminated_by"] or None,
        })
    return out


def _jsonable(obj):
    if hasattr(obj, "__dataclass_fields__"):
        return {"type": type(obj).__name__, **{k: _jsonable(v) for k, v in asdict(obj).items()}}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_manifest(path, **payload) -> None:
    """JSON sidecar recording everything needed to rerun a command."""
    from . import __version__
    doc = {
        "tool": "ddcolor",
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        **_jsonable(payload),
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
