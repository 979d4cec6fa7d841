"""Compiled inner loop for one sweep of single-node LCI updates."""

import numpy as np
from numba import njit

TIE_RTOL = 1e-9


@njit(cache=True, inline="always")
def tied(a, b, exact):
    if exact:
        return a == b
    return abs(a - b) <= TIE_RTOL * max(1.0, abs(a), abs(b))


@njit(cache=True)
def sweep(indptr, indices, weights, colors, q, nodes, ties, exact, defects):
    """Apply one update per entry of ``nodes``; return (defects, changes).

    ``ties[i]`` is a uniform draw in [0, 1) that picks among the minimizers
    for step ``i``. ``defects`` is the running defective-edge count and is
    kept exact through each recoloring.
    """
    totals = np.zeros(q, dtype=np.float64)
    counts = np.zeros(q, dtype=np.int64)
    best = np.empty(q, dtype=np.int64)
    changes = 0
    for i in range(len(nodes)):
        u = nodes[i]
        cu = colors[u]
        start = indptr[u]
        stop = indptr[u + 1]
        defective = False
        for e in range(start, stop):
            if colors[indices[e]] == cu:
                defective = True
                break
        if not defective:
            continue
        totals[:] = 0.0
        counts[:] = 0
        for e in range(start, stop):
            v = indices[e]
            totals[colors[v]] += weights[v]
            counts[colors[v]] += 1
        lo = totals[0]
        for c in range(1, q):
            if totals[c] < lo:
                lo = totals[c]
        nbest = 0
        for c in range(q):
            if tied(totals[c], lo, exact):
                best[nbest] = c
                nbest += 1
        new = best[int(ties[i] * nbest)]
        if new != cu:
            defects += counts[new] - counts[cu]
            colors[u] = new
            changes += 1
    return defects, changes
