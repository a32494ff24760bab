"""Hot inner loops: union-find labelling and the stage replay of the
finite-component priority construction.

Each kernel has a numba version and a pure-numpy version with identical
outputs. Set ``GRAPHCOMP_PURE_NUMPY=1`` to force the numpy path (numba is
also skipped if it cannot be imported).
"""

from __future__ import annotations

import os

import numpy as np

NO_ATTENTION = -1

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def _flag_pure_numpy() -> bool:
    return os.environ.get("GRAPHCOMP_PURE_NUMPY", "").strip().lower() in {"1", "true", "yes"}


USE_NUMBA = _HAVE_NUMBA and not _flag_pure_numpy()


# ---------------------------------------------------------------------------
# component labelling

def label_components_numpy(n: int, edges: np.ndarray) -> np.ndarray:
    """Label each of ``n`` vertices with the least index of its component.

    Min-label propagation followed by pointer jumping, repeated to a fixed
    point.
    """
    labels = np.arange(n, dtype=np.int64)
    if n == 0 or len(edges) == 0:
        return labels
    a = edges[:, 0]
    b = edges[:, 1]
    while True:
        prev = labels.copy()
        m = np.minimum(labels[a], labels[b])
        np.minimum.at(labels, a, m)
        np.minimum.at(labels, b, m)
        # labels[x] <= x always, so jumping converges
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(prev, labels):
            return labels


if _HAVE_NUMBA:

    @njit(cache=True)
    def _find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def label_components_numba(n, edges):
        parent = np.arange(n, dtype=np.int64)
        for k in range(edges.shape[0]):
            ra = _find(parent, edges[k, 0])
            rb = _find(parent, edges[k, 1])
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
        labels = np.empty(n, dtype=np.int64)
        for x in range(n):
            labels[x] = _find(parent, x)
        return labels

else:  # pragma: no cover
    label_components_numba = None


def label_components(n: int, edges) -> np.ndarray:
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if USE_NUMBA:
        return label_components_numba(n, edges)
    return label_components_numpy(n, edges)


# ---------------------------------------------------------------------------
# finite-component construction replay
#
# Components of every G_s are index intervals [lo, hi]. At stage s+1 the
# interval [lo, hi] needs attention iff some n in [hi, s) has f(n) <= lo.
# ``run_min`` tracks min f[hi:s] per interval (INF when the range is empty).

_INF = np.iinfo(np.int64).max


def fc_attention_numpy(fvals: np.ndarray, stages: int) -> np.ndarray:
    """Return ``attend`` with ``attend[s]`` the index attended at stage
    ``s+1`` or ``NO_ATTENTION``."""
    attend = np.full(stages, NO_ATTENTION, dtype=np.int64)
    lo = np.zeros(1, dtype=np.int64)
    run_min = np.full(1, _INF, dtype=np.int64)
    for s in range(stages):
        hits = np.flatnonzero(run_min <= lo)
        if hits.size:
            c = hits[0]
            attend[s] = lo[c]
            lo = lo[: c + 1].copy()
            run_min = np.append(run_min[:c], _INF).astype(np.int64)
        else:
            lo = np.append(lo, s + 1).astype(np.int64)
            run_min = np.append(run_min, _INF).astype(np.int64)
        if s + 1 < stages:
            # entering stage s+2: ranges [hi, s+1) gain f(s) unless hi == s+1
            old = run_min[:-1]
            run_min[:-1] = np.minimum(old, fvals[s])
    return attend


if _HAVE_NUMBA:

    @njit(cache=True)
    def fc_attention_numba(fvals, stages):
        attend = np.full(stages, -1, dtype=np.int64)
        lo = np.zeros(stages + 1, dtype=np.int64)
        run_min = np.full(stages + 1, _INF, dtype=np.int64)
        ncomp = 1
        for s in range(stages):
            c = -1
            for k in range(ncomp):
                if run_min[k] <= lo[k]:
                    c = k
                    break
            if c >= 0:
                attend[s] = lo[c]
                ncomp = c + 1
                run_min[c] = _INF
            else:
                lo[ncomp] = s + 1
                run_min[ncomp] = _INF
                ncomp += 1
            if s + 1 < stages:
                v = fvals[s]
                for k in range(ncomp - 1):
                    if v < run_min[k]:
                        run_min[k] = v
        return attend

else:  # pragma: no cover
    fc_attention_numba = None


def fc_attention(fvals, stages: int) -> np.ndarray:
    fvals = np.asarray(fvals, dtype=np.int64)
    if USE_NUMBA:
        return fc_attention_numba(fvals, stages)
    return fc_attention_numpy(fvals, stages)
