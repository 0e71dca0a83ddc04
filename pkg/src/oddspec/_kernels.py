"""Hot numeric kernels over CSR adjacency arrays.

Every kernel exists in two flavours with identical semantics:

* ``*_nb``: loop-level source compiled by numba when available;
* ``*_np``: a vectorised numpy (or, for the backtracking search, plain
  Python) fallback.

The public dispatchers at the bottom pick one according to
:data:`oddspec.accel.USE_NUMBA`.  Tests call both flavours directly.
"""

from __future__ import annotations

import numpy as np

from . import accel

# Cycle-search status codes shared with oddspec.cycles.
ABSENT = 0
FOUND = 1
BUDGET = 2


# ---------------------------------------------------------------------------
# adjacency matvec and shifted power iteration
# ---------------------------------------------------------------------------

def _matvec_loop(indptr, indices, x, out):
    n = indptr.shape[0] - 1
    for i in range(n):
        acc = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            acc += x[indices[p]]
        out[i] = acc


_matvec_nb = accel.try_jit(_matvec_loop)


def _power_loop(indptr, indices, x, tol, max_iter):
    # x: nonnegative start vector, normalised in place.
    n = x.shape[0]
    nrm = 0.0
    for i in range(n):
        nrm += x[i] * x[i]
    nrm = np.sqrt(nrm)
    for i in range(n):
        x[i] /= nrm
    y = np.empty(n)
    _matvec_nb(indptr, indices, x, y)
    iters = 1
    mu = 0.0
    for i in range(n):
        mu += x[i] * y[i]
    res = 0.0
    while True:
        res = 0.0
        for i in range(n):
            r = abs(y[i] - mu * x[i])
            if r > res:
                res = r
        if res <= tol * max(1.0, mu) or iters >= max_iter:
            break
        # A + s*I with s = mu/2 damps the -mu end of bipartite-like spectra.
        shift = 0.5 * mu
        nrm = 0.0
        for i in range(n):
            x[i] = y[i] + shift * x[i]
            nrm += x[i] * x[i]
        nrm = np.sqrt(nrm)
        for i in range(n):
            x[i] /= nrm
        _matvec_nb(indptr, indices, x, y)
        iters += 1
        mu = 0.0
        for i in range(n):
            mu += x[i] * y[i]
    return mu, res, iters


def matvec_np(indptr, indices, rows, x):
    return np.bincount(rows, weights=x[indices], minlength=indptr.shape[0] - 1)


def power_np(indptr, indices, rows, x, tol, max_iter):
    x /= np.linalg.norm(x)
    y = matvec_np(indptr, indices, rows, x)
    iters = 1
    mu = float(x @ y)
    while True:
        res = float(np.max(np.abs(y - mu * x)))
        if res <= tol * max(1.0, mu) or iters >= max_iter:
            break
        x *= 0.5 * mu
        x += y
        x /= np.linalg.norm(x)
        y = matvec_np(indptr, indices, rows, x)
        iters += 1
        mu = float(x @ y)
    return mu, res, iters


def matvec_nb(indptr, indices, rows, x):
    out = np.empty(indptr.shape[0] - 1)
    _matvec_nb(indptr, indices, x, out)
    return out


def power_nb(indptr, indices, rows, x, tol, max_iter):
    mu, res, iters = _power_nb(indptr, indices, x, float(tol), int(max_iter))
    return float(mu), float(res), int(iters)


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------

def _triangles_per_vertex_loop(indptr, indices):
    # Sorted-merge intersection over u < v < w; credits each corner.
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if v <= u:
                continue
            a = indptr[u]
            b = indptr[v]
            ea = indptr[u + 1]
            eb = indptr[v + 1]
            while a < ea and b < eb:
                wa = indices[a]
                wb = indices[b]
                if wa < wb:
                    a += 1
                elif wb < wa:
                    b += 1
                else:
                    if wa > v:
                        out[u] += 1
                        out[v] += 1
                        out[wa] += 1
                    a += 1
                    b += 1
    return out


def triangles_per_vertex_np(indptr, indices, chunk=1024):
    # float64 so the product goes through BLAS; counts stay far below 2**53
    n = indptr.shape[0] - 1
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    a = np.zeros((n, n))
    rows = np.repeat(np.arange(n), np.diff(indptr))
    a[rows, indices] = 1.0
    out = np.empty(n, dtype=np.int64)
    for lo in range(0, n, chunk):
        block = a[lo:lo + chunk]
        out[lo:lo + chunk] = np.rint(((block @ a) * block).sum(axis=1)).astype(np.int64) // 2
    return out


def triangles_per_vertex_nb(indptr, indices):
    return _triangles_nb(indptr, indices)


# ---------------------------------------------------------------------------
# fixed-length cycle search
# ---------------------------------------------------------------------------

def _cycle_search(indptr, indices, t, budget, witness):
    """Backtracking search for a cycle on exactly ``t`` vertices.

    Cycles are anchored at their lowest vertex ``s`` and only vertices above
    ``s`` are explored.  Pruning: BFS distance to ``s`` inside the vertices
    ``>= s`` must fit the remaining length, the anchored component must hold
    at least ``t`` vertices, odd ``t`` skips bipartite components, and
    reflections are cut by requiring ``path[1] < path[t-1]``.

    Returns ``(status, expansions)``; on FOUND the cycle is in ``witness``.
    """
    n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    on_path = np.zeros(n, dtype=np.bool_)
    path = np.empty(t, dtype=np.int64)
    ptr = np.empty(t, dtype=np.int64)
    expansions = 0
    odd = t % 2 == 1
    for s in range(n - t + 1):
        for i in range(n):
            dist[i] = -1
        dist[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        bipartite = True
        while head < tail:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if w < s:
                    continue
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue[tail] = w
                    tail += 1
                elif (dist[w] - dist[v]) % 2 == 0:
                    bipartite = False
        if tail < t:
            continue
        if odd and bipartite:
            continue

        path[0] = s
        on_path[s] = True
        ptr[0] = indptr[s]
        depth = 0
        while depth >= 0:
            v = path[depth]
            if ptr[depth] >= indptr[v + 1]:
                on_path[v] = False
                depth -= 1
                continue
            w = indices[ptr[depth]]
            ptr[depth] += 1
            if w <= s or on_path[w] or dist[w] < 0:
                continue
            nxt = depth + 1
            if dist[w] > t - nxt:
                continue
            if nxt == t - 1 and w < path[1]:
                continue
            expansions += 1
            if expansions > budget:
                return BUDGET, expansions
            path[nxt] = w
            if nxt == t - 1:
                # dist[w] <= 1 here, so w closes the cycle back to s.
                for i in range(t):
                    witness[i] = path[i]
                return FOUND, expansions
            on_path[w] = True
            ptr[nxt] = indptr[w]
            depth = nxt
    return ABSENT, expansions


def cycle_search_py(indptr, indices, t, budget, witness):
    status, expansions = _cycle_search(indptr, indices, t, budget, witness)
    return int(status), int(expansions)


def cycle_search_nb(indptr, indices, t, budget, witness):
    status, expansions = _cycle_search_nb(indptr, indices, np.int64(t), np.int64(budget), witness)
    return int(status), int(expansions)


# ---------------------------------------------------------------------------
# compiled variants and dispatch
# ---------------------------------------------------------------------------

_power_nb = accel.try_jit(_power_loop)
_triangles_nb = accel.try_jit(_triangles_per_vertex_loop)
_cycle_search_nb = accel.try_jit(_cycle_search)


if accel.USE_NUMBA:
    matvec = matvec_nb
    power_iterate = power_nb
    triangles_per_vertex = triangles_per_vertex_nb
    cycle_search = cycle_search_nb
else:
    matvec = matvec_np
    power_iterate = power_np
    triangles_per_vertex = triangles_per_vertex_np
    cycle_search = cycle_search_py
