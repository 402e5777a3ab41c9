"""Pure-Python implementations of the hot kernels.

Same signatures and results as ``_ckernels``; selected automatically when the
extension is unavailable or when ``COARSECOLOR_PURE=1`` is set.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def bfs_distances(indptr, indices, source):
    """Hop distances from ``source``; ``-1`` marks unreachable vertices."""
    ptr = indptr.tolist()
    idx = indices.tolist()
    n = len(ptr) - 1
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for k in range(ptr[v], ptr[v + 1]):
            w = idx[k]
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
    return np.asarray(dist, dtype=np.int32)


def multi_source_bfs(indptr, indices, sources):
    """Distance to the nearest source and the position (in ``sources``) of that source.

    Sources are seeded in the given order, so ties go to the earlier source.
    """
    ptr = indptr.tolist()
    idx = indices.tolist()
    n = len(ptr) - 1
    dist = [-1] * n
    owner = [-1] * n
    queue = deque()
    for pos, s in enumerate(sources):
        s = int(s)
        if dist[s] < 0:
            dist[s] = 0
            owner[s] = pos
            queue.append(s)
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for k in range(ptr[v], ptr[v + 1]):
            w = idx[k]
            if dist[w] < 0:
                dist[w] = dv
                owner[w] = owner[v]
                queue.append(w)
    return np.asarray(dist, dtype=np.int32), np.asarray(owner, dtype=np.int32)


def is_automorphism(perm, indptr, indices):
    """True iff ``perm`` maps every edge onto an edge (hence is an automorphism)."""
    ptr = indptr.tolist()
    idx = indices.tolist()
    p = list(perm)
    n = len(ptr) - 1
    if len(p) != n or sorted(p) != list(range(n)):
        return False
    nbrs = [set(idx[ptr[v]:ptr[v + 1]]) for v in range(n)]
    for v in range(n):
        if len(nbrs[v]) != len(nbrs[p[v]]):
            return False
        target = nbrs[p[v]]
        for w in nbrs[v]:
            if p[w] not in target:
                return False
    return True


def min_product_search(delta, length, total):
    """Exhaustive minimization of prod_{i>=3}(a_i + 1) over feasible positive tuples.

    Feasible means a_1 <= delta, a_i <= a_{i-1} * (delta - 1) and sum(a) == total.
    Returns ``(minimum, minimizers, feasible_count)``; minimizers are listed in
    lexicographic order and the minimum is ``None`` when nothing is feasible.
    """
    best = None
    minimizers = []
    count = 0
    a = [0] * length
    growth = delta - 1

    def rec(i, remaining, prod):
        nonlocal best, count
        if i == length:
            if remaining == 0:
                count += 1
                if best is None or prod < best:
                    best = prod
                    minimizers.clear()
                    minimizers.append(tuple(a))
                elif prod == best:
                    minimizers.append(tuple(a))
            return
        cap = delta if i == 0 else a[i - 1] * growth
        hi = min(cap, remaining - (length - i - 1))
        for value in range(1, hi + 1):
            a[i] = value
            rec(i + 1, remaining - value, prod * (value + 1) if i >= 2 else prod)

    rec(0, total, 1)
    return best, minimizers, count
