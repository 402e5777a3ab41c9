"""Shared oracles and strategies.

The oracles here deliberately avoid the package's own kernels: distances come
from a plain-Python BFS and automorphisms from filtering all n! permutations.
"""

from collections import deque
from itertools import permutations

import numpy as np
import pytest
from hypothesis import strategies as st

from coarsecolor.graph import build_graph


def naive_distances(g, x):
    dist = {x: 0}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def naive_automorphisms(g, coloring=None):
    """All adjacency (and color) preserving permutations, sorted."""
    n = g.n
    if n == 0:
        return [()]
    A = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        A[u, v] = A[v, u] = True
    P = np.array(list(permutations(range(n))), dtype=np.intp)
    ok = (A[P[:, :, None], P[:, None, :]] == A[None]).all(axis=(1, 2))
    if coloring is not None:
        col = np.array([-1 if c is None else c for c in coloring])
        ok &= (col[P] == col[None]).all(axis=1)
    return sorted(tuple(int(v) for v in p) for p in P[ok])


def random_connected_graph(rng, n, extra_p=0.1):
    """Random spanning tree plus independent extra edges."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    if n > 1 and extra_p > 0:
        mask = rng.random((n, n)) < extra_p
        for u, v in zip(*np.nonzero(np.triu(mask, 1))):
            edges.add((int(u), int(v)))
    return build_graph(n, sorted(edges))


@st.composite
def connected_graphs(draw, min_n=1, max_n=12, max_extra=None):
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        edges.add((draw(st.integers(0, v - 1)), v))
    if n > 1:
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        k = max_extra if max_extra is not None else n
        for e in draw(st.lists(st.sampled_from(pairs), max_size=k)):
            edges.add(e)
    return build_graph(n, sorted(edges))


@st.composite
def any_graphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
