"""Finite simple graphs with an exact BFS metric, spheres, disks and growth functions."""

from __future__ import annotations

import math
from bisect import bisect_left
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels

#: Distance between vertices in different components.
INFINITY = math.inf


class GraphError(ValueError):
    """Invalid graph input or an invalid vertex index."""


class BudgetExceeded(RuntimeError):
    """A construction or search would exceed its configured budget."""


class Graph:
    """Immutable finite simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted and symmetric.  Distance rows are computed by
    BFS on first use and cached per source; the cache is guarded so concurrent
    readers see the same rows a sequential caller would.
    """

    __slots__ = ("n", "adj", "labels", "indptr", "indices", "_rows", "_lock", "_connected")

    def __init__(self, n: int, adj: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        self.n = n
        self.adj = tuple(tuple(a) for a in adj)
        self.labels = tuple(labels) if labels is not None else None
        degs = [len(a) for a in self.adj]
        self.indptr = np.zeros(n + 1, dtype=np.int32)
        np.cumsum(degs, out=self.indptr[1:])
        self.indices = np.fromiter((w for a in self.adj for w in a), dtype=np.int32, count=sum(degs))
        self._rows: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self._connected: bool | None = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex {v!r} for graph on {self.n} vertices")

    def dist_row(self, x: int) -> np.ndarray:
        """Distances from ``x`` to every vertex (``-1`` where unreachable). Read-only."""
        row = self._rows.get(x)
        if row is None:
            self.check_vertex(x)
            row = kernels.bfs_distances(self.indptr, self.indices, int(x))
            row.flags.writeable = False
            with self._lock:
                row = self._rows.setdefault(int(x), row)
        return row

    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = self.n == 0 or bool((self.dist_row(0) >= 0).all())
        return self._connected

    def components(self) -> list[list[int]]:
        seen = np.full(self.n, False)
        comps = []
        for v in range(self.n):
            if not seen[v]:
                members = np.flatnonzero(self.dist_row(v) >= 0)
                seen[members] = True
                comps.append(members.tolist())
        return comps


def build_graph(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Duplicate edges (in either orientation) are merged.  Loops and endpoints
    outside ``0..n-1`` raise :class:`GraphError`.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    if labels is not None and len(labels) != n:
        raise GraphError(f"{len(labels)} labels for {n} vertices")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = (int(t) for t in e)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, [sorted(s) for s in nbrs], labels)


def distance(g: Graph, x: int, y: int) -> int | float:
    """Shortest-path length, or :data:`INFINITY` across components."""
    g.check_vertex(y)
    d = int(g.dist_row(x)[y])
    return INFINITY if d < 0 else d


def sphere(g: Graph, x: int, r: int) -> list[int]:
    return np.flatnonzero(g.dist_row(x) == r).tolist()


def disk(g: Graph, x: int, r: int) -> list[int]:
    row = g.dist_row(x)
    return np.flatnonzero((row >= 0) & (row <= r)).tolist()


@dataclass
class GrowthProfile:
    """Sphere sizes ``sigma[r] = |S(x, r)|`` and disk sizes ``beta[r] = |D(x, r)|``."""

    center: int
    sigma: list[int] = field(default_factory=list)
    beta: list[int] = field(default_factory=list)


def sphere_sizes(g: Graph, x: int, r_max: int) -> np.ndarray:
    row = g.dist_row(x)
    counts = np.bincount(row[row >= 0], minlength=r_max + 1)
    return counts[: r_max + 1]


def growth_profile(g: Graph, x: int, r_max: int) -> GrowthProfile:
    sigma = sphere_sizes(g, x, r_max)
    beta = np.cumsum(sigma)
    return GrowthProfile(x, sigma.tolist(), beta.tolist())


@dataclass
class GrowthBoundsReport:
    max_degree: int
    r_max: int
    violations: list[str]
    skipped: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_basic_growth_bounds(g: Graph, r_max: int) -> GrowthBoundsReport:
    """Check the elementary sphere/disk bounds in terms of the maximum degree.

    For every vertex and ``1 <= r <= r_max``::

        sigma(1) <= D,  sigma(r+1) <= sigma(r)(D-1),  sigma(r+1) <= D(D-1)^r,
        beta(r) <= 3(D-1)^r            (only when D > 2)

    Any violation means a bug somewhere in the metric code.
    """
    if not g.is_connected():
        raise GraphError("growth bounds are checked on connected graphs only")
    delta = g.max_degree
    violations: list[str] = []
    skipped: list[str] = []
    if delta <= 2:
        skipped.append(f"disk bound beta(r) <= 3(D-1)^r skipped: max degree {delta} <= 2")
    for x in range(g.n):
        prof = growth_profile(g, x, r_max + 1)
        s, b = prof.sigma, prof.beta
        if s[1] > delta:
            violations.append(f"x={x}: sigma(1)={s[1]} > {delta}")
        for r in range(1, r_max + 1):
            if s[r + 1] > s[r] * (delta - 1):
                violations.append(f"x={x}, r={r}: sigma(r+1)={s[r + 1]} > sigma(r)(D-1)={s[r] * (delta - 1)}")
            if s[r + 1] > delta * (delta - 1) ** r:
                violations.append(f"x={x}, r={r}: sigma(r+1)={s[r + 1]} > D(D-1)^r")
            if delta > 2 and b[r] > 3 * (delta - 1) ** r:
                violations.append(f"x={x}, r={r}: beta(r)={b[r]} > 3(D-1)^r")
    return GrowthBoundsReport(delta, r_max, violations, skipped)
