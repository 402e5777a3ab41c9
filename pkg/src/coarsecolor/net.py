"""Separated, coarsely dense nets, their quotient graphs and BFS spanning trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph, GraphError, build_graph


class NetError(RuntimeError):
    """A net or quotient failed one of its structural guarantees."""


@dataclass(frozen=True)
class Net:
    """``members`` is ``(2R+1)``-separated and ``2R``-coarsely dense in ``base``."""

    base: Graph = field(repr=False)
    R: int
    anchor: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def position(self, y: int) -> int:
        return self.members.index(y)


def build_net(g: Graph, R: int, anchor: int = 0) -> Net:
    """Greedy maximal ``(2R+1)``-separated set containing ``anchor``.

    Admit the anchor, then repeatedly the smallest-index vertex not yet within
    ``2R`` of an admitted one.  Maximality gives ``2R``-density.
    """
    if R < 1:
        raise GraphError("R must be >= 1")
    g.check_vertex(anchor)
    if not g.is_connected():
        raise GraphError("nets are built on connected graphs")
    excluded = np.zeros(g.n, dtype=bool)
    members = []
    order = [anchor] + [v for v in range(g.n) if v != anchor]
    for v in order:
        if excluded[v]:
            continue
        members.append(v)
        row = g.dist_row(v)
        excluded |= (row >= 0) & (row <= 2 * R)
    return Net(g, R, anchor, tuple(sorted(members)))


def check_net(net: Net) -> list[str]:
    """Separation, density and anchor membership problems (empty when valid)."""
    g, R = net.base, net.R
    problems = []
    if net.anchor not in net.members:
        problems.append("anchor is not a member")
    for i, y in enumerate(net.members):
        row = g.dist_row(y)
        for y2 in net.members[i + 1:]:
            if 0 <= row[y2] < 2 * R + 1:
                problems.append(f"members {y} and {y2} at distance {row[y2]} < {2 * R + 1}")
    if g.n:
        dist, _ = kernels.multi_source_bfs(g.indptr, g.indices, list(net.members))
        far = np.flatnonzero((dist < 0) | (dist > 2 * R))
        problems += [f"vertex {v} is farther than {2 * R} from the net" for v in far.tolist()]
    return problems


@dataclass(frozen=True)
class QuotientGraph:
    """Net points (by position in ``net.members``) adjacent iff ``0 < d <= 4R + 1``."""

    net: Net = field(repr=False)
    graph: Graph


def build_quotient(net: Net) -> QuotientGraph:
    g, R = net.base, net.R
    reach = 4 * R + 1
    members = np.asarray(net.members, dtype=np.int64)
    edges = []
    for i, y in enumerate(net.members):
        row = g.dist_row(y)[members]
        for j in np.flatnonzero((row > 0) & (row <= reach)).tolist():
            if j > i:
                edges.append((i, j))
    q = build_graph(len(members), edges)
    if not q.is_connected():
        raise NetError("quotient graph is disconnected")
    for i, y in enumerate(net.members):
        row = g.dist_row(y)
        ball = int(((row >= 0) & (row <= reach)).sum())
        if len(q.adj[i]) > ball - 1:
            raise NetError(f"net point {y} has quotient degree {len(q.adj[i])} > |D(y, {reach})| - 1 = {ball - 1}")
    return QuotientGraph(net, q)


@dataclass(frozen=True)
class SpanningTree:
    """BFS tree of the quotient; all indices are net positions."""

    quotient: QuotientGraph = field(repr=False)
    root: int
    parent: tuple[int, ...]  # parent[root] == -1
    children: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    order: tuple[int, ...]  # BFS visiting order


def spanning_tree(q: QuotientGraph, root: int = 0) -> SpanningTree:
    """BFS tree from ``root``; each vertex hangs from its smallest-index parent candidate."""
    qg = q.graph
    qg.check_vertex(root)
    depth = [-1] * qg.n
    parent = [-1] * qg.n
    depth[root] = 0
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in qg.adj[v]:
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                queue.append(w)
                order.append(w)
    # smallest-index parent among all neighbors one level up
    for v in range(qg.n):
        if v != root:
            parent[v] = min(w for w in qg.adj[v] if depth[w] == depth[v] - 1)
    children = [[] for _ in range(qg.n)]
    for v in range(qg.n):
        if parent[v] >= 0:
            children[parent[v]].append(v)
    order.sort(key=lambda v: (depth[v], v))
    return SpanningTree(q, root, tuple(parent), tuple(tuple(c) for c in children), tuple(depth), tuple(order))
