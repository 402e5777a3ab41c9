"""Graph families: standard test graphs, the ladder with finite geometric motion,
the graph with no coarsely distinguishing 2-coloring (and its pigeonhole
adversary), finite Diestel-Leader truncations, edge gadgets, and free products.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import BudgetExceeded, Graph, GraphError, build_graph
from .symmetry import Automorphism

DEFAULT_BUDGET = 200_000


def _check_budget(count: int, budget: int | None, what: str) -> None:
    limit = DEFAULT_BUDGET if budget is None else budget
    if count > limit:
        raise BudgetExceeded(f"{what} needs {count} vertices, budget is {limit}")


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c

    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return build_graph(rows * cols, edges)


def regular_tree_ball(d: int, depth: int, budget: int | None = None) -> Graph:
    """Ball of radius ``depth`` about a vertex of the ``d``-regular tree.

    Vertex 0 is the center; vertices are numbered in BFS order.
    """
    if d < 3 or depth < 0:
        raise GraphError("need d >= 3 and depth >= 0")
    total = 1 + sum(d * (d - 1) ** (k - 1) for k in range(1, depth + 1))
    _check_budget(total, budget, "tree ball")
    edges = []
    level = [0]
    nxt = 1
    for k in range(depth):
        new_level = []
        for v in level:
            for _ in range(d if k == 0 else d - 1):
                edges.append((v, nxt))
                new_level.append(nxt)
                nxt += 1
        level = new_level
    return build_graph(nxt, edges)


def motion_example(L: int) -> Graph:
    """Ladder with an apex: ``x`` joined to ``y_1`` and ``z_1``, rails ``y_i``,
    ``z_i`` and rungs ``y_i z_i``.

    Numbering: ``x = 0``, ``y_i = i``, ``z_i = L + i``.  Swapping the rails is an
    automorphism moving every vertex but ``x`` by exactly one step.
    """
    if L < 1:
        raise GraphError("L must be >= 1")
    edges = [(0, 1), (0, L + 1)]
    for i in range(1, L + 1):
        edges.append((i, L + i))
        if i < L:
            edges += [(i, i + 1), (L + i, L + i + 1)]
    labels = ["x"] + [f"y{i}" for i in range(1, L + 1)] + [f"z{i}" for i in range(1, L + 1)]
    return build_graph(2 * L + 1, edges, labels)


def ladder_swap(L: int) -> Automorphism:
    """The rail swap of :func:`motion_example`."""
    perm = [0] + [L + i for i in range(1, L + 1)] + list(range(1, L + 1))
    return Automorphism(tuple(perm))


# -- graph without a coarsely distinguishing 2-coloring -----------------------


def counterexample_size(N: int) -> int:
    return N + sum(n * (2**n + 1) for n in range(1, N + 1))


def counterexample_layout(N: int) -> tuple[list[int], dict[int, list[list[int]]]]:
    """Vertex numbering of :func:`counterexample_graph`.

    Returns the spine ``[u_1, ..., u_N]`` and, for each ``n``, the list of its
    ``2^n + 1`` copies, each given as ``[v_0, v_1, ..., v_n]`` with ``v_0 = u_n``.
    """
    spine = list(range(N))
    copies: dict[int, list[list[int]]] = {}
    nxt = N
    for n in range(1, N + 1):
        level = []
        for _ in range(2**n + 1):
            level.append([spine[n - 1]] + list(range(nxt, nxt + n)))
            nxt += n
        copies[n] = level
    return spine, copies


def counterexample_graph(N: int, budget: int | None = None) -> Graph:
    """Spine ``u_1 .. u_N`` with ``2^n + 1`` pendant paths of length ``n`` at ``u_n``."""
    if N < 1:
        raise GraphError("N must be >= 1")
    _check_budget(counterexample_size(N), budget, "counterexample graph")
    spine, copies = counterexample_layout(N)
    labels = [f"u{k + 1}" for k in spine]
    edges = [(spine[k], spine[k + 1]) for k in range(N - 1)]
    for n, level in copies.items():
        for i, copy in enumerate(level, start=1):
            labels += [f"v{n}.{i}.{m}" for m in range(1, n + 1)]
            edges += list(zip(copy, copy[1:]))
    return build_graph(len(labels), edges, labels)


def _infer_counterexample_order(g: Graph) -> int:
    N = 1
    while counterexample_size(N) < g.n:
        N += 1
    if counterexample_size(N) != g.n or g != counterexample_graph(N, budget=g.n):
        raise GraphError("graph is not a counterexample_graph(N)")
    return N


def counterexample_adversary(g: Graph, phi: Sequence[int]) -> Automorphism:
    """A non-identity automorphism preserving ``phi`` that swaps two equally
    colored pendant paths at the last spine vertex.

    There are ``2^N + 1`` such paths and only ``2^N`` colorings of the ``N``
    vertices of each, so two of them always agree.  The swapped tips end up
    ``2N`` apart.
    """
    if len(phi) != g.n:
        raise GraphError("coloring length does not match the graph")
    N = _infer_counterexample_order(g)
    _, copies = counterexample_layout(N)
    seen: dict[tuple[int, ...], list[int]] = {}
    for copy in copies[N]:
        key = tuple(phi[v] for v in copy[1:])
        other = seen.get(key)
        if other is not None:
            perm = list(range(g.n))
            for a, b in zip(other[1:], copy[1:]):
                perm[a], perm[b] = b, a
            return Automorphism(tuple(perm), coloring=tuple(phi), preserves_coloring=True)
        seen[key] = copy
    raise AssertionError("pigeonhole failed; coloring is not a 0/1 coloring")


# -- Diestel-Leader truncation -------------------------------------------------


def dl_size(p: int, q: int, H: int) -> int:
    return sum(p**lev * q ** (H - lev) for lev in range(H + 1))


def dl_coordinates(p: int, q: int, H: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Tree coordinates ``((level_p, index), (level_q, index))`` of each vertex of
    :func:`dl_graph`, in vertex order."""
    coords = []
    for lp in range(H + 1):
        lq = H - lp
        for ix in range(p**lp):
            for iy in range(q**lq):
                coords.append(((lp, ix), (lq, iy)))
    return coords


def tree_distance(a: tuple[int, int], b: tuple[int, int], branching: int) -> int:
    """Distance between nodes ``(level, index)`` of a complete rooted tree."""
    (la, ia), (lb, ib) = a, b
    steps = 0
    while la > lb:
        ia //= branching
        la -= 1
        steps += 1
    while lb > la:
        ib //= branching
        lb -= 1
        steps += 1
    while ia != ib:
        ia //= branching
        ib //= branching
        steps += 2
    return steps


def dl_graph(p: int, q: int, H: int, budget: int | None = None) -> Graph:
    """Finite horocyclic product of the complete ``p``-ary and ``q``-ary trees of depth ``H``.

    Vertices are pairs ``(x, y)`` with ``level(x) + level(y) = H``; ``(x, y)`` and
    ``(x', y')`` are adjacent when one coordinate steps to a child and the other
    to its parent.
    """
    if p < 2 or q < 2 or H < 1:
        raise GraphError("need p, q >= 2 and H >= 1")
    _check_budget(dl_size(p, q, H), budget, "Diestel-Leader truncation")
    coords = dl_coordinates(p, q, H)
    index = {c: v for v, c in enumerate(coords)}
    edges = []
    for v, ((lp, ix), (lq, iy)) in enumerate(coords):
        if lp < H:
            up = (lq - 1, iy // q)
            for c in range(p):
                edges.append((v, index[((lp + 1, ix * p + c), up)]))
    labels = [f"x{lp}.{ix}|y{lq}.{iy}" for (lp, ix), (lq, iy) in coords]
    return build_graph(len(coords), edges, labels)


# -- gadget substitution ---------------------------------------------------------

# Each gadget is (path length, index of the path vertex carrying a pendant).
# The path runs from the color-0 end; 00 and 11 are palindromic, 01 is not.
GADGETS = {
    (0, 0): (4, 2),
    (1, 1): (6, 3),
    (0, 1): (5, 2),
}


def gadget_substitute(g: Graph, phi: Sequence[int]) -> Graph:
    """Replace every edge ``{a, b}`` by a rigid gadget chosen by ``{phi(a), phi(b)}``.

    The gadget is a path from ``a`` to ``b`` with one pendant vertex.  Original
    vertices keep their indices; gadget vertices are appended edge by edge, and
    every gadget vertex has degree at most 3.
    """
    if len(phi) != g.n:
        raise GraphError("coloring length does not match the graph")
    if not g.is_connected():
        raise GraphError("gadget substitution needs a connected graph")
    edges = []
    labels = list(g.labels) if g.labels else [f"o{v}" for v in range(g.n)]
    nxt = g.n
    for a, b in g.edges():
        if phi[a] > phi[b]:
            a, b = b, a
        length, pendant_at = GADGETS[(phi[a], phi[b])]
        inner = list(range(nxt, nxt + length - 1))
        pendant = nxt + length - 1
        nxt += length
        chain = [a, *inner, b]
        edges += list(zip(chain, chain[1:]))
        edges.append((chain[pendant_at], pendant))
        labels += [f"g{a}-{b}.{k}" for k in range(1, length)] + [f"g{a}-{b}.w"]
    return build_graph(nxt, edges, labels)


# -- free products -----------------------------------------------------------------


@dataclass(frozen=True)
class PointedGraph:
    graph: Graph
    basepoint: int

    def __post_init__(self):
        self.graph.check_vertex(self.basepoint)
        if not self.graph.is_connected():
            raise GraphError("free product factors must be connected")


def free_product_truncation(
    factors: Sequence[PointedGraph], W: int, budget: int | None = None, start: str = "copy"
) -> Graph:
    """Finite piece of the free product of pointed graphs, built by iterated gluing.

    With ``start="copy"``, begin with one copy of ``factors[0]``.  In each of
    ``W`` rounds, every vertex of a copy of factor ``i`` created in the previous
    round (for the first round: every vertex of the initial copy; later: every
    non-basepoint vertex) gets a fresh copy of each factor ``j != i`` glued at
    its basepoint.

    With ``start="point"``, begin with a single root vertex; the first round
    glues one copy of every factor at it, and later rounds proceed as above.
    This gives the ball of word length ``W``: for two edges, the path on
    ``2W + 1`` vertices.
    """
    if len(factors) < 2:
        raise GraphError("need at least two factors")
    if start not in ("copy", "point"):
        raise GraphError(f"unknown start {start!r}")
    limit = DEFAULT_BUDGET if budget is None else budget
    edges: list[tuple[int, int]] = []
    labels: list[str] = []

    def place(fi: int, anchor: int | None, tag: str) -> list[int]:
        fg, base = factors[fi].graph, factors[fi].basepoint
        ids = []
        for v in range(fg.n):
            if v == base and anchor is not None:
                ids.append(anchor)
            else:
                ids.append(len(labels))
                labels.append(f"{tag}f{fi}.{v}")
        if len(labels) > limit:
            raise BudgetExceeded(f"free product truncation exceeds budget {limit}")
        edges.extend((ids[u], ids[v]) for u, v in fg.edges())
        fresh = [ids[v] for v in range(fg.n) if not (v == base and anchor is not None)]
        return fresh

    if start == "copy":
        frontier = [(0, place(0, None, ""))]
    else:
        labels.append("root")
        frontier = [(-1, [0])]  # the root belongs to no factor
    for rnd in range(1, W + 1):
        new_frontier = []
        for fi, verts in frontier:
            for v in verts:
                for fj in range(len(factors)):
                    if fj != fi:
                        new_frontier.append((fj, place(fj, v, f"r{rnd}@{v}:")))
        frontier = new_frontier
    return build_graph(len(labels), edges, labels)


# -- cycle lengths -------------------------------------------------------------------


@dataclass(frozen=True)
class CycleLengthResult:
    """``status`` is ``"ok"`` (``length`` is exact, 0 for forests), ``"exceeded"``
    (some cycle is longer than the cutoff) or ``"unknown"`` (search budget ran out)."""

    status: str
    length: int | None = None


def biconnected_blocks(g: Graph) -> list[set[int]]:
    """Vertex sets of the biconnected components with at least one edge (iterative Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[set[int]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(g.adj[root]))]
        edge_stack: list[tuple[int, int]] = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.adj[w])))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block = set()
                    while True:
                        a, b = edge_stack.pop()
                        block.update((a, b))
                        if (a, b) == (u, v):
                            break
                    blocks.append(block)
    return blocks


def max_cycle_length(g: Graph, cutoff: int, budget: int = 1_000_000) -> CycleLengthResult:
    """Length of the longest simple cycle, searched block by block with DFS.

    Returns ``exceeded`` as soon as a cycle longer than ``cutoff`` is seen and
    ``unknown`` once ``budget`` DFS steps are spent without a verdict.
    """
    best = 0
    steps = 0
    for block in biconnected_blocks(g):
        if len(block) < 3:
            continue
        block_edges = sum(1 for v in block for w in g.adj[v] if w in block) // 2
        if block_edges == len(block):
            longest = len(block)  # the block is itself a cycle
            if longest > cutoff:
                return CycleLengthResult("exceeded")
            best = max(best, longest)
            continue
        if len(block) <= best:
            continue
        for s in sorted(block):
            path = [s]
            on_path = {s}
            stack = [iter(w for w in g.adj[s] if w in block and w > s)]
            while stack:
                steps += 1
                if steps > budget:
                    return CycleLengthResult("unknown")
                v = path[-1]
                w = next(stack[-1], None)
                if w is None:
                    stack.pop()
                    on_path.discard(path.pop())
                    continue
                if w in on_path:
                    continue
                if len(path) >= 2 and g.has_edge(w, s):
                    cyc = len(path) + 1
                    if cyc > cutoff:
                        return CycleLengthResult("exceeded")
                    best = max(best, cyc)
                path.append(w)
                on_path.add(w)
                stack.append(iter(u for u in g.adj[w] if u in block and u > s and u != v))
    return CycleLengthResult("ok", best)
