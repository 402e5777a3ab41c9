"""Exact automorphism search for small and medium graphs.

The search is individualization/refinement without canonical forms: a vertex
``x`` of the smallest non-singleton cell is mapped in turn to every candidate
``y`` of the matching cell, both partitions are split by distance to ``x``
(resp. ``y``) and then refined jointly by neighbor-label multisets until
stable.  A branch dies as soon as the two partitions disagree.  Every leaf is
checked edge by edge, so refinement only ever prunes, it never decides.

Besides full enumeration, orbits are computed with one existence query per
candidate pair.  That gives the exact maximum geometric motion of groups far
too large to list (max over ``f`` of ``max_x d(x, f(x))`` equals the max of
``d(x, y)`` over pairs in a common orbit).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .graph import INFINITY, BudgetExceeded, Graph, GraphError

DEFAULT_MAX_AUTOMORPHISMS = 100_000
DEFAULT_MAX_NODES = 2_000_000


@dataclass(frozen=True)
class Automorphism:
    """A vertex permutation ``v -> perm[v]``.

    ``coloring``/``preserves_coloring`` record which coloring (if any) the map
    was checked against, in the sense ``phi == phi o f``.
    """

    perm: tuple[int, ...]
    coloring: tuple | None = field(default=None, compare=False)
    preserves_coloring: bool | None = field(default=None, compare=False)

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def __len__(self) -> int:
        return len(self.perm)

    @property
    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.perm))

    def compose(self, other: Automorphism) -> Automorphism:
        """``self o other`` (apply ``other`` first)."""
        return Automorphism(tuple(self.perm[v] for v in other.perm))

    def inverse(self) -> Automorphism:
        inv = [0] * len(self.perm)
        for v, w in enumerate(self.perm):
            inv[w] = v
        return Automorphism(tuple(inv))

    def moved(self) -> list[int]:
        return [v for v, w in enumerate(self.perm) if v != w]


def identity(n: int) -> Automorphism:
    return Automorphism(tuple(range(n)))


def is_automorphism(g: Graph, perm: Sequence[int], coloring: Sequence | None = None) -> bool:
    if not kernels.is_automorphism(list(perm), g.indptr, g.indices):
        return False
    return coloring is None or all(coloring[perm[v]] == coloring[v] for v in range(g.n))


def preserves(f: Automorphism, coloring: Sequence) -> bool:
    return all(coloring[f.perm[v]] == coloring[v] for v in range(len(f.perm)))


# -- partition refinement ------------------------------------------------------


def _relabel(left: list, right: list | None):
    """Map keys to dense ids shared by both sides; ``None`` if the key multisets differ."""
    if right is None:
        ids = {k: i for i, k in enumerate(sorted(set(left)))}
        lab = [ids[k] for k in left]
        return lab, lab
    keys = sorted(set(left) | set(right))
    ids = {k: i for i, k in enumerate(keys)}
    lab_l = [ids[k] for k in left]
    lab_r = [ids[k] for k in right]
    if sorted(lab_l) != sorted(lab_r):
        return None
    return lab_l, lab_r


class _Refiner:
    def __init__(self, g: Graph, coloring: Sequence | None):
        self.g = g
        self.adj = g.adj
        self.n = g.n
        if coloring is not None and len(coloring) != g.n:
            raise GraphError("coloring length does not match the graph")
        colors = [0] * g.n if coloring is None else [_color_key(c) for c in coloring]
        keys = [(colors[v], len(self.adj[v])) for v in range(g.n)]
        lab, _ = _relabel(keys, None)
        self.root = self.stabilize(lab, lab)[0]

    def stabilize(self, left, right):
        adj = self.adj
        same = left is right
        classes = max(left, default=-1) + 1
        while True:
            kl = [(left[v], tuple(sorted([left[w] for w in adj[v]]))) for v in range(self.n)]
            kr = None if same else [(right[v], tuple(sorted([right[w] for w in adj[v]]))) for v in range(self.n)]
            res = _relabel(kl, kr)
            if res is None:
                return None
            left, right = res
            if same:
                right = left
            new_classes = max(left, default=-1) + 1
            if new_classes == classes:
                return left, right
            classes = new_classes

    def individualize(self, left, right, x, y):
        dx = self.g.dist_row(x).tolist()
        dy = dx if x == y and left is right else self.g.dist_row(y).tolist()
        kl = list(zip(left, dx))
        if left is right and x == y:
            res = _relabel(kl, None)
        else:
            res = _relabel(kl, list(zip(right, dy)))
        if res is None:
            return None
        lab_l, lab_r = res
        if left is right and x == y:
            lab_r = lab_l
        return self.stabilize(lab_l, lab_r)


def _color_key(c):
    # colors may be ints, None (undefined) or tuples (sphere codes)
    return (0, 0) if c is None else (1, c)


def _search(
    g: Graph,
    coloring: Sequence | None,
    prescribed: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    *,
    on_leaf: Callable[[tuple[int, ...]], bool],
    max_nodes: int = DEFAULT_MAX_NODES,
) -> None:
    """Depth-first search over automorphisms; ``on_leaf`` returns True to stop."""
    if g.n == 0:
        on_leaf(())
        return
    ref = _Refiner(g, coloring)
    left = right = ref.root
    pairs = list(prescribed.items()) if isinstance(prescribed, Mapping) else list(prescribed)
    for x, y in pairs:
        g.check_vertex(x)
        g.check_vertex(y)
        if left[x] != right[y]:
            return
        res = ref.individualize(left, right, x, y)
        if res is None:
            return
        left, right = res
    nodes = 0
    n = g.n
    stack = [(left, right, None, None)]
    while stack:
        left, right, x, cands = stack[-1]
        if cands is None:
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded(f"automorphism search exceeded {max_nodes} nodes")
            sizes: dict[int, int] = {}
            for lab in left:
                sizes[lab] = sizes.get(lab, 0) + 1
            if len(sizes) == n:
                stack.pop()
                where = [0] * n
                for v, lab in enumerate(right):
                    where[lab] = v
                perm = tuple(where[lab] for lab in left)
                if kernels.is_automorphism(perm, g.indptr, g.indices) and (
                    coloring is None or all(coloring[perm[v]] == coloring[v] for v in range(n))
                ):
                    if on_leaf(perm):
                        return
                continue
            target = min((s, lab) for lab, s in sizes.items() if s > 1)[1]
            x = left.index(target)
            cands = iter([v for v in range(n) if right[v] == target])
            stack[-1] = (left, right, x, cands)
        y = next(cands, None)
        if y is None:
            stack.pop()
            continue
        res = ref.individualize(left, right, x, y)
        if res is not None:
            stack.append((res[0], res[1], None, None))


def _wrap(perm, coloring):
    if coloring is None:
        return Automorphism(perm)
    return Automorphism(perm, tuple(coloring), True)


def enumerate_automorphisms(
    g: Graph,
    coloring: Sequence | None = None,
    *,
    prescribed: Mapping[int, int] | None = None,
    max_count: int = DEFAULT_MAX_AUTOMORPHISMS,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> list[Automorphism]:
    """All (color-preserving) automorphisms, sorted; the identity comes first.

    Raises :class:`BudgetExceeded` rather than returning a partial list.
    """
    found: list[tuple[int, ...]] = []

    def leaf(perm):
        found.append(perm)
        if len(found) > max_count:
            raise BudgetExceeded(f"more than {max_count} automorphisms")
        return False

    _search(g, coloring, prescribed or (), on_leaf=leaf, max_nodes=max_nodes)
    found.sort()
    return [_wrap(p, coloring) for p in found]


def find_automorphism(
    g: Graph,
    coloring: Sequence | None = None,
    prescribed: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    *,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> Automorphism | None:
    """Some automorphism extending the prescribed vertex images, or ``None``."""
    hit: list[tuple[int, ...]] = []

    def leaf(perm):
        hit.append(perm)
        return True

    _search(g, coloring, prescribed, on_leaf=leaf, max_nodes=max_nodes)
    return _wrap(hit[0], coloring) if hit else None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, v):
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class OrbitData:
    orbits: list[list[int]]
    witnesses: list[Automorphism]  # automorphisms found while merging orbits

    def orbit_of(self, v: int) -> list[int]:
        for orb in self.orbits:
            if v in orb:
                return orb
        raise KeyError(v)


def orbits(
    g: Graph,
    coloring: Sequence | None = None,
    fixed: Iterable[int] = (),
    *,
    stop_at_first: bool = False,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> OrbitData:
    """Orbits of the (color-preserving) automorphisms fixing ``fixed`` pointwise.

    With ``stop_at_first`` the computation ends at the first non-identity
    automorphism found (used for distinguishing tests).
    """
    fixed = list(fixed)
    base = [(v, v) for v in fixed]
    ref = _Refiner(g, coloring) if g.n else None
    cells: dict[int, list[int]] = {}
    if ref is not None:
        left = ref.root
        for v in fixed:
            left = ref.individualize(left, left, v, v)[0]
        for v, lab in enumerate(left):
            cells.setdefault(lab, []).append(v)
    uf = _UnionFind(g.n)
    done = [False] * g.n
    witnesses: list[Automorphism] = []
    for x in range(g.n):
        if done[uf.find(x)]:
            continue
        cell = cells[left[x]]
        rejected: list[int] = []
        for y in cell:
            if y <= x or uf.find(y) == uf.find(x):
                continue
            ry = uf.find(y)
            if any(uf.find(r) == ry for r in rejected):
                continue
            f = find_automorphism(g, coloring, base + [(x, y)], max_nodes=max_nodes)
            if f is None:
                rejected.append(y)
                continue
            witnesses.append(f)
            for v, w in enumerate(f.perm):
                uf.union(v, w)
            if stop_at_first:
                return OrbitData(_collect(uf, g.n), witnesses)
        done[uf.find(x)] = True
    return OrbitData(_collect(uf, g.n), witnesses)


def _collect(uf, n):
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


# -- motion ----------------------------------------------------------------------


@dataclass
class MotionReport:
    motion: int
    geometric_motion: int | float
    displacement: list[int | float]


def motion_report(g: Graph, f: Automorphism) -> MotionReport:
    if len(f.perm) != g.n:
        raise GraphError("automorphism size does not match the graph")
    disp = []
    for v, w in enumerate(f.perm):
        d = int(g.dist_row(v)[w])
        disp.append(INFINITY if d < 0 else d)
    motion = sum(1 for v, w in enumerate(f.perm) if v != w)
    return MotionReport(motion, max(disp, default=0), disp)


def graph_motion(g: Graph, coloring: Sequence | None = None, **budget) -> tuple[int | float, int | float]:
    """``(m, gm)`` over the non-identity (color-preserving) automorphisms.

    The trivial group gives ``m = inf`` (empty infimum) and ``gm = 0``.
    """
    autos = enumerate_automorphisms(g, coloring, **budget)
    m: int | float = INFINITY
    gm: int | float = 0
    for f in autos:
        if f.is_identity:
            continue
        rep = motion_report(g, f)
        m = min(m, rep.motion)
        gm = max(gm, rep.geometric_motion)
    return m, gm


def group_order(
    g: Graph, coloring: Sequence | None = None, fixed: Iterable[int] = (), **budget
) -> int:
    """Exact order of the (color-preserving) group via a stabilizer chain.

    The order is the product of the orbit sizes of successively fixed base
    points, so no automorphism list is built.
    """
    fixed = list(fixed)
    order = 1
    while True:
        data = orbits(g, coloring, fixed, **budget)
        big = next((orb for orb in data.orbits if len(orb) > 1), None)
        if big is None:
            return order
        order *= len(big)
        fixed.append(big[0])


def max_geometric_motion(
    g: Graph, coloring: Sequence | None = None, fixed: Iterable[int] = (), **budget
) -> int | float:
    """Exact ``gm`` of the group without listing it (via orbits)."""
    best: int | float = 0
    for orb in orbits(g, coloring, fixed, **budget).orbits:
        if len(orb) < 2:
            continue
        for x in orb:
            row = g.dist_row(x)[orb]
            d = int(row.max()) if (row >= 0).all() else INFINITY
            best = max(best, d)
    return best


def stabilizer(g: Graph, x: int, coloring: Sequence | None = None, **budget) -> list[Automorphism]:
    g.check_vertex(x)
    return enumerate_automorphisms(g, coloring, prescribed={x: x}, **budget)


def nontrivial_automorphism(g: Graph, coloring: Sequence | None = None, **budget) -> Automorphism | None:
    data = orbits(g, coloring, stop_at_first=True, **budget)
    return data.witnesses[0] if data.witnesses else None


def is_distinguishing(g: Graph, phi: Sequence, **budget) -> bool:
    """True iff the identity is the only automorphism preserving ``phi``."""
    return nontrivial_automorphism(g, phi, **budget) is None


@dataclass
class Violation:
    x: int
    image: int
    displacement: int | float
    witness: Automorphism


@dataclass
class CoarseBoundReport:
    bound: int
    max_gm: int | float
    violators: list[Violation]

    @property
    def passed(self) -> bool:
        return self.max_gm <= self.bound


def check_coarse_bound(
    g: Graph, phi: Sequence, bound: int, *, max_violators: int = 10, **budget
) -> CoarseBoundReport:
    """Compare ``max gm`` over ``Aut(g, phi)`` with ``bound``.

    Each violator is a vertex ``x``, an image ``y`` in its orbit with
    ``d(x, y) > bound``, and an automorphism realizing ``x -> y``.  Violators are
    listed worst first.
    """
    data = orbits(g, phi, **budget)
    best: int | float = 0
    pairs = []
    for orb in data.orbits:
        if len(orb) < 2:
            continue
        for x in orb:
            row = g.dist_row(x)
            for y in orb:
                d = int(row[y])
                d = INFINITY if d < 0 else d
                best = max(best, d)
                if d > bound:
                    pairs.append((-d, x, y))
    violators = []
    for negd, x, y in sorted(pairs)[:max_violators]:
        f = find_automorphism(g, phi, [(x, y)])
        violators.append(Violation(x, y, -negd, f))
    return CoarseBoundReport(bound, best, violators)


# -- projection to the net quotient ------------------------------------------------


class ProjectionError(RuntimeError):
    """Some net point has no net point within distance 1 of its image."""


def project_automorphism(net, phi: Sequence[int], f: Automorphism, quotient=None) -> Automorphism:
    """The induced permutation of net points: ``y -> ybar``, with ``d(ybar, f(y)) <= 1``.

    The result is indexed by net position and is verified to be an automorphism
    of the quotient graph preserving the induced sphere code.
    """
    from .coloring import induced_code
    from .net import build_quotient

    g = net.base
    pos = {y: i for i, y in enumerate(net.members)}
    images = []
    for y in net.members:
        fy = f.perm[y]
        cands = ([fy] if fy in pos else []) + [w for w in g.adj[fy] if w in pos]
        if not cands:
            raise ProjectionError(f"no net point within distance 1 of f({y}) = {fy}")
        if len(cands) > 1:
            raise ProjectionError(f"several net points within distance 1 of f({y}) = {fy}")
        images.append(pos[cands[0]])
    q = quotient if quotient is not None else build_quotient(net)
    code = induced_code(net, phi)
    bar = Automorphism(tuple(images))
    if not is_automorphism(q.graph, bar.perm):
        raise ProjectionError("projected map is not an automorphism of the quotient")
    if not preserves(bar, code):
        raise ProjectionError("projected map does not preserve the induced code")
    return bar


# -- 2-colorings -------------------------------------------------------------------------


@dataclass
class SearchResult:
    status: str  # "found", "none" (exhaustive proof of nonexistence) or "unknown"
    coloring: list[int] | None = None
    examined: int = 0


def _group_array(g: Graph, **budget) -> np.ndarray:
    autos = [f.perm for f in enumerate_automorphisms(g, **budget) if not f.is_identity]
    return np.asarray(autos, dtype=np.int64).reshape(len(autos), g.n)


def _first_distinguishing(colors: np.ndarray, group: np.ndarray) -> int | None:
    """Row index of the first coloring in ``colors`` fixed by no element of ``group``."""
    alive = np.ones(len(colors), dtype=bool)
    for perm in group:
        alive &= ~(colors[:, perm] == colors).all(axis=1)
        if not alive.any():
            return None
    hits = np.flatnonzero(alive)
    return int(hits[0]) if len(hits) else None


def search_distinguishing_2coloring(
    g: Graph,
    *,
    mode: str = "exhaustive",
    budget: int = 1 << 20,
    seed: int = 0,
    chunk: int = 4096,
) -> SearchResult:
    """Look for a distinguishing 2-coloring.

    ``exhaustive`` walks all ``2^n`` colorings (refusing if that exceeds
    ``budget``) and so can prove nonexistence; ``random`` draws ``budget``
    seeded samples and answers ``unknown`` when none works.
    """
    group = _group_array(g)
    if len(group) == 0:
        return SearchResult("found", [0] * g.n, 1)
    if mode == "exhaustive":
        total = 1 << g.n
        if total > budget:
            raise BudgetExceeded(f"2^{g.n} colorings exceed budget {budget}")
        shifts = np.arange(g.n, dtype=np.int64)
        for start in range(0, total, chunk):
            codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
            colors = ((codes[:, None] >> shifts) & 1).astype(np.int8)
            hit = _first_distinguishing(colors, group)
            if hit is not None:
                return SearchResult("found", colors[hit].tolist(), start + hit + 1)
        return SearchResult("none", None, total)
    if mode == "random":
        rng = np.random.default_rng(seed)
        done = 0
        while done < budget:
            size = min(chunk, budget - done)
            colors = rng.integers(0, 2, size=(size, g.n), dtype=np.int8)
            hit = _first_distinguishing(colors, group)
            if hit is not None:
                return SearchResult("found", colors[hit].tolist(), done + hit + 1)
            done += size
        return SearchResult("unknown", None, done)
    raise ValueError(f"unknown search mode {mode!r}")


@dataclass
class MotionLemmaReport:
    motion: int | float
    group_order: int
    hypothesis_met: bool
    samples: int = 0
    coloring: list[int] | None = None

    @property
    def found(self) -> bool:
        return self.coloring is not None


def motion_lemma_check(g: Graph, trials: int = 1000, seed: int = 0, **budget) -> MotionLemmaReport:
    """Test ``2^m >= |Aut|^2``; when it holds, sample colorings until one is distinguishing."""
    autos = enumerate_automorphisms(g, **budget)
    order = len(autos)
    m = min((len(f.moved()) for f in autos if not f.is_identity), default=INFINITY)
    met = order == 1 or (m != INFINITY and 2**m >= order**2)
    rep = MotionLemmaReport(m, order, met)
    if not met:
        return rep
    group = np.asarray([f.perm for f in autos if not f.is_identity], dtype=np.int64).reshape(order - 1, g.n)
    rng = random.Random(seed)
    for t in range(1, trials + 1):
        c = [rng.randrange(2) for _ in range(g.n)]
        arr = np.asarray([c], dtype=np.int8)
        if len(group) == 0 or _first_distinguishing(arr, group) is not None:
            rep.samples, rep.coloring = t, c
            return rep
    rep.samples = trials
    return rep
