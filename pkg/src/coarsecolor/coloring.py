"""The coarse coloring pipeline: radius choice, partial coloring, sphere codes, realization."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .graph import BudgetExceeded, Graph, GraphError, sphere_sizes
from .growth import GrowthFormula
from .net import Net, QuotientGraph, SpanningTree, build_net, build_quotient, spanning_tree

DEFAULT_R_CAP = 101


class ColoringError(RuntimeError):
    """Base class for pipeline failures."""


class CapacityError(ColoringError):
    """Sphere capacities too small for the codes a net point needs."""


class NoValidRadius(ColoringError):
    """No radius up to the cap satisfies the capacity inequality."""


@dataclass(frozen=True)
class RadiusSelection:
    R: int
    A: tuple[int, ...]  # even radii colored 1
    B: tuple[int, ...]  # odd radii left free for the sphere code


def ab_sets(R: int) -> RadiusSelection:
    if R < 5 or R % 2 == 0:
        raise ValueError(f"R must be odd and >= 5, got {R}")
    h = (R - 1) // 2
    return RadiusSelection(R, tuple(2 * n for n in range(2, h + 1)), tuple(2 * n + 1 for n in range(1, h + 1)))


# -- radius choice ---------------------------------------------------------------------------


def _capacity_product(sigma: Sequence[int], B: Sequence[int]) -> int:
    out = 1
    for r in B:
        out *= int(sigma[r]) + 1
    return out


def capacity_holds(sigma: Sequence[int], R: int) -> bool:
    """``prod_{r in B}(sigma(r)+1) > beta(4R+1)`` for one base point, exactly."""
    sel = ab_sets(R)
    beta = sum(int(s) for s in sigma[: 4 * R + 2])
    return _capacity_product(sigma, sel.B) > beta


def default_boundary(g: Graph) -> list[int]:
    """Vertices of less than maximum degree: where a finite truncation was cut."""
    delta = g.max_degree
    return [v for v in range(g.n) if len(g.adj[v]) < delta]


def interior_vertices(g: Graph, R: int, boundary: Sequence[int] | None = None) -> list[int]:
    """Vertices farther than ``4R+1`` from the boundary set."""
    boundary = default_boundary(g) if boundary is None else list(boundary)
    if not boundary:
        return list(range(g.n))
    dist, _ = kernels.multi_source_bfs(g.indptr, g.indices, boundary)
    return np.flatnonzero((dist < 0) | (dist > 4 * R + 1)).tolist()


def _checked_vertices(g: Graph, R: int, mode: str, boundary) -> list[int]:
    if mode == "strict":
        return list(range(g.n))
    if mode == "interior":
        return interior_vertices(g, R, boundary)
    if mode == "formula":
        return []
    raise ValueError(f"unknown mode {mode!r}")


def _first_failure(g: Graph, R: int, vertices: Sequence[int], hint: int | None) -> int | None:
    order = list(vertices)
    if hint is not None and hint in order:
        order.remove(hint)
        order.insert(0, hint)
    for x in order:
        if not capacity_holds(sphere_sizes(g, x, 4 * R + 1), R):
            return x
    return None


def choose_R(
    source: Graph | GrowthFormula,
    mode: str = "strict",
    *,
    boundary: Sequence[int] | None = None,
    cap: int = DEFAULT_R_CAP,
) -> int:
    """Smallest odd ``R >= 5`` (up to ``cap``) meeting the capacity inequality.

    ``strict`` checks every vertex, ``interior`` only those farther than
    ``4R+1`` from ``boundary``, ``formula`` a :class:`GrowthFormula`.
    """
    if mode == "formula" or isinstance(source, GrowthFormula):
        if not isinstance(source, GrowthFormula):
            raise ValueError("formula mode needs a GrowthFormula")
        for R in range(5, cap + 1, 2):
            sel = ab_sets(R)
            if _capacity_product([source.sigma(r) for r in range(R + 1)], sel.B) > source.beta(4 * R + 1):
                return R
        raise NoValidRadius(f"{source.name}: no odd R in [5, {cap}] satisfies the capacity inequality")
    if not source.is_connected():
        raise GraphError("choose_R needs a connected graph")
    hint = None
    for R in range(5, cap + 1, 2):
        hint = _first_failure(source, R, _checked_vertices(source, R, mode, boundary), hint)
        if hint is None:
            return R
    raise NoValidRadius(f"no odd R in [5, {cap}] satisfies the capacity inequality; worst vertex {hint}")


# -- partial coloring -------------------------------------------------------------------------


def _distance_to_net(net: Net) -> np.ndarray:
    g = net.base
    dist, _ = kernels.multi_source_bfs(g.indptr, g.indices, list(net.members))
    return dist


def build_psi(net: Net, sel: RadiusSelection) -> list[int | None]:
    """Partial coloring by distance to the net; ``None`` on the ``B`` spheres."""
    if net.R != sel.R:
        raise ValueError(f"net built for R={net.R}, selection for R={sel.R}")
    dist = _distance_to_net(net)
    psi: list[int | None] = []
    B = set(sel.B)
    for d in dist.tolist():
        if d in (0, 1):
            psi.append(0)
        elif d in B:
            psi.append(None)
        else:  # 2, the A radii, and everything beyond R
            psi.append(1)
    return psi


# -- sphere codes ----------------------------------------------------------------------------


def sphere_capacities(net: Net, sel: RadiusSelection) -> list[tuple[int, ...]]:
    """``sigma_y(r)`` for each net point and each ``r`` in ``B``."""
    out = []
    for y in net.members:
        sig = sphere_sizes(net.base, y, sel.R)
        out.append(tuple(int(sig[r]) for r in sel.B))
    return out


XI_STRATEGIES = ("tree", "level", "global")


def build_xi(
    net: Net,
    q: QuotientGraph,
    t: SpanningTree,
    capacities: Sequence[Sequence[int]],
    strategy: str = "tree",
) -> list[tuple[int, ...]]:
    """Assign sphere codes to net points in BFS order of ``t``.

    The root gets all zeros.  Every other point takes the lexicographically
    smallest nonzero tuple within its capacities avoiding the codes already
    given to its siblings (``tree``), its BFS level (``level``) or every net
    point (``global``).
    """
    if strategy not in XI_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    k = len(capacities[0]) if capacities else 0
    codes: list[tuple[int, ...] | None] = [None] * len(net.members)
    codes[t.root] = (0,) * k
    by_level: dict[int, set] = {}
    used_all = {codes[t.root]}
    for v in t.order:
        if v == t.root:
            continue
        if strategy == "tree":
            taken = {codes[s] for s in t.children[t.parent[v]] if codes[s] is not None}
        elif strategy == "level":
            taken = by_level.setdefault(t.depth[v], set())
        else:
            taken = used_all
        cap = capacities[v]
        code = None
        for cand in itertools.product(*(range(c + 1) for c in cap)):
            if any(cand) and cand not in taken:
                code = cand
                break
        if code is None:
            raise CapacityError(
                f"net point {net.members[v]} has no free code: capacities {tuple(cap)}, {len(taken)} taken"
            )
        codes[v] = code
        by_level.setdefault(t.depth[v], set()).add(code)
        used_all.add(code)
    return codes  # type: ignore[return-value]


def realize_phi(net: Net, psi: Sequence[int | None], xi: Sequence[Sequence[int]], sel: RadiusSelection) -> list[int]:
    """Put ``xi[y][r]`` ones on the smallest-index vertices of each ``S(y, r)``."""
    phi = list(psi)
    g = net.base
    for i, y in enumerate(net.members):
        row = g.dist_row(y)
        for k, r in enumerate(sel.B):
            sph = np.flatnonzero(row == r).tolist()
            want = int(xi[i][k])
            if not 0 <= want <= len(sph):
                raise CapacityError(f"code {want} exceeds |S({y}, {r})| = {len(sph)}")
            for j, v in enumerate(sph):
                phi[v] = 1 if j < want else 0
    missing = [v for v, c in enumerate(phi) if c is None]
    if missing:
        raise ColoringError(f"vertices left uncolored: {missing[:10]}")
    return phi  # type: ignore[return-value]


def induced_code(net: Net, phi: Sequence[int], sel: RadiusSelection | None = None) -> list[tuple[int, ...]]:
    """Number of color-1 vertices on each ``B`` sphere of each net point."""
    sel = ab_sets(net.R) if sel is None else sel
    ones = np.asarray(phi) == 1
    out = []
    for y in net.members:
        row = net.base.dist_row(y)
        out.append(tuple(int((ones & (row == r)).sum()) for r in sel.B))
    return out


# -- pipeline --------------------------------------------------------------------------------


@dataclass
class PipelineReport:
    R: int | None
    mode: str
    net: list[int] = field(default_factory=list)
    xi: list[list[int]] = field(default_factory=list)
    xi_strategy: str | None = None
    xi_distinguishing: bool | None = None  # on the quotient; None if not decided
    capacity_margin: int | None = None  # min over net points of free codes minus codes needed
    growth_margin: int | None = None  # min of prod - beta over checked vertices
    checked_vertices: int = 0
    exempt_vertices: int = 0
    degenerate: bool = False
    bound: int | None = None
    max_gm: int | float | None = None
    bound_ok: bool | None = None

    @property
    def net_size(self) -> int:
        return len(self.net)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["net_size"] = self.net_size
        if d["max_gm"] == float("inf"):
            d["max_gm"] = "inf"
        return d


def _growth_margin(g: Graph, R: int, vertices: Sequence[int]) -> int | None:
    sel = ab_sets(R)
    margin = None
    for x in vertices:
        sig = sphere_sizes(g, x, 4 * R + 1)
        m = _capacity_product(sig, sel.B) - int(sig.sum())
        margin = m if margin is None else min(margin, m)
    return margin


def _capacity_margin(t: SpanningTree, caps, codes, strategy: str) -> int:
    free = [_capacity_product(c, range(len(c))) - 1 for c in caps]
    margin = None
    for v in range(len(caps)):
        if v == t.root:
            continue
        if strategy == "tree":
            need = len(t.children[t.parent[v]])
        elif strategy == "level":
            need = sum(1 for w in range(len(caps)) if t.depth[w] == t.depth[v])
        else:
            need = len(caps) - 1
        m = free[v] - need
        margin = m if margin is None else min(margin, m)
    return 0 if margin is None else margin


def coarse_color_pipeline(
    g: Graph,
    R: int | None = None,
    mode: str = "strict",
    *,
    anchor: int = 0,
    boundary: Sequence[int] | None = None,
    formula: GrowthFormula | None = None,
    verify: bool = False,
    cap: int = DEFAULT_R_CAP,
    max_nodes: int | None = None,
) -> tuple[list[int], PipelineReport]:
    """Net, quotient, tree, partial coloring, codes, realization.

    In ``formula`` mode ``R`` comes from ``formula`` and no vertex of ``g``
    is checked.  With ``verify`` the maximum geometric motion over color-preserving
    automorphisms is computed and compared against ``4R + 1``.
    """
    if not g.is_connected():
        raise GraphError("the pipeline needs a connected graph")
    if g.n == 1:
        rep = PipelineReport(R, mode, net=[0], degenerate=True)
        if verify:
            rep.max_gm, rep.bound_ok = 0, True
        return [0], rep

    if mode == "formula" and formula is None and R is None:
        raise ValueError("formula mode needs a formula or an explicit R")
    if R is None:
        R = choose_R(formula if mode == "formula" else g, mode, boundary=boundary, cap=cap)
    sel = ab_sets(R)
    checked = _checked_vertices(g, R, mode, boundary)
    failing = _first_failure(g, R, checked, None)
    if failing is not None:
        raise CapacityError(f"capacity inequality fails at vertex {failing} for R={R}")

    rep = PipelineReport(R, mode, checked_vertices=len(checked), exempt_vertices=g.n - len(checked))
    rep.growth_margin = _growth_margin(g, R, checked)
    net = build_net(g, R, anchor)
    q = build_quotient(net)
    t = spanning_tree(q, net.position(anchor))
    caps = sphere_capacities(net, sel)
    psi = build_psi(net, sel)

    from .symmetry import is_distinguishing

    budget = {} if max_nodes is None else {"max_nodes": max_nodes}
    codes = None
    for strategy in XI_STRATEGIES:
        try:
            attempt = build_xi(net, q, t, caps, strategy)
        except CapacityError:
            if codes is None:
                raise
            break
        codes, rep.xi_strategy = attempt, strategy
        try:
            rep.xi_distinguishing = is_distinguishing(q.graph, codes, **budget)
        except BudgetExceeded:
            rep.xi_distinguishing = None
            break
        if rep.xi_distinguishing:
            break
    assert codes is not None
    rep.capacity_margin = _capacity_margin(t, caps, codes, rep.xi_strategy)
    rep.net = list(net.members)
    rep.xi = [list(c) for c in codes]
    phi = realize_phi(net, psi, codes, sel)
    if verify:
        from .symmetry import max_geometric_motion

        rep.bound = 4 * R + 1
        rep.max_gm = max_geometric_motion(g, phi, **budget)
        rep.bound_ok = rep.max_gm <= rep.bound
    return phi, rep
