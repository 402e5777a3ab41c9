"""Coarsely distinguishing 2-colorings of graphs of bounded degree.

Exact graph metric tools, a net-based coloring pipeline whose color-preserving
automorphisms move every vertex a bounded distance, an automorphism engine to
check that, the graph families where the bound is sharp or fails, and exact
checkers for the growth inequalities that pick the radius.
"""

from .coloring import (
    CapacityError,
    ColoringError,
    NoValidRadius,
    PipelineReport,
    RadiusSelection,
    ab_sets,
    build_psi,
    build_xi,
    choose_R,
    coarse_color_pipeline,
    induced_code,
    realize_phi,
)
from .graph import (
    INFINITY,
    BudgetExceeded,
    Graph,
    GraphError,
    build_graph,
    check_basic_growth_bounds,
    disk,
    distance,
    growth_profile,
    sphere,
)
from .kernels import BACKEND
from .net import Net, QuotientGraph, SpanningTree, build_net, build_quotient, check_net, spanning_tree
from .symmetry import (
    Automorphism,
    check_coarse_bound,
    enumerate_automorphisms,
    find_automorphism,
    graph_motion,
    group_order,
    is_distinguishing,
    max_geometric_motion,
    motion_report,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
