import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsecolor.generators import complete_graph, cycle_graph, path_graph, regular_tree_ball
from coarsecolor.graph import (
    INFINITY,
    GraphError,
    build_graph,
    check_basic_growth_bounds,
    disk,
    distance,
    growth_profile,
    sphere,
)

from conftest import any_graphs, connected_graphs, naive_distances


def test_build_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert g.adj == ((1,), (0, 2), (1,))
    assert g.edges() == [(0, 1), (1, 2)]


def test_build_cycle():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert all(g.degree(v) == 2 for v in range(4))
    assert g.edge_count == 4


def test_duplicates_merged():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1), (2, 1)])
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("n,edges", [(2, [(0, 0)]), (2, [(0, 2)]), (2, [(-1, 0)])])
def test_bad_edges_rejected(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_label_count_checked():
    with pytest.raises(GraphError):
        build_graph(2, [(0, 1)], labels=["a"])


def test_distance_examples():
    p3 = path_graph(3)
    assert distance(p3, 0, 2) == 2
    assert distance(p3, 1, 1) == 0
    two = build_graph(4, [(0, 1), (2, 3)])
    assert distance(two, 0, 3) == INFINITY
    assert math.isinf(distance(two, 0, 3))


def test_invalid_vertex():
    g = path_graph(3)
    with pytest.raises(GraphError):
        distance(g, 0, 3)
    with pytest.raises(GraphError):
        sphere(g, 5, 1)
    with pytest.raises(GraphError):
        growth_profile(g, -1, 2)


def test_spheres_on_c4():
    c4 = cycle_graph(4)
    assert sphere(c4, 0, 1) == [1, 3]
    assert sphere(c4, 0, 2) == [2]
    assert disk(c4, 0, 1) == [0, 1, 3]


def test_tree_sphere_sizes():
    t = regular_tree_ball(3, 5)
    assert len(sphere(t, 0, 3)) == 12
    assert growth_profile(t, 0, 5).beta[5] == 94


def test_growth_examples():
    prof = growth_profile(path_graph(3), 1, 1)
    assert prof.sigma == [1, 2] and prof.beta == [1, 3]
    c = cycle_graph(200)
    for x in (0, 77, 199):
        assert growth_profile(c, x, 99).sigma[1:] == [2] * 99


def test_dist_row_is_read_only():
    row = path_graph(4).dist_row(0)
    with pytest.raises(ValueError):
        row[1] = 7


def test_components():
    g = build_graph(5, [(0, 3), (1, 2)])
    assert g.components() == [[0, 3], [1, 2], [4]]
    assert not g.is_connected()


def test_basic_bounds_examples():
    assert check_basic_growth_bounds(complete_graph(4), 3).ok
    rep = check_basic_growth_bounds(regular_tree_ball(3, 6), 6)
    assert rep.ok and not rep.skipped
    rep = check_basic_growth_bounds(cycle_graph(6), 4)
    assert rep.ok and rep.skipped


def test_basic_bounds_need_connected():
    with pytest.raises(GraphError):
        check_basic_growth_bounds(build_graph(2, []), 1)


@given(any_graphs(max_n=10))
def test_bfs_matches_naive(g):
    for x in range(g.n):
        ref = naive_distances(g, x)
        row = g.dist_row(x)
        for y in range(g.n):
            assert row[y] == ref.get(y, -1)


@given(connected_graphs(max_n=14), st.data())
def test_metric_axioms(g, data):
    x, y, z = (data.draw(st.integers(0, g.n - 1)) for _ in range(3))
    assert distance(g, x, y) == distance(g, y, x)
    assert distance(g, x, z) <= distance(g, x, y) + distance(g, y, z)
    assert (distance(g, x, y) == 0) == (x == y)


@given(connected_graphs(max_n=14), st.integers(0, 6))
def test_disks_are_unions_of_spheres(g, r):
    for x in range(g.n):
        spheres = [set(sphere(g, x, s)) for s in range(r + 1)]
        assert set(disk(g, x, r)) == set().union(*spheres)
        assert sum(map(len, spheres)) == len(disk(g, x, r))


@given(connected_graphs(max_n=14), st.integers(0, 8))
def test_profile_consistency(g, r_max):
    for x in range(g.n):
        p = growth_profile(g, x, r_max)
        assert p.sigma[0] == 1 and p.beta[0] == 1
        assert all(p.beta[r] - p.beta[r - 1] == p.sigma[r] for r in range(1, r_max + 1))
        assert np.all(np.diff(p.beta) >= 0)


@settings(max_examples=60)
@given(connected_graphs(min_n=2, max_n=16, max_extra=20))
def test_basic_bounds_hold_everywhere(g):
    assert check_basic_growth_bounds(g, 6).ok
