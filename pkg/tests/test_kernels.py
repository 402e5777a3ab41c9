import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsecolor import kernels
from coarsecolor.generators import cycle_graph, regular_tree_ball
from coarsecolor.graph import build_graph

from conftest import any_graphs, naive_automorphisms, naive_distances

BACKENDS = kernels.backends()


@pytest.fixture(params=sorted(BACKENDS))
def impl(request):
    return BACKENDS[request.param]


def test_cython_is_built():
    # the extension ships with the package; losing it silently would hide a build break
    assert "cython" in BACKENDS
    assert kernels.BACKEND in ("cython", "python")


@settings(max_examples=60, deadline=None)
@given(g=any_graphs(max_n=9, min_n=1), data=st.data())
def test_bfs(g, data):
    x = data.draw(st.integers(0, g.n - 1))
    want = naive_distances(g, x)
    for mod in BACKENDS.values():
        row = mod.bfs_distances(g.indptr, g.indices, x)
        assert [int(d) for d in row] == [want.get(v, -1) for v in range(g.n)]


@settings(max_examples=60, deadline=None)
@given(g=any_graphs(max_n=9, min_n=1), data=st.data())
def test_multi_source(g, data):
    srcs = data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=4, unique=True))
    tables = {s: naive_distances(g, s) for s in srcs}
    for mod in BACKENDS.values():
        dist, owner = mod.multi_source_bfs(g.indptr, g.indices, np.asarray(srcs, dtype=np.int32))
        for v in range(g.n):
            ds = [tables[s].get(v) for s in srcs]
            reach = [d for d in ds if d is not None]
            if not reach:
                assert dist[v] == -1 and owner[v] == -1
            else:
                assert dist[v] == min(reach)
                assert ds[owner[v]] == dist[v]


def test_multi_source_tie_goes_to_first():
    g = cycle_graph(6)
    for mod in BACKENDS.values():
        _, owner = mod.multi_source_bfs(g.indptr, g.indices, np.asarray([0, 3], dtype=np.int32))
        assert owner[0] == 0 and owner[3] == 1


@settings(max_examples=60, deadline=None)
@given(g=any_graphs(max_n=6), data=st.data())
def test_is_automorphism(g, data):
    good = set(naive_automorphisms(g))
    perm = tuple(data.draw(st.permutations(range(g.n))))
    for mod in BACKENDS.values():
        assert mod.is_automorphism(perm, g.indptr, g.indices) == (perm in good)


def test_is_automorphism_rejects_non_permutations(impl):
    g = build_graph(3, [(0, 1), (1, 2)])
    assert not impl.is_automorphism((0, 0, 2), g.indptr, g.indices)
    assert not impl.is_automorphism((0, 1), g.indptr, g.indices)


@pytest.mark.parametrize("args", [(3, 5, 14), (3, 5, 20), (4, 4, 24), (3, 6, 19), (5, 3, 12)])
def test_min_product_search(impl, args):
    assert impl.min_product_search(*args) == BACKENDS["python"].min_product_search(*args)


def test_min_product_infeasible(impl):
    assert impl.min_product_search(3, 4, 2) == (None, [], 0)


def test_dispatcher_falls_back_for_large_values():
    # the 64-bit guard sends huge instances to the Python kernel
    best, mins, _ = kernels.min_product_search(3, 3, 10)
    assert best == min(a[2] + 1 for a in mins)


def test_large_graph_agrees():
    g = regular_tree_ball(3, 9)
    rows = [mod.bfs_distances(g.indptr, g.indices, 5) for mod in BACKENDS.values()]
    for r in rows[1:]:
        assert np.array_equal(r, rows[0])


def test_pure_env_selects_fallback():
    code = "from coarsecolor import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, COARSECOLOR_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
