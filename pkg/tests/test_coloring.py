import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coarsecolor.coloring import (
    CapacityError,
    NoValidRadius,
    ab_sets,
    build_psi,
    build_xi,
    capacity_holds,
    choose_R,
    coarse_color_pipeline,
    default_boundary,
    induced_code,
    interior_vertices,
    realize_phi,
    sphere_capacities,
)
from coarsecolor.generators import cycle_graph, grid_graph, path_graph, regular_tree_ball
from coarsecolor.graph import GraphError, build_graph, sphere
from coarsecolor.growth import path_formula, sequence_formula, tree_formula
from coarsecolor.net import Net, build_net, build_quotient, spanning_tree
from coarsecolor.symmetry import enumerate_automorphisms

from conftest import naive_distances


def capacity_product_ok(R, sigma, beta):
    """Independent restatement: odd radii 3..R against the ball of radius 4R+1."""
    prod = 1
    for r in range(3, R + 1, 2):
        prod *= sigma(r) + 1
    return prod > beta(4 * R + 1)


class TestAB:
    @pytest.mark.parametrize(
        "R,A,B", [(5, (4,), (3, 5)), (7, (4, 6), (3, 5, 7)), (9, (4, 6, 8), (3, 5, 7, 9))]
    )
    def test_examples(self, R, A, B):
        sel = ab_sets(R)
        assert (sel.A, sel.B) == (A, B)

    @pytest.mark.parametrize("R", [1, 3, 4, 6, 10])
    def test_rejects(self, R):
        with pytest.raises(ValueError):
            ab_sets(R)

    @given(st.integers(2, 200).map(lambda k: 2 * k + 1))
    def test_partition(self, R):
        sel = ab_sets(R)
        parts = [{0, 1}, {2}, set(sel.A), set(sel.B)]
        assert set().union(*parts) == set(range(R + 1))
        assert sum(map(len, parts)) == R + 1
        assert len(sel.B) == (R - 1) // 2 and max(sel.B) == R


class TestChooseR:
    def test_path_formula(self):
        assert choose_R(path_formula(), "formula") == 9
        assert 3**4 > 75 and not 3**3 > 59

    def test_tree_formula(self):
        f = tree_formula(3)
        assert choose_R(f, "formula") == 15
        sig = lambda r: 3 * 2 ** (r - 1)
        beta = lambda r: 3 * 2**r - 2
        assert capacity_product_ok(15, sig, beta) and not capacity_product_ok(13, sig, beta)
        assert 13 * 49 * 193 * 769 * 3073 * 12289 * 49153 > 3 * 2**61 - 2

    def test_cycle_strict(self):
        assert choose_R(cycle_graph(200)) == 9

    @pytest.mark.parametrize("n", [60, 120])
    def test_small_cycles_match_brute_force(self, n):
        g = cycle_graph(n)
        want = next(
            R
            for R in range(5, 102, 2)
            if capacity_product_ok(R, lambda r: len(sphere(g, 0, r)), lambda r: sum(len(sphere(g, 0, s)) for s in range(r + 1)))
        )
        assert choose_R(g) == want

    def test_no_valid_radius(self):
        with pytest.raises(NoValidRadius, match="worst vertex"):
            choose_R(path_graph(40), cap=9)
        with pytest.raises(NoValidRadius):
            choose_R(sequence_formula([1, 2, 2, 2, 2, 2, 2, 2] + [2] * 200, 2), "formula", cap=7)

    def test_interior_mode(self):
        g = grid_graph(9, 9)
        assert default_boundary(g) == [v for v in range(81) if g.degree(v) < 4]
        assert interior_vertices(g, 5) == []  # every vertex is near the border
        assert choose_R(g, "interior") == 5
        assert choose_R(g, "strict") > 5  # corners have thin spheres

    def test_disconnected(self):
        with pytest.raises(GraphError):
            choose_R(build_graph(3, [(0, 1)]))

    def test_capacity_holds_exact(self):
        sig = [1] + [2] * 40
        assert capacity_holds(sig, 9) and not capacity_holds(sig, 7)


def p11():
    g = path_graph(11)
    return g, Net(g, 5, 0, (0,)), ab_sets(5)


class TestPsi:
    def test_worked_example(self):
        _, net, sel = p11()
        assert build_psi(net, sel) == [0, 0, 1, None, 1, None, 1, 1, 1, 1, 1]

    def test_mismatched_R(self):
        _, net, _ = p11()
        with pytest.raises(ValueError):
            build_psi(net, ab_sets(7))

    def test_far_vertices_on_c200(self):
        g = cycle_graph(200)
        net = build_net(g, 9)
        psi = build_psi(net, ab_sets(9))
        # 181 is 10 from 171 and 19 from 0
        assert psi[181] == 1
        for y in net.members:
            assert psi[y] == 0 and all(psi[w] == 0 for w in g.adj[y])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(30, 200), st.sampled_from([5, 7, 9]))
    def test_domain_law(self, n, R):
        g = cycle_graph(n)
        net = build_net(g, R)
        sel = ab_sets(R)
        psi = build_psi(net, sel)
        undefined = {v for v, c in enumerate(psi) if c is None}
        b_spheres = {v for y in net.members for r in sel.B for v in sphere(g, y, r)}
        assert undefined == b_spheres
        for v, c in enumerate(psi):
            d = min(naive_distances(g, y)[v] for y in net.members)
            if d <= 1:
                assert c == 0
            elif d == 2 or d in sel.A or d > R:
                assert c == 1


def cycle_setup(n=200, R=9):
    g = cycle_graph(n)
    net = build_net(g, R)
    q = build_quotient(net)
    t = spanning_tree(q)
    sel = ab_sets(R)
    return g, net, q, t, sel, sphere_capacities(net, sel)


class TestXi:
    def test_single_point(self):
        g = path_graph(11)
        net = build_net(g, 5)
        q = build_quotient(net)
        t = spanning_tree(q)
        caps = sphere_capacities(net, ab_sets(5))
        assert build_xi(net, q, t, caps) == [(0, 0)]

    def test_chain(self):
        # three net points on a long path, B = {3, 5}
        g = path_graph(45)
        net = build_net(g, 5)
        assert net.members == (0, 11, 22, 33, 44)
        q = build_quotient(net)
        t = spanning_tree(q)
        codes = build_xi(net, q, t, sphere_capacities(net, ab_sets(5)))
        assert codes == [(0, 0)] + [(0, 1)] * 4

    def test_ten_cycle(self):
        _, net, q, t, sel, caps = cycle_setup()
        codes = build_xi(net, q, t, caps)
        assert codes[0] == (0, 0, 0, 0)
        assert codes[1] == (0, 0, 0, 1) and codes[9] == (0, 0, 0, 2)
        assert all(codes[v] == (0, 0, 0, 1) for v in range(2, 9))

    def test_strategies(self):
        _, net, q, t, sel, caps = cycle_setup()
        level = build_xi(net, q, t, caps, "level")
        glob = build_xi(net, q, t, caps, "global")
        for d in set(t.depth):
            layer = [level[v] for v in range(len(level)) if t.depth[v] == d]
            assert len(set(layer)) == len(layer)
        assert len(set(glob)) == len(glob)
        with pytest.raises(ValueError):
            build_xi(net, q, t, caps, "bogus")

    def test_capacity_failure_names_vertex(self):
        _, net, q, t, sel, caps = cycle_setup()
        tiny = [(0, 0, 0, 1)] * len(caps)
        with pytest.raises(CapacityError, match="net point 171"):
            build_xi(net, q, t, tiny)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(120, 400), st.sampled_from(["tree", "level", "global"]))
    def test_invariants(self, n, strategy):
        _, net, q, t, sel, caps = cycle_setup(n)
        codes = build_xi(net, q, t, caps, strategy)
        zero = (0,) * len(sel.B)
        assert [v for v, c in enumerate(codes) if c == zero] == [t.root]
        for kids in t.children:
            assert len({codes[k] for k in kids}) == len(kids)
        for c, cap in zip(codes, caps):
            assert all(0 <= a <= b for a, b in zip(c, cap))


class TestRealize:
    def test_worked_examples(self):
        _, net, sel = p11()
        psi = build_psi(net, sel)
        assert realize_phi(net, psi, [(0, 0)], sel) == [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1]
        assert realize_phi(net, psi, [(1, 0)], sel) == [0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1]

    def test_capacity(self):
        _, net, sel = p11()
        with pytest.raises(CapacityError):
            realize_phi(net, build_psi(net, sel), [(2, 0)], sel)

    def test_induced_code_extremes(self):
        g, net, sel = p11()
        assert induced_code(net, [0] * 11) == [(0, 0)]
        assert induced_code(net, [1] * 11) == [(1, 1)]
        _, net2, _, _, sel2, caps = cycle_setup()
        assert induced_code(net2, [1] * 200) == caps

    def test_round_trip_worked(self):
        _, net, sel = p11()
        phi = realize_phi(net, build_psi(net, sel), [(0, 0)], sel)
        assert induced_code(net, phi, sel) == [(0, 0)]

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([(150, 9), (200, 9), (250, 9), (90, 5), (130, 7)]), st.data())
    def test_round_trip_random(self, inst, data):
        n, R = inst
        g, net, q, t, sel, caps = cycle_setup(n, R)
        xi = [tuple(data.draw(st.integers(0, c)) for c in cap) for cap in caps]
        phi = realize_phi(net, build_psi(net, sel), xi, sel)
        assert induced_code(net, phi, sel) == xi
        psi = build_psi(net, sel)
        assert all(p is None or p == f for p, f in zip(psi, phi))


class TestPipeline:
    def test_c200(self):
        g = cycle_graph(200)
        phi, rep = coarse_color_pipeline(g, 9, verify=True)
        assert rep.R == 9 and rep.net_size == 10 and rep.bound == 37
        assert rep.bound_ok and rep.max_gm <= 37
        gm = max(
            max(min(abs(v - a.perm[v]), 200 - abs(v - a.perm[v])) for v in range(200))
            for a in enumerate_automorphisms(g, phi)
        )
        assert gm == rep.max_gm

    def test_chooses_R(self):
        _, rep = coarse_color_pipeline(cycle_graph(200))
        assert rep.R == 9 and rep.xi_strategy == "tree" and rep.xi_distinguishing
        assert rep.capacity_margin > 0 and rep.growth_margin > 0

    def test_tree_ball_capacity_failure(self):
        with pytest.raises(CapacityError):
            coarse_color_pipeline(regular_tree_ball(3, 4), 5)

    def test_no_valid_R(self):
        with pytest.raises(NoValidRadius):
            coarse_color_pipeline(regular_tree_ball(3, 4))

    def test_single_vertex(self):
        phi, rep = coarse_color_pipeline(build_graph(1, []), verify=True)
        assert phi == [0] and rep.degenerate and rep.bound_ok

    def test_formula_mode(self):
        phi, rep = coarse_color_pipeline(path_graph(120), mode="formula", formula=path_formula(), verify=True)
        assert rep.R == 9 and rep.checked_vertices == 0 and rep.bound_ok
        with pytest.raises(ValueError):
            coarse_color_pipeline(path_graph(10), mode="formula")

    def test_interior_mode(self):
        g = grid_graph(9, 9)
        phi, rep = coarse_color_pipeline(g, mode="interior", verify=True)
        assert rep.R == 5 and rep.exempt_vertices == 81
        assert rep.max_gm <= 21

    def test_report_dict(self):
        _, rep = coarse_color_pipeline(cycle_graph(150), verify=True)
        d = rep.to_dict()
        assert d["net_size"] == len(d["net"]) and d["R"] == 9

    def test_deterministic(self):
        g = cycle_graph(230)
        assert coarse_color_pipeline(g)[0] == coarse_color_pipeline(g)[0]

    @settings(max_examples=12, deadline=None)
    @given(st.integers(110, 420))
    def test_net_points_stay_near_net(self, n):
        # each color-preserving symmetry sends every net point next to a net point
        g = cycle_graph(n)
        phi, rep = coarse_color_pipeline(g, verify=True)
        members = set(rep.net)
        for a in enumerate_automorphisms(g, phi):
            for y in rep.net:
                fy = a.perm[y]
                assert fy in members or any(w in members for w in g.adj[fy])
        assert rep.max_gm <= 4 * rep.R + 1

    def test_net_preserved_when_motion_is_large(self):
        # every non-identity symmetry of C_n moves at least n - 2 vertices,
        # far above the pigeonhole threshold, so Y must map onto Y
        g = cycle_graph(300)
        phi, rep = coarse_color_pipeline(g)
        members = set(rep.net)
        for a in enumerate_automorphisms(g, phi):
            assert {a.perm[y] for y in members} == members
