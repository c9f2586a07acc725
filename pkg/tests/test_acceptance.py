"""Acceptance suite: one or more tests per criterion, each tagged with
``@pytest.mark.criterion``. The conftest prints a PASS/FAIL line per
criterion at the end of the run.

Time limits are the ones the criteria state, in seconds.
"""

import time
from itertools import combinations

import pytest

from circdraw import solvers
from circdraw.decompositions import check_section3_bounds, triangulate_via_map
from circdraw.dominance import extract_cycle_layers, validate_cycle_layers
from circdraw.drawing import count_circular_orders, crossing_graph, map_graph, planarise, wrap_linear
from circdraw.extremal import (
    expander_intervals,
    grid_row_drawing,
    ktt_chord_diagram,
    nested_polygon_drawing,
    two_degenerate_expander,
)
from circdraw.graph import (
    complete_bipartite_graph,
    complete_graph,
    degeneracy,
    graph_radius,
    grid_graph,
    is_isomorphic,
    validate_decomposition,
    validate_minor_certificate,
    validate_topological_certificate,
)
from circdraw.verify import CYCLE_FIXTURES, instance_seeds, random_drawing, run_suite, small_trees

SEEDS = instance_seeds(0, 200)


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed <= self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


# -- 1 ----------------------------------------------------------------------------

SECTION3 = ("tw(G) <= 6 rad(M_D) + 7", "tw(X_D) <= 6 rad(M_D) + 7",
            "lifted width(G) <= 2 tw(P_D) + 1", "lifted width(X_D) <= 2 tw(P_D) + 1",
            "tw(G) <= 2 tw(P_D) + 1", "tw(X_D) <= 2 tw(P_D) + 1")


@pytest.mark.criterion(1, "treewidth / radius inequalities on 200 random circular drawings")
def test_c01_section3_inequalities():
    failures = []
    with Clock(300):
        for seed in SEEDS:
            d = random_drawing(seed)
            assert d.graph.n <= 9 and d.graph.m <= 14
            rep = check_section3_bounds(d)
            got = {e["name"]: e for e in rep.entries}
            for name in SECTION3:
                if got[name]["pass"] is not True:
                    failures.append((seed, got[name]))
    assert not failures, failures[:5]


# -- 2 ----------------------------------------------------------------------------

@pytest.mark.criterion(2, "triangulate_via_map: rad(H) <= rad(M) + 1 and rho-descent")
def test_c02_triangulation():
    failures = []
    for seed in SEEDS:
        p = planarise(random_drawing(seed))
        tri = triangulate_via_map(p)
        h = tri.plane.plane_graph
        rad_m = map_graph(p).radius()
        if not (all(tri.checks.values()) and graph_radius(h) <= rad_m + 1
                and h.m == 3 * h.n - 6):
            failures.append((seed, tri.checks))
    assert not failures, failures[:5]


# -- 3 ----------------------------------------------------------------------------

@pytest.mark.criterion(3, "cycle layers on nested-polygon fixtures, t in {1, 2, 3}")
def test_c03_cycle_layers():
    with Clock(60):
        assert sorted(CYCLE_FIXTURES) == [1, 2, 3]
        for t, fixtures in CYCLE_FIXTURES.items():
            for layers, m in fixtures:
                con = nested_polygon_drawing(layers, m)
                assert con.extras["map_radius"] >= 2 * t
                out = extract_cycle_layers(con.drawing, t)
                assert len(out.layers) == t
                rep = validate_cycle_layers(crossing_graph(con.drawing), out)
                assert rep["ok"], (t, layers, m, rep["first_failure"])
        rep = run_suite("cycles-lemma")
        assert rep.ok, rep.failures[:3]


# -- 4 ----------------------------------------------------------------------------

@pytest.mark.criterion(4, "2-degenerate expander family, t = 1..6")
def test_c04_expander_family():
    with Clock(60):
        for t in range(1, 7):
            con = two_degenerate_expander(t)
            g, lin = con.graph, con.drawing
            x = crossing_graph(lin).graph
            assert g.max_degree() <= 3
            if t >= 3:
                assert g.max_degree() == 3
            assert degeneracy(x)[0] <= 2
            assert crossing_graph(wrap_linear(lin)).graph.edges == x.edges
            assert validate_minor_certificate(g, complete_graph(t), con.witnesses["kt_minor"])
            for (_, (a1, b1)), (_, (a2, b2)) in combinations(sorted(expander_intervals(t).items()), 2):
                assert b1 < a2 or b2 < a1
            for u, v in con.witnesses["horizontal_edges"].values():
                assert x.degree(g.edge_id(u, v)) == 0


@pytest.mark.criterion(4, "2-degenerate expander family, t = 1..6")
def test_c04_max_degree_exactly_three_for_every_t():
    # literal reading: G_1 is one vertex and G_2 a path, so this stays red
    degrees = {t: two_degenerate_expander(t).graph.max_degree() for t in range(1, 7)}
    assert all(d == 3 for d in degrees.values()), degrees


# -- 5 ----------------------------------------------------------------------------

@pytest.mark.criterion(5, "every circular order of K_{2,4k-1} has K_{k,k} in X_D, k in {1, 2}")
def test_c05_no_k2k_exhaustive():
    with Clock(120):
        for k, expected in ((1, 12), (2, count_circular_orders(9))):
            rep = run_suite("nok2k", {"k": k})
            assert rep.ok, rep.failures[:3]
            assert rep.instances == expected
    assert count_circular_orders(9) == 20160 >= 2520


# -- 6 ----------------------------------------------------------------------------

@pytest.mark.criterion(6, "K_{2,3} / K_{2,4} subdivisions over all circular orders")
def test_c06_subdivision_orders():
    with Clock(300):
        a = run_suite("k23-subdivisions", {"max_division": 2})
        b = run_suite("k24-subdivisions", {"max_division": 2})
    assert a.ok, a.failures[:3]
    assert b.ok, b.failures[:3]
    assert a.instances > 0 and b.instances > 0


# -- 7 ----------------------------------------------------------------------------

@pytest.mark.criterion(7, "grid drawings: path-decomposition of X_D and tw(grid(n)) = n")
def test_c07_grids():
    with Clock(120):
        for n in (2, 3, 4):
            con = grid_row_drawing(n)
            x = crossing_graph(con.drawing).graph
            td = con.witnesses["E_path_decomposition"]
            assert td.is_path()
            assert validate_decomposition(x, td) <= 3 * n
            assert max(len(b) for b in td.bags.values()) <= 3 * n - 1
            assert solvers.treewidth_exact(grid_graph(n))[0] == n


# -- 8 ----------------------------------------------------------------------------

@pytest.mark.criterion(8, "tree x K_m product drawings: W_v decomposition width")
def test_c08_products():
    with Clock(120):
        rep = run_suite("product", {"max_tree": 6, "m": [2, 3]})
    assert rep.ok, rep.failures[:3]
    assert rep.instances == 2 * len(small_trees(6, 3))


# -- 9 ----------------------------------------------------------------------------

@pytest.mark.criterion(9, "star-forest drawings, t = 2..5")
def test_c09_star_forest():
    with Clock(60):
        rep = run_suite("star-forest", {"t": 5, "t_min": 2})
    assert rep.ok, rep.failures[:3]
    assert rep.instances == 4


# -- 10 ---------------------------------------------------------------------------

@pytest.mark.criterion(10, "K_{t,t} chord diagrams: exact tw, h and htop")
def test_c10_ktt():
    with Clock(120):
        for t in (2, 3):
            x = crossing_graph(ktt_chord_diagram(t).drawing).graph
            assert is_isomorphic(x, complete_bipartite_graph(t, t))
            tw, td = solvers.treewidth_exact(x)
            assert tw == t and validate_decomposition(x, td) == t
            h, cert = solvers.hadwiger_exact(x)
            assert h == t + 1 and validate_minor_certificate(x, complete_graph(h), cert)
            ht, tcert = solvers.hajos_exact(x)
            assert ht <= h
            assert validate_topological_certificate(x, complete_graph(ht), tcert)
        assert ht == 4  # htop(K_{3,3})


# -- 11 ---------------------------------------------------------------------------

@pytest.mark.criterion(11, "exact solvers agree with brute force on all graphs up to 7 vertices")
def test_c11_oracles():
    with Clock(600):
        rep = run_suite("oracles", {"max_n": 7})
    assert rep.ok, rep.failures[:3]
    assert rep.instances == 1252
