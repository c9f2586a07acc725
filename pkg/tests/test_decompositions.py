import pytest

from circdraw.decompositions import (
    check_section3_bounds,
    planarisation_treewidth,
    td_lift_to_crossing,
    td_lift_to_graph,
    triangulate_via_map,
)
from circdraw.drawing import crossing_graph, make_circular, map_graph, planarise
from circdraw.errors import DecompositionError, InvalidParameter, TooLargeInstance
from circdraw.graph import (
    Graph,
    TreeDecomposition,
    complete_graph,
    cycle_graph,
    graph_radius,
    path_graph,
    validate_decomposition,
)
from circdraw.verify import random_drawing

K4 = make_circular(complete_graph(4), range(4))


def test_lift_k4():
    p = planarise(K4)
    tw, td = planarisation_treewidth(p)
    assert tw == 3
    assert validate_decomposition(K4.graph, td_lift_to_graph(td, p)) == 3
    assert validate_decomposition(crossing_graph(K4).graph, td_lift_to_crossing(td, p)) == 1


def test_lift_rejects_foreign_decomposition():
    p = planarise(K4)
    bogus = TreeDecomposition(Graph([0]), {0: frozenset({0, 1})})
    with pytest.raises(DecompositionError):
        td_lift_to_graph(bogus, p)
    with pytest.raises(DecompositionError):
        td_lift_to_crossing(bogus, p)


def test_lift_orientation_is_checked():
    p = planarise(K4)
    _, td = planarisation_treewidth(p)
    e = K4.graph.edge_id(0, 2)
    with pytest.raises(InvalidParameter):
        td_lift_to_graph(td, p, {e: (1, 3)})
    flipped = td_lift_to_graph(td, p, {e: (2, 0)})
    assert validate_decomposition(K4.graph, flipped) <= 7


def test_lift_adds_leaf_bags_for_uncrossed_edges():
    d = make_circular(cycle_graph(5), range(5))
    p = planarise(d)
    _, td = planarisation_treewidth(p)
    lifted = td_lift_to_crossing(td, p)
    assert validate_decomposition(crossing_graph(d).graph, lifted) == 0
    assert sum(1 for b in lifted.bags.values() if len(b) == 1) == 5


@pytest.mark.parametrize("seed", range(60))
def test_lifted_widths_on_random_drawings(seed):
    d = random_drawing(seed)
    p = planarise(d)
    tw_p, td = planarisation_treewidth(p)
    assert validate_decomposition(d.graph, td_lift_to_graph(td, p)) <= 2 * tw_p + 1
    assert validate_decomposition(crossing_graph(d).graph, td_lift_to_crossing(td, p)) <= 2 * tw_p + 1


# -- triangulation ------------------------------------------------------------------

def test_triangulate_k5():
    tri = triangulate_via_map(planarise(make_circular(complete_graph(5), range(5))))
    assert all(tri.checks.values())
    h = tri.plane.plane_graph
    assert (h.n, h.m) == (10, 3 * 10 - 6)
    assert tri.radius == graph_radius(h) == 2 and tri.map_radius == 2


def test_triangulate_cycle():
    tri = triangulate_via_map(planarise(make_circular(cycle_graph(7), range(7))))
    assert all(tri.checks.values())
    assert tri.plane.plane_graph.m == 3 * 7 - 6
    assert tri.radius <= tri.map_radius + 1


def test_triangulate_rejects_tiny_or_disconnected():
    with pytest.raises(InvalidParameter):
        triangulate_via_map(planarise(make_circular(path_graph(2), [0, 1])))
    two = Graph(range(4), [(0, 1), (2, 3)])
    with pytest.raises(InvalidParameter):
        triangulate_via_map(planarise(make_circular(two, [0, 1, 2, 3])))


@pytest.mark.parametrize("seed", range(40))
def test_triangulation_rho_descent(seed):
    p = planarise(random_drawing(seed))
    if not p.plane_graph.is_connected() or p.plane_graph.n < 3:
        pytest.skip("disconnected planarisation")
    tri = triangulate_via_map(p)
    assert all(tri.checks.values()), tri.checks
    assert tri.radius <= map_graph(p).radius() + 1


# -- bounds report ------------------------------------------------------------------

def test_bounds_k4_frozen():
    rep = check_section3_bounds(K4)
    assert rep.ok
    v = rep.values
    assert (v["rad_MD"], v["tw_G"], v["tw_X"], v["tw_P"], v["h_X"], v["htop_X"]) == (1, 3, 1, 3, 2, 2)
    tight = {e["name"]: (e["lhs"], e["rhs"]) for e in rep.entries}
    assert tight["6 rad(M_D) + 7 <= 12 h(X_D) - 11"] == (13, 13)
    assert tight["tw(P_D) <= 3 rad(P_D)"] == (3, 3)


def test_bounds_crossing_free_marks_middle_link_not_applicable():
    rep = check_section3_bounds(make_circular(cycle_graph(6), range(6)))
    assert rep.ok
    middle = next(e for e in rep.entries if e["name"].startswith("6 rad(M_D) + 7 <= 12 h"))
    assert middle["pass"] is None
    assert rep.failures() == []


def test_bounds_report_serialises():
    data = check_section3_bounds(K4).to_dict()
    assert set(data) == {"values", "entries", "ok"} and data["ok"] is True


def test_bounds_caps():
    d = make_circular(complete_graph(6), range(6))
    with pytest.raises(TooLargeInstance):
        check_section3_bounds(d, tw_cap=4)
    rep = check_section3_bounds(d, tw_cap=4, force=True)
    assert rep.values["tw_G"] == "skipped"
    assert any(e["pass"] is None for e in rep.entries)
    rep = check_section3_bounds(d, hajos_cap=3)
    assert rep.values["htop_X"] == "skipped"
