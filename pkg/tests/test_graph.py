import json
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circdraw.errors import DecompositionError, DisconnectedGraph, InvalidParameter, TooLargeInstance
from circdraw.graph import (
    Graph,
    MinorCertificate,
    TreeDecomposition,
    complete_bipartite_graph,
    complete_binary_tree,
    complete_graph,
    cycle_graph,
    decomposition_from_order,
    degeneracy,
    generate,
    graph_from_json,
    graph_radius,
    graph_to_json,
    grid_graph,
    has_kst_subgraph,
    is_isomorphic,
    path_decomposition,
    path_graph,
    random_tree,
    strong_product,
    subdivide,
    to_dot,
    validate_decomposition,
    validate_minor_certificate,
)
from circdraw.reference import hadwiger_bruteforce, hajos_bruteforce, treewidth_bruteforce
from circdraw.solvers import (
    hadwiger_exact,
    hajos_exact,
    invariant_report,
    treewidth_exact,
    treewidth_lower_bound,
    treewidth_upper_bound,
)


def random_graph(rng, n, p=None):
    p = rng.random() if p is None else p
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph(range(n), edges)


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(n), [e for e, k in zip(pairs, keep) if k])


# -- graph type and generators -----------------------------------------------

def test_graph_rejects_loops_and_dangling_endpoints():
    with pytest.raises(InvalidParameter):
        Graph([0, 1], [(0, 0)])
    with pytest.raises(InvalidParameter):
        Graph([0, 1], [(0, 2)])


def test_edges_are_normalised_and_deduplicated():
    g = Graph([0, 1, 2], [(1, 0), (0, 1), (2, 1)])
    assert list(g.edges) == [(0, 1), (1, 2)]
    assert g.edge_id(2, 1) == 1


def test_grid_examples():
    assert grid_graph(1).n == 1 and grid_graph(1).m == 0
    assert is_isomorphic(grid_graph(2), cycle_graph(4))
    assert treewidth_exact(grid_graph(3))[0] == 3
    # row-major ids
    assert grid_graph(3).has_edge(0, 1) and grid_graph(3).has_edge(0, 3)


def test_generate_dispatch_and_errors():
    assert generate("complete", [4]).m == 6
    assert generate("complete_bipartite", [2, 3]).m == 6
    assert complete_binary_tree(2).n == 7
    assert generate("path", [5]).m == 4
    assert generate("random_tree", [8, 3], seed=4).is_tree()
    assert generate("random_tree", [8, 3], seed=4) == generate("random_tree", [8, 3], seed=4)
    with pytest.raises(InvalidParameter):
        generate("grid", [-1])
    with pytest.raises(InvalidParameter):
        generate("hexagon", [3])


@pytest.mark.parametrize("seed", range(20))
def test_random_tree_respects_max_degree(seed):
    t = random_tree(12, 3, seed)
    assert t.is_tree() and t.max_degree() <= 3


def test_strong_product_examples():
    assert is_isomorphic(strong_product(complete_graph(2), complete_graph(2)), complete_graph(4))
    p = strong_product(path_graph(3), complete_graph(2))
    assert (p.n, p.m) == (6, 11)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_strong_product_with_k1_is_identity(g):
    assert is_isomorphic(strong_product(g, complete_graph(1)), g)


def test_subdivide_examples():
    k23 = complete_bipartite_graph(2, 3)
    assert subdivide(k23, {}) == k23
    assert is_isomorphic(subdivide(complete_graph(3), {(0, 1): 1}), cycle_graph(4))
    s = subdivide(k23, {e: 1 for e in k23.edges})
    assert (s.n, s.m) == (11, 12)
    with pytest.raises(InvalidParameter):
        subdivide(k23, {(0, 1): 1})


def test_json_and_dot_round_trip():
    g = complete_bipartite_graph(2, 3)
    data = json.loads(graph_to_json(g))
    assert set(data) >= {"vertices", "edges"}
    assert graph_from_json(graph_to_json(g)) == g
    dot = to_dot(g)
    assert dot.count("--") == g.m


# -- treewidth ------------------------------------------------------------------

@pytest.mark.parametrize("t", range(1, 8))
def test_treewidth_of_cliques(t):
    assert treewidth_exact(complete_graph(t))[0] == t - 1


def test_treewidth_frozen_values():
    assert treewidth_exact(complete_bipartite_graph(3, 3))[0] == 3
    assert treewidth_exact(grid_graph(4))[0] == 4
    assert treewidth_exact(Graph.from_networkx(nx.petersen_graph()))[0] == 4
    assert treewidth_exact(cycle_graph(9))[0] == 2
    assert treewidth_exact(Graph([0, 1, 2], []))[0] == 0


def test_treewidth_cap():
    with pytest.raises(TooLargeInstance):
        treewidth_exact(grid_graph(5))
    assert treewidth_exact(grid_graph(5), cap=None)[0] == 5


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_treewidth_matches_bruteforce(g):
    tw, td = treewidth_exact(g)
    assert validate_decomposition(g, td) == tw
    assert tw == treewidth_bruteforce(g)
    assert treewidth_lower_bound(g) <= tw <= treewidth_upper_bound(g)[0]


def test_treewidth_on_larger_random_graphs_against_networkx_bounds():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randint(8, 14), 0.35)
        tw, td = treewidth_exact(g)
        assert validate_decomposition(g, td) == tw
        heuristic = nx.algorithms.approximation.treewidth_min_fill_in(g.to_networkx())[0]
        assert treewidth_lower_bound(g) <= tw <= heuristic


# -- degeneracy -----------------------------------------------------------------

def test_degeneracy_examples():
    assert degeneracy(random_tree(10, None, 1))[0] == 1
    assert degeneracy(Graph(range(4), []))[0] == 0
    assert degeneracy(grid_graph(3))[0] == 2
    assert degeneracy(complete_graph(5))[0] == 4


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_degeneracy_order_replays(g):
    k, order = degeneracy(g)
    assert sorted(order) == sorted(g.vertices)
    removed = set()
    for v in order:
        assert len(g.neighbors(v) - removed) <= k
        removed.add(v)


# -- Hadwiger / Hajos -------------------------------------------------------------

def test_hadwiger_examples():
    assert hadwiger_exact(random_tree(6, None, 2))[0] == 2
    for t in range(1, 5):
        h, cert = hadwiger_exact(complete_bipartite_graph(t, t))
        assert h == t + 1
        assert validate_minor_certificate(complete_bipartite_graph(t, t), complete_graph(h), cert)
    assert hadwiger_exact(grid_graph(3))[0] == hadwiger_bruteforce(grid_graph(3)) == 4
    assert hadwiger_exact(Graph.from_networkx(nx.petersen_graph()))[0] == 5


def test_hadwiger_matches_bruteforce_on_eight_vertices():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, 8)
        h, cert = hadwiger_exact(g)
        assert h == hadwiger_bruteforce(g)
        assert validate_minor_certificate(g, complete_graph(h), cert)


def test_hajos_examples():
    assert hajos_exact(random_tree(6, None, 2))[0] == 2
    assert hajos_exact(cycle_graph(5))[0] == 3
    assert hajos_exact(complete_graph(5))[0] == 5
    assert hajos_exact(grid_graph(3))[0] == hajos_bruteforce(grid_graph(3)) == 4
    assert hajos_exact(complete_bipartite_graph(3, 3))[0] == 4
    with pytest.raises(TooLargeInstance):
        hajos_exact(grid_graph(4))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_invariant_chain(g):
    rep = invariant_report(g)
    assert rep.chain_holds() is True


# -- K_{s,t} subgraphs --------------------------------------------------------------

def test_kst_examples():
    a, b = has_kst_subgraph(complete_bipartite_graph(2, 2), 1, 1)
    assert len(a) == len(b) == 1
    a, b = has_kst_subgraph(cycle_graph(4), 2, 2)
    assert {frozenset(a), frozenset(b)} == {frozenset({0, 2}), frozenset({1, 3})}
    assert has_kst_subgraph(complete_bipartite_graph(1, 5), 2, 2) is None


# -- decompositions and certificates -------------------------------------------------

def test_validate_decomposition_examples():
    g = cycle_graph(5)
    single = TreeDecomposition(Graph([0]), {0: frozenset(g.vertices)})
    assert validate_decomposition(g, single) == 4
    bad = path_decomposition([[0, 1, 2], [2, 3, 4]])
    with pytest.raises(DecompositionError) as err:
        validate_decomposition(g, bad)
    assert err.value.kind == "uncovered-edge"
    split = path_decomposition([[0, 1, 4], [1, 2, 3], [3, 4, 0]])
    with pytest.raises(DecompositionError) as err:
        validate_decomposition(g, split)
    assert err.value.kind == "disconnected-vertex"


def test_decomposition_round_trip():
    g = grid_graph(3)
    _, td = treewidth_exact(g)
    back = TreeDecomposition.from_dict(json.loads(json.dumps(td.to_dict())))
    assert validate_decomposition(g, back) == td.width
    assert set(td.to_dict()) == {"tree_edges", "bags"}


def test_decomposition_from_order_matches_elimination_width():
    g = grid_graph(3)
    td = decomposition_from_order(g, list(range(9)))
    assert validate_decomposition(g, td) == td.width


def test_minor_certificate_examples():
    g = complete_graph(4)
    ident = MinorCertificate({v: frozenset({v}) for v in g.vertices})
    assert validate_minor_certificate(g, g, ident)
    overlap = MinorCertificate({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({3})})
    assert not validate_minor_certificate(g, complete_graph(3), overlap)


def test_radius_examples():
    assert graph_radius(complete_graph(1)) == 0
    assert graph_radius(path_graph(5)) == 2
    with pytest.raises(DisconnectedGraph):
        graph_radius(Graph([0, 1], []))
