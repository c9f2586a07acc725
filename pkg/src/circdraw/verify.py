"""Verification suites: each one checks a family of instances against the
inequalities and structural properties the constructions promise.

A suite expands its parameters into independent tasks; tasks run in-process
or on a process pool and their results are merged in task order, so the
report does not depend on scheduling.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from multiprocessing import Pool

import networkx as nx

from . import solvers
from .decompositions import check_section3_bounds, triangulate_via_map
from .dominance import (
    coverage_profile,
    edge_interval,
    extract_cycle_layers,
    is_dominant,
    min_ray_coverage,
    validate_cycle_layers,
)
from .drawing import (
    ENUMERATION_CAP,
    CircularDrawing,
    chunk_bounds,
    count_circular_orders,
    crossing_graph,
    enumerate_circular_orders,
    map_graph,
    planarise,
    wrap_linear,
)
from .errors import CircdrawError, InvalidParameter, TooLargeInstance
from .extremal import (
    expander_intervals,
    grid_row_drawing,
    k2n_subdivision_suite,
    ktt_chord_diagram,
    nested_polygon_drawing,
    product_drawing,
    star_forest_construction,
    tree_plus_dominant,
    two_degenerate_expander,
)
from .graph import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    degeneracy,
    graph_radius,
    grid_graph,
    has_kst_subgraph,
    is_isomorphic,
    random_tree,
    validate_decomposition,
    validate_minor_certificate,
    validate_topological_certificate,
)
from .reference import hadwiger_bruteforce, hajos_bruteforce, treewidth_bruteforce

DEFAULT_CAPS = {"tw": solvers.TREEWIDTH_CAP, "hadwiger": solvers.HADWIGER_CAP,
                "hajos": solvers.HAJOS_CAP, "enum": ENUMERATION_CAP}


@dataclass
class VerificationReport:
    suite: str
    instances: int
    failures: list
    wall_time_ms: int
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"suite": self.suite, "params": self.params, "instances": self.instances,
                "failures": self.failures, "details": self.details,
                "wall_time_ms": self.wall_time_ms, "ok": self.ok}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


@dataclass
class _Result:
    instances: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, instance, name, ok, lhs=None, rhs=None):
        if not ok:
            self.failures.append({"instance": instance, "name": name, "lhs": lhs, "rhs": rhs})

    def le(self, instance, name, lhs, rhs):
        self.check(instance, name, lhs <= rhs, lhs, rhs)

    def count(self, key, by=1):
        self.details[key] = self.details.get(key, 0) + by


def _merge(results) -> _Result:
    out = _Result()
    for r in results:
        out.instances += r.instances
        out.failures += r.failures
        for k, v in r.details.items():
            if isinstance(v, int) and not isinstance(v, bool):
                out.count(k, v)
            else:
                out.details[k] = v
    return out


# -- random drawings ----------------------------------------------------------

def random_drawing(seed: int, max_n: int = 9, max_edges: int = 14) -> CircularDrawing:
    """A connected random graph (spanning tree plus extra edges) in a random circular order."""
    rng = random.Random(seed)
    n = rng.randint(3, max_n)
    g = random_tree(n, None, rng.randrange(10 ** 9))
    present = set(g.edges)
    extra = [e for e in combinations(range(n), 2) if e not in present]
    rng.shuffle(extra)
    k = rng.randint(0, min(max_edges, n * (n - 1) // 2) - (n - 1))
    g = g.add_edges(extra[:k])
    order = list(range(n))
    rng.shuffle(order)
    return CircularDrawing(g, order)


def instance_seeds(seed: int, count: int) -> list[int]:
    """Per-instance seeds, all drawn from one generator seeded by ``seed``."""
    rng = random.Random(seed)
    return [rng.randrange(2 ** 32) for _ in range(count)]


# -- suites -------------------------------------------------------------------

def _section3(payload, caps):
    seed, force = payload
    res = _Result(instances=1)
    d = random_drawing(seed)
    rep = check_section3_bounds(d, tw_cap=caps["tw"], hadwiger_cap=caps["hadwiger"],
                                hajos_cap=caps["hajos"], force=force)
    for e in rep.entries:
        res.check(f"seed={seed}", e["name"], e["pass"] is not False, e["lhs"], e["rhs"])
        if e["pass"] is None:
            res.count(f"skipped: {e['name']}")
    for k, v in rep.values.items():
        if v == "skipped":
            res.count(f"skipped value: {k}")
    return res


def _triangulation(payload, caps):
    seed = payload
    res = _Result(instances=1)
    tri = triangulate_via_map(planarise(random_drawing(seed)))
    for name, ok in sorted(tri.checks.items()):
        if name == "radius_bound":
            res.le(f"seed={seed}", "rad(H) <= rad(M_G) + 1", tri.radius, tri.map_radius + 1)
        else:
            res.check(f"seed={seed}", name, ok)
    return res


CYCLE_FIXTURES = {1: [(2, 3), (2, 5), (3, 4)], 2: [(4, 4), (4, 5)], 3: [(6, 4)]}


def _cycles(payload, caps):
    t, layers, m = payload
    tag = f"t={t} nested({layers},{m})"
    res = _Result(instances=1)
    con = nested_polygon_drawing(layers, m)
    d = con.drawing
    rad = con.extras["map_radius"]
    if rad < 2 * t:
        res.check(tag, "fixture radius >= 2t", False, rad, 2 * t)
        return res
    try:
        out = extract_cycle_layers(d, t)
    except CircdrawError as exc:
        res.check(tag, f"extraction raised {type(exc).__name__}", False)
        return res
    x = crossing_graph(d)
    rep = validate_cycle_layers(x, out)
    for c in rep["checks"]:
        res.check(tag, c["name"], c["pass"])
    res.check(tag, "layer count", len(out.layers) == t, len(out.layers), t)
    p = out.center
    everything = list(range(d.graph.m))
    res.le(tag, "2t - 1 <= min ray coverage", 2 * t - 1, min_ray_coverage(d, p, everything))
    residual = set(everything)
    for i, layer in enumerate(out.layers, 1):
        iv = {e: edge_interval(d, p, e) for e in layer}
        res.le(tag, f"rays cross <= 2 edges of layer {i}",
               max(c for _, c in coverage_profile(iv.values())), 2)
        for e in layer:
            res.check(tag, f"layer {i} minimal without edge {e}",
                      not is_dominant(iv[f] for f in layer if f != e))
        residual -= set(layer)
        if i < t:
            res.le(tag, f"2(t - {i}) - 1 <= residual coverage", 2 * (t - i) - 1,
                   min_ray_coverage(d, p, sorted(residual)))
    return res


def _expander(payload, caps):
    t = payload
    tag = f"t={t}"
    res = _Result(instances=1)
    con = two_degenerate_expander(t)
    g, lin = con.graph, con.drawing
    res.le(tag, "max degree <= 3", g.max_degree(), 3)
    if t >= 3:
        res.check(tag, "max degree = 3", g.max_degree() == 3, g.max_degree(), 3)
    x = crossing_graph(lin).graph
    wrapped = crossing_graph(wrap_linear(lin)).graph
    res.check(tag, "wrap preserves X_D", x.edges == wrapped.edges)
    res.le(tag, "degeneracy(X_D) <= 2", degeneracy(x)[0], 2)
    res.check(tag, "K_t minor certificate",
              validate_minor_certificate(g, complete_graph(t), con.witnesses["kt_minor"]))
    ivs = sorted(expander_intervals(t).items())
    for (k1, (a1, b1)), (k2, (a2, b2)) in combinations(ivs, 2):
        res.check(tag, f"I{k1} and I{k2} disjoint", b1 < a2 or b2 < a1)
    for key, (u, v) in sorted(con.witnesses["horizontal_edges"].items()):
        res.check(tag, f"e_{key} uncrossed", x.degree(g.edge_id(u, v)) == 0)
    res.details[f"t={t}"] = {"n": g.n, "m": g.m, "crossings": x.m,
                             "horizontal_edges": len(con.witnesses["horizontal_edges"])}
    return res


def _enum_orders(g: Graph, lo: int, hi: int, caps):
    return enumerate_circular_orders(g, lo, hi, cap=caps["enum"])


def _nok2k(payload, caps):
    k, lo, hi = payload
    g = complete_bipartite_graph(2, 4 * k - 1)
    res = _Result()
    for i, d in enumerate(_enum_orders(g, lo, hi, caps), lo):
        res.instances += 1
        x = crossing_graph(d).graph
        res.check(f"k={k} order#{i} {list(d.order)}", f"X_D contains K_{k},{k}",
                  has_kst_subgraph(x, k, k) is not None)
    res.count(f"orders enumerated for K_2,{4 * k - 1}", res.instances)
    return res


def _hub_edges(g: Graph, hub: int) -> set[int]:
    return {i for i, e in enumerate(g.edges) if hub in e}


def _k23_subdivisions(payload, caps):
    idx, g_dict, lo, hi = payload
    g = Graph(g_dict["vertices"], [tuple(e) for e in g_dict["edges"]])
    xs, ys = _hub_edges(g, 0), _hub_edges(g, 1)
    res = _Result()
    for i, d in enumerate(_enum_orders(g, lo, hi, caps), lo):
        res.instances += 1
        x = crossing_graph(d).graph
        ok = any(comp & xs and comp & ys for comp in map(set, x.components()))
        res.check(f"member {idx} order#{i}", "X_D component meets both hubs", ok)
    return res


def _k24_subdivisions(payload, caps):
    idx, g_dict, lo, hi = payload
    g = Graph(g_dict["vertices"], [tuple(e) for e in g_dict["edges"]])
    res = _Result()
    for i, d in enumerate(_enum_orders(g, lo, hi, caps), lo):
        res.instances += 1
        res.check(f"member {idx} order#{i}", "at least one crossing", bool(d.crossing_pairs))
    return res


def _grid(payload, caps):
    n = payload
    tag = f"n={n}"
    res = _Result(instances=1)
    con = grid_row_drawing(n)
    x = crossing_graph(con.drawing).graph
    td = con.witnesses["E_path_decomposition"]
    width = validate_decomposition(x, td)
    res.check(tag, "E_i form a path", td.is_path())
    res.le(tag, "width <= 3n", width, 3 * n)
    res.le(tag, "max |E_i| <= 3n - 1", max(len(b) for b in td.bags.values()), 3 * n - 1)
    tw = solvers.treewidth_exact(grid_graph(n), caps["tw"])[0]
    want = n if n >= 2 else 0
    res.check(tag, "tw(grid(n)) = n", tw == want, tw, want)
    return res


def small_trees(max_n: int, max_degree: int | None = None) -> list[Graph]:
    """Unlabelled trees with at most ``max_n`` vertices, one per isomorphism class."""
    out = [Graph([0], [])]
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            g = Graph.from_networkx(nx.convert_node_labels_to_integers(t))
            if max_degree is None or g.max_degree() <= max_degree:
                out.append(g)
    return out


def _product(payload, caps):
    idx, t_dict, m = payload
    tree = Graph(t_dict["vertices"], [tuple(e) for e in t_dict["edges"]])
    tag = f"tree#{idx} (n={tree.n}) m={m}"
    res = _Result(instances=1)
    con = product_drawing(tree, m)
    x = crossing_graph(con.drawing).graph
    try:
        width = validate_decomposition(x, con.witnesses["Wv_decomposition"])
    except CircdrawError as exc:
        res.check(tag, f"W_v decomposition: {exc}", False)
        return res
    res.le(tag, "width <= (D_T + 1) m^2 - 1", width, (tree.max_degree() + 1) * m * m - 1)
    owner = con.extras["owner"]
    for a, b in x.edges:
        ea, eb = con.graph.edges[a], con.graph.edges[b]
        share = {owner[v] for v in ea} & {owner[v] for v in eb}
        res.check(tag, f"crossing edges {a},{b} share a tree vertex", bool(share))
    return res


def _star_forest(payload, caps):
    t = payload
    tag = f"t={t}"
    res = _Result(instances=1)
    con = star_forest_construction(t)
    x = crossing_graph(con.drawing).graph
    for comp in x.components():
        sub = x.subgraph(comp)
        star = sub.is_tree() and (sub.n <= 2 or sum(1 for v in comp if sub.degree(v) > 1) == 1)
        res.check(tag, f"X_D1 component {sorted(comp)[:3]}... is a star", star)
    rows = con.extras.get("edge_kind", {})
    for e, kind in rows.items():
        if kind == "horizontal":
            res.le(tag, f"horizontal edge {e} crossed at most once", x.degree(e), 1)
    res.check(tag, "radius(G) = 1", graph_radius(con.graph) == 1, graph_radius(con.graph), 1)
    res.check(tag, "K_{t+1} minor certificate",
              validate_minor_certificate(con.graph, complete_graph(t + 1), con.witnesses["kt1_minor"]))
    return res


def _ktt(payload, caps):
    t = payload
    tag = f"t={t}"
    res = _Result(instances=1)
    con = ktt_chord_diagram(t)
    x = crossing_graph(con.drawing).graph
    res.check(tag, "X_D isomorphic to K_t,t", is_isomorphic(x, complete_bipartite_graph(t, t)))
    tw = solvers.treewidth_exact(x, caps["tw"])[0]
    res.check(tag, "tw(X_D) = t", tw == t, tw, t)
    h, cert = solvers.hadwiger_exact(x, caps["hadwiger"])
    res.check(tag, "h(X_D) = t + 1", h == t + 1, h, t + 1)
    res.check(tag, "Hadwiger certificate", validate_minor_certificate(x, complete_graph(h), cert))
    ht, tcert = solvers.hajos_exact(x, caps["hajos"])
    res.le(tag, "htop(X_D) <= h(X_D)", ht, h)
    res.check(tag, "Hajos certificate", validate_topological_certificate(x, complete_graph(ht), tcert))
    res.details[tag] = {"tw": tw, "hadwiger": h, "hajos": ht}
    return res


def _dominant(payload, caps):
    idx, t_dict = payload
    tree = Graph(t_dict["vertices"], [tuple(e) for e in t_dict["edges"]])
    tag = f"tree#{idx} (n={tree.n})"
    res = _Result(instances=1)
    con = tree_plus_dominant(tree)
    g = con.graph
    tw = solvers.treewidth_exact(g, caps["tw"])[0]
    want = 2 if tree.n >= 3 else g.n - 1
    res.check(tag, "treewidth", tw == want, tw, want)
    validate_decomposition(g, con.witnesses["width2_decomposition"])
    if g.n >= 6:
        hit = solvers.find_topological_minor(g, complete_bipartite_graph(2, 4))
        res.check(tag, "no K_2,4 topological minor", hit is None)
    return res


def atlas_graphs(max_n: int) -> list[Graph]:
    return [Graph.from_networkx(h) for h in nx.graph_atlas_g()
            if 1 <= h.number_of_nodes() <= max_n]


def _oracles(payload, caps):
    lo, hi, max_n = payload
    res = _Result()
    for i, g in enumerate(atlas_graphs(max_n)[lo:hi], lo):
        res.instances += 1
        tag = f"atlas#{i} n={g.n} m={g.m}"
        tw, td = solvers.treewidth_exact(g, caps["tw"])
        res.check(tag, "treewidth witness width", validate_decomposition(g, td) == tw)
        ref = treewidth_bruteforce(g)
        res.check(tag, "treewidth = oracle", tw == ref, tw, ref)
        h, cert = solvers.hadwiger_exact(g, caps["hadwiger"])
        ref = hadwiger_bruteforce(g)
        res.check(tag, "hadwiger = oracle", h == ref, h, ref)
        res.check(tag, "hadwiger certificate", validate_minor_certificate(g, complete_graph(h), cert))
        ht, tcert = solvers.hajos_exact(g, caps["hajos"])
        ref = hajos_bruteforce(g)
        res.check(tag, "hajos = oracle", ht == ref, ht, ref)
        res.check(tag, "hajos certificate",
                  validate_topological_certificate(g, complete_graph(ht), tcert))
        res.le(tag, "hajos <= hadwiger", ht, h)
        res.le(tag, "hadwiger <= tw + 1", h, tw + 1)
    return res


# -- task expansion -----------------------------------------------------------

def _enum_tasks(g: Graph, chunks: int, caps):
    if g.n > caps["enum"]:
        raise TooLargeInstance(f"enumeration is capped at {caps['enum']} vertices (got {g.n})")
    return chunk_bounds(count_circular_orders(g.n), chunks)


def _graph_payload(g: Graph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def _tasks(suite: str, params: dict, caps: dict, chunks: int) -> list:
    p = params
    if suite == "section3":
        return [(s, p["force"]) for s in instance_seeds(p["seed"], p["seeds"])]
    if suite == "triangulation":
        return instance_seeds(p["seed"], p["seeds"])
    if suite == "cycles-lemma":
        ts = [p["t"]] if p.get("t") else sorted(CYCLE_FIXTURES)
        for t in ts:
            if t not in CYCLE_FIXTURES:
                raise InvalidParameter(f"cycles-lemma fixtures exist for t in {sorted(CYCLE_FIXTURES)}")
        return [(t, a, b) for t in ts for a, b in CYCLE_FIXTURES[t]]
    if suite == "expander":
        return list(range(1, p["t"] + 1))
    if suite == "nok2k":
        ks = [p["k"]] if p.get("k") else [1, 2]
        g_of = {k: complete_bipartite_graph(2, 4 * k - 1) for k in ks}
        return [(k, lo, hi) for k in ks for lo, hi in _enum_tasks(g_of[k], chunks, caps)]
    if suite in ("k23-subdivisions", "k24-subdivisions"):
        leaves = 3 if suite == "k23-subdivisions" else 4
        members = list(k2n_subdivision_suite(1, p["max_division"], leaves=leaves))
        out = []
        for idx, g in enumerate(members):
            for lo, hi in _enum_tasks(g, max(1, chunks // len(members)), caps):
                out.append((idx, _graph_payload(g), lo, hi))
        return out
    if suite == "grid":
        return list(range(1, p["n"] + 1))
    if suite == "product":
        trees = small_trees(p["max_tree"], 3)
        return [(i, _graph_payload(t), m) for i, t in enumerate(trees) for m in p["m"]]
    if suite == "star-forest":
        return list(range(p["t_min"], p["t"] + 1))
    if suite == "ktt":
        return list(range(2, p["t"] + 1))
    if suite == "dominant":
        return [(i, _graph_payload(t)) for i, t in enumerate(small_trees(p["max_tree"], 3))]
    if suite == "oracles":
        total = len(atlas_graphs(p["max_n"]))
        return [(lo, hi, p["max_n"]) for lo, hi in chunk_bounds(total, chunks)]
    raise InvalidParameter(f"unknown suite {suite!r}")


SUITES = {
    "section3": (_section3, {"seeds": 200, "seed": 0, "force": False}),
    "triangulation": (_triangulation, {"seeds": 200, "seed": 0}),
    "cycles-lemma": (_cycles, {"t": None}),
    "expander": (_expander, {"t": 6}),
    "nok2k": (_nok2k, {"k": None}),
    "k23-subdivisions": (_k23_subdivisions, {"max_division": 2}),
    "k24-subdivisions": (_k24_subdivisions, {"max_division": 2}),
    "grid": (_grid, {"n": 4}),
    "product": (_product, {"max_tree": 6, "m": [2, 3]}),
    "star-forest": (_star_forest, {"t": 5, "t_min": 2}),
    "ktt": (_ktt, {"t": 3}),
    "dominant": (_dominant, {"max_tree": 6}),
    "oracles": (_oracles, {"max_n": 7}),
}


def _run_task(args):
    suite, payload, caps = args
    return SUITES[suite][0](payload, caps)


def run_suite(suite: str, params: dict | None = None, jobs: int = 1,
              caps: dict | None = None) -> VerificationReport:
    """Run one suite; ``params`` override the suite defaults."""
    if suite not in SUITES:
        raise InvalidParameter(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    merged = dict(SUITES[suite][1])
    merged.update({k: v for k, v in (params or {}).items() if v is not None})
    caps = {**DEFAULT_CAPS, **(caps or {})}
    start = time.perf_counter()
    jobs = max(1, jobs)
    tasks = [(suite, t, caps) for t in _tasks(suite, merged, caps, chunks=max(jobs, 4))]
    if jobs > 1 and len(tasks) > 1:
        with Pool(jobs) as pool:
            results = pool.map(_run_task, tasks, chunksize=1)
    else:
        results = [_run_task(t) for t in tasks]
    total = _merge(results)
    if suite == "nok2k":
        for k in ([merged["k"]] if merged.get("k") else [1, 2]):
            total.details[f"expected orders for K_2,{4 * k - 1}"] = count_circular_orders(4 * k + 1)
    ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(suite, total.instances, total.failures, ms, merged, total.details)
