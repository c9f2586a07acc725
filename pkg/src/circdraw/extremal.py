"""Explicit drawings with their witness objects.

Each generator returns a :class:`LabeledConstruction`: the drawing, the drawn
graph, and named witnesses (minor models, decompositions, edge-set lists)
that the validators in :mod:`circdraw.graph` can check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator

from .drawing import (
    CircularDrawing,
    StraightLineDrawing,
    crossing_graph,
    map_radius,
    wrap_linear,
)
from .errors import InvalidParameter, TooLargeInstance
from .graph import (
    Graph,
    MinorCertificate,
    TreeDecomposition,
    complete_bipartite_graph,
    decomposition_from_order,
    grid_graph,
    path_decomposition,
    strong_product,
    subdivide,
)


@dataclass
class LabeledConstruction:
    name: str
    params: dict
    graph: Graph
    drawing: object
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def witnesses_to_dict(self) -> dict:
        out = {}
        for key, w in self.witnesses.items():
            if hasattr(w, "to_dict"):
                out[key] = w.to_dict()
            else:
                out[key] = _jsonable(w)
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def _need(cond: bool, msg: str):
    if not cond:
        raise InvalidParameter(msg)


# -- grid ---------------------------------------------------------------------

def grid_row_drawing(n: int) -> LabeledConstruction:
    """The n x n grid drawn row after row, with the row-edge path-decomposition of X_D."""
    _need(isinstance(n, int) and n >= 1, "grid_row_drawing needs n >= 1")
    g = grid_graph(n)
    d = CircularDrawing(g, range(n * n))
    bags = []
    for i in range(n):
        row = set(range(i * n, (i + 1) * n))
        bags.append([k for k, (u, v) in enumerate(g.edges) if u in row or v in row])
    return LabeledConstruction(
        "grid_row", {"n": n}, g, d,
        {"E_path_decomposition": path_decomposition(bags)},
        ["rows placed consecutively; bag i holds the edges meeting row i"])


# -- 2-degenerate crossing graph with a K_t minor --------------------------------

def expander_paths(t: int) -> list[list[Fraction]]:
    paths = [[Fraction(x) for x in range(1, t + 1)]]
    for s in range(1, t):
        step = Fraction(1, 2 ** s)
        xs, x = [], s + step
        while x <= t - step:
            xs.append(x)
            x += 2 * step
        paths.append(xs)
    return paths


def expander_intervals(t: int) -> dict[tuple[int, int], tuple[Fraction, Fraction]]:
    return {(r, s): (s + Fraction(1, 2 ** r) - Fraction(1, 2 ** s), s + Fraction(1, 2 ** r))
            for r, s in combinations(range(t), 2)}


def two_degenerate_expander(t: int) -> LabeledConstruction:
    """Monotone paths P_0..P_{t-1} on the x-axis joined by short edges e_{r,s}.

    The linear drawing (edges read as upper semicircles) wraps to a circular
    drawing whose crossing graph is 2-degenerate, while the graph has a K_t
    minor with branch sets V(P_s).
    """
    _need(isinstance(t, int) and t >= 1, "two_degenerate_expander needs t >= 1")
    paths = expander_paths(t)
    ids, coords, labels, branch = {}, {}, {}, {}
    for s, xs in enumerate(paths):
        branch[s] = []
        for x in xs:
            v = len(ids)
            ids[x] = v
            coords[v] = (x, Fraction(0))
            labels[v] = f"P{s}@{x}"
            branch[s].append(v)
    edges = []
    for xs in paths:
        edges += [(ids[a], ids[b]) for a, b in zip(xs, xs[1:])]
    horizontal = {}
    for (r, s), (lo, hi) in expander_intervals(t).items():
        edges.append((ids[lo], ids[hi]))
        horizontal[(r, s)] = (ids[lo], ids[hi])
    g = Graph(ids.values(), edges, labels)
    linear = StraightLineDrawing(g, coords, linear=True)
    cert = MinorCertificate({s: frozenset(vs) for s, vs in branch.items()})
    return LabeledConstruction(
        "two_degenerate_expander", {"t": t}, g, linear,
        {"kt_minor": cert,
         "horizontal_edges": {f"{r},{s}": list(e) for (r, s), e in horizontal.items()},
         "intervals": {f"{r},{s}": list(iv) for (r, s), iv in expander_intervals(t).items()}},
        ["branch sets are the monotone paths; e_{r,s} joins P_r and P_s"],
        {"circular": wrap_linear(linear), "paths": branch})


# -- K_{t,t} as a crossing graph ----------------------------------------------

def ktt_chord_diagram(t: int) -> LabeledConstruction:
    """2t chords on 4t points whose crossing graph is K_{t,t}.

    Points p_i, m_i, q_i, r_i get ids ``i``, ``t+i``, ``2t+i``, ``3t+i``
    (0-based); chords are a_i = p_i q_i and b_i = m_i r_i, so edge ids
    ``0..t-1`` are the a-chords and ``t..2t-1`` the b-chords.
    """
    _need(isinstance(t, int) and t >= 1, "ktt_chord_diagram needs t >= 1")
    p = list(range(t))
    m = [t + i for i in range(t)]
    q = [2 * t + i for i in range(t)]
    r = [3 * t + i for i in range(t)]
    order = p + m + q[::-1] + r[::-1]
    edges = [(p[i], q[i]) for i in range(t)] + [(m[i], r[i]) for i in range(t)]
    labels = {}
    for name, vs in (("p", p), ("m", m), ("q", q), ("r", r)):
        for i, v in enumerate(vs):
            labels[v] = f"{name}{i + 1}"
    g = Graph(range(4 * t), edges, labels)
    d = CircularDrawing(g, order)
    return LabeledConstruction(
        "ktt", {"t": t}, g, d,
        {"bipartition": [list(range(t)), list(range(t, 2 * t))]},
        ["chords inside each bundle nest; every a-chord crosses every b-chord"])


# -- trees --------------------------------------------------------------------

def _require_tree(tree: Graph):
    if tree.n == 0 or not tree.is_tree():
        raise InvalidParameter("input must be a nonempty tree")


def dfs_preorder(tree: Graph, root: int | None = None) -> list[int]:
    root = tree.vertices[0] if root is None else root
    out, stack, seen = [], [root], {root}
    while stack:
        v = stack.pop()
        out.append(v)
        for w in sorted(tree.neighbors(v), reverse=True):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return out


def tree_plus_dominant(tree: Graph) -> LabeledConstruction:
    """A tree of maximum degree 3 plus one vertex adjacent to everything."""
    _require_tree(tree)
    if tree.max_degree() > 3:
        raise InvalidParameter("tree has a vertex of degree above 3")
    apex = max(tree.vertices) + 1
    g = Graph(list(tree.vertices) + [apex],
              list(tree.edges) + [(v, apex) for v in tree.vertices])
    order = dfs_preorder(tree)
    d = CircularDrawing(g, order + [apex])
    # leaves first: every eliminated tree vertex sees its parent and the apex
    elim = list(reversed(order)) + [apex]
    td = decomposition_from_order(g, elim)
    return LabeledConstruction(
        "tree_plus_dominant", {"tree_n": tree.n}, g, d,
        {"width2_decomposition": td},
        ["treewidth at most 2", "no K_{2,4} topological minor since G - apex has degree <= 3"],
        {"apex": apex})


def product_drawing(tree: Graph, m: int) -> LabeledConstruction:
    """T x K_m (strong product) drawn by blowing up a crossing-free tree order."""
    _require_tree(tree)
    _need(isinstance(m, int) and m >= 1, "m must be >= 1")
    g = strong_product(tree, Graph(range(m), [(a, b) for a, b in combinations(range(m), 2)]))
    pos = {v: i for i, v in enumerate(tree.vertices)}
    order = [pos[v] * m + j for v in dfs_preorder(tree) for j in range(m)]
    d = CircularDrawing(g, order)
    owner = {pos[v] * m + j: v for v in tree.vertices for j in range(m)}
    bags = {v: frozenset(k for k, (a, b) in enumerate(g.edges) if owner[a] == v or owner[b] == v)
            for v in tree.vertices}
    td = TreeDecomposition(tree, bags)
    bound = (tree.max_degree() + 1) * m * m - 1
    return LabeledConstruction(
        "product", {"tree_n": tree.n, "m": m}, g, d,
        {"Wv_decomposition": td},
        [f"bags W_v: edges meeting the block of v; width bound {bound}"],
        {"width_bound": bound, "owner": owner})


# -- star forest --------------------------------------------------------------

def star_forest_construction(t: int) -> LabeledConstruction:
    """Straight-line drawing D_1 whose crossing graph is a star forest.

    Rows ``y = 1..t`` carry horizontal paths P_i, vertical edges realise the
    edges of K_t, and every vertex gets an edge up to the line ``y = t+1``,
    which carries one more path P_{t+1}. Contracting P_{t+1} to a single apex
    gives a graph of radius 1 with a K_{t+1} minor (contract every P_i).
    """
    _need(isinstance(t, int) and t >= 1, "star_forest_construction needs t >= 1")
    top = Fraction(t + 1)
    delta = Fraction(1, 2 ** (t + 3))
    pairs = list(combinations(range(1, t + 1), 2))
    phi = {ij: k + 1 for k, ij in enumerate(pairs)}

    coords: dict[int, tuple] = {}
    edges: list[tuple[int, int]] = []
    kind: dict[tuple[int, int], str] = {}
    row_of: dict[int, int] = {}

    def new_vertex(x, y, row=None):
        v = len(coords)
        coords[v] = (Fraction(x), Fraction(y))
        if row is not None:
            row_of[v] = row
        return v

    def add(u, v, what):
        e = (min(u, v), max(u, v))
        edges.append(e)
        kind[e] = what

    at = {}
    for (i, j), x in phi.items():
        at[(x, i)] = new_vertex(x, i, i)
        at[(x, j)] = new_vertex(x, j, j)
        add(at[(x, i)], at[(x, j)], "red")
    if t == 1:
        at[(1, 1)] = new_vertex(1, 1, 1)
    rows = {i: sorted((v for v, r in row_of.items() if r == i), key=lambda v: coords[v][0])
            for i in range(1, t + 1)}
    # pendant edges to the top line: straight up from the upper end of a red
    # edge (or a lone vertex), slightly slanted from the lower end
    uppers = []
    for (i, j), x in phi.items():
        lo, hi = at[(x, i)], at[(x, j)]
        w = new_vertex(x, top)
        add(hi, w, "brown")
        w2 = new_vertex(x + delta, top)
        add(lo, w2, "brown")
        uppers += [w, w2]
    if t == 1:
        w = new_vertex(1, top)
        add(at[(1, 1)], w, "brown")
        uppers.append(w)

    def crossing_x(e, y):
        """x-coordinate where the non-horizontal edge e meets the line y, if inside."""
        (x1, y1), (x2, y2) = coords[e[0]], coords[e[1]]
        if y1 == y2 or not (min(y1, y2) < y < max(y1, y2)):
            return None
        return x1 + (x2 - x1) * (y - y1) / (y2 - y1)

    used_x = {c[0] for c in coords.values()}
    for i in range(1, t + 1):
        row = rows[i]
        risers = [e for e in edges if kind[e] != "horizontal"]
        hits = sorted(x for x in (crossing_x(e, Fraction(i)) for e in risers) if x is not None)
        new_row = [row[0]] if row else []
        for a, b in zip(row, row[1:]):
            xa, xb = coords[a][0], coords[b][0]
            inside = [x for x in hits if xa < x < xb]
            for c1, c2 in zip(inside, inside[1:]):
                x = (c1 + c2) / 2
                k = 2
                while x in used_x:
                    x = c1 + (c2 - c1) / 2 ** k
                    k += 1
                used_x.add(x)
                v = new_vertex(x, i, i)
                w = new_vertex(x, top)
                add(v, w, "brown")
                uppers.append(w)
                new_row.append(v)
            new_row.append(b)
        rows[i] = new_row
        for a, b in zip(new_row, new_row[1:]):
            add(a, b, "horizontal")
    uppers.sort(key=lambda v: coords[v][0])
    for a, b in zip(uppers, uppers[1:]):
        add(a, b, "top")

    g1 = Graph(coords.keys(), edges)
    d1 = StraightLineDrawing(g1, coords)
    # contract the top path into a single apex
    top_set = set(uppers)
    apex = len(coords)
    rename = {v: (apex if v in top_set else v) for v in g1.vertices}
    g_edges = {}
    for k, (u, v) in enumerate(g1.edges):
        if u in top_set and v in top_set:
            continue
        g_edges[k] = (rename[u], rename[v])
    g = Graph(set(rename.values()), g_edges.values())
    to_g = {k: g.edge_id(*e) for k, e in g_edges.items()}
    x1 = crossing_graph(d1).graph
    xg = Graph(range(g.m), [(to_g[a], to_g[b]) for a, b in x1.edges])
    comps = [c for c in x1.components()]
    model = {i - 1: frozenset(rows[i]) for i in range(1, t + 1)}
    model[t] = frozenset([apex])
    edge_kind = {g1.edge_id(*e): k for e, k in kind.items()}
    return LabeledConstruction(
        "star_forest", {"t": t}, g, d1,
        {"kt1_minor": MinorCertificate(model),
         "star_forest": comps,
         "radius1": {"center": apex}},
        ["D_1 is the straight-line drawing; G contracts its top path"],
        {"g1": g1, "apex": apex, "crossing_graph_g": xg, "edge_map": to_g,
         "edge_kind": edge_kind, "rows": rows})


# -- nested rings of chords ---------------------------------------------------

def nested_polygon_drawing(layers: int, m: int) -> LabeledConstruction:
    """Perfect matching on ``2*m*layers`` circle points forming nested chord rings.

    Points are split into m sectors of ``2*layers`` consecutive positions.
    Ring k joins offset k of sector i to offset ``2*layers-1-k`` of sector
    i+1, so each ring is a cycle of m chords in X_D and every chord of ring
    k+1 crosses two chords of ring k. The map-graph radius is measured, not
    promised.
    """
    _need(isinstance(layers, int) and layers >= 1, "layers must be >= 1")
    _need(isinstance(m, int) and m >= 3, "m must be >= 3")
    n = 2 * m * layers
    span = 2 * layers
    edges, ring = [], {}
    for k in range(layers):
        for i in range(m):
            a = i * span + k
            b = ((i + 1) * span + span - 1 - k) % n
            edges.append((min(a, b), max(a, b)))
            ring[(min(a, b), max(a, b))] = k
    g = Graph(range(n), edges)
    d = CircularDrawing(g, range(n))
    rings = [[g.edge_id(*e) for e in edges if ring[e] == k] for k in range(layers)]
    rad = map_radius(d)
    return LabeledConstruction(
        "nested_polygon", {"layers": layers, "m": m}, g, d,
        {"rings": rings}, [f"map graph radius {rad}"], {"map_radius": rad})


# -- K_{2,n} subdivisions -----------------------------------------------------

K2N_SUITE_CAP = 10


def _canonical_pattern(counts: list[tuple[int, int]]) -> tuple:
    a = tuple(sorted(counts))
    b = tuple(sorted((y, x) for x, y in counts))
    return min(a, b)


def k2n_subdivision_suite(t: int, max_division: int, leaves: int | None = None,
                          cap: int = K2N_SUITE_CAP) -> Iterator[Graph]:
    """K_{2,n} (n = 4t unless ``leaves`` is given) and its subdivisions.

    Members use at most ``max_division`` division vertices and are distinct
    up to swapping the two hubs and permuting the leaves. Hubs are vertices 0
    and 1, leaves ``2..n+1``; division vertices follow.
    """
    n = 4 * t if leaves is None else leaves
    _need(n >= 1 and max_division >= 0, "bad suite parameters")
    if n + 2 + max_division > cap:
        raise TooLargeInstance(f"suite members would exceed {cap} vertices")
    base = complete_bipartite_graph(2, n)
    seen = set()
    for total in range(max_division + 1):
        for slots in combinations_with_replacement(range(2 * n), total):
            counts = [[0, 0] for _ in range(n)]
            for s in slots:
                counts[s // 2][s % 2] += 1
            key = _canonical_pattern([tuple(c) for c in counts])
            if key in seen:
                continue
            seen.add(key)
            sub = {}
            for leaf in range(n):
                for hub in (0, 1):
                    if counts[leaf][hub]:
                        sub[(hub, 2 + leaf)] = counts[leaf][hub]
            yield subdivide(base, sub)
