"""Simple undirected graphs, tree-decompositions and minor certificates.

Vertices are integers. Edges are stored as sorted pairs ``(u, v)`` with
``u < v`` and the *edge id* of an edge is its index in ``Graph.edges``, which
is sorted lexicographically. Drawings and crossing graphs rely on these ids,
so they are stable for a given vertex/edge set.

Generator id conventions
------------------------
grid(r, c)              vertex ``i * c + j`` is row ``i``, column ``j`` (row-major)
complete(n)             ``0 .. n-1``
complete_bipartite(s,t) left side ``0 .. s-1``, right side ``s .. s+t-1``
complete_binary_tree(h) heap order: children of ``i`` are ``2i+1`` and ``2i+2``
path(n), cycle(n)       ``0 .. n-1`` in path/cycle order
random_tree(n, d)       ``0 .. n-1``; vertex ``i > 0`` attaches to an earlier vertex
strong_product(g, h)    ``(v, w)`` gets ``i * |V(h)| + j`` where ``i``/``j`` are the
                        positions of ``v``/``w`` in the sorted vertex lists
subdivide(g, counts)    division vertices get fresh ids above ``max(V(g))``
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Mapping

from .errors import (
    DecompositionError,
    DisconnectedGraph,
    InvalidCertificate,
    InvalidParameter,
    TooLargeInstance,
)

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """An immutable simple undirected graph."""

    __slots__ = ("_vertices", "_edges", "_adj", "_edge_index", "labels")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable = (),
                 labels: Mapping[int, str] | None = None):
        vs = set(int(v) for v in vertices)
        es = set()
        for e in edges:
            u, v = e
            u, v = int(u), int(v)
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            if u not in vs or v not in vs:
                raise InvalidParameter(f"edge {(u, v)} has an endpoint outside the vertex set")
            es.add(_norm(u, v))
        self._vertices = tuple(sorted(vs))
        self._edges = tuple(sorted(es))
        adj = {v: set() for v in self._vertices}
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._edge_index = {e: i for i, e in enumerate(self._edges)}
        self.labels = dict(labels) if labels else {}

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[_norm(u, v)]

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def label(self, v: int) -> str:
        return self.labels.get(v, str(v))

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(keep, [e for e in self._edges if e[0] in keep and e[1] in keep],
                     {v: s for v, s in self.labels.items() if v in keep})

    def add_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self._vertices, list(self._edges) + list(extra), self.labels)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        return Graph((mapping[v] for v in self._vertices),
                     ((mapping[u], mapping[v]) for u, v in self._edges))

    def components(self) -> list[list[int]]:
        seen, out = set(), []
        for s in self._vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n > 0 and self.m == self.n - 1 and self.is_connected()

    def bfs_distances(self, source: int) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self._vertices)
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        return cls(g.nodes(), g.edges())


# -- serialisation ---------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    d = {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}
    if g.labels:
        d["labels"] = {str(k): v for k, v in sorted(g.labels.items())}
    return d


def graph_from_dict(d: Mapping) -> Graph:
    labels = {int(k): v for k, v in d.get("labels", {}).items()}
    return Graph(d["vertices"], [tuple(e) for e in d["edges"]], labels)


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g))


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        if v in g.labels:
            lines.append(f'  {v} [label="{g.labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- generators ------------------------------------------------------------

def grid_graph(rows: int, cols: int | None = None) -> Graph:
    cols = rows if cols is None else cols
    if rows < 1 or cols < 1:
        raise InvalidParameter("grid dimensions must be >= 1")
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph(range(rows * cols), edges)


def complete_graph(n: int) -> Graph:
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    return Graph(range(n), combinations(range(n), 2))


def complete_bipartite_graph(s: int, t: int) -> Graph:
    if s < 0 or t < 0:
        raise InvalidParameter("part sizes must be >= 0")
    return Graph(range(s + t), [(i, s + j) for i in range(s) for j in range(t)])


def complete_binary_tree(height: int) -> Graph:
    if height < 0:
        raise InvalidParameter("height must be >= 0")
    n = 2 ** (height + 1) - 1
    return Graph(range(n), [((i - 1) // 2, i) for i in range(1, n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter("a path needs at least one vertex")
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter("a cycle needs at least three vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def random_tree(size: int, max_degree: int | None = None, seed: int | None = 0) -> Graph:
    """Random labelled tree built by attaching each new vertex to an earlier one.

    Parents are drawn uniformly among earlier vertices that still have spare
    degree, so ``max_degree`` is respected whenever it is at least 2.
    """
    if size < 1:
        raise InvalidParameter("size must be >= 1")
    if max_degree is not None and max_degree < 1 or (max_degree == 1 and size > 2):
        raise InvalidParameter("max_degree too small for a tree of this size")
    rng = random.Random(seed)
    deg = [0] * size
    edges = []
    for v in range(1, size):
        choices = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        u = rng.choice(choices)
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph(range(size), edges)


FAMILIES = ("grid", "complete", "complete_bipartite", "complete_binary_tree",
            "path", "cycle", "random_tree")


def generate(family: str, params: list[int], seed: int | None = None) -> Graph:
    """Build a named graph family; see the module docstring for id conventions."""
    params = [int(p) for p in params]
    if any(p < 0 for p in params):
        raise InvalidParameter(f"negative parameter in {params}")
    try:
        if family == "grid":
            return grid_graph(*params)
        if family == "complete":
            (n,) = params
            return complete_graph(n)
        if family == "complete_bipartite":
            s, t = params
            return complete_bipartite_graph(s, t)
        if family == "complete_binary_tree":
            (h,) = params
            return complete_binary_tree(h)
        if family == "path":
            (n,) = params
            return path_graph(n)
        if family == "cycle":
            (n,) = params
            return cycle_graph(n)
        if family == "random_tree":
            if len(params) == 3 and seed is None:
                seed = params[2]
            size = params[0]
            max_deg = params[1] if len(params) > 1 else None
            return random_tree(size, max_deg, 0 if seed is None else seed)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidParameter):
            raise
        raise InvalidParameter(f"bad parameters {params} for {family}") from exc
    raise InvalidParameter(f"unknown family {family!r}")


def strong_product(g: Graph, h: Graph) -> Graph:
    if g.n == 0 or h.n == 0:
        raise InvalidParameter("strong product of an empty graph")
    gv, hv = g.vertices, h.vertices
    k = len(hv)
    vid = {(v, w): i * k + j for i, v in enumerate(gv) for j, w in enumerate(hv)}
    edges = []
    for (v, w), a in vid.items():
        for (x, y), b in vid.items():
            if a >= b:
                continue
            if (v == x and h.has_edge(w, y)) or (w == y and g.has_edge(v, x)) \
                    or (g.has_edge(v, x) and h.has_edge(w, y)):
                edges.append((a, b))
    labels = {a: f"({g.label(v)},{h.label(w)})" for (v, w), a in vid.items()}
    return Graph(vid.values(), edges, labels)


def subdivide(g: Graph, counts: Mapping[Edge, int]) -> Graph:
    """Replace edge ``uv`` by a path with ``counts[uv]`` internal vertices."""
    norm = {}
    for e, c in counts.items():
        key = _norm(*e)
        if not g.has_edge(*key):
            raise InvalidParameter(f"{e} is not an edge of the graph")
        if c < 0:
            raise InvalidParameter("subdivision counts must be non-negative")
        norm[key] = int(c)
    nxt = max(g.vertices, default=-1) + 1
    vertices = list(g.vertices)
    edges = []
    labels = dict(g.labels)
    for u, v in g.edges:
        c = norm.get((u, v), 0)
        prev = u
        for k in range(c):
            vertices.append(nxt)
            labels[nxt] = f"s{u}-{v}.{k}"
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(vertices, edges, labels)


# -- simple invariants -----------------------------------------------------

def degeneracy(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy and the min-degree elimination order (ties: smallest id)."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    order, k = [], 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        k = max(k, deg[v])
        order.append(v)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return k, order


def graph_radius(g: Graph) -> int:
    if g.n == 0:
        raise InvalidParameter("radius of the empty graph is undefined")
    best = None
    for v in g.vertices:
        dist = g.bfs_distances(v)
        if len(dist) < g.n:
            raise DisconnectedGraph("radius requires a connected graph")
        ecc = max(dist.values())
        best = ecc if best is None else min(best, ecc)
    return best


def eccentricity(g: Graph, v: int) -> int:
    dist = g.bfs_distances(v)
    if len(dist) < g.n:
        raise DisconnectedGraph("eccentricity requires a connected graph")
    return max(dist.values())


def has_kst_subgraph(g: Graph, s: int, t: int) -> tuple[frozenset, frozenset] | None:
    """Find disjoint ``S``, ``T`` with ``|S| = s``, ``|T| = t`` and all S-T edges."""
    if s < 1 or t < 1:
        raise InvalidParameter("s and t must be >= 1")
    swap = s > t
    a, b = (t, s) if swap else (s, t)
    cands = [v for v in g.vertices if g.degree(v) >= b]
    for side in combinations(cands, a):
        common = set(g.neighbors(side[0]))
        for v in side[1:]:
            common &= g.neighbors(v)
            if len(common) < b:
                break
        if len(common) >= b:
            other = frozenset(sorted(common)[:b])
            pair = (frozenset(side), other)
            return (pair[1], pair[0]) if swap else pair
    return None


# -- tree decompositions ---------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: Mapping[int, frozenset]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def is_path(self) -> bool:
        return self.tree.n <= 1 or (self.tree.is_tree() and self.tree.max_degree() <= 2)

    def to_dict(self) -> dict:
        return {"tree_edges": [list(e) for e in self.tree.edges],
                "bags": {str(x): sorted(b) for x, b in sorted(self.bags.items())}}

    @classmethod
    def from_dict(cls, d: Mapping) -> "TreeDecomposition":
        bags = {int(x): frozenset(b) for x, b in d["bags"].items()}
        return cls(Graph(bags.keys(), [tuple(e) for e in d["tree_edges"]]), bags)


def path_decomposition(bags: list[Iterable[int]]) -> TreeDecomposition:
    """Path-decomposition with nodes ``0 .. len(bags)-1`` in order."""
    k = len(bags)
    return TreeDecomposition(Graph(range(k), [(i, i + 1) for i in range(k - 1)]),
                             {i: frozenset(b) for i, b in enumerate(bags)})


def validate_decomposition(g: Graph, td: TreeDecomposition) -> int:
    """Check the tree-decomposition axioms and return the width.

    Raises :class:`DecompositionError` naming the first violated axiom.
    """
    tree = td.tree
    if set(td.bags) != set(tree.vertices):
        raise DecompositionError("not-a-tree", sorted(set(td.bags) ^ set(tree.vertices)),
                                 "bag keys and tree nodes differ")
    if tree.n == 0:
        if g.n:
            raise DecompositionError("uncovered-vertex", g.vertices[0])
        return -1
    if not tree.is_tree():
        raise DecompositionError("not-a-tree", None, "decomposition tree is not a tree")
    where: dict[int, list[int]] = {v: [] for v in g.vertices}
    for x in tree.vertices:
        for v in td.bags[x]:
            if v not in where:
                raise DecompositionError("dangling-vertex", v, f"bag {x} contains unknown vertex {v}")
            where[v].append(x)
    for v, nodes in where.items():
        if not nodes:
            raise DecompositionError("uncovered-vertex", v, f"vertex {v} is in no bag")
    for u, v in g.edges:
        common = set(where[u]).intersection(where[v])
        if not common:
            raise DecompositionError("uncovered-edge", (u, v), f"no bag contains edge {(u, v)}")
    for v, nodes in where.items():
        if len(nodes) > 1 and not tree.subgraph(nodes).is_connected():
            raise DecompositionError("disconnected-vertex", v,
                                     f"nodes containing vertex {v} do not induce a subtree")
    return td.width


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree-decomposition induced by an elimination ordering.

    Each vertex gets the bag ``{v} + its later neighbours in the fill-in
    graph``; the bag hangs below the bag of its earliest later neighbour.
    """
    pos = {v: i for i, v in enumerate(order)}
    nb = {v: set(g.neighbors(v)) for v in g.vertices}
    bags, parent = {}, {}
    for v in order:
        later = {w for w in nb[v] if pos[w] > pos[v]}
        bags[v] = frozenset(later | {v})
        if later:
            parent[v] = min(later, key=pos.__getitem__)
        for a, b in combinations(later, 2):
            nb[a].add(b)
            nb[b].add(a)
    if not order:
        return TreeDecomposition(Graph([0]), {0: frozenset()})
    roots = [v for v in order if v not in parent]
    tree_edges = [(v, p) for v, p in parent.items()]
    tree_edges += [(roots[i], roots[i + 1]) for i in range(len(roots) - 1)]
    return TreeDecomposition(Graph(order, tree_edges), bags)


def order_width(g: Graph, order: list[int]) -> int:
    return decomposition_from_order(g, order).width


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class MinorCertificate:
    """Branch sets: H-vertex -> set of G-vertices."""

    model: Mapping[int, frozenset]

    def to_dict(self) -> dict:
        return {str(k): sorted(v) for k, v in sorted(self.model.items())}

    @classmethod
    def from_dict(cls, d: Mapping) -> "MinorCertificate":
        return cls({int(k): frozenset(v) for k, v in d.items()})


@dataclass(frozen=True)
class TopologicalMinorCertificate:
    branch_vertices: Mapping[int, int]
    paths: Mapping[Edge, tuple] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"branch_vertices": {str(k): v for k, v in sorted(self.branch_vertices.items())},
                "paths": [[list(e), list(p)] for e, p in sorted(self.paths.items())]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "TopologicalMinorCertificate":
        return cls({int(k): int(v) for k, v in d["branch_vertices"].items()},
                   {tuple(e): tuple(p) for e, p in d["paths"]})


def validate_minor_certificate(g: Graph, h: Graph, cert: MinorCertificate) -> bool:
    model = cert.model
    for hv, branch in model.items():
        if hv not in h:
            raise InvalidCertificate(f"{hv} is not a vertex of H")
        for v in branch:
            if v not in g:
                raise InvalidCertificate(f"{v} is not a vertex of G")
    if set(model) != set(h.vertices):
        return False
    seen = set()
    for branch in model.values():
        if not branch or seen & branch:
            return False
        seen |= branch
        if not g.subgraph(branch).is_connected():
            return False
    for a, b in h.edges:
        if not any(g.neighbors(v) & model[b] for v in model[a]):
            return False
    return True


def validate_topological_certificate(g: Graph, h: Graph, cert: TopologicalMinorCertificate) -> bool:
    bv = cert.branch_vertices
    for x, v in bv.items():
        if x not in h:
            raise InvalidCertificate(f"{x} is not a vertex of H")
        if v not in g:
            raise InvalidCertificate(f"{v} is not a vertex of G")
    if set(bv) != set(h.vertices) or len(set(bv.values())) != len(bv):
        return False
    paths = {_norm(*e): p for e, p in cert.paths.items()}
    if set(paths) != set(h.edges):
        return False
    images = set(bv.values())
    used = set()
    for (a, b), p in paths.items():
        if any(v not in g for v in p):
            raise InvalidCertificate(f"path {p} leaves G")
        if len(p) < 2 or {p[0], p[-1]} != {bv[a], bv[b]}:
            return False
        if len(set(p)) != len(p):
            return False
        if any(not g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
            return False
        inner = set(p[1:-1])
        if inner & images or inner & used:
            return False
        used |= inner
    return True


# -- isomorphism (test scale) ----------------------------------------------

def canonical_form(g: Graph, cap: int = 8) -> tuple:
    """Canonical edge list by exhaustive relabelling within degree classes."""
    if g.n > cap:
        raise TooLargeInstance(f"canonical form limited to {cap} vertices")
    classes: dict[tuple, list[int]] = {}
    for v in g.vertices:
        key = (g.degree(v), tuple(sorted(g.degree(w) for w in g.neighbors(v))))
        classes.setdefault(key, []).append(v)
    keys = sorted(classes)
    best = None
    for perms in product(*(permutations(classes[k]) for k in keys)):
        seq = [v for p in perms for v in p]
        pos = {v: i for i, v in enumerate(seq)}
        form = tuple(sorted(_norm(pos[u], pos[v]) for u, v in g.edges))
        if best is None or form < best:
            best = form
    return (g.n, tuple(keys), best)


def is_isomorphic(g: Graph, h: Graph, cap: int = 8) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g, cap) == canonical_form(h, cap)
