"""Exact exponential-time solvers for treewidth, Hadwiger and Hajós numbers.

All solvers work on bitmask copies of the input graph. They are meant for
desk-scale instances and refuse inputs above their caps.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb

from .errors import TooLargeInstance
from .graph import (
    Graph,
    MinorCertificate,
    TopologicalMinorCertificate,
    TreeDecomposition,
    complete_graph,
    decomposition_from_order,
    degeneracy,
    graph_radius,
)

TREEWIDTH_CAP = 18
HADWIGER_CAP = 14
HAJOS_CAP = 12
MAX_SEARCH_NODES = 2_000_000


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- treewidth --------------------------------------------------------------

def _min_fill_order(nb: dict[int, set], rng: random.Random | None = None) -> tuple[int, list[int]]:
    nb = {v: set(s) for v, s in nb.items()}
    order, width = [], -1
    tie = rng.random if rng else (lambda: 0)
    while nb:
        def fill(v):
            ns = list(nb[v])
            return sum(1 for a, b in combinations(ns, 2) if b not in nb[a])
        v = min(nb, key=lambda x: (fill(x), len(nb[x]), tie(), x))
        width = max(width, len(nb[v]))
        _eliminate(nb, v)
        order.append(v)
    return width, order


def _min_degree_order(nb: dict[int, set]) -> tuple[int, list[int]]:
    nb = {v: set(s) for v, s in nb.items()}
    order, width = [], -1
    while nb:
        v = min(nb, key=lambda x: (len(nb[x]), x))
        width = max(width, len(nb[v]))
        _eliminate(nb, v)
        order.append(v)
    return width, order


HEURISTIC_RESTARTS = 16


def _heuristic_order(nb: dict[int, set], restarts: int = HEURISTIC_RESTARTS) -> tuple[int, list[int]]:
    """Best of min-degree, min-fill and min-fill with seeded random tie-breaks."""
    best = min(_min_fill_order(nb), _min_degree_order(nb))
    rng = random.Random(len(nb))
    for _ in range(restarts):
        if best[0] <= 1:
            break
        best = min(best, _min_fill_order(nb, rng))
    return best


def _eliminate(nb: dict[int, set], v: int) -> None:
    ns = nb.pop(v)
    for a in ns:
        nb[a].discard(v)
        nb[a] |= ns - {a}


def _minor_min_width(nb: dict[int, set]) -> int:
    """Contraction-degeneracy lower bound (min-d vertex, least-common neighbour)."""
    nb = {v: set(s) for v, s in nb.items()}
    lb = 0
    while len(nb) > 1:
        v = min(nb, key=lambda x: (len(nb[x]), x))
        lb = max(lb, len(nb[v]))
        if not nb[v]:
            del nb[v]
            continue
        u = min(nb[v], key=lambda x: (len(nb[x] & nb[v]), x))
        merged = (nb[v] | nb[u]) - {u, v}
        for w in nb.pop(v):
            nb[w].discard(v)
        nb[u] = merged
        for w in merged:
            nb[w].add(u)
    return lb


def _is_clique(nb: dict[int, set], vs) -> bool:
    vs = list(vs)
    return all(b in nb[a] for a, b in combinations(vs, 2))


def _reduce(nb: dict[int, set], low: int) -> tuple[list[int], int]:
    """Simplicial and almost-simplicial elimination, in place."""
    prefix = []
    changed = True
    while changed and nb:
        changed = False
        for v in sorted(nb, key=lambda x: (len(nb[x]), x)):
            ns = nb[v]
            d = len(ns)
            if _is_clique(nb, ns):
                low = max(low, d)
            elif d <= low and any(_is_clique(nb, ns - {u}) for u in ns):
                pass
            else:
                continue
            _eliminate(nb, v)
            prefix.append(v)
            changed = True
            break
    return prefix, low


def _tw_at_most(nb: dict[int, set], k: int, budget: int):
    """An elimination order of width <= ``k`` for a connected graph, or ``None``.

    A connected set ``C`` with ``|N(C)| <= k`` is *feasible* when it can be
    eliminated within width ``k``. That happens exactly when some ``v`` in
    ``C`` (eliminated last) splits ``C - v`` into feasible sets. The search
    runs bottom-up and only ever combines sets already known to be feasible,
    so refuting ``k`` never touches infeasible blocks.
    """
    verts = sorted(nb)
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    for v in verts:
        for w in nb[v]:
            adj[idx[v]] |= 1 << idx[w]
    full = (1 << n) - 1
    if n <= k + 1:
        return list(verts)

    def boundary(C):
        out = 0
        for i in _bits(C):
            out |= adj[i]
        return out & ~C

    how: dict[int, tuple[int, list[int]]] = {}
    closed: dict[int, int] = {}
    at: list[list[int]] = [[] for _ in range(n)]
    queue: list[int] = []
    steps = [0]

    def record(C, v, parts):
        if C in how:
            return False
        how[C] = (v, parts)
        if len(how) > budget:
            raise TooLargeInstance("treewidth search exceeded its state budget")
        closed[C] = C | boundary(C)
        queue.append(C)
        return C == full

    def combine(v, new):
        """Every feasible ``{v} + union of blocks`` that uses block ``new``."""
        bv = 1 << v
        pool = [D for D in at[v] if D != new]

        def grow(start, union, bnd, parts):
            steps[0] += 1
            if steps[0] > 20 * budget:
                raise TooLargeInstance("treewidth search exceeded its step budget")
            C = union | bv
            outside = (adj[v] & ~union) | bnd
            if _popcount(outside) <= k and record(C, v, list(parts)):
                return True
            for j in range(start, len(pool)):
                D = pool[j]
                if closed[D] & union:
                    continue
                nb2 = bnd | (boundary(D) & ~bv)
                if _popcount(nb2 & ~union) > k:
                    continue
                parts.append(D)
                if grow(j + 1, union | D, nb2, parts):
                    return True
                parts.pop()
            return False

        return grow(0, new, boundary(new) & ~bv, [new])

    for i in range(n):
        if _popcount(adj[i]) <= k and record(1 << i, i, []):
            break
    head = 0
    while full not in how and head < len(queue):
        D = queue[head]
        head += 1
        for v in _bits(boundary(D)):
            at[v].append(D)
            if combine(v, D):
                break
    if full not in how:
        return None

    def unroll(C):
        v, parts = how[C]
        out = []
        for D in parts:
            out += unroll(D)
        return out + [v]

    return [verts[i] for i in unroll(full)]


def treewidth_exact(g: Graph, cap: int | None = TREEWIDTH_CAP,
                    max_nodes: int = MAX_SEARCH_NODES) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with an optimal tree-decomposition.

    Safe reductions (simplicial / almost simplicial vertices) run first. Each
    remaining component is then asked "width <= k?" for k rising from a
    contraction lower bound until the search succeeds or k reaches the
    min-fill upper bound.
    """
    if cap is not None and g.n > cap:
        raise TooLargeInstance(f"treewidth_exact is capped at {cap} vertices (got {g.n})")
    if g.n == 0:
        return -1, TreeDecomposition(Graph([0]), {0: frozenset()})
    nb = {v: set(g.neighbors(v)) for v in g.vertices}
    ub, best_order = _heuristic_order(nb)
    low = _minor_min_width(nb)
    if low < ub:
        work = {v: set(s) for v, s in nb.items()}
        prefix, low = _reduce(work, low)
        order = list(prefix)
        width = low
        for comp in Graph(work, [(a, b) for a in work for b in work[a] if a < b]).components():
            sub = {v: work[v] & set(comp) for v in comp}
            cub, corder = _heuristic_order(sub)
            if cub <= width:
                order += corder
                continue
            found = None
            for k in range(max(width, _minor_min_width(sub)), cub):
                found = _tw_at_most(sub, k, max_nodes)
                if found is not None:
                    break
            if found is None:
                order += corder
                width = max(width, cub)
            else:
                order += found
                width = max(width, _order_width(sub, found))
        if width < ub:
            best_order = order
    td = decomposition_from_order(g, best_order)
    return td.width, td


def _order_width(nb: dict[int, set], order: list[int]) -> int:
    nb = {v: set(s) for v, s in nb.items()}
    width = -1
    for v in order:
        width = max(width, len(nb[v]))
        _eliminate(nb, v)
    return width


def treewidth_upper_bound(g: Graph) -> tuple[int, TreeDecomposition]:
    """Best of several greedy elimination orders; no optimality claim."""
    nb = {v: set(g.neighbors(v)) for v in g.vertices}
    _, order = _heuristic_order(nb)
    td = decomposition_from_order(g, order)
    return td.width, td


def treewidth_lower_bound(g: Graph) -> int:
    return _minor_min_width({v: set(g.neighbors(v)) for v in g.vertices})


# -- Hadwiger number ----------------------------------------------------------

class _CliqueMinorSearch:
    """Decide whether a connected graph has a ``K_t`` minor.

    A state is a set of disjoint connected *parts* (contracted vertices)
    plus the subset of parts already committed as singleton-free final
    branch sets ("fixed"). A minimum-degree free part is either deleted,
    merged into a free neighbour, or fixed.
    """

    def __init__(self, adj: list[int], t: int):
        self.adj = adj
        self.t = t
        self.need_edges = comb(t, 2)
        self.failed: set = set()
        self._nbm: dict[int, int] = {}

    def nbmask(self, part: int) -> int:
        m = self._nbm.get(part)
        if m is None:
            m = 0
            for i in _bits(part):
                m |= self.adj[i]
            m &= ~part
            self._nbm[part] = m
        return m

    def run(self, parts: frozenset, fixed: frozenset = frozenset()):
        key = (parts, fixed)
        if key in self.failed:
            return None
        found = self._step(parts, fixed)
        if found is None:
            self.failed.add(key)
        return found

    def _step(self, parts, fixed):
        t = self.t
        if len(parts) < t:
            return None
        plist = sorted(parts)
        nbm = {p: self.nbmask(p) for p in plist}
        deg = {p: sum(1 for q in plist if q != p and nbm[p] & q) for p in plist}
        if sum(deg.values()) // 2 < self.need_edges:
            return None
        for f in fixed:
            if deg[f] < t - 1:
                return None
        for a, b in combinations(fixed, 2):
            if not nbm[a] & b:
                return None
        if len(fixed) >= t:
            return sorted(fixed)[:t]
        free = [p for p in plist if p not in fixed]
        if not free:
            return None
        v = min(free, key=lambda p: (deg[p], p & -p))
        d = deg[v]
        free_nbrs = [q for q in free if q != v and nbm[v] & q]
        rest = parts - {v}
        deleted = (rest, fixed)
        merges = [((rest - {u}) | {u | v}, fixed) for u in free_nbrs]
        if d <= 1:
            branches = [deleted]
        elif d == 2 and t >= 4:
            branches = merges[:1] or [deleted]
        else:
            branches = []
            if d >= t - 1 and all(nbm[v] & f for f in fixed):
                branches.append((parts, fixed | {v}))
            branches += merges
            branches.append(deleted)
        for nparts, nfixed in branches:
            found = self.run(nparts, nfixed)
            if found is not None:
                return found
        return None


def _component_masks(g: Graph, comp: list[int]):
    idx = {v: i for i, v in enumerate(comp)}
    adj = [0] * len(comp)
    for v in comp:
        for w in g.neighbors(v):
            adj[idx[v]] |= 1 << idx[w]
    return idx, adj


def has_clique_minor(g: Graph, t: int) -> MinorCertificate | None:
    """Return a ``K_t`` minor model of ``g`` or ``None``."""
    if t <= 0:
        return MinorCertificate({})
    if t == 1:
        return MinorCertificate({0: frozenset([g.vertices[0]])}) if g.n else None
    if t == 2:
        if not g.m:
            return None
        u, v = g.edges[0]
        return MinorCertificate({0: frozenset([u]), 1: frozenset([v])})
    for comp in g.components():
        if len(comp) < t:
            continue
        idx, adj = _component_masks(g, comp)
        search = _CliqueMinorSearch(adj, t)
        found = search.run(frozenset(1 << i for i in range(len(comp))))
        if found is not None:
            return MinorCertificate({k: frozenset(comp[i] for i in _bits(mask))
                                     for k, mask in enumerate(found)})
    return None


def hadwiger_exact(g: Graph, cap: int | None = HADWIGER_CAP) -> tuple[int, MinorCertificate]:
    """Largest ``t`` with a ``K_t`` minor, with a branch-set certificate."""
    if cap is not None and g.n > cap:
        raise TooLargeInstance(f"hadwiger_exact is capped at {cap} vertices (got {g.n})")
    best, cert = 0, MinorCertificate({})
    for comp in g.components():
        sub = g.subgraph(comp)
        tw, _ = treewidth_exact(sub, cap=None)
        ub = min(tw + 1, sub.n)
        t = max(best, 1)
        c = has_clique_minor(sub, t)
        if c is None:
            continue
        if t > best:
            best, cert = t, c
        while t < ub:
            c = has_clique_minor(sub, t + 1)
            if c is None:
                break
            t += 1
            if t > best:
                best, cert = t, c
    return best, cert


# -- topological minors -------------------------------------------------------

def find_topological_minor(g: Graph, h: Graph, classes: list[list[int]] | None = None
                           ) -> TopologicalMinorCertificate | None:
    """Find a subdivision of ``h`` inside ``g``.

    ``classes`` lists groups of interchangeable H-vertices (images inside a
    group are forced to increase), which removes symmetric duplicates.
    """
    if h.n > g.n:
        return None
    hdeg = {x: h.degree(x) for x in h.vertices}
    horder = sorted(h.vertices, key=lambda x: (-hdeg[x], x))
    prev_in_class = {}
    for group in classes or []:
        for a, b in zip(group, group[1:]):
            prev_in_class[b] = a
    # images must be assigned before a vertex's class successor
    horder = _respect_classes(horder, prev_in_class)
    hedges = list(h.edges)
    mapping: dict[int, int] = {}

    def assign(k):
        if k == len(horder):
            return route()
        x = horder[k]
        lo = mapping.get(prev_in_class.get(x), -1) if x in prev_in_class else None
        used = set(mapping.values())
        for v in g.vertices:
            if v in used or g.degree(v) < hdeg[x]:
                continue
            if lo is not None and v <= lo:
                continue
            mapping[x] = v
            res = assign(k + 1)
            if res is not None:
                return res
            del mapping[x]
        return None

    def route():
        images = set(mapping.values())
        pending = sorted(hedges, key=lambda e: (not g.has_edge(mapping[e[0]], mapping[e[1]]), e))
        paths: dict = {}

        def reachable(a, b, blocked):
            if g.has_edge(a, b):
                return True
            seen = {a}
            stack = [a]
            while stack:
                u = stack.pop()
                for w in g.neighbors(u):
                    if w == b:
                        return True
                    if w not in seen and w not in blocked:
                        seen.add(w)
                        stack.append(w)
            return False

        def go(k, used):
            if k == len(pending):
                return dict(paths)
            blocked = used | images
            for e in pending[k:]:
                if not reachable(mapping[e[0]], mapping[e[1]], blocked):
                    return None
            a, b = pending[k]
            src, dst = mapping[a], mapping[b]
            for p in _simple_paths(g, src, dst, blocked):
                paths[(a, b)] = p
                res = go(k + 1, used | set(p[1:-1]))
                if res is not None:
                    return res
                del paths[(a, b)]
            return None

        found = go(0, set())
        if found is None:
            return None
        return TopologicalMinorCertificate(dict(mapping), found)

    return assign(0)


def _respect_classes(order, prev):
    out, placed = [], set()
    pending = list(order)
    while pending:
        for x in pending:
            if x not in prev or prev[x] in placed:
                out.append(x)
                placed.add(x)
                pending.remove(x)
                break
    return out


def _simple_paths(g: Graph, src: int, dst: int, blocked: set):
    """Simple src-dst paths whose internal vertices avoid ``blocked``; short first."""
    if g.has_edge(src, dst):
        yield (src, dst)
    stack = [(src, (src,))]
    found = []
    while stack:
        u, path = stack.pop()
        for w in sorted(g.neighbors(u), reverse=True):
            if w == dst:
                if len(path) > 1:
                    found.append(path + (dst,))
                continue
            if w in blocked or w in path:
                continue
            stack.append((w, path + (w,)))
    found.sort(key=len)
    yield from found


def hajos_exact(g: Graph, cap: int | None = HAJOS_CAP) -> tuple[int, TopologicalMinorCertificate]:
    """Largest ``t`` with a ``K_t`` topological minor, with certificate."""
    if cap is not None and g.n > cap:
        raise TooLargeInstance(f"hajos_exact is capped at {cap} vertices (got {g.n})")
    if g.n == 0:
        return 0, TopologicalMinorCertificate({}, {})
    best = 1
    cert = TopologicalMinorCertificate({0: g.vertices[0]}, {})
    t = 2
    while t <= g.n:
        if sum(1 for v in g.vertices if g.degree(v) >= t - 1) < t:
            break
        kt = complete_graph(t)
        c = find_topological_minor(g, kt, [list(kt.vertices)])
        if c is None:
            break
        best, cert = t, c
        t += 1
    return best, cert


# -- combined report ----------------------------------------------------------

@dataclass
class InvariantReport:
    treewidth: int | None = None
    degeneracy: int | None = None
    hadwiger: int | None = None
    hajos: int | None = None
    radius: int | None = None
    time_ms: dict | None = None

    def chain_holds(self) -> bool | None:
        """``hajos <= hadwiger <= treewidth + 1`` when all three are known."""
        if None in (self.treewidth, self.hadwiger, self.hajos):
            return None
        return self.hajos <= self.hadwiger <= self.treewidth + 1

    def to_dict(self) -> dict:
        return asdict(self)


def invariant_report(g: Graph, tw_cap=TREEWIDTH_CAP, hadwiger_cap=HADWIGER_CAP,
                     hajos_cap=HAJOS_CAP) -> InvariantReport:
    """Compute every invariant whose cap admits ``g``; others stay ``None``."""
    rep = InvariantReport(time_ms={})

    def timed(name, fn):
        start = time.perf_counter()
        try:
            val = fn()
        except TooLargeInstance:
            return None
        rep.time_ms[name] = round((time.perf_counter() - start) * 1000, 3)
        return val

    rep.degeneracy = timed("degeneracy", lambda: degeneracy(g)[0])
    rep.treewidth = timed("treewidth", lambda: treewidth_exact(g, tw_cap)[0])
    rep.hadwiger = timed("hadwiger", lambda: hadwiger_exact(g, hadwiger_cap)[0])
    rep.hajos = timed("hajos", lambda: hajos_exact(g, hajos_cap)[0])
    if g.is_connected():
        rep.radius = timed("radius", lambda: graph_radius(g))
    return rep
