"""Slow brute-force reference implementations used as test oracles.

Each function here deliberately avoids the search tricks of ``solvers`` so
that the two can be compared on small inputs.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations, permutations, product

from .graph import Graph


def treewidth_bruteforce(g: Graph) -> int:
    """Minimum elimination width over every vertex ordering."""
    if g.n == 0:
        return -1
    best = g.n - 1
    for order in permutations(g.vertices):
        nb = {v: set(g.neighbors(v)) for v in g.vertices}
        width = 0
        for v in order:
            ns = nb.pop(v)
            width = max(width, len(ns))
            if width >= best:
                break
            for a in ns:
                nb[a].discard(v)
                nb[a] |= ns - {a}
        best = min(best, width)
    return best


def _connected(g: Graph, part) -> bool:
    part = set(part)
    start = next(iter(part))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in part and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(part)


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
        yield [[first]] + sub


def hadwiger_bruteforce(g: Graph) -> int:
    """Largest clique minor, by enumerating every vertex subset and partition."""
    if g.n == 0:
        return 0
    best = 1
    verts = list(g.vertices)
    for r in range(1, len(verts) + 1):
        for keep in combinations(verts, r):
            for parts in _set_partitions(list(keep)):
                k = len(parts)
                if k <= best:
                    continue
                if not all(_connected(g, p) for p in parts):
                    continue
                ok = all(any(g.has_edge(a, b) for a in p for b in q)
                         for p, q in combinations(parts, 2))
                if ok:
                    best = k
    return best


def hajos_bruteforce(g: Graph) -> int:
    """Largest ``t`` such that some choice of ``t`` branch vertices and an
    assignment of every other vertex to a branch pair (or to nothing) makes
    each pair's assigned vertices carry a path between them."""
    if g.n == 0:
        return 0
    best = 1 if g.m == 0 else 2
    verts = list(g.vertices)
    for t in range(3, g.n + 1):
        found = False
        for branch in combinations(verts, t):
            if any(g.degree(v) < t - 1 for v in branch):
                continue
            pairs = list(combinations(branch, 2))
            others = [v for v in verts if v not in branch]
            for choice in product(range(len(pairs) + 1), repeat=len(others)):
                ok = True
                for k, (a, b) in enumerate(pairs):
                    inner = {others[i] for i, c in enumerate(choice) if c == k + 1}
                    if not _path_through(g, a, b, inner):
                        ok = False
                        break
                if ok:
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = t
    return best


def _path_through(g: Graph, a: int, b: int, inner: set) -> bool:
    allowed = inner | {b}
    seen = {a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w == b:
                return True
            if w in allowed and w not in seen:
                seen.add(w)
                queue.append(w)
    return False

