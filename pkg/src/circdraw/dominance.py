"""Angular intervals around a reference point and nested cycle layers.

Fix a point ``p`` strictly inside the drawing. An edge ``e`` is hit by the
ray from ``p`` in direction ``d`` for ``d`` in an open arc ``I_e`` of width
less than a half-turn. A set of edges is *dominant* when these arcs cover
every direction. Repeatedly peeling minimally dominant sets of maximal edges
off the edge set yields layers that induce nested cycles in X_D.

Directions are rational vectors compared by cross-product signs; no angle is
ever evaluated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .drawing import CircularDrawing, crossing_graph, map_graph, planarise
from .errors import (
    DegenerateGeometry,
    InternalContractViolation,
    NoInteriorFace,
    NotDominant,
    PointOnChord,
    RadiusTooSmall,
)
from .geometry import angle_key, centroid, cross, dot, frac_str, on_open_segment, sub

Direction = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AngularInterval:
    """Open counterclockwise arc of directions from ``start`` to ``end``."""

    start: Direction
    end: Direction

    def __post_init__(self):
        if cross(self.start, self.end) <= 0:
            raise DegenerateGeometry("an angular interval must be narrower than a half-turn")

    def contains(self, d: Direction) -> bool:
        return cross(self.start, d) > 0 and cross(d, self.end) > 0

    def _in_closure(self, d: Direction) -> bool:
        return cross(self.start, d) >= 0 and cross(d, self.end) >= 0 and (
            cross(self.start, d) > 0 or dot(self.start, d) > 0) and (
            cross(d, self.end) > 0 or dot(d, self.end) > 0)

    def contains_interval(self, other: "AngularInterval") -> bool:
        return self._in_closure(other.start) and self._in_closure(other.end)


def edge_interval(d: CircularDrawing, p, e: int) -> AngularInterval:
    """Directions of rays from ``p`` that meet the open chord ``e``."""
    u, v = d.graph.edges[e]
    xy = d.coords
    if on_open_segment(p, xy[u], xy[v]) or p in (xy[u], xy[v]):
        raise PointOnChord(f"reference point lies on edge {e}")
    a, b = sub(xy[u], p), sub(xy[v], p)
    c = cross(a, b)
    if c == 0:
        raise DegenerateGeometry(f"reference point is collinear with edge {e}")
    return AngularInterval(a, b) if c > 0 else AngularInterval(b, a)


def _canonical(d: Direction) -> Direction:
    s = max(abs(d[0]), abs(d[1]))
    return (d[0] / s, d[1] / s)


def _probe_directions(intervals) -> list[Direction]:
    """Every endpoint direction plus one direction inside each gap between them."""
    crit = {_canonical(d) for iv in intervals for d in (iv.start, iv.end)}
    dirs = sorted(crit, key=angle_key)
    probes = list(dirs)
    for i, c1 in enumerate(dirs):
        c2 = dirs[(i + 1) % len(dirs)]
        if cross(c1, c2) > 0:
            probes.append((c1[0] + c2[0], c1[1] + c2[1]))
        else:
            probes.append((-c1[1], c1[0]))
    return probes


def coverage_profile(intervals) -> list[tuple[Direction, int]]:
    intervals = list(intervals)
    if not intervals:
        return [((Fraction(1), Fraction(0)), 0)]
    return [(d, sum(1 for iv in intervals if iv.contains(d))) for d in _probe_directions(intervals)]


def is_dominant(intervals) -> bool:
    """Whether the open arcs cover every direction."""
    intervals = list(intervals)
    if not intervals:
        return False
    return min(c for _, c in coverage_profile(intervals)) >= 1


def min_coverage(intervals) -> int:
    return min(c for _, c in coverage_profile(intervals))


def max_coverage(intervals) -> int:
    return max(c for _, c in coverage_profile(intervals))


def min_ray_coverage(d: CircularDrawing, p, edges=None) -> int:
    """Fewest edges crossed by any ray from ``p``."""
    edges = range(d.graph.m) if edges is None else edges
    return min_coverage([edge_interval(d, p, e) for e in edges])


def reference_point(p, m) -> tuple[int, tuple]:
    """Deepest face of the map graph (smallest id on ties) and its centroid."""
    if len(p.faces) <= 1:
        raise NoInteriorFace("the drawing has a single face")
    dist = m.graph.bfs_distances(m.outer_face)
    face = min((f for f in dist if f != m.outer_face), key=lambda f: (-dist[f], f))
    walk = p.faces[face][0]
    point = centroid(p.coords[v] for v in walk)
    edges = p.plane_graph.edges
    for a, b in edges:
        if on_open_segment(point, p.coords[a], p.coords[b]):
            # faces of a circular arrangement are convex, so this is only a guard
            dummies = [v for v in walk if v in p.dummy_origin][:2] or list(walk[:2])
            point = centroid([point] + [p.coords[v] for v in dummies])
            break
    return face, point


def _intervals(d, p, edges) -> dict[int, AngularInterval]:
    return {e: edge_interval(d, p, e) for e in edges}


def maximal_edges(iv: dict[int, AngularInterval]) -> list[int]:
    """Edges whose arc lies inside no other edge's arc."""
    keys = sorted(iv)
    return [e for e in keys
            if not any(f != e and iv[f].contains_interval(iv[e]) for f in keys)]


def peel_layer(edges, d: CircularDrawing, p) -> list[int]:
    """A minimally dominant subset of ``edges`` consisting of maximal edges."""
    iv = _intervals(d, p, edges)
    if not is_dominant(iv.values()):
        raise NotDominant("edge set does not cover every direction")
    keep = maximal_edges(iv)
    for e in sorted(keep):
        trial = [f for f in keep if f != e]
        if is_dominant(iv[f] for f in trial):
            keep = trial
    return sorted(keep)


@dataclass
class CycleLayers:
    face: int | None
    center: tuple | None
    layers: list

    def to_dict(self) -> dict:
        return {"face": self.face,
                "center": None if self.center is None else [frac_str(c) for c in self.center],
                "layers": [list(layer) for layer in self.layers]}

    @classmethod
    def from_dict(cls, data: dict) -> "CycleLayers":
        center = data.get("center")
        if center is not None:
            center = tuple(Fraction(c) for c in center)
        return cls(data.get("face"), center, [list(layer) for layer in data["layers"]])


def extract_cycle_layers(d: CircularDrawing, t: int) -> CycleLayers:
    """Peel ``t`` nested cycle layers off a drawing whose map graph has radius >= 2t."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        return CycleLayers(None, None, [])
    pl = planarise(d)
    mg = map_graph(pl)
    rad = mg.radius()
    if rad < 2 * t:
        raise RadiusTooSmall(f"map graph radius {rad} is below {2 * t}")
    face, p = reference_point(pl, mg)
    residual = set(range(d.graph.m))
    layers = []
    for _ in range(t):
        try:
            layer = peel_layer(sorted(residual), d, p)
        except NotDominant as exc:
            raise InternalContractViolation(f"residual edges stopped being dominant: {exc}")
        layers.append(layer)
        residual -= set(layer)
    out = CycleLayers(face, p, layers)
    report = validate_cycle_layers(crossing_graph(d), out)
    if not report["ok"]:
        raise InternalContractViolation(f"layer check failed: {report['first_failure']}")
    return out


def validate_cycle_layers(x, layers: CycleLayers) -> dict:
    """Check the induced-cycle, upward-degree and four-neighbour properties.

    Returns ``{"ok", "checks", "first_failure"}`` where ``checks`` lists one
    ``{"name", "pass", "detail"}`` entry per assertion.
    """
    g = x.graph if hasattr(x, "graph") else x
    checks = []

    def add(name, ok, detail=""):
        checks.append({"name": name, "pass": bool(ok), "detail": detail})

    sets = [set(layer) for layer in layers.layers]
    add("disjoint", all(not (a & b) for a, b in combinations(sets, 2)))
    for i, s in enumerate(sets):
        sub_g = g.subgraph(s)
        ok = (len(s) >= 3 and sub_g.is_connected()
              and all(sub_g.degree(v) == 2 for v in s))
        add(f"layer {i + 1} induces a cycle", ok,
            f"{len(s)} vertices, degrees {sorted(sub_g.degree(v) for v in s)}")
    for i, j in combinations(range(len(sets)), 2):
        low = [e for e in sets[i] if len(g.neighbors(e) & sets[j]) < 2]
        add(f"layer {i + 1} has two neighbours in layer {j + 1}", not low,
            f"short: {sorted(low)}" if low else "")
    for i, s in enumerate(sets):
        heavy = [v for v in g.vertices if len(g.neighbors(v) & s) > 4]
        add(f"at most four neighbours in layer {i + 1}", not heavy,
            f"over: {heavy}" if heavy else "")
    failed = [c for c in checks if not c["pass"]]
    return {"ok": not failed, "checks": checks,
            "first_failure": failed[0]["name"] if failed else None}
