"""Circular and straight-line drawings with exact rational coordinates.

From a drawing we derive the crossing graph X_D (one vertex per drawn edge),
the planarisation P_D (each crossing becomes a degree-4 dummy vertex) and
the map graph M_D (faces of P_D, adjacent when they share a vertex).
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, islice, permutations
from typing import Iterator

from .errors import DegenerateGeometry, InvalidParameter, TooLargeInstance
from .geometry import (
    Point,
    angle_key,
    circle_point,
    collinear_overlap,
    frac_str,
    on_open_segment,
    param_along,
    parse_frac,
    point_in_polygon,
    segment_intersection,
    signed_area2,
    sub,
)
from .graph import Graph, graph_from_dict, graph_radius, graph_to_dict

ENUMERATION_CAP = 10


def _interleaved(pa: int, pb: int, pc: int, pd: int) -> bool:
    if pa > pb:
        pa, pb = pb, pa
    return (pa < pc < pb) != (pa < pd < pb) and len({pa, pb, pc, pd}) == 4


class CircularDrawing:
    """Vertices on the unit circle in a given cyclic order; edges are chords.

    ``anchors`` maps each vertex to a rational parameter ``t``; the vertex sits
    at ``((1-t^2)/(1+t^2), 2t/(1+t^2))``. They are derived lazily from the
    order (``t = 1..n``) and nudged if three chords would meet in a point.
    """

    def __init__(self, graph: Graph, order, anchors=None):
        order = tuple(order)
        if sorted(order) != list(graph.vertices):
            raise InvalidParameter("order is not a permutation of the vertex set")
        self.graph = graph
        self.order = order
        self.position = {v: i for i, v in enumerate(order)}
        if anchors is not None:
            anchors = {v: parse_frac(anchors[v]) for v in order}
            seq = [anchors[v] for v in order]
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise InvalidParameter("anchors are not strictly increasing along the order")
            self.__dict__["anchors"] = anchors
            self._check_generic(anchors)

    def __repr__(self):
        return f"CircularDrawing(n={self.graph.n}, m={self.graph.m}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, CircularDrawing):
            return NotImplemented
        return (self.graph == other.graph and self.order == other.order
                and self.anchors == other.anchors)

    def crosses(self, i: int, j: int) -> bool:
        """Whether edges ``i`` and ``j`` cross (endpoint interleaving)."""
        (a, b), (c, d) = self.graph.edges[i], self.graph.edges[j]
        p = self.position
        return _interleaved(p[a], p[b], p[c], p[d])

    @cached_property
    def crossing_pairs(self) -> list[tuple[int, int]]:
        pos = self.position
        spans = [tuple(sorted((pos[u], pos[v]))) for u, v in self.graph.edges]
        out = []
        for i, j in combinations(range(len(spans)), 2):
            a, b = spans[i]
            c, d = spans[j]
            if a < c < b < d or c < a < d < b:
                out.append((i, j))
        return out

    @cached_property
    def anchors(self) -> dict[int, Fraction]:
        anchors = {v: Fraction(i + 1) for i, v in enumerate(self.order)}
        for _ in range(64 * max(1, self.graph.n)):
            bad = self._triple_points(anchors)
            if not bad:
                return anchors
            v = max(bad)
            k = 1
            while True:
                trial = dict(anchors)
                trial[v] = anchors[v] + Fraction(1, 2 ** k)
                seq = [trial[u] for u in self.order]
                if all(a < b for a, b in zip(seq, seq[1:])) and v not in self._triple_points(trial):
                    anchors = trial
                    break
                k += 1
                if k > 200:
                    raise DegenerateGeometry("could not restore genericity")
        raise DegenerateGeometry("could not restore genericity")

    @cached_property
    def coords(self) -> dict[int, Point]:
        return self._coords_for(self.anchors)

    def _coords_for(self, anchors):
        return {v: circle_point(t) for v, t in anchors.items()}

    def _points_for(self, anchors) -> dict:
        xy = self._coords_for(anchors)
        out = {}
        for i, j in self.crossing_pairs:
            (a, b), (c, d) = self.graph.edges[i], self.graph.edges[j]
            p = segment_intersection(xy[a], xy[b], xy[c], xy[d])
            if p is None:
                raise DegenerateGeometry("interleaved chords failed to intersect")
            out[(i, j)] = p
        return out

    def _triple_points(self, anchors) -> set:
        groups = defaultdict(set)
        for (i, j), p in self._points_for(anchors).items():
            groups[p].update((i, j))
        bad = set()
        for edges in groups.values():
            if len(edges) >= 3:
                for e in edges:
                    bad.update(self.graph.edges[e])
        return bad

    def _check_generic(self, anchors):
        if self._triple_points(anchors):
            raise DegenerateGeometry("three chords meet at a single interior point")

    @cached_property
    def crossing_points(self) -> dict[tuple[int, int], Point]:
        return self._points_for(self.anchors)


def make_circular(g: Graph, order=None) -> CircularDrawing:
    """Circular drawing of ``g`` with vertices in ``order`` (default: sorted ids)."""
    return CircularDrawing(g, g.vertices if order is None else order)


class StraightLineDrawing:
    """Vertices at rational points, edges as segments.

    With ``linear=True`` every vertex must lie on the x-axis and edges are
    read as upper semicircles, so two edges cross exactly when their
    x-intervals interleave.
    """

    def __init__(self, graph: Graph, coords, linear: bool = False):
        self.graph = graph
        self.coords = {v: (parse_frac(coords[v][0]), parse_frac(coords[v][1]))
                       for v in graph.vertices}
        self.linear = linear
        if len(set(self.coords.values())) != graph.n:
            raise DegenerateGeometry("two vertices share a position")
        if linear:
            if any(y != 0 for _, y in self.coords.values()):
                raise DegenerateGeometry("linear drawings need every vertex on the x-axis")
        else:
            self._validate()

    def __repr__(self):
        return f"StraightLineDrawing(n={self.graph.n}, m={self.graph.m}, linear={self.linear})"

    def __eq__(self, other):
        if not isinstance(other, StraightLineDrawing):
            return NotImplemented
        return (self.graph == other.graph and self.coords == other.coords
                and self.linear == other.linear)

    def _validate(self):
        xy = self.coords
        for v in self.graph.vertices:
            for a, b in self.graph.edges:
                if v not in (a, b) and on_open_segment(xy[v], xy[a], xy[b]):
                    raise DegenerateGeometry(f"vertex {v} lies on edge {(a, b)}")
        for (a, b), (c, d) in combinations(self.graph.edges, 2):
            if collinear_overlap(xy[a], xy[b], xy[c], xy[d]):
                raise DegenerateGeometry(f"edges {(a, b)} and {(c, d)} overlap")
        groups = defaultdict(set)
        for (i, j), p in self.crossing_points.items():
            groups[p].update((i, j))
        for p, es in groups.items():
            if len(es) >= 3:
                raise DegenerateGeometry(f"edges {sorted(es)} meet at {p}")

    def crosses(self, i: int, j: int) -> bool:
        if self.linear:
            (a, b), (c, d) = self.graph.edges[i], self.graph.edges[j]
            x = {v: self.coords[v][0] for v in (a, b, c, d)}
            lo1, hi1 = sorted((x[a], x[b]))
            lo2, hi2 = sorted((x[c], x[d]))
            return lo1 < lo2 < hi1 < hi2 or lo2 < lo1 < hi2 < hi1
        return (i, j) in self.crossing_points or (j, i) in self.crossing_points

    @cached_property
    def crossing_pairs(self) -> list[tuple[int, int]]:
        if self.linear:
            m = self.graph.m
            return [(i, j) for i, j in combinations(range(m), 2) if self.crosses(i, j)]
        return sorted(self.crossing_points)

    @cached_property
    def crossing_points(self) -> dict[tuple[int, int], Point]:
        if self.linear:
            return {}
        xy = self.coords
        out = {}
        edges = self.graph.edges
        for i, j in combinations(range(len(edges)), 2):
            (a, b), (c, d) = edges[i], edges[j]
            if len({a, b, c, d}) < 4:
                continue
            p = segment_intersection(xy[a], xy[b], xy[c], xy[d])
            if p is not None:
                out[(i, j)] = p
        return out


def wrap_linear(d: StraightLineDrawing) -> CircularDrawing:
    """Circular drawing with vertices in x-order; X_D is unchanged edge-by-edge."""
    if not d.linear:
        raise InvalidParameter("wrap_linear expects a linear drawing")
    xs = [d.coords[v][0] for v in d.graph.vertices]
    if len(set(xs)) != len(xs):
        raise DegenerateGeometry("duplicate x-coordinate")
    order = sorted(d.graph.vertices, key=lambda v: d.coords[v][0])
    return CircularDrawing(d.graph, order)


# -- crossing graph -----------------------------------------------------------

@dataclass(frozen=True)
class CrossingGraph:
    """X_D: vertex ``i`` is edge ``i`` of the drawn graph."""

    graph: Graph
    crossing_points: dict = field(default_factory=dict)
    multiplicity: dict = field(default_factory=dict)


def crossing_graph(d, with_points: bool = False) -> CrossingGraph:
    g = d.graph
    pairs = d.crossing_pairs
    labels = {i: f"{u}-{v}" for i, (u, v) in enumerate(g.edges)}
    x = Graph(range(g.m), pairs, labels)
    points = dict(d.crossing_points) if with_points else {}
    return CrossingGraph(x, points, {e: 1 for e in pairs})


# -- planarisation ------------------------------------------------------------

@dataclass
class Planarisation:
    """P_D with its rotation system and faces.

    ``rotation[v]`` lists the plane-graph edge ids at ``v`` in counterclockwise
    order. ``faces[f]`` is a tuple of boundary walks (vertex sequences; a walk
    ``(v0, ..., vk)`` traverses darts ``v0->v1, ..., vk->v0``). Face 0 is the
    outer face; inner faces keep the region on the left of each dart.
    ``segment_of`` maps each plane edge to the drawn edge it is part of.
    """

    plane_graph: Graph
    coords: dict
    rotation: dict
    dummy_origin: dict
    segment_of: dict
    faces: list
    original_vertices: frozenset
    outer_face: int = 0
    source_edges: tuple = ()

    def neighbors_ccw(self, v: int) -> list[int]:
        edges = self.plane_graph.edges
        return [edges[e][0] if edges[e][1] == v else edges[e][1] for e in self.rotation[v]]

    def face_vertices(self, f: int) -> frozenset:
        return frozenset(v for walk in self.faces[f] for v in walk)

    def is_dummy(self, v: int) -> bool:
        return v in self.dummy_origin

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        g = self.plane_graph
        walks_in = defaultdict(int)
        comp_of = {}
        comps = g.components()
        for k, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = k
        for face in self.faces:
            for walk in face:
                walks_in[comp_of[walk[0]]] += 1
        for k, comp in enumerate(comps):
            e = sum(1 for a, b in g.edges if comp_of[a] == k)
            if len(comp) - e + walks_in[k] != 2:
                return False
        return True


def _rotation(g: Graph, xy) -> dict:
    rot = {}
    for v in g.vertices:
        nbs = sorted(g.neighbors(v), key=lambda w: angle_key(sub(xy[w], xy[v])))
        rot[v] = nbs
    return rot


def _trace_walks(g: Graph, rot: dict) -> list[tuple]:
    pos = {v: {w: i for i, w in enumerate(nb)} for v, nb in rot.items()}
    used = set()
    walks = []
    for u, v in sorted([(a, b) for a, b in g.edges] + [(b, a) for a, b in g.edges]):
        if (u, v) in used:
            continue
        walk = []
        a, b = u, v
        while (a, b) not in used:
            used.add((a, b))
            walk.append(a)
            nb = rot[b]
            c = nb[(pos[b][a] - 1) % len(nb)]
            a, b = b, c
        walks.append(tuple(walk))
    for v in g.vertices:
        if g.degree(v) == 0:
            walks.append((v,))
    return walks


def planarise(d) -> Planarisation:
    """Replace every crossing by a dummy vertex and compute faces."""
    if isinstance(d, StraightLineDrawing) and d.linear:
        d = wrap_linear(d)
    g = d.graph
    xy = dict(d.coords)
    points = d.crossing_points
    next_id = (max(g.vertices) + 1) if g.n else 0
    dummy_origin = {}
    on_edge = defaultdict(list)
    for (i, j) in sorted(points):
        x = next_id
        next_id += 1
        dummy_origin[x] = (i, j)
        xy[x] = points[(i, j)]
        on_edge[i].append(x)
        on_edge[j].append(x)
    plane_edges = []
    seg_of = {}
    for e, (u, v) in enumerate(g.edges):
        chain = sorted(on_edge[e], key=lambda x: param_along(xy[x], xy[u], xy[v]))
        seq = [u] + chain + [v]
        for a, b in zip(seq, seq[1:]):
            plane_edges.append((a, b))
            seg_of[(min(a, b), max(a, b))] = e
    pg = Graph(list(g.vertices) + list(dummy_origin), plane_edges)
    rot = _rotation(pg, xy)
    walks = _trace_walks(pg, rot)
    faces = _group_faces(pg, xy, walks, circular=isinstance(d, CircularDrawing))
    rotation = {v: [pg.edge_id(v, w) for w in nbs] for v, nbs in rot.items()}
    segment_of = {pg.edge_id(a, b): e for (a, b), e in seg_of.items()}
    return Planarisation(pg, xy, rotation, dummy_origin, segment_of, faces,
                         frozenset(g.vertices), 0, g.edges)


def _group_faces(pg: Graph, xy, walks, circular: bool) -> list:
    inner, outer = [], []
    for w in walks:
        area = signed_area2([xy[v] for v in w])
        (inner if area > 0 else outer).append((w, area))
    faces = [[w for w, _ in outer]] + [[w] for w, _ in inner]
    if circular or not outer or not inner:
        return [tuple(f) for f in faces]
    # straight-line drawings: nested components sit in the smallest inner
    # face (of another component) containing them
    comp_of = {}
    for k, comp in enumerate(pg.components()):
        for v in comp:
            comp_of[v] = k
    faces = [[]] + [[w] for w, _ in inner]
    for w, _ in outer:
        best = None
        for idx, (iw, area) in enumerate(inner):
            if comp_of[iw[0]] == comp_of[w[0]]:
                continue
            if point_in_polygon(xy[w[0]], [xy[v] for v in iw]):
                if best is None or area < best[1]:
                    best = (idx, area)
        faces[0 if best is None else best[0] + 1].append(w)
    return [tuple(f) for f in faces]


# -- map graph ----------------------------------------------------------------

@dataclass(frozen=True)
class MapGraph:
    graph: Graph
    outer_face: int = 0

    def radius(self) -> int:
        return graph_radius(self.graph)


def map_graph(p: Planarisation) -> MapGraph:
    """Faces of ``p`` as vertices; adjacent when their boundaries share a vertex."""
    at_vertex = defaultdict(set)
    for f in range(len(p.faces)):
        for v in p.face_vertices(f):
            at_vertex[v].add(f)
    edges = set()
    for fs in at_vertex.values():
        edges.update(combinations(sorted(fs), 2))
    return MapGraph(Graph(range(len(p.faces)), edges), p.outer_face)


def map_radius(d) -> int:
    return map_graph(planarise(d)).radius()


# -- enumeration --------------------------------------------------------------

def count_circular_orders(n: int) -> int:
    return 1 if n <= 2 else math.factorial(n - 1) // 2


def circular_orders(vertices) -> Iterator[tuple]:
    """Every cyclic order up to rotation and reflection, in a fixed order.

    The smallest vertex comes first; among reflections, the one whose second
    entry is smaller than its last is kept.
    """
    vs = sorted(vertices)
    if len(vs) <= 2:
        yield tuple(vs)
        return
    first, rest = vs[0], vs[1:]
    for perm in permutations(rest):
        if perm[0] < perm[-1]:
            yield (first,) + perm


def enumerate_circular_orders(g: Graph, start: int = 0, stop: int | None = None,
                              cap: int | None = ENUMERATION_CAP) -> Iterator[CircularDrawing]:
    """Stream circular drawings of ``g``, one per order, for indices ``[start, stop)``.

    Contiguous index ranges let callers split the work into chunks.
    """
    if cap is not None and g.n > cap:
        raise TooLargeInstance(f"enumeration is capped at {cap} vertices (got {g.n})")
    for order in islice(circular_orders(g.vertices), start, stop):
        yield CircularDrawing(g, order)


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total or 1))
    step, extra = divmod(total, chunks)
    out, lo = [], 0
    for k in range(chunks):
        hi = lo + step + (1 if k < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


# -- serialisation ------------------------------------------------------------

def drawing_to_dict(d) -> dict:
    out = {"graph": graph_to_dict(d.graph)}
    if isinstance(d, CircularDrawing):
        out["order"] = list(d.order)
        out["anchors"] = {str(v): frac_str(t) for v, t in d.anchors.items()}
    else:
        out["coords"] = {str(v): [frac_str(x), frac_str(y)] for v, (x, y) in d.coords.items()}
        out["linear"] = d.linear
    return out


def drawing_from_dict(data: dict):
    g = graph_from_dict(data["graph"])
    if "order" in data:
        anchors = data.get("anchors")
        if anchors is not None:
            anchors = {int(k): Fraction(v) for k, v in anchors.items()}
        return CircularDrawing(g, [int(v) for v in data["order"]], anchors)
    coords = {int(k): (Fraction(x), Fraction(y)) for k, (x, y) in data["coords"].items()}
    return StraightLineDrawing(g, coords, bool(data.get("linear", False)))


def export_json(d, path) -> None:
    with open(path, "w") as fh:
        json.dump(drawing_to_dict(d), fh, indent=1, sort_keys=True)


def load_json(path):
    with open(path) as fh:
        return drawing_from_dict(json.load(fh))


def _svg_layout(d) -> dict:
    """Float positions for display only; circular drawings use evenly spaced
    points, which have the same crossing pattern as the exact anchors."""
    if isinstance(d, CircularDrawing):
        n = max(1, len(d.order))
        return {v: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
                for i, v in enumerate(d.order)}
    return {v: (float(x), float(y)) for v, (x, y) in d.coords.items()}


def to_svg(d, size: int = 400) -> str:
    if isinstance(d, StraightLineDrawing) and d.linear:
        d = wrap_linear(d)
    pos = _svg_layout(d)
    if pos:
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    else:
        lo_x = lo_y = -1.0
        hi_x = hi_y = 1.0
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 20

    def tr(p):
        return (pad + (p[0] - lo_x) / span * (size - 2 * pad),
                size - pad - (p[1] - lo_y) / span * (size - 2 * pad))

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    if isinstance(d, CircularDrawing):
        c = tr((0.0, 0.0)) if pos else (size / 2, size / 2)
        r = (size - 2 * pad) / span if pos else size / 2 - pad
        parts.append(f'<circle cx="{c[0]:.2f}" cy="{c[1]:.2f}" r="{r:.2f}" '
                     'fill="none" stroke="#bbb"/>')
    for u, v in d.graph.edges:
        (x1, y1), (x2, y2) = tr(pos[u]), tr(pos[v])
        parts.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black"/>')
    for i, j in d.crossing_pairs:
        (a, b), (c2, e) = d.graph.edges[i], d.graph.edges[j]
        p = _float_cross(pos[a], pos[b], pos[c2], pos[e])
        if p is not None:
            x, y = tr(p)
            parts.append(f'<rect x="{x - 2:.2f}" y="{y - 2:.2f}" width="4" height="4" fill="red"/>')
    for v in d.graph.vertices:
        x, y = tr(pos[v])
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="navy"><title>{v}</title></circle>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _float_cross(a, b, c, d):
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < 1e-12:
        return None
    lam = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / den
    return (a[0] + lam * r[0], a[1] + lam * r[1])


def export_svg(d, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_svg(d))
