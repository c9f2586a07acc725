"""A walk from a circular drawing to its crossing graph and back.

Run with ``python demos/crossing_graph_tour.py``.
"""

from circdraw import check_section3_bounds, crossing_graph, make_circular, map_graph, planarise
from circdraw.graph import complete_graph
from circdraw.solvers import invariant_report

# Five points on a circle, every pair joined: the pentagram has five crossings.
d = make_circular(complete_graph(5), range(5))
x = crossing_graph(d, with_points=True)
print(f"K5 on a circle: {d.graph.m} chords, {x.graph.m} crossing pairs")
for (e, f), point in sorted(x.crossing_points.items()):
    print(f"  chords {d.graph.edges[e]} and {d.graph.edges[f]} meet at "
          f"({float(point[0]):+.3f}, {float(point[1]):+.3f})")

# Replacing each crossing by a degree-4 dummy vertex gives a plane graph.
p = planarise(d)
print(f"planarisation: {p.plane_graph.n} vertices, {p.plane_graph.m} edges, {len(p.faces)} faces")

# Faces that share a vertex are adjacent in the map graph; its radius controls
# how tangled the drawing can be.
print(f"map graph radius: {map_graph(p).radius()}")

# Exact invariants of both graphs.
for name, g in (("G", d.graph), ("X_D", x.graph)):
    rep = invariant_report(g)
    print(f"{name}: tw={rep.treewidth} h={rep.hadwiger} htop={rep.hajos}")

# The per-drawing inequality report, entry by entry.
rep = check_section3_bounds(d)
for e in rep.entries:
    verdict = {True: "ok", False: "FAIL", None: "n/a"}[e["pass"]]
    print(f"  {verdict:4s} {e['name']}  ({e['lhs']} vs {e['rhs']})")
