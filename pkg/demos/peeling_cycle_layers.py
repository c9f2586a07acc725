"""Peeling concentric cycles out of a crossing graph.

Nested rings of chords force a deep face in the map graph. From the centre
of that face every ray crosses many chords, and dominant sets of chords can
be peeled off one layer at a time, each forming an induced cycle in X_D.
"""

from circdraw import crossing_graph, extract_cycle_layers, nested_polygon_drawing, validate_cycle_layers
from circdraw.dominance import min_ray_coverage

con = nested_polygon_drawing(6, 4)
d = con.drawing
print(f"{d.graph.m} chords in {con.params['layers']} rings of {con.params['m']}")
print(f"map graph radius {con.extras['map_radius']}")

out = extract_cycle_layers(d, 3)
print(f"reference point: ({float(out.center[0]):.4f}, {float(out.center[1]):.4f})")
print(f"every ray from it crosses at least {min_ray_coverage(d, out.center)} chords")

left = set(range(d.graph.m))
for i, layer in enumerate(out.layers, 1):
    left -= set(layer)
    print(f"layer {i}: chords {layer}; rays still cross >= "
          f"{min_ray_coverage(d, out.center, sorted(left)) if left else 0} of the rest")

rep = validate_cycle_layers(crossing_graph(d), out)
for c in rep["checks"]:
    print(f"  {'ok' if c['pass'] else 'FAIL'}  {c['name']}")
