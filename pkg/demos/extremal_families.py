"""Drawings whose crossing graphs are sparse in one sense and rich in another.

Each construction comes with witnesses (minor models, decompositions) that
are validated here rather than trusted.
"""

from circdraw import crossing_graph, ktt_chord_diagram, star_forest_construction, two_degenerate_expander
from circdraw.graph import complete_graph, degeneracy, graph_radius, validate_minor_certificate
from circdraw.solvers import hadwiger_exact, treewidth_exact

print("2-degenerate crossing graphs hiding a large clique minor:")
for t in range(2, 7):
    con = two_degenerate_expander(t)
    x = crossing_graph(con.drawing).graph
    ok = validate_minor_certificate(con.graph, complete_graph(t), con.witnesses["kt_minor"])
    print(f"  t={t}: G has {con.graph.n} vertices and max degree {con.graph.max_degree()}, "
          f"X_D is {degeneracy(x)[0]}-degenerate, K_{t} minor certificate valid: {ok}")

print("chord diagrams with a complete bipartite crossing graph:")
for t in (2, 3):
    x = crossing_graph(ktt_chord_diagram(t).drawing).graph
    print(f"  t={t}: tw(X_D)={treewidth_exact(x)[0]}, h(X_D)={hadwiger_exact(x)[0]}")

print("straight-line drawings whose crossing graph is a star forest:")
for t in range(2, 5):
    con = star_forest_construction(t)
    x = crossing_graph(con.drawing).graph
    biggest = max(len(c) for c in x.components())
    print(f"  t={t}: G has radius {graph_radius(con.graph)}, largest star in X_D has {biggest} vertices, "
          f"K_{t + 1} minor valid: "
          f"{validate_minor_certificate(con.graph, complete_graph(t + 1), con.witnesses['kt1_minor'])}")
