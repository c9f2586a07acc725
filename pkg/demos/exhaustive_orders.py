"""Brute force over every circular order of a small graph.

Orders are counted up to rotation and reflection, so a graph on n vertices
has (n-1)!/2 of them.
"""

from circdraw import run_suite
from circdraw.drawing import count_circular_orders, crossing_graph, enumerate_circular_orders
from circdraw.graph import complete_bipartite_graph, has_kst_subgraph

g = complete_bipartite_graph(2, 3)
print(f"K_2,3 has {count_circular_orders(g.n)} circular orders")
for d in enumerate_circular_orders(g):
    x = crossing_graph(d).graph
    print(f"  order {list(d.order)}: {x.m} crossing pairs, K_1,1 present: "
          f"{has_kst_subgraph(x, 1, 1) is not None}")

for suite in ("nok2k", "k23-subdivisions", "k24-subdivisions"):
    rep = run_suite(suite)
    print(f"{suite}: {rep.instances} drawings checked, {len(rep.failures)} failures, "
          f"{rep.wall_time_ms} ms")
