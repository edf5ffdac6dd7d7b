"""
Staircase instances on a small graph
====================================

Build a hard local-search instance on the 4-cycle, look at its values,
and watch steepest descent walk down the staircase to the hidden
minimum. Run with ``python demos/01_staircase_instances.py``.
"""

# %%
# A graph and its all-pairs shortest paths. Ties between equally short
# paths go to the smallest-label parent, so P[2, 4] runs through 1.
import numpy as np

from staircase_lb import (
    QueryOracle,
    build_staircase,
    decision_from_search,
    eval_f,
    generate,
    local_minima,
    make_instance,
    shortest_path_system,
    steepest_descent,
    tail,
    vertex_congestion,
)

G = generate("cycle", n=4)
P = shortest_path_system(G)
print("P[2,4] =", P[(2, 4)])
print("vertex congestion g =", vertex_congestion(P).g)

# %%
# Milestones (1, 3, 2) give two segments. The walk repeats each junction
# milestone, and Tail(j) drops the first copy of x_j.
x = (1, 3, 2)
S = build_staircase(x, P)
print("segments:", S.segments)
print("walk:", S.walk)
for j in range(1, len(x) + 1):
    print(f"Tail({j}) =", tail(j, S))

# %%
# Values are negative on the staircase and grow more negative towards its
# end. Everything else just reports its distance to vertex 1.
inst = make_instance(G, P, x)
values = np.array([eval_f(inst, v) for v in G.vertices])
print("f =", dict(zip(G.vertices, values.tolist())))
print("local minima:", local_minima(G, lambda v: eval_f(inst, v)))

# %%
# Steepest descent from vertex 1 ends at the last milestone. On a graph
# this small it cuts the corner: vertex 2 is next to 1 and already holds
# the smallest value. The decision version hides a bit at the last
# milestone and costs at most one query more than the search.
res = steepest_descent(QueryOracle(inst), start=1)
print("search:", res.answer, "trace", res.trace, "queries", res.total_queries)
for b in (0, 1):
    dec = decision_from_search(QueryOracle(inst, b=b), start=1)
    print(f"decision with b={b}: read {dec.bit} after {dec.total_queries} queries")
