"""
Congestion and expansion
========================

Compare the vertex congestion of shortest-path routing across graph
families, improve it by local search, and relate it to exact edge
expansion.
"""

# %%
from staircase_lb import (
    anneal_congestion,
    check_congestion_inequality,
    expansion_exact,
    generate,
    min_congestion_bruteforce,
    shortest_path_system,
    vertex_congestion,
)

graphs = {
    "K4": generate("complete", n=4),
    "C8": generate("cycle", n=8),
    "P8": generate("path", n=8),
    "grid 3x3": generate("grid", rows=3, cols=3),
    "Q3": generate("hypercube", dim=3),
    "3-regular n=12": generate("random_regular", n=12, degree=3, seed=1),
}

# %%
# g always lies between n (really 2n - 1) and n^2. Paths pile up in the
# middle of a path graph and spread out on well-connected graphs.
print(f"{'graph':16s} {'n':>3s} {'g':>4s} {'annealed':>8s} {'beta':>6s} {'ratio':>7s}")
for name, G in graphs.items():
    P = shortest_path_system(G)
    g = vertex_congestion(P).g
    g_anneal = vertex_congestion(anneal_congestion(G, P, 2000, seed=0)).g
    beta = expansion_exact(G)
    ratio = check_congestion_inequality(G, P, beta)["ratio"]
    print(f"{name:16s} {G.n:3d} {g:4d} {g_anneal:8d} {str(beta):>6s} {ratio:7.3f}")

# %%
# On tiny graphs the optimum is known exactly. Shortest paths already hit
# it on K3, P3 and K4.
for name, kw in (("complete", {"n": 3}), ("path", {"n": 3}), ("complete", {"n": 4})):
    G = generate(name, **kw)
    _, best = min_congestion_bruteforce(G)
    print(name, kw, "optimal g =", best, " shortest-path g =", vertex_congestion(shortest_path_system(G)).g)
