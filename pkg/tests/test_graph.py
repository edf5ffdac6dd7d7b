import itertools
import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from staircase_lb import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    InfeasibleParametersError,
    SelfLoopError,
    VertexLabelError,
    bound_calculator,
    build_graph,
    distances,
    expansion_exact,
    generate,
    metrics,
)
from staircase_lb.graph import Graph

from conftest import connected_graphs, small_graph, to_nx


def test_build_path_graph():
    G = build_graph(3, [(1, 2), (2, 3)])
    assert G.n == 3
    assert G.edges == ((1, 2), (2, 3))
    assert G.neighbors(2) == (1, 3)


def test_edges_are_normalised_and_sorted():
    G = build_graph(3, [(3, 2), (2, 1)])
    assert G.edges == ((1, 2), (2, 3))


@pytest.mark.parametrize(
    "n, edges, error",
    [
        (2, [(1, 2), (1, 2)], DuplicateEdgeError),
        (2, [(1, 2), (2, 1)], DuplicateEdgeError),
        (4, [(1, 2), (3, 4)], DisconnectedGraphError),
        (2, [(1, 1), (1, 2)], SelfLoopError),
        (2, [(1, 3)], VertexLabelError),
        (0, [], VertexLabelError),
    ],
)
def test_build_graph_rejects(n, edges, error):
    with pytest.raises(error):
        build_graph(n, edges)


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        build_graph(4, [(1, 2), (3, 4)])


def test_single_vertex_graph():
    G = build_graph(1, [])
    assert G.neighbors(1) == ()


@pytest.mark.parametrize(
    "family, params, n, m",
    [
        ("complete", {"n": 4}, 4, 6),
        ("cycle", {"n": 4}, 4, 4),
        ("path", {"n": 5}, 5, 4),
        ("grid", {"rows": 2, "cols": 3}, 6, 7),
        ("hypercube", {"dim": 3}, 8, 12),
    ],
)
def test_generate_counts(family, params, n, m):
    G = generate(family, **params)
    assert (G.n, len(G.edges)) == (n, m)


def test_hypercube_is_three_regular():
    G = generate("hypercube", dim=3)
    assert metrics(G).is_regular and metrics(G).max_degree == 3
    assert nx.is_isomorphic(to_nx(G), nx.hypercube_graph(3))


def test_grid_matches_networkx():
    G = generate("grid", rows=3, cols=4)
    assert nx.is_isomorphic(to_nx(G), nx.grid_2d_graph(3, 4))


@pytest.mark.parametrize("seed", [0, 1, 2, 7])
def test_random_regular(seed):
    G = generate("random_regular", n=10, degree=3, seed=seed)
    H = to_nx(G)
    assert nx.is_connected(H)
    assert all(d == 3 for _, d in H.degree())
    assert len(G.edges) == 15


def test_random_regular_deterministic():
    a = generate("random-regular", n=12, degree=4, seed=5)
    b = generate("random_regular", n=12, degree=4, seed=5)
    assert a.edges == b.edges


@pytest.mark.parametrize(
    "family, params",
    [
        ("path", {"n": 0}),
        ("cycle", {"n": 2}),
        ("random_regular", {"n": 5, "degree": 3}),  # n * degree odd
        ("random_regular", {"n": 4, "degree": 4}),  # degree >= n
        ("moebius", {"n": 4}),
        ("complete", {}),
    ],
)
def test_generate_rejects(family, params):
    with pytest.raises(InfeasibleParametersError):
        generate(family, **params)


def test_graph_dict_roundtrip():
    G = generate("cycle", n=5)
    assert Graph.from_dict(G.to_dict()) == G


def test_distance_examples():
    d = distances(small_graph("P3"))
    assert d[1, 3] == 2
    d = distances(small_graph("C4"))
    assert d[1, 3] == 2
    assert all(d[v, v] == 0 for v in range(1, 5))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=8))
def test_distances_match_scipy(G):
    adj = np.zeros((G.n, G.n))
    for u, v in G.edges:
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = 1
    ref = shortest_path(csr_matrix(adj), unweighted=True, directed=False)
    d = distances(G)
    for u, v in itertools.product(G.vertices, repeat=2):
        assert d[u, v] == ref[u - 1, v - 1]
        assert d[u, v] == d[v, u]


@pytest.mark.parametrize(
    "name, beta",
    [("C4", 1), ("K4", 2), ("K2", 1), ("P3", 1), ("star4", 1)],
)
def test_expansion_examples(name, beta):
    assert expansion_exact(small_graph(name)) == beta


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_expansion_complete(n):
    value = expansion_exact(generate("complete", n=n))
    assert isinstance(value, Fraction)
    assert value == math.ceil(n / 2)


def _expansion_oracle(G):
    H = to_nx(G)
    best = None
    for k in range(1, G.n // 2 + 1):
        for S in itertools.combinations(G.vertices, k):
            ratio = Fraction(nx.cut_size(H, S), k)
            best = ratio if best is None else min(best, ratio)
    return best


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=2, max_n=8))
def test_expansion_matches_enumeration(G):
    assert expansion_exact(G) == _expansion_oracle(G)


def test_metrics_examples():
    star = metrics(small_graph("star4"))
    assert (star.max_degree, star.is_regular) == (3, False)
    c4 = metrics(small_graph("C4"))
    assert (c4.max_degree, c4.is_regular) == (2, True)
    k4 = metrics(small_graph("K4"), compute_expansion=True)
    assert (k4.max_degree, k4.is_regular, k4.expansion) == (3, True, 2)


def test_bound_calculator_examples():
    assert bound_calculator(16, 16)["congestion"] == pytest.approx(2.0)
    assert bound_calculator(4, 7)["threshold"] == pytest.approx(0.0492, abs=5e-5)
    assert bound_calculator(9, 17)["congestion"] == pytest.approx(1.260, abs=5e-4)
    assert bound_calculator(9, 17)["expander"] is None
    assert bound_calculator(16, 16, max_degree=4, expansion=Fraction(1))["expander"] > 0


def test_bound_calculator_rejects():
    with pytest.raises(InfeasibleParametersError):
        bound_calculator(1, 1)
