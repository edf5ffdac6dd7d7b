import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from staircase_lb import build_graph, generate, shortest_path_system
from staircase_lb.adversary import build_family


def small_graph(name):
    """Named test graphs: K<n>, C<n>, P<n>, star4, grid3x3."""
    if name == "star4":
        return build_graph(4, [(1, 2), (1, 3), (1, 4)])
    if name == "grid3x3":
        return generate("grid", rows=3, cols=3)
    kind = {"K": "complete", "C": "cycle", "P": "path"}[name[0]]
    return generate(kind, n=int(name[1:]))


def family(name, L):
    G = small_graph(name)
    return build_family(G, shortest_path_system(G), L)


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


@pytest.fixture(scope="session")
def fam_k4():
    return family("K4", 2)


@pytest.fixture(scope="session")
def fam_c4():
    return family("C4", 2)


@pytest.fixture(scope="session")
def fam_p4():
    return family("P4", 2)


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """Random connected graph: a random spanning tree plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(2, n + 1):
        u = draw(st.integers(1, v - 1))
        edges.add((u, v))
    extra = [p for p in itertools.combinations(range(1, n + 1), 2) if p not in edges]
    if extra:
        edges |= set(draw(st.lists(st.sampled_from(extra), unique=True, max_size=len(extra))))
    return build_graph(n, sorted(edges))


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.VERDICTS:
        terminalreporter.write_line(line)
