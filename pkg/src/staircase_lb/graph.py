"""Undirected graphs on vertices 1..n: construction, standard families,
BFS distances, degree statistics and exact edge expansion."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphValidationError,
    InfeasibleParametersError,
    SelfLoopError,
    VertexLabelError,
)

FAMILIES = ("path", "cycle", "complete", "grid", "hypercube", "random_regular")

MAX_EXPANSION_N = 20


@dataclass(frozen=True)
class Graph:
    """Connected simple undirected graph with vertex labels ``1..n``.

    ``edges`` holds each edge once as ``(u, v)`` with ``u < v``, sorted.
    Use :func:`build_graph` rather than the constructor; it validates.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v - 1])

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphValidationError(f"malformed graph document: {exc}") from exc
        return build_graph(n, edges)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edge_list`` and return a :class:`Graph`.

    Raises a distinct :class:`GraphValidationError` subclass for labels
    out of range, self-loops, duplicate edges, and disconnected input.
    """
    if n < 1:
        raise VertexLabelError(f"vertex count must be positive, got {n}")
    seen: set[tuple[int, int]] = set()
    for pair in edge_list:
        u, v = pair
        for w in (u, v):
            if not 1 <= w <= n:
                raise VertexLabelError(f"vertex {w} outside 1..{n}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e}")
        seen.add(e)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in seen:
        adj[u - 1].append(v)
        adj[v - 1].append(u)
    adjacency = tuple(tuple(sorted(a)) for a in adj)

    reached = _bfs_order(adjacency, 1)
    if len(reached) != n:
        missing = sorted(set(range(1, n + 1)) - set(reached))
        raise DisconnectedGraphError(f"graph is disconnected; unreachable from 1: {missing}")
    return Graph(n=n, edges=tuple(sorted(seen)), adjacency=adjacency)


def _bfs_order(adjacency: Sequence[Sequence[int]], source: int) -> list[int]:
    seen = {source}
    order = [source]
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adjacency[u - 1]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def generate(family: str, seed: int = 0, **params) -> Graph:
    """Build a graph from a named family.

    Parameters by family: ``path``/``cycle``/``complete`` take ``n``;
    ``grid`` takes ``rows`` and ``cols``; ``hypercube`` takes ``dim``;
    ``random_regular`` takes ``n``, ``degree`` and optionally
    ``max_attempts``. Only ``random_regular`` consumes ``seed``.
    """
    family = family.replace("-", "_")
    if family not in FAMILIES:
        raise InfeasibleParametersError(f"unknown family {family!r}; choose from {FAMILIES}")

    if family == "path":
        n = _require_int(params, "n", 1)
        return build_graph(n, [(i, i + 1) for i in range(1, n)])
    if family == "cycle":
        n = _require_int(params, "n", 3)
        return build_graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])
    if family == "complete":
        n = _require_int(params, "n", 1)
        return build_graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])
    if family == "grid":
        rows = _require_int(params, "rows", 1)
        cols = _require_int(params, "cols", 1)

        def label(r: int, c: int) -> int:
            return r * cols + c + 1

        edges = []
        for r in range(rows):
            for c in range(cols):
                if c + 1 < cols:
                    edges.append((label(r, c), label(r, c + 1)))
                if r + 1 < rows:
                    edges.append((label(r, c), label(r + 1, c)))
        return build_graph(rows * cols, edges)
    if family == "hypercube":
        dim = _require_int(params, "dim", 0)
        n = 1 << dim
        edges = [(v + 1, (v | (1 << b)) + 1) for v in range(n) for b in range(dim) if not v >> b & 1]
        return build_graph(n, edges)
    return random_regular(
        _require_int(params, "n", 1),
        _require_int(params, "degree", 1),
        seed=seed,
        max_attempts=int(params.get("max_attempts", 10_000)),
    )


def _require_int(params: dict, key: str, minimum: int) -> int:
    if params.get(key) is None:
        raise InfeasibleParametersError(f"missing parameter {key!r}")
    value = int(params[key])
    if value < minimum:
        raise InfeasibleParametersError(f"{key} must be >= {minimum}, got {value}")
    return value


def random_regular(n: int, degree: int, seed: int = 0, max_attempts: int = 10_000) -> Graph:
    """Sample a connected simple ``degree``-regular graph by the pairing model.

    Each attempt shuffles the ``n * degree`` half-edge stubs and pairs them
    off; attempts producing a loop, a repeated edge or a disconnected graph
    are thrown away.
    """
    if degree >= n or degree < 1:
        raise InfeasibleParametersError(f"need 1 <= degree < n, got degree={degree}, n={n}")
    if (n * degree) % 2:
        raise InfeasibleParametersError("n * degree must be even")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(1, n + 1), degree)
    for _ in range(max_attempts):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        edges = {(int(min(u, v)), int(max(u, v))) for u, v in pairs}
        if len(edges) != len(pairs):
            continue
        try:
            return build_graph(n, sorted(edges))
        except DisconnectedGraphError:
            continue
    raise InfeasibleParametersError(
        f"no connected simple {degree}-regular graph on {n} vertices in {max_attempts} attempts"
    )


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances, indexed with 1-based labels: ``d[u, v]``."""

    dist: np.ndarray

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return int(self.dist[u - 1, v - 1])

    def row(self, u: int) -> np.ndarray:
        return self.dist[u - 1]


def bfs_distances(G: Graph, source: int) -> np.ndarray:
    d = np.full(G.n, -1, dtype=np.int64)
    d[source - 1] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if d[w - 1] < 0:
                d[w - 1] = d[u - 1] + 1
                queue.append(w)
    return d


def distances(G: Graph) -> DistanceMatrix:
    mat = np.vstack([bfs_distances(G, s) for s in G.vertices])
    mat.setflags(write=False)
    return DistanceMatrix(mat)


def expansion_exact(G: Graph) -> Fraction:
    """Minimum of ``|E(S, V-S)| / |S|`` over all ``S`` with ``0 < |S| <= n/2``.

    Exhaustive over every vertex subset, so limited to ``n <= 20``.
    """
    n = G.n
    if n > MAX_EXPANSION_N:
        raise InfeasibleParametersError(
            f"exact expansion enumerates 2^n subsets; n={n} exceeds {MAX_EXPANSION_N}"
        )
    if n < 2:
        raise InfeasibleParametersError("expansion needs at least two vertices")
    masks = np.arange(1, 1 << n, dtype=np.uint32)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for b in range(n):
        sizes += (masks >> b) & 1
    cut = np.zeros(masks.shape, dtype=np.int64)
    for u, v in G.edges:
        cut += ((masks >> (u - 1)) ^ (masks >> (v - 1))) & 1
    best: Optional[Fraction] = None
    for k in range(1, n // 2 + 1):
        value = Fraction(int(cut[sizes == k].min()), k)
        if best is None or value < best:
            best = value
    return best


@dataclass(frozen=True)
class GraphMetrics:
    max_degree: int
    is_regular: bool
    expansion: Optional[Fraction] = None


def metrics(G: Graph, compute_expansion: bool = False) -> GraphMetrics:
    degrees = [G.degree(v) for v in G.vertices]
    return GraphMetrics(
        max_degree=max(degrees),
        is_regular=len(set(degrees)) == 1,
        expansion=expansion_exact(G) if compute_expansion else None,
    )


def bound_calculator(
    n: int,
    g: int,
    max_degree: Optional[int] = None,
    expansion: Optional[Fraction] = None,
) -> dict:
    """Evaluate the lower-bound formulas without their hidden constants.

    ``congestion`` is ``n^0.75 / sqrt(g)``; ``expander`` is
    ``sqrt(beta) n^0.25 / (sqrt(Delta) ln n)`` (only when both are given);
    ``constant_degree`` is ``n^0.25 / sqrt(ln n)``; ``threshold`` carries
    the explicit constant, ``n^0.75 / (8 e sqrt(g))``.
    """
    if n < 2 or g < 1:
        raise InfeasibleParametersError("need n >= 2 and g >= 1")
    out = {
        "n": n,
        "g": g,
        "congestion": n**0.75 / math.sqrt(g),
        "constant_degree": n**0.25 / math.sqrt(math.log(n)),
        "threshold": n**0.75 / (8 * math.e * math.sqrt(g)),
        "expander": None,
    }
    if max_degree is not None and expansion is not None:
        out["expander"] = math.sqrt(float(expansion)) * n**0.25 / (math.sqrt(max_degree) * math.log(n))
    return out
