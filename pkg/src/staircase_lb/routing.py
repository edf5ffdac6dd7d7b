"""All-pairs path systems and their vertex/edge congestion.

A path system fixes one path ``P[u, v]`` for every ordered pair of
vertices, with ``P[u, u] = (u,)``. Its vertex congestion ``g`` is the
largest number of times any vertex is used across all ``n^2`` paths,
counting repeats within a path.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional

import numpy as np

from .errors import BudgetExceededError, InfeasibleParametersError, PathSystemError
from .graph import Graph, expansion_exact, metrics

Path = tuple[int, ...]


@dataclass(frozen=True)
class PathSystem:
    n: int
    paths: Mapping[tuple[int, int], Path]

    def __getitem__(self, uv: tuple[int, int]) -> Path:
        return self.paths[uv]

    def replace(self, u: int, v: int, path: Path) -> "PathSystem":
        new = dict(self.paths)
        new[(u, v)] = tuple(path)
        return PathSystem(self.n, new)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "paths": [
                {"from": u, "to": v, "vertices": list(self.paths[(u, v)])}
                for u in range(1, self.n + 1)
                for v in range(1, self.n + 1)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict, G: Optional[Graph] = None) -> "PathSystem":
        try:
            n = int(data["n"])
            paths = {
                (int(p["from"]), int(p["to"])): tuple(int(w) for w in p["vertices"])
                for p in data["paths"]
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise PathSystemError(f"malformed path-system document: {exc}") from exc
        system = cls(n, paths)
        if G is not None:
            validate_path_system(G, system)
        return system


def validate_path_system(G: Graph, P: PathSystem) -> None:
    """Raise :class:`PathSystemError` unless ``P`` is a complete system on ``G``."""
    if P.n != G.n:
        raise PathSystemError(f"path system is for n={P.n}, graph has n={G.n}")
    for u in G.vertices:
        for v in G.vertices:
            path = P.paths.get((u, v))
            if not path:
                raise PathSystemError(f"missing path for pair ({u}, {v})")
            if path[0] != u or path[-1] != v:
                raise PathSystemError(f"path for ({u}, {v}) runs {path[0]}..{path[-1]}")
            if u == v and path != (u,):
                raise PathSystemError(f"P[{u},{u}] must be the single vertex ({u},)")
            for a, b in zip(path, path[1:]):
                if not G.has_edge(a, b):
                    raise PathSystemError(f"path for ({u}, {v}) uses non-edge ({a}, {b})")


def _bfs_parents(G: Graph, source: int) -> tuple[list[int], list[list[int]]]:
    """Distances and the full list of shortest-path parents (ascending)."""
    dist = [-1] * (G.n + 1)
    parents: list[list[int]] = [[] for _ in range(G.n + 1)]
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
            if dist[w] == dist[u] + 1:
                parents[w].append(u)
    for p in parents:
        p.sort()
    return dist, parents


def shortest_path_system(G: Graph) -> PathSystem:
    """One shortest path per ordered pair; each vertex backtracks through
    its smallest-label BFS parent."""
    paths: dict[tuple[int, int], Path] = {}
    for u in G.vertices:
        _, parents = _bfs_parents(G, u)
        for v in G.vertices:
            walk = [v]
            while walk[-1] != u:
                walk.append(parents[walk[-1]][0])
            paths[(u, v)] = tuple(reversed(walk))
    return PathSystem(G.n, paths)


@dataclass(frozen=True)
class CongestionReport:
    vertex_load: dict[int, int]
    edge_load: dict[tuple[int, int], int]
    g: int
    g_e: int

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "g_e": self.g_e,
            "vertex_load": {str(v): c for v, c in sorted(self.vertex_load.items())},
            "edge_load": {f"{u}-{v}": c for (u, v), c in sorted(self.edge_load.items())},
        }


def _vertex_loads(P: PathSystem) -> Counter:
    load: Counter = Counter({v: 0 for v in range(1, P.n + 1)})
    for path in P.paths.values():
        load.update(path)
    return load


def vertex_congestion(P: PathSystem) -> CongestionReport:
    vload = _vertex_loads(P)
    eload: Counter = Counter()
    for path in P.paths.values():
        eload.update((min(a, b), max(a, b)) for a, b in zip(path, path[1:]))
    return CongestionReport(
        vertex_load=dict(sorted(vload.items())),
        edge_load=dict(sorted(eload.items())),
        g=max(vload.values()),
        g_e=max(eload.values(), default=0),
    )


def num_paths_through(P: PathSystem, u: int, v: int) -> int:
    """Number of paths in ``P`` that start at ``u`` and contain ``v``."""
    return sum(1 for w in range(1, P.n + 1) if v in P.paths[(u, w)])


def _random_shortest_path(parents: list[list[int]], u: int, v: int, rng: np.random.Generator) -> list[int]:
    walk = [v]
    while walk[-1] != u:
        choices = parents[walk[-1]]
        walk.append(choices[int(rng.integers(len(choices)))])
    walk.reverse()
    return walk


def anneal_congestion(
    G: Graph, start: PathSystem, iterations: int, seed: int = 0
) -> PathSystem:
    """Local search over path systems that never increases ``g``.

    Each step picks a random ordered pair ``u != v`` and proposes either a
    random shortest path or a detour through a random intermediate vertex.
    Non-simple proposals are dropped; others are kept when the maximum
    vertex load does not go up.
    """
    if iterations <= 0 or G.n < 2:
        return start
    rng = np.random.default_rng(seed)
    bfs = [None] + [_bfs_parents(G, s)[1] for s in G.vertices]
    paths = dict(start.paths)
    load = _vertex_loads(start)
    g = max(load.values())
    n = G.n
    for _ in range(iterations):
        u, v = (int(x) for x in rng.choice(np.arange(1, n + 1), size=2, replace=False))
        if rng.random() < 0.5:
            proposal = _random_shortest_path(bfs[u], u, v, rng)
        else:
            w = int(rng.integers(1, n + 1))
            proposal = _random_shortest_path(bfs[u], u, w, rng)[:-1] + _random_shortest_path(bfs[w], w, v, rng)
        if len(set(proposal)) != len(proposal):
            continue
        proposal = tuple(proposal)
        old = paths[(u, v)]
        if proposal == old:
            continue
        load.subtract(old)
        load.update(proposal)
        new_g = max(load.values())
        if new_g <= g:
            paths[(u, v)] = proposal
            g = new_g
        else:
            load.subtract(proposal)
            load.update(old)
    return PathSystem(n, paths)


def simple_paths(G: Graph, u: int, v: int) -> Iterator[Path]:
    """All simple ``u``-``v`` paths, shortest first then lexicographic."""
    found: list[Path] = []
    stack = [(u,)]
    while stack:
        path = stack.pop()
        if path[-1] == v:
            found.append(path)
            continue
        for w in reversed(G.neighbors(path[-1])):
            if w not in path:
                stack.append(path + (w,))
    found.sort(key=lambda p: (len(p), p))
    return iter(found)


def min_congestion_bruteforce(
    G: Graph, max_paths_per_pair: int = 8, node_budget: int = 2_000_000
) -> tuple[PathSystem, int]:
    """Exact minimum vertex congestion over all simple-path systems.

    Depth-first branch and bound over one path choice per ordered pair.
    Every vertex ``v`` sits on its own ``2n - 1`` paths whatever the
    choices, which gives a lower bound; the search stops once it is met.
    """
    n = G.n
    if n > 4:
        raise InfeasibleParametersError(f"brute-force congestion is limited to n <= 4, got {n}")
    pairs = [(u, v) for u in G.vertices for v in G.vertices if u != v]
    options = {}
    for pair in pairs:
        opts = list(simple_paths(G, *pair))
        if len(opts) > max_paths_per_pair:
            raise BudgetExceededError(
                f"pair {pair} has {len(opts)} simple paths, budget is {max_paths_per_pair}"
            )
        options[pair] = opts

    base = [0] * (n + 1)
    for v in G.vertices:
        base[v] = 2 * n - 1
    floor = max(base)
    # only interior vertices of each choice vary
    load = list(base)
    best_g = math.inf
    best: Optional[dict] = None
    chosen: dict[tuple[int, int], Path] = {}
    visited = 0

    def search(k: int, current_max: int) -> bool:
        nonlocal best_g, best, visited
        visited += 1
        if visited > node_budget:
            raise BudgetExceededError(f"brute-force search exceeded {node_budget} nodes")
        if current_max >= best_g:
            return False
        if k == len(pairs):
            best_g = current_max
            best = dict(chosen)
            return best_g == floor
        pair = pairs[k]
        for path in options[pair]:
            interior = path[1:-1]
            for w in interior:
                load[w] += 1
            chosen[pair] = path
            done = search(k + 1, max([current_max] + [load[w] for w in interior]))
            for w in interior:
                load[w] -= 1
            if done:
                return True
        return False

    search(0, floor)
    assert best is not None
    for v in G.vertices:
        best[(v, v)] = (v,)
    return PathSystem(n, best), int(best_g)


def check_congestion_inequality(
    G: Graph, P: PathSystem, expansion: Optional[Fraction] = None
) -> dict:
    """Ratio ``g / (n ln^2 n * Delta / beta)`` for trend tables; no verdict."""
    beta = expansion if expansion is not None else expansion_exact(G)
    delta = metrics(G).max_degree
    g = vertex_congestion(P).g
    n = G.n
    scale = n * math.log(n) ** 2 * delta / float(beta)
    return {
        "n": n,
        "g": g,
        "max_degree": delta,
        "expansion": f"{beta.numerator}/{beta.denominator}" if isinstance(beta, Fraction) else str(beta),
        "scale": scale,
        "ratio": g / scale,
    }
