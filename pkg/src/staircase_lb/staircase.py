"""Staircases over a path system and the hard instances built on them.

A milestone sequence ``x = (1, x_2, ..., x_{L+1})`` picks ``L`` segments
``P[x_i, x_{i+1}]``. Their concatenation is the staircase walk; junction
milestones appear twice, once at the end of segment ``i`` and once at the
start of segment ``i + 1``.

The instance ``f_x`` is ``dist(v, 1)`` off the staircase and ``-i*n - j``
on it, where ``i`` is the last segment containing ``v`` and ``j`` is the
(1-based) position of ``v`` there. Its unique local minimum is the final
milestone. ``g_{x,b}`` additionally reveals the bit ``b`` at that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import ValidationError
from .graph import Graph, bfs_distances
from .routing import Path, PathSystem, validate_path_system


@dataclass(frozen=True)
class MilestoneSequence:
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValidationError("a milestone sequence needs at least two entries (L >= 1)")
        if self.entries[0] != 1:
            raise ValidationError(f"first milestone must be vertex 1, got {self.entries[0]}")

    @classmethod
    def of(cls, entries: Iterable[int]) -> "MilestoneSequence":
        return cls(tuple(int(e) for e in entries))

    @property
    def L(self) -> int:
        return len(self.entries) - 1

    @property
    def last(self) -> int:
        return self.entries[-1]

    def check_range(self, n: int) -> None:
        for e in self.entries:
            if not 1 <= e <= n:
                raise ValidationError(f"milestone {e} outside 1..{n}")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def _as_seq(x) -> MilestoneSequence:
    return x if isinstance(x, MilestoneSequence) else MilestoneSequence.of(x)


@dataclass(frozen=True)
class Staircase:
    milestones: MilestoneSequence
    segments: tuple[Path, ...]

    @property
    def walk(self) -> tuple[int, ...]:
        return tuple(v for seg in self.segments for v in seg)

    @property
    def L(self) -> int:
        return len(self.segments)


def build_staircase(x, P: PathSystem) -> Staircase:
    x = _as_seq(x)
    x.check_range(P.n)
    segments = tuple(P[(a, b)] for a, b in zip(x.entries, x.entries[1:]))
    return Staircase(x, segments)


def tail(j: int, S: Staircase) -> tuple[int, ...]:
    """Walk from milestone ``j`` onwards, minus the first occurrence of ``x_j``.

    ``j`` is 1-based; ``tail(L + 1, S)`` is empty.
    """
    L = S.L
    if not 1 <= j <= L + 1:
        raise ValidationError(f"tail index {j} outside 1..{L + 1}")
    if j == L + 1:
        return ()
    rest = [v for seg in S.segments[j - 1 :] for v in seg]
    # segment j starts at x_j, so the first occurrence is rest[0]
    rest.remove(S.milestones[j - 1])
    return tuple(rest)


class DecoratedValue(NamedTuple):
    value: int
    tag: int


@dataclass(frozen=True)
class HardInstance:
    graph: Graph
    path_system: PathSystem
    milestones: MilestoneSequence
    dist_to_1: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def staircase(self) -> Staircase:
        return build_staircase(self.milestones, self.path_system)

    def to_dict(self, b: Optional[int] = None) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "paths": self.path_system.to_dict(),
            "milestones": list(self.milestones.entries),
            "b": b,
        }

    @classmethod
    def from_dict(cls, data: dict) -> tuple["HardInstance", Optional[int]]:
        try:
            G = Graph.from_dict(data["graph"])
            P = PathSystem.from_dict(data["paths"], G)
            x = MilestoneSequence.of(data["milestones"])
            b = data.get("b")
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed instance document: {exc}") from exc
        if b not in (None, 0, 1):
            raise ValidationError(f"hidden bit must be 0, 1 or null, got {b!r}")
        return make_instance(G, P, x), b


def make_instance(
    G: Graph, P: PathSystem, x, validate: bool = True, dist_to_1: Optional[Sequence[int]] = None
) -> HardInstance:
    """``dist_to_1`` may be passed in when many instances share one graph."""
    x = _as_seq(x)
    x.check_range(G.n)
    if validate:
        validate_path_system(G, P)
    if dist_to_1 is None:
        dist_to_1 = bfs_distances(G, 1)
    return HardInstance(G, P, x, tuple(int(d) for d in dist_to_1))


def eval_f(inst: HardInstance, v: int) -> int:
    n = inst.n
    x = inst.milestones.entries
    for i in range(len(x) - 1, 0, -1):
        seg = inst.path_system[(x[i - 1], x[i])]
        if v in seg:
            return -i * n - (seg.index(v) + 1)
    return inst.dist_to_1[v - 1]


def f_table(inst: HardInstance) -> np.ndarray:
    """Full table of ``f`` built in one pass over the segments.

    Independent of :func:`eval_f`; ``table[v - 1] == eval_f(inst, v)``.
    """
    n = inst.n
    table = np.array(inst.dist_to_1, dtype=np.int64)
    x = inst.milestones.entries
    # later segments overwrite earlier ones; within a segment keep the first position
    for i in range(1, len(x)):
        seg = inst.path_system[(x[i - 1], x[i])]
        seen = set()
        for pos, w in enumerate(seg, start=1):
            if w not in seen:
                seen.add(w)
                table[w - 1] = -i * n - pos
    return table


def eval_g(inst: HardInstance, b: int, v: int) -> DecoratedValue:
    if b not in (0, 1):
        raise ValidationError(f"hidden bit must be 0 or 1, got {b!r}")
    tag = b if v == inst.milestones.last else -1
    return DecoratedValue(eval_f(inst, v), tag)


def local_minima(G: Graph, f: Callable[[int], int]) -> set[int]:
    values = {v: f(v) for v in G.vertices}
    return {v for v in G.vertices if all(values[v] <= values[u] for u in G.neighbors(v))}


def is_good(x) -> bool:
    entries = _as_seq(x).entries
    return len(set(entries)) == len(entries)


def shared_prefix(x, y) -> int:
    a, b = _as_seq(x).entries, _as_seq(y).entries
    if len(a) != len(b):
        raise ValidationError(f"sequence lengths differ: {len(a)} vs {len(b)}")
    j = 0
    while j < len(a) and a[j] == b[j]:
        j += 1
    return j


def multiplicity(Q: Sequence[int], u: int) -> int:
    return sum(1 for w in Q if w == u)
