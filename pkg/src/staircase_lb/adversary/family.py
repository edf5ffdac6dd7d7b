"""The decorated instance family and its exact weight factors."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Union

import mpmath

from ..errors import ValidationError
from ..graph import Graph, bfs_distances
from ..routing import PathSystem, validate_path_system, vertex_congestion
from ..staircase import f_table, is_good, make_instance

# rational enclosure of Euler's number
E_LOWER = Fraction(2718281828, 10**9)
E_UPPER = Fraction(2718281829, 10**9)

# relative slack for comparisons when n is not a perfect square
INEXACT_RTOL = 1e-9
MP = mpmath.MPContext()
MP.dps = 50

Scalar = Union[int, Fraction, "mpmath.mpf"]


class FunctionLabel(NamedTuple):
    """Names ``g_{x,b}`` without materialising its values."""

    milestones: tuple[int, ...]
    b: int

    @property
    def bit(self) -> int:
        return self.b

    def to_dict(self) -> dict:
        return {"milestones": list(self.milestones), "b": self.b}


@dataclass(frozen=True)
class SeqInfo:
    seq: tuple[int, ...]
    good: bool
    f: tuple[int, ...]
    tails: tuple[frozenset, ...]  # tails[j - 1] is the vertex set of Tail(j), j = 1..L+1
    tail_counts: tuple[Counter, ...] = field(repr=False)

    @property
    def last(self) -> int:
        return self.seq[-1]


def isqrt_exact(n: int) -> Optional[int]:
    r = math.isqrt(n)
    return r if r * r == n else None


class InstanceFamily:
    """All ``2 n^L`` decorated instances ``g_{x,b}`` over a fixed graph and path system.

    ``g`` is the measured vertex congestion of the path system. When ``n``
    is a perfect square (and ``exact`` is left on) the scale factors
    ``g / n^1.5`` and ``n^1.5 / g`` are exact fractions; otherwise they are
    50-digit mpmath floats and ``self.exact`` is False.
    """

    def __init__(
        self,
        graph: Graph,
        path_system: PathSystem,
        L: int,
        exact: bool = True,
        validate: bool = True,
    ):
        if L < 1:
            raise ValidationError(f"L must be >= 1, got {L}")
        if validate:
            validate_path_system(graph, path_system)
        self.graph = graph
        self.path_system = path_system
        self.n = graph.n
        self.L = L
        self.g = vertex_congestion(path_system).g
        root = isqrt_exact(self.n)
        self.exact = bool(exact and root is not None)
        if self.exact:
            self.n15: Scalar = self.n * root
            self.down: Scalar = Fraction(self.g, self.n15)
            self.up: Scalar = Fraction(self.n15, self.g)
        else:
            self.n15 = MP.mpf(self.n) ** MP.mpf(1.5)
            self.down = MP.mpf(self.g) / self.n15
            self.up = self.n15 / MP.mpf(self.g)
        self._info: dict[tuple[int, ...], SeqInfo] = {}
        self._engine = None
        self._dist_to_1 = tuple(int(d) for d in bfs_distances(graph, 1))

    # -- enumeration ------------------------------------------------------

    @property
    def num_labels(self) -> int:
        return 2 * self.n**self.L

    def sequences(self) -> Iterator[tuple[int, ...]]:
        for rest in itertools.product(range(1, self.n + 1), repeat=self.L):
            yield (1,) + rest

    def good_sequences(self) -> Iterator[tuple[int, ...]]:
        for rest in itertools.permutations(range(2, self.n + 1), self.L):
            yield (1,) + rest

    @property
    def labels(self) -> Iterator[FunctionLabel]:
        for seq in self.sequences():
            for b in (0, 1):
                yield FunctionLabel(seq, b)

    # -- per-sequence data ------------------------------------------------

    def info(self, seq) -> SeqInfo:
        seq = tuple(seq)
        cached = self._info.get(seq)
        if cached is not None:
            return cached
        if len(seq) != self.L + 1 or seq[0] != 1:
            raise ValidationError(f"sequence {seq} is not in {{1}} x [n]^{self.L}")
        inst = make_instance(self.graph, self.path_system, seq, validate=False, dist_to_1=self._dist_to_1)
        f = tuple(int(v) for v in f_table(inst))
        segments = [self.path_system[(a, b)] for a, b in zip(seq, seq[1:])]
        counts = []
        tails = []
        for j in range(1, self.L + 1):
            c = Counter(w for seg in segments[j - 1 :] for w in seg)
            c[seq[j - 1]] -= 1
            c = +c
            counts.append(c)
            tails.append(frozenset(c))
        counts.append(Counter())
        tails.append(frozenset())
        info = SeqInfo(seq, is_good(seq), f, tuple(tails), tuple(counts))
        self._info[seq] = info
        return info

    def value(self, F: FunctionLabel, v: int) -> tuple[int, int]:
        """``g_{x,b}(v)`` as a (value, tag) pair."""
        info = self.info(F.milestones)
        return info.f[v - 1], (F.b if v == info.last else -1)

    # -- scalars ------------------------------------------------------------

    def combine(self, unscaled: int, scaled_down: int, scaled_up: int) -> Scalar:
        """``unscaled + scaled_down * g/n^1.5 + scaled_up * n^1.5/g``."""
        if self.exact:
            total = unscaled + scaled_down * self.down + scaled_up * self.up
            return Fraction(total)
        return MP.mpf(unscaled) + scaled_down * self.down + scaled_up * self.up

    def scalar(self, value) -> Scalar:
        if self.exact:
            return Fraction(value)
        if isinstance(value, Fraction):
            return MP.mpf(value.numerator) / value.denominator
        return MP.mpf(value)

    def leq(self, a, b) -> bool:
        """``a <= b``; with relative slack when the family is inexact."""
        if self.exact:
            return a <= b
        a, b = self.scalar(a), self.scalar(b)
        return a <= b + INEXACT_RTOL * abs(b)

    def engine(self):
        if self._engine is None:
            from .engine import GoodTable

            self._engine = GoodTable(self)
        return self._engine


def build_family(
    G: Graph, P: PathSystem, L: Optional[int] = None, exact: bool = True
) -> InstanceFamily:
    """Family over ``G`` and ``P``; ``L`` defaults to ``floor(sqrt(n))``."""
    if L is None:
        L = max(1, math.isqrt(G.n))
    return InstanceFamily(G, P, L, exact=exact)


def fmt_scalar(x) -> str:
    """Exact ``num/den`` for rationals, 30 significant digits otherwise."""
    if isinstance(x, int):
        return f"{x}/1"
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return MP.nstr(x, 30)


def to_float(x) -> float:
    return float(x)
