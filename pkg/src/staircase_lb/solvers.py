"""Query-counted classical baselines on hard instances.

The graph itself is public; only vertex values cost a query.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import SearchConsistencyError, ValidationError
from .staircase import DecoratedValue, HardInstance, eval_f, eval_g, local_minima


class QueryOracle:
    """Black-box access to ``f_x`` (``b=None``) or to ``g_{x,b}``."""

    def __init__(self, instance: HardInstance, b: Optional[int] = None):
        if b not in (None, 0, 1):
            raise ValidationError(f"hidden bit must be 0, 1 or None, got {b!r}")
        self.instance = instance
        self.b = b
        self.transcript: list[int] = []
        self._answers: dict[int, Union[int, DecoratedValue]] = {}

    @property
    def mode(self) -> str:
        return "f" if self.b is None else "g"

    @property
    def graph(self):
        return self.instance.graph

    @property
    def total_queries(self) -> int:
        return len(self.transcript)

    @property
    def distinct_queries(self) -> int:
        return len(self._answers)

    def query(self, v: int) -> Union[int, DecoratedValue]:
        if not 1 <= v <= self.instance.n:
            raise ValidationError(f"vertex {v} outside 1..{self.instance.n}")
        self.transcript.append(v)
        ans = eval_f(self.instance, v) if self.b is None else eval_g(self.instance, self.b, v)
        self._answers[v] = ans
        return ans

    def value(self, v: int) -> int:
        ans = self.query(v)
        return ans.value if isinstance(ans, DecoratedValue) else ans

    def seen(self, v: int) -> Optional[Union[int, DecoratedValue]]:
        """Answer already obtained for ``v``, without issuing a query."""
        return self._answers.get(v)


@dataclass
class SolveResult:
    answer: Optional[int]
    distinct_queries: int
    total_queries: int
    trace: list[int] = field(default_factory=list)
    bit: Optional[int] = None

    def to_dict(self, algorithm: str, seed: Optional[int] = None) -> dict:
        out = {
            "algorithm": algorithm,
            "seed": seed,
            "answer": self.answer,
            "distinct_queries": self.distinct_queries,
            "total_queries": self.total_queries,
            "trace": self.trace,
        }
        if self.bit is not None:
            out["bit"] = self.bit
        return out


def _check_minimum(oracle: QueryOracle, v: int) -> None:
    inst = oracle.instance
    if v not in local_minima(inst.graph, lambda u: eval_f(inst, u)):
        raise SearchConsistencyError(f"solver stopped at {v}, which is not a local minimum")


def _descend(oracle: QueryOracle, start: int) -> list[int]:
    G = oracle.graph
    current = start
    value = oracle.value(current)
    trace = [current]
    while True:
        best, best_value = None, value
        for u in G.neighbors(current):
            fu = oracle.value(u)
            if fu < best_value:
                best, best_value = u, fu
        if best is None:
            return trace
        current, value = best, best_value
        trace.append(current)


def steepest_descent(oracle: QueryOracle, start: int) -> SolveResult:
    """Query the current vertex and all its neighbours; move to the smallest
    strictly better neighbour (lowest label on ties); stop when none is."""
    trace = _descend(oracle, start)
    _check_minimum(oracle, trace[-1])
    return SolveResult(trace[-1], oracle.distinct_queries, oracle.total_queries, trace)


def random_descent(oracle: QueryOracle, probes: int, seed: int = 0) -> SolveResult:
    """Probe ``probes`` uniform random vertices, then descend from the best."""
    if probes < 1:
        raise ValidationError("random descent needs probes >= 1")
    rng = np.random.default_rng(seed)
    picks = [int(v) for v in rng.integers(1, oracle.instance.n + 1, size=probes)]
    values = [oracle.value(v) for v in picks]
    start = min(zip(values, picks))[1]
    trace = _descend(oracle, start)
    _check_minimum(oracle, trace[-1])
    return SolveResult(trace[-1], oracle.distinct_queries, oracle.total_queries, trace)


def decision_from_search(oracle: QueryOracle, start: int = 1) -> SolveResult:
    """Recover the hidden bit: find the local minimum, then read its tag.

    The tag is read from the answer already on record when the search
    queried that vertex in g-mode; otherwise one more query is issued.
    """
    if oracle.mode != "g":
        raise ValidationError("decision needs an oracle carrying a hidden bit")
    result = steepest_descent(oracle, start)
    ans = oracle.seen(result.answer)
    if ans is None:
        ans = oracle.query(result.answer)
    if ans.tag not in (0, 1):
        raise SearchConsistencyError(f"vertex {result.answer} carries no hidden bit")
    return SolveResult(
        result.answer, oracle.distinct_queries, oracle.total_queries, result.trace, bit=ans.tag
    )
