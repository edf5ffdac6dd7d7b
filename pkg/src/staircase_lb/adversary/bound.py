"""Exact and sampled evaluation of the adversary minimum.

The objective for an admissible triple ``(F1, F2, v)`` is
``M(F1) M(F2) / (nu(F1, v) nu(F2, v))``; the lower bound is the square
root of its minimum. All comparisons are made on the squared ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import BudgetExceededError, EmptyRelationError, ValidationError
from .family import FunctionLabel, InstanceFamily, Scalar, fmt_scalar

DEFAULT_BUDGET_LABELS = 2000
DEFAULT_BUDGET_RPRIME = 10**7


def M_value(F1: FunctionLabel, fam: InstanceFamily) -> int:
    """``M(F1)``: sum of ``r(F1, .)`` over the family."""
    table = fam.engine()
    i = table.index.get(tuple(F1.milestones))
    return 0 if i is None else table.M(i)


def nu_value(F1: FunctionLabel, v: int, fam: InstanceFamily) -> Scalar:
    """``nu(F1, v)``: sum of ``r'(F1, ., v)`` over the family."""
    if not 1 <= v <= fam.n:
        raise ValidationError(f"vertex {v} outside 1..{fam.n}")
    table = fam.engine()
    i = table.index.get(tuple(F1.milestones))
    return fam.scalar(0) if i is None else table.nu(i, v)


def rprime_evaluations(fam: InstanceFamily) -> int:
    """``r'`` evaluations a full pass costs: ordered opposite-bit pairs of
    good labels times query points."""
    good = math.perm(fam.n - 1, fam.L)
    return 2 * good * good * fam.n


def check_budget(
    fam: InstanceFamily,
    budget_labels: int = DEFAULT_BUDGET_LABELS,
    budget_rprime: int = DEFAULT_BUDGET_RPRIME,
) -> None:
    if fam.num_labels > budget_labels:
        raise BudgetExceededError(
            f"family has {fam.num_labels} labels (budget {budget_labels}); use sampled mode"
        )
    cost = rprime_evaluations(fam)
    if cost > budget_rprime:
        raise BudgetExceededError(
            f"full evaluation needs {cost} r' evaluations (budget {budget_rprime}); use sampled mode"
        )


@dataclass
class AdversaryEvaluation:
    M: dict[tuple[int, ...], int]  # by milestone vector; identical for both bits
    min_ratio_squared: Scalar
    witness: tuple[FunctionLabel, FunctionLabel, int]
    exact: bool

    @property
    def bound(self) -> float:
        return math.sqrt(float(self.min_ratio_squared))

    def M_label(self, F: FunctionLabel) -> int:
        return self.M.get(tuple(F.milestones), 0)

    def to_dict(self) -> dict:
        F1, F2, v = self.witness
        good_M = list(self.M.values())
        return {
            "min_ratio_squared": fmt_scalar(self.min_ratio_squared),
            "bound": self.bound,
            "exact": self.exact,
            "witness": {"F1": F1.to_dict(), "F2": F2.to_dict(), "v": v},
            "M_stats": {
                "good_sequences": len(good_M),
                "min": str(min(good_M)),
                "max": str(max(good_M)),
            },
        }


def _ratio(fam: InstanceFamily, table, i: int, k: int, v: int) -> Scalar:
    num = fam.scalar(table.M(i) * table.M(k))
    return num / (table.nu(i, v) * table.nu(k, v))


def adversary_bound(
    fam: InstanceFamily,
    budget_labels: int = DEFAULT_BUDGET_LABELS,
    budget_rprime: int = DEFAULT_BUDGET_RPRIME,
) -> AdversaryEvaluation:
    """Exact minimum of the objective over every admissible triple.

    For a fixed query point the objective factors as ``a(x) * a(y)`` with
    ``a = M / nu``, so each ``v`` is scanned in increasing ``a`` order and
    stops as soon as no remaining pair can beat the incumbent.
    """
    check_budget(fam, budget_labels, budget_rprime)
    table = fam.engine()
    if table.size < 2:
        raise EmptyRelationError(
            f"no pair of distinct good milestone vectors for n={fam.n}, L={fam.L}: "
            "every sequence repeats a vertex, so r is identically zero"
        )
    best: Optional[Scalar] = None
    witness = None
    for v in range(1, fam.n + 1):
        keyed = []
        for i in range(table.size):
            nu = table.nu(i, v)
            if nu > 0:
                keyed.append((fam.scalar(table.M(i)) / nu, i))
        keyed.sort()
        if len(keyed) < 2:
            continue
        a_min = keyed[0][0]
        for a_i, i in keyed:
            if best is not None and a_i * a_min >= best:
                break
            for a_k, k in keyed:
                if best is not None and a_i * a_k >= best:
                    break
                if table.valid(i, k, v):
                    best = a_i * a_k
                    witness = (i, k, v)
                    break
    if witness is None:
        raise EmptyRelationError("no admissible triple: r(F1,F2) > 0 with differing values")
    i, k, v = witness
    seq = [tuple(int(s) for s in table.seqs[m]) for m in (i, k)]
    # recompute at the witness rather than trusting the product of keys
    exact_value = _ratio(fam, table, i, k, v)
    return AdversaryEvaluation(
        M={tuple(int(s) for s in table.seqs[m]): table.M(m) for m in range(table.size)},
        min_ratio_squared=exact_value,
        witness=(FunctionLabel(seq[0], 0), FunctionLabel(seq[1], 1), v),
        exact=fam.exact,
    )


def witness_ratio_squared(fam: InstanceFamily, F1: FunctionLabel, F2: FunctionLabel, v: int) -> Scalar:
    """Objective at one triple, from the standalone evaluators."""
    num = fam.scalar(M_value(F1, fam) * M_value(F2, fam))
    return num / (nu_value(F1, v, fam) * nu_value(F2, v, fam))


def sampled_adversary_bound(
    fam: InstanceFamily,
    samples: int,
    seed: int = 0,
    max_rejections: Optional[int] = None,
) -> dict:
    """Minimum of the objective over uniformly sampled admissible triples.

    This is an UPPER bound on the true minimum (a minimum over a subset).
    Triples are drawn by rejection: good ``x != y`` and ``v`` uniform,
    redrawn until the two labels differ at ``v``. All draws happen before
    any evaluation, so the result depends only on the seed.
    """
    if samples <= 0:
        raise ValidationError("sampled evaluation needs samples >= 1")
    table = fam.engine()
    if table.size < 2:
        raise EmptyRelationError(f"no pair of distinct good milestone vectors for n={fam.n}, L={fam.L}")
    rng = np.random.default_rng(seed)
    if max_rejections is None:
        max_rejections = 100 * samples
    triples = []
    rejected = 0
    while len(triples) < samples:
        i, k = (int(t) for t in rng.integers(table.size, size=2))
        v = int(rng.integers(1, fam.n + 1))
        if table.valid(i, k, v):
            triples.append((i, k, v))
            continue
        rejected += 1
        if rejected > max_rejections:
            raise BudgetExceededError(f"rejection sampling gave up after {rejected} draws")

    M = table.M_all()
    best = None
    witness = None
    for i, k, v in triples:
        nu_i = fam.combine(*table.nu_column(i, v))
        nu_k = fam.combine(*table.nu_column(k, v))
        value = fam.scalar(int(M[i]) * int(M[k])) / (nu_i * nu_k)
        if best is None or value < best:
            best = value
            witness = (i, k, v)
    i, k, v = witness
    F1 = FunctionLabel(tuple(int(s) for s in table.seqs[i]), 0)
    F2 = FunctionLabel(tuple(int(s) for s in table.seqs[k]), 1)
    return {
        "kind": "upper_bound_of_minimum",
        "samples": samples,
        "rejected_draws": rejected,
        "seed": seed,
        "min_ratio_squared": fmt_scalar(best),
        "bound": math.sqrt(float(best)),
        "exact": fam.exact,
        "witness": {"F1": F1.to_dict(), "F2": F2.to_dict(), "v": v},
    }
