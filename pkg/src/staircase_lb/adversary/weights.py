"""The weight scheme ``(r*, r, r')`` evaluated literally, label by label.

These functions follow the definitions case by case and are the
reference the vectorised evaluators in :mod:`.engine` are checked
against. ``M_naive`` and ``nu_naive`` sum them over every label in the
family.
"""

from __future__ import annotations

from ..staircase import shared_prefix
from .family import FunctionLabel, InstanceFamily, Scalar


def r_star(F1: FunctionLabel, F2: FunctionLabel, fam: InstanceFamily) -> int:
    if F1.b == F2.b:
        return 0
    if not (fam.info(F1.milestones).good and fam.info(F2.milestones).good):
        return 0
    return fam.n ** shared_prefix(F1.milestones, F2.milestones)


def r(F1: FunctionLabel, F2: FunctionLabel, fam: InstanceFamily) -> int:
    if F1.milestones == F2.milestones:
        return 0
    return r_star(F1, F2, fam)


def r_prime(F1: FunctionLabel, F2: FunctionLabel, v: int, fam: InstanceFamily) -> Scalar:
    """Query-point weight. Not symmetric: swapping the labels swaps the
    ``g/n^1.5`` and ``n^1.5/g`` branches."""
    if fam.value(F1, v) == fam.value(F2, v) or F1.b == F2.b:
        return 0
    base = r(F1, F2, fam)
    J = shared_prefix(F1.milestones, F2.milestones)
    in_x = v in fam.info(F1.milestones).tails[J - 1]
    in_y = v in fam.info(F2.milestones).tails[J - 1]
    if in_x and not in_y:
        return base * fam.down
    if in_y and not in_x:
        return base * fam.up
    return base


def M_naive(F1: FunctionLabel, fam: InstanceFamily) -> int:
    return sum(r(F1, F2, fam) for F2 in fam.labels)


def nu_naive(F1: FunctionLabel, v: int, fam: InstanceFamily) -> Scalar:
    total = fam.scalar(0)
    for F2 in fam.labels:
        total += r_prime(F1, F2, v, fam)
    return total


def rstar_sum_naive(F1: FunctionLabel, fam: InstanceFamily) -> int:
    return sum(r_star(F1, F2, fam) for F2 in fam.labels)
