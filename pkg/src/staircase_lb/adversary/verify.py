"""Exhaustive checks of every inequality the lower-bound argument uses.

Each check returns a :class:`CheckResult` carrying both sides of the
tightest instance it saw. On exact families every comparison is between
rationals; constants involving ``e`` use the enclosure side that makes
the check harder to pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from ..errors import BudgetExceededError, ValidationError
from ..routing import num_paths_through
from ..staircase import shared_prefix
from .bound import (
    DEFAULT_BUDGET_LABELS,
    DEFAULT_BUDGET_RPRIME,
    AdversaryEvaluation,
    adversary_bound,
    check_budget,
)
from .family import E_LOWER, FunctionLabel, InstanceFamily, fmt_scalar, isqrt_exact
from .weights import r, r_prime, r_star


@dataclass
class CheckResult:
    name: str
    applicable: bool = True
    checked: int = 0
    violations: int = 0
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    relation: str = "<="
    note: str = ""
    examples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.applicable or self.violations == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "passed": self.passed,
            "checked": self.checked,
            "violations": self.violations,
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "note": self.note,
            "violation_examples": self.examples[:5],
        }


class _Tracker:
    """Counts ``lhs (<= | >=) rhs`` comparisons and keeps the tightest."""

    def __init__(self, fam: InstanceFamily, result: CheckResult):
        self.fam = fam
        self.res = result
        self._worst = None

    def add(self, lhs, rhs, context=None) -> bool:
        fam, res = self.fam, self.res
        res.checked += 1
        ok = fam.leq(lhs, rhs) if res.relation == "<=" else fam.leq(rhs, lhs)
        if not ok:
            res.violations += 1
            if len(res.examples) < 5:
                res.examples.append({"lhs": fmt_scalar(lhs), "rhs": fmt_scalar(rhs), "at": context})
        if rhs != 0:
            tightness = lhs / rhs if res.relation == "<=" else rhs / lhs if lhs != 0 else None
        else:
            tightness = None
        if tightness is not None and (self._worst is None or tightness > self._worst):
            self._worst = tightness
            res.lhs, res.rhs = fmt_scalar(lhs), fmt_scalar(rhs)
        elif res.lhs is None:
            res.lhs, res.rhs = fmt_scalar(lhs), fmt_scalar(rhs)
        return ok


def _in_tight_regime(fam: InstanceFamily) -> bool:
    return fam.L * fam.L == fam.n


def _admissible_triples(fam: InstanceFamily) -> Iterable[tuple[FunctionLabel, FunctionLabel, int]]:
    """Every ``(F1, F2, v)`` with ``r(F1, F2) > 0`` and ``F1(v) != F2(v)``.

    ``r > 0`` forces both labels good, distinct and of opposite bits.
    """
    good = list(fam.good_sequences())
    for x in good:
        for y in good:
            if x == y:
                continue
            for b in (0, 1):
                F1, F2 = FunctionLabel(x, b), FunctionLabel(y, 1 - b)
                for v in range(1, fam.n + 1):
                    if fam.value(F1, v) != fam.value(F2, v):
                        yield F1, F2, v


def verify_weight_scheme(fam: InstanceFamily) -> CheckResult:
    res = CheckResult("weight_scheme", relation=">=")
    track = _Tracker(fam, res)
    equal = 0
    for F1, F2, v in _admissible_triples(fam):
        rr = r(F1, F2, fam)
        prod = r_prime(F1, F2, v, fam) * r_prime(F2, F1, v, fam)
        track.add(prod, rr * rr, [F1.to_dict(), F2.to_dict(), v])
        equal += fam.leq(prod, rr * rr) and fam.leq(rr * rr, prod)
    res.note = f"{equal} of {res.checked} triples meet the product condition with equality"
    return res


def verify_r_symmetry(fam: InstanceFamily) -> CheckResult:
    """``r`` symmetric everywhere and zero on equal hidden bits."""
    res = CheckResult("r_symmetry", relation="==")
    labels = list(fam.labels)
    for F1 in labels:
        for F2 in labels:
            res.checked += 1
            a, b = r(F1, F2, fam), r(F2, F1, fam)
            if a != b or (F1.b == F2.b and a != 0):
                res.violations += 1
                if len(res.examples) < 5:
                    res.examples.append([F1.to_dict(), F2.to_dict(), a, b])
    return res


def verify_tail_membership(fam: InstanceFamily) -> CheckResult:
    res = CheckResult("tail_membership", relation="in")
    for F1, F2, v in _admissible_triples(fam):
        res.checked += 1
        J = shared_prefix(F1.milestones, F2.milestones)
        if v not in fam.info(F1.milestones).tails[J - 1] and v not in fam.info(F2.milestones).tails[J - 1]:
            res.violations += 1
            if len(res.examples) < 5:
                res.examples.append([F1.to_dict(), F2.to_dict(), v])
    res.note = "v lies in Tail(J, S_x) or Tail(J, S_y) for every admissible triple"
    return res


def M_lower_bound_rhs(fam: InstanceFamily) -> Fraction:
    return Fraction(fam.L * fam.n ** (fam.L + 1)) / (2 * E_LOWER)


def verify_M_lower_bound(fam: InstanceFamily) -> CheckResult:
    res = CheckResult("M_lower_bound", relation=">=")
    track = _Tracker(fam, res)
    table = fam.engine()
    rhs = M_lower_bound_rhs(fam)
    for i in range(table.size):
        track.add(Fraction(table.M(i)), rhs, [int(s) for s in table.seqs[i]])
    return res


def verify_rstar_sum(fam: InstanceFamily) -> CheckResult:
    """Sum of ``r*`` over the family, literally, for one bit per good vector."""
    res = CheckResult("rstar_sum", relation=">=")
    track = _Tracker(fam, res)
    rhs = Fraction((fam.L + 1) * fam.n ** (fam.L + 1)) / (2 * E_LOWER)
    good = list(fam.good_sequences())
    for x in good:
        F1 = FunctionLabel(x, 0)
        # only opposite-bit good labels can be nonzero
        total = sum(r_star(F1, FunctionLabel(y, 1), fam) for y in good)
        track.add(Fraction(total), rhs, list(x))
    return res


def _q_matrix(fam: InstanceFamily) -> list[list[int]]:
    n = fam.n
    q = [[0] * (n + 1) for _ in range(n + 1)]
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            q[u][v] = num_paths_through(fam.path_system, u, v)
    return q


def _admissible_points(fam: InstanceFamily) -> Iterable[tuple[int, tuple[int, ...], list[int]]]:
    table = fam.engine()
    for i in range(table.size):
        p = table.parts(i)
        vs = [v for v in range(1, fam.n + 1) if p.case1[v - 1] or p.case2[v - 1]]
        yield i, tuple(int(s) for s in table.seqs[i]), vs


def lemma1_terms(fam: InstanceFamily, x: tuple[int, ...], v: int, q=None) -> dict:
    """``|T_j|`` for ``j = 1..L`` plus the pieces of both bounds.

    ``T_j`` counts milestone vectors ``y`` (good or bad) with shared prefix
    length ``j`` and ``v`` in ``Tail(j, S_y)``; one per vector, not per bit.
    """
    n, L, g = fam.n, fam.L, fam.g
    q = q or _q_matrix(fam)
    sizes = [0] * (L + 2)
    for y in fam.sequences():
        j = shared_prefix(x, y)
        if j <= L and v in fam.info(y).tails[j - 1]:
            sizes[j] += 1
    per_j = []
    for j in range(1, L + 1):
        bound = q[x[j - 1]][v] * Fraction(n) ** (L - j) + L * g * Fraction(n) ** (L - j - 1)
        per_j.append((sizes[j], bound))
    return {
        "T_sizes": sizes[1 : L + 1],
        "weighted_sum": sum(sizes[j] * n**j for j in range(1, L + 1)),
        "bound": g * n**L + L * L * g * Fraction(n) ** (L - 1),
        "per_j": per_j,
        "q_sum": sum(q[x[j - 1]][v] for j in range(1, L + 1)),
    }


def verify_lemma1(fam: InstanceFamily, F1: FunctionLabel, v: int, q=None) -> dict:
    """Tail-weight and per-prefix |T_j| bounds at one admissible ``(F1, v)``."""
    x = tuple(F1.milestones)
    if not fam.info(x).good:
        raise ValidationError(f"{x} is not a good milestone vector")
    t = lemma1_terms(fam, x, v, q)
    return {
        "sum_ok": t["weighted_sum"] <= t["bound"],
        "per_j_ok": all(size <= b for size, b in t["per_j"]),
        "q_sum_ok": t["q_sum"] <= fam.g,
        **t,
    }


def verify_lemma1_all(fam: InstanceFamily) -> list[CheckResult]:
    total = CheckResult("lemma1_sum")
    per_j = CheckResult("lemma1_per_j")
    qsum = CheckResult("lemma1_q_sum")
    tt, tp, tq = _Tracker(fam, total), _Tracker(fam, per_j), _Tracker(fam, qsum)
    q = _q_matrix(fam)
    for _, x, vs in _admissible_points(fam):
        for v in vs:
            t = lemma1_terms(fam, x, v, q)
            tt.add(Fraction(t["weighted_sum"]), t["bound"], [list(x), v])
            for j, (size, bound) in enumerate(t["per_j"], start=1):
                tp.add(Fraction(size), bound, [list(x), v, j])
            tq.add(Fraction(t["q_sum"]), Fraction(fam.g), [list(x), v])
    return [total, per_j, qsum]


def _nu_bounds(fam: InstanceFamily) -> dict:
    n, L, g = fam.n, fam.L, fam.g
    lemma1 = g * n**L + L * L * g * Fraction(n) ** (L - 1)
    out = {
        # case 1, before substituting L = sqrt(n)
        "general_case1": fam.scalar(n ** (L + 1) + lemma1) + L * n ** (L + 1) * fam.down,
        # case 2, same stage
        "general_case2": fam.scalar(n ** (L + 1)) + fam.scalar(lemma1) * fam.up,
        "case1": 4 * g * n**L,
    }
    root = isqrt_exact(n)
    if root is not None:
        out["case2"] = 3 * n ** (L + 1) * root
    return out


def verify_nu_general_bounds(fam: InstanceFamily) -> list[CheckResult]:
    """Pre-substitution case bounds; meaningful for any ``L <= sqrt(n)``."""
    c1 = CheckResult("nu_general_case1")
    c2 = CheckResult("nu_general_case2")
    if fam.L * fam.L > fam.n:
        for c in (c1, c2):
            c.applicable = False
            c.note = f"needs L^2 <= n, got L={fam.L}, n={fam.n}"
        return [c1, c2]
    bounds = _nu_bounds(fam)
    t1, t2 = _Tracker(fam, c1), _Tracker(fam, c2)
    table = fam.engine()
    for i, x, vs in _admissible_points(fam):
        p = table.parts(i)
        for v in vs:
            nu = table.nu(i, v)
            if p.case1[v - 1]:
                t1.add(nu, bounds["general_case1"], [list(x), v])
            if p.case2[v - 1]:
                t2.add(nu, bounds["general_case2"], [list(x), v])
    return [c1, c2]


def verify_nu_case_bounds(fam: InstanceFamily) -> list[CheckResult]:
    """``nu <= 4 g n^L`` in case 1 and ``nu <= 3 n^(L+1.5)`` in case 2.

    The case is decided per triple by whether ``v`` is in ``Tail(J, S_x)``.
    Only applicable when ``n`` is a perfect square and ``L = sqrt(n)``.
    """
    c1 = CheckResult("nu_case1")
    c2 = CheckResult("nu_case2")
    if not _in_tight_regime(fam):
        for c in (c1, c2):
            c.applicable = False
            c.note = f"needs L = sqrt(n), got L={fam.L}, n={fam.n}"
        return [c1, c2]
    bounds = _nu_bounds(fam)
    t1, t2 = _Tracker(fam, c1), _Tracker(fam, c2)
    table = fam.engine()
    for i, x, vs in _admissible_points(fam):
        p = table.parts(i)
        for v in vs:
            nu = table.nu(i, v)
            if p.case1[v - 1]:
                t1.add(nu, bounds["case1"], [list(x), v])
            if p.case2[v - 1]:
                t2.add(nu, bounds["case2"], [list(x), v])
    return [c1, c2]


def _max_nu_product(fam: InstanceFamily):
    """Exact maximum of ``nu(x, v) nu(y, v)`` over admissible triples."""
    table = fam.engine()
    best = None
    where = None
    for v in range(1, fam.n + 1):
        keyed = sorted(((table.nu(i, v), i) for i in range(table.size)), reverse=True)
        keyed = [(nu, i) for nu, i in keyed if nu > 0]
        if len(keyed) < 2:
            continue
        top = keyed[0][0]
        for nu_i, i in keyed:
            if best is not None and nu_i * top <= best:
                break
            for nu_k, k in keyed:
                if best is not None and nu_i * nu_k <= best:
                    break
                if table.valid(i, k, v):
                    best = nu_i * nu_k
                    where = [[int(s) for s in table.seqs[i]], [int(s) for s in table.seqs[k]], v]
                    break
    return best, where


def verify_final_chain(fam: InstanceFamily, ev: Optional[AdversaryEvaluation] = None) -> list[CheckResult]:
    """Product bound on ``nu``, then the final lower bounds on the exact minimum."""
    prod = CheckResult("nu_product")
    eq24 = CheckResult("bound_before_simplification", relation=">=")
    final = CheckResult("final_bound", relation=">=")
    results = [prod, eq24, final]
    if not _in_tight_regime(fam):
        for c in results:
            c.applicable = False
            c.note = f"needs L = sqrt(n), got L={fam.L}, n={fam.n}"
        return results
    n, L, g = fam.n, fam.L, fam.g
    bounds = _nu_bounds(fam)
    cap = max(bounds["case1"], bounds["case2"])
    product_bound = bounds["case1"] * cap
    best, where = _max_nu_product(fam)
    _Tracker(fam, prod).add(best, product_bound, where)
    prod.note = "largest nu(F1,v) nu(F2,v) over admissible triples against 4gn^L max{4gn^L, 3n^(L+1.5)}"

    ev = ev or adversary_bound(fam)
    m = ev.min_ratio_squared
    e2 = E_LOWER * E_LOWER
    rhs24 = fam.scalar(Fraction(L * L * n ** (2 * L + 2)) / (4 * e2)) / product_bound
    _Tracker(fam, eq24).add(m, rhs24, "adversary minimum (squared)")
    n15 = fam.n15
    floor = min(fam.scalar(Fraction(n**3, g * g)), n15 * fam.scalar(Fraction(1, g))) / fam.scalar(64 * e2)
    _Tracker(fam, final).add(m, floor, "adversary minimum (squared)")
    if g < n15:
        final.note = f"g={g} < n^1.5={n15}: floor is n^1.5 / (64 e^2 g)"
    else:
        final.note = f"g={g} >= n^1.5={n15}: floor is min(n^3/g^2, n^1.5/g) / (64 e^2)"
    return results


CHECKS: dict[str, Callable[..., object]] = {
    "weight_scheme": verify_weight_scheme,
    "r_symmetry": verify_r_symmetry,
    "tail_membership": verify_tail_membership,
    "M_lower_bound": verify_M_lower_bound,
    "rstar_sum": verify_rstar_sum,
    "lemma1": verify_lemma1_all,
    "nu_general": verify_nu_general_bounds,
    "nu_cases": verify_nu_case_bounds,
    "final_chain": verify_final_chain,
}


def run_checks(
    fam: InstanceFamily,
    names: Optional[Iterable[str]] = None,
    ev: Optional[AdversaryEvaluation] = None,
    budget_labels: int = DEFAULT_BUDGET_LABELS,
    budget_rprime: int = DEFAULT_BUDGET_RPRIME,
) -> list[CheckResult]:
    """Run the named checks (all by default) in a fixed order."""
    check_budget(fam, budget_labels, budget_rprime)
    names = list(CHECKS) if names is None else list(names)
    unknown = [k for k in names if k not in CHECKS]
    if unknown:
        raise ValidationError(f"unknown checks {unknown}; choose from {list(CHECKS)}")
    if "r_symmetry" in names and fam.num_labels**2 > budget_rprime:
        raise BudgetExceededError(
            f"r symmetry scan needs {fam.num_labels ** 2} pair evaluations (budget {budget_rprime})"
        )
    out: list[CheckResult] = []
    for name in CHECKS:
        if name not in names:
            continue
        fn = CHECKS[name]
        got = fn(fam, ev) if name == "final_chain" else fn(fam)
        out.extend(got if isinstance(got, list) else [got])
    return out
