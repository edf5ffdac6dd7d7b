from fractions import Fraction

import pytest

from staircase_lb import BudgetExceededError, ValidationError
from staircase_lb.adversary import (
    CHECKS,
    E_LOWER,
    E_UPPER,
    FunctionLabel,
    adversary_bound,
    run_checks,
    verify_final_chain,
    verify_lemma1,
    verify_M_lower_bound,
    verify_nu_case_bounds,
    verify_rstar_sum,
    verify_tail_membership,
    verify_weight_scheme,
)
from staircase_lb.adversary.family import build_family

from conftest import family, small_graph


def by_name(results):
    return {c.name: c for c in results}


def test_e_enclosure():
    import math

    assert E_LOWER < Fraction(math.e) < E_UPPER


@pytest.mark.parametrize("name", ["K4", "C4", "P4"])
@pytest.mark.parametrize("L", [1, 2])
def test_all_checks_pass_small(name, L):
    results = run_checks(family(name, L))
    failed = [c.to_dict() for c in results if not c.passed]
    assert not failed
    assert all(c.checked > 0 for c in results if c.applicable)


def test_k4_frozen_values(fam_k4):
    res = by_name(run_checks(fam_k4))
    assert (res["M_lower_bound"].lhs, res["M_lower_bound"].checked) == ("32/1", 6)
    assert res["rstar_sum"].lhs == "96/1"
    assert (res["nu_case1"].lhs, res["nu_case1"].rhs) == ("59/2", "448/1")
    assert (res["nu_case2"].lhs, res["nu_case2"].rhs) == ("32/1", "384/1")
    assert res["lemma1_sum"].rhs == "224/1"
    assert res["weight_scheme"].checked == 156


def test_M_rhs_uses_conservative_e(fam_k4):
    res = verify_M_lower_bound(fam_k4)
    assert Fraction(res.rhs) == Fraction(2 * 4**3) / (2 * E_LOWER)
    assert Fraction(res.rhs) > Fraction(2 * 4**3) / (2 * E_UPPER)


def test_rstar_sum_k4(fam_k4):
    res = verify_rstar_sum(fam_k4)
    assert res.passed and Fraction(res.lhs) >= Fraction(3 * 4**3) / (2 * E_LOWER)


def test_tail_membership(fam_c4):
    assert verify_tail_membership(fam_c4).violations == 0


def test_lemma1_single_point(fam_k4):
    out = verify_lemma1(fam_k4, FunctionLabel((1, 2, 3), 0), 3)
    assert out["sum_ok"] and out["per_j_ok"] and out["q_sum_ok"]
    assert out["bound"] == 7 * 16 + 4 * 7 * 4
    with pytest.raises(ValidationError):
        verify_lemma1(fam_k4, FunctionLabel((1, 2, 2), 0), 3)


def test_nu_cases_need_tight_regime():
    results = verify_nu_case_bounds(family("K4", 1))
    assert all(not c.applicable and c.passed for c in results)
    results = verify_final_chain(family("K4", 1))
    assert all(not c.applicable for c in results)


def test_final_chain_k4(fam_k4):
    res = by_name(verify_final_chain(fam_k4))
    assert Fraction(res["final_bound"].lhs) == Fraction(64, 59)
    assert Fraction(res["final_bound"].rhs) == Fraction(8, 7) / (64 * E_LOWER**2)
    assert all(c.passed for c in res.values())


def test_broken_scheme_is_detected():
    # shrinking both scale factors makes r'(F1,F2,v) r'(F2,F1,v) < r^2 where exactly one tail holds v
    fam = family("K4", 2)
    fam.down = fam.down / 2
    fam.up = fam.up / 2
    res = verify_weight_scheme(fam)
    assert res.violations > 0 and not res.passed
    assert res.examples


def test_run_checks_rejects_unknown(fam_k4):
    with pytest.raises(ValidationError):
        run_checks(fam_k4, ["nope"])


def test_run_checks_budget(fam_k4):
    with pytest.raises(BudgetExceededError):
        run_checks(fam_k4, budget_labels=10)
    with pytest.raises(BudgetExceededError):
        run_checks(fam_k4, ["r_symmetry"], budget_rprime=1000)


def test_run_checks_order_is_fixed(fam_k4):
    names = [c.name for c in run_checks(fam_k4, ["final_chain", "M_lower_bound"])]
    assert names == ["M_lower_bound", "nu_product", "bound_before_simplification", "final_bound"]


def test_inexact_checks_pass():
    results = run_checks(family("K5", 2), [k for k in CHECKS if k != "r_symmetry"])
    assert all(c.passed for c in results)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["C9", "P9", "grid3x3"])
def test_all_checks_pass_n9(name):
    results = run_checks(family(name, 3), [k for k in CHECKS if k != "r_symmetry"])
    assert all(c.passed for c in results), [c.to_dict() for c in results if not c.passed]
