"""Weight scheme, adversary minimum, and the exhaustive proof-chain checks."""

from .bound import (
    DEFAULT_BUDGET_LABELS,
    DEFAULT_BUDGET_RPRIME,
    AdversaryEvaluation,
    M_value,
    adversary_bound,
    check_budget,
    nu_value,
    sampled_adversary_bound,
    witness_ratio_squared,
)
from .family import E_LOWER, E_UPPER, FunctionLabel, InstanceFamily, build_family
from .verify import (
    CHECKS,
    CheckResult,
    run_checks,
    verify_final_chain,
    verify_lemma1,
    verify_lemma1_all,
    verify_M_lower_bound,
    verify_nu_case_bounds,
    verify_nu_general_bounds,
    verify_r_symmetry,
    verify_rstar_sum,
    verify_tail_membership,
    verify_weight_scheme,
)
from .weights import M_naive, nu_naive, r, r_prime, r_star, rstar_sum_naive
