import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from staircase_lb import (
    BudgetExceededError,
    EmptyRelationError,
    ValidationError,
    build_staircase,
    eval_g,
    generate,
    make_instance,
    shared_prefix,
    shortest_path_system,
    tail,
)
from staircase_lb.adversary import (
    FunctionLabel,
    M_naive,
    M_value,
    adversary_bound,
    build_family,
    check_budget,
    nu_naive,
    nu_value,
    r,
    r_prime,
    r_star,
    sampled_adversary_bound,
    verify_weight_scheme,
    witness_ratio_squared,
)
from staircase_lb.adversary.bound import rprime_evaluations
from staircase_lb.adversary.family import MP, fmt_scalar

from conftest import connected_graphs, family, small_graph

F = FunctionLabel


def close(fam, a, b):
    if fam.exact:
        return a == b
    return abs(MP.mpf(a) - MP.mpf(b)) <= MP.mpf(10) ** -40 * max(1, abs(MP.mpf(b)))


# -- weights -----------------------------------------------------------------


def test_r_star_examples(fam_k4):
    assert r_star(F((1, 2, 3), 0), F((1, 2, 4), 1), fam_k4) == 16
    assert r_star(F((1, 2, 3), 0), F((1, 2, 4), 0), fam_k4) == 0
    assert r_star(F((1, 3, 1), 0), F((1, 2, 4), 1), fam_k4) == 0
    assert r_star(F((1, 2, 3), 0), F((1, 2, 3), 1), fam_k4) == 64
    assert r_star(F((1, 2, 3), 0), F((1, 3, 2), 1), fam_k4) == 4


def test_r_examples(fam_k4):
    assert r(F((1, 2, 3), 0), F((1, 2, 3), 1), fam_k4) == 0
    assert r(F((1, 2, 3), 1), F((1, 2, 4), 0), fam_k4) == 16
    assert r(F((1, 1, 2), 1), F((1, 2, 2), 0), fam_k4) == 0


def test_r_prime_zero_when_values_agree(fam_k4):
    # vertex 4 is off both staircases and both tags are -1 there
    F1, F2 = F((1, 2, 3), 0), F((1, 3, 2), 1)
    assert fam_k4.value(F1, 4) == fam_k4.value(F2, 4)
    assert r_prime(F1, F2, 4, fam_k4) == 0


def test_r_prime_branches(fam_k4):
    g, n15 = fam_k4.g, 8
    # J = 2, Tail(2) of x is (3,), of y is (4,)
    F1, F2 = F((1, 2, 3), 0), F((1, 2, 4), 1)
    assert r_prime(F1, F2, 3, fam_k4) == 16 * Fraction(g, n15)
    assert r_prime(F2, F1, 3, fam_k4) == 16 * Fraction(n15, g)
    assert r_prime(F1, F2, 3, fam_k4) * r_prime(F2, F1, 3, fam_k4) == 16**2


def test_r_prime_twin_contributes_nothing(fam_k4):
    # the opposite-bit twin differs at the last milestone but has r = 0
    F1, twin = F((1, 3, 4), 0), F((1, 3, 4), 1)
    assert fam_k4.value(F1, 4) != fam_k4.value(twin, 4)
    assert r_prime(F1, twin, 4, fam_k4) == 0


def r_prime_oracle(fam, F1, F2, v):
    """r' rebuilt from the staircase operations only."""
    x, y = F1.milestones, F2.milestones
    if F1.b == F2.b or x == y or len(set(x)) < len(x) or len(set(y)) < len(y):
        return 0
    ix = make_instance(fam.graph, fam.path_system, x)
    iy = make_instance(fam.graph, fam.path_system, y)
    if eval_g(ix, F1.b, v) == eval_g(iy, F2.b, v):
        return 0
    J = shared_prefix(x, y)
    base = fam.n**J
    in_x = v in tail(J, build_staircase(x, fam.path_system))
    in_y = v in tail(J, build_staircase(y, fam.path_system))
    if in_x and not in_y:
        return base * Fraction(fam.g, fam.n15)
    if in_y and not in_x:
        return base * Fraction(fam.n15, fam.g)
    return base


@pytest.mark.parametrize("name", ["K4", "C4", "P4"])
def test_r_prime_matches_oracle(name):
    fam = family(name, 2)
    labels = list(fam.labels)
    for F1, F2 in itertools.product(labels, repeat=2):
        for v in range(1, fam.n + 1):
            assert r_prime(F1, F2, v, fam) == r_prime_oracle(fam, F1, F2, v)


@pytest.mark.parametrize("name", ["K4", "C4", "P4"])
def test_r_prime_product_is_r_squared(name):
    fam = family(name, 2)
    for F1, F2 in itertools.product(fam.labels, repeat=2):
        weight = r(F1, F2, fam)
        assert weight == r(F2, F1, fam)
        for v in range(1, fam.n + 1):
            a, b = r_prime(F1, F2, v, fam), r_prime(F2, F1, v, fam)
            if weight > 0 and fam.value(F1, v) != fam.value(F2, v):
                assert a * b == weight * weight
            else:
                assert a == b == 0


# -- evaluators --------------------------------------------------------------


def closed_form_M(n, L):
    """Good opposite-bit partners with shared prefix exactly j, weighted n^j."""
    return sum(n**j * (math.perm(n - j, L + 1 - j) - math.perm(n - j - 1, L - j)) for j in range(1, L + 1))


@pytest.mark.parametrize(
    "name, L", [("K4", 2), ("C4", 2), ("P4", 2), ("K4", 1), ("P4", 1), ("K3", 2), ("K5", 2), ("C6", 2)]
)
def test_evaluators_match_naive(name, L):
    fam = family(name, L)
    for F1 in fam.labels:
        M = M_value(F1, fam)
        assert M == M_naive(F1, fam)
        assert M == (closed_form_M(fam.n, L) if fam.info(F1.milestones).good else 0)
        for v in range(1, fam.n + 1):
            assert close(fam, nu_value(F1, v, fam), nu_naive(F1, v, fam))


def test_nu_value_rejects_bad_vertex(fam_k4):
    with pytest.raises(ValidationError):
        nu_value(F((1, 2, 3), 0), 5, fam_k4)


@pytest.mark.parametrize(
    "name, L, expected",
    [
        ("K4", 2, Fraction(64, 59)),
        ("C4", 2, Fraction(4096, 4761)),
        ("P4", 2, Fraction(4096, 6241)),
        ("K9", 3, Fraction(116281, 58081)),
    ],
)
def test_adversary_minimum_frozen(name, L, expected):
    fam = family(name, L)
    ev = adversary_bound(fam)
    assert ev.exact
    assert ev.min_ratio_squared == expected
    assert ev.bound == pytest.approx(math.sqrt(expected))
    F1, F2, v = ev.witness
    assert witness_ratio_squared(fam, F1, F2, v) == expected


def brute_minimum(fam):
    """Minimum of M M / (nu nu) over all admissible triples, literal weights."""
    labels = list(fam.labels)
    M = {F1: M_naive(F1, fam) for F1 in labels}
    nu = {(F1, v): nu_naive(F1, v, fam) for F1 in labels for v in range(1, fam.n + 1)}
    best = None
    for F1, F2 in itertools.product(labels, repeat=2):
        if r(F1, F2, fam) == 0:
            continue
        for v in range(1, fam.n + 1):
            if fam.value(F1, v) == fam.value(F2, v):
                continue
            value = Fraction(M[F1] * M[F2]) / (nu[(F1, v)] * nu[(F2, v)])
            best = value if best is None else min(best, value)
    return best


@pytest.mark.parametrize("name, L", [("K4", 2), ("C4", 2), ("P4", 2), ("K4", 1), ("C4", 1), ("P4", 1)])
def test_adversary_minimum_matches_brute_force(name, L):
    fam = family(name, L)
    assert adversary_bound(fam).min_ratio_squared == brute_minimum(fam)


def test_empty_relation():
    G = generate("complete", n=2)
    fam = build_family(G, shortest_path_system(G), 2)
    with pytest.raises(EmptyRelationError):
        adversary_bound(fam)
    with pytest.raises(EmptyRelationError):
        sampled_adversary_bound(fam, 10)


def test_inexact_family_flagged():
    fam = family("K5", 2)
    assert not fam.exact
    ev = adversary_bound(fam)
    assert not ev.exact
    assert ev.to_dict()["exact"] is False


def test_budget():
    fam = family("K4", 2)
    check_budget(fam)
    assert rprime_evaluations(fam) == 2 * 6 * 6 * 4
    with pytest.raises(BudgetExceededError):
        check_budget(fam, budget_labels=31)
    with pytest.raises(BudgetExceededError):
        check_budget(fam, budget_rprime=100)
    G = generate("complete", n=16)
    with pytest.raises(BudgetExceededError):
        adversary_bound(build_family(G, shortest_path_system(G)))


@pytest.mark.parametrize("name", ["K4", "C4", "P4"])
def test_sampled_is_upper_bound_of_minimum(name):
    fam = family(name, 2)
    exact = adversary_bound(fam).min_ratio_squared
    for seed in range(5):
        out = sampled_adversary_bound(fam, 50, seed=seed)
        assert out["kind"] == "upper_bound_of_minimum"
        assert Fraction(out["min_ratio_squared"]) >= exact
    # enough samples reach the minimum on a family this small
    assert Fraction(sampled_adversary_bound(fam, 5000, seed=0)["min_ratio_squared"]) == exact


def test_sampled_deterministic_and_validated(fam_k4):
    assert sampled_adversary_bound(fam_k4, 40, seed=3) == sampled_adversary_bound(fam_k4, 40, seed=3)
    with pytest.raises(ValidationError):
        sampled_adversary_bound(fam_k4, 0)


def test_sampled_witness_consistent(fam_c4):
    out = sampled_adversary_bound(fam_c4, 100, seed=1)
    w = out["witness"]
    F1 = F(tuple(w["F1"]["milestones"]), w["F1"]["b"])
    F2 = F(tuple(w["F2"]["milestones"]), w["F2"]["b"])
    assert fmt_scalar(witness_ratio_squared(fam_c4, F1, F2, w["v"])) == out["min_ratio_squared"]


@st.composite
def small_families(draw):
    G = draw(connected_graphs(min_n=3, max_n=5))
    L = draw(st.integers(1, 2))
    return build_family(G, shortest_path_system(G), L)


@settings(max_examples=15, deadline=None)
@given(small_families(), st.data())
def test_engine_matches_naive_property(fam, data):
    seq = data.draw(st.sampled_from(list(fam.sequences())))
    F1 = F(seq, data.draw(st.integers(0, 1)))
    assert M_value(F1, fam) == M_naive(F1, fam)
    for v in range(1, fam.n + 1):
        assert close(fam, nu_value(F1, v, fam), nu_naive(F1, v, fam))


@settings(max_examples=10, deadline=None)
@given(small_families())
def test_weight_scheme_property(fam):
    result = verify_weight_scheme(fam)
    assert result.passed and result.violations == 0
