"""Fixed-point solver, rate functional, and the giant's degree law."""
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from connected_cm.degrees import DegreeDistribution, size_biased
from connected_cm.errors import Degree1Required, SubcriticalDistribution
from connected_cm.rate import (
    F,
    dF_dbeta,
    giant_degree_distribution,
    rate_K,
    solve_beta,
    survival_residual,
    unimodular_offspring,
)

P14 = DegreeDistribution({1: 0.5, 4: 0.5})
BETA14 = 2.0 - math.sqrt(3.0)  # root of beta^2 - 4 beta + 1

# frozen with a 60-digit Decimal evaluation of the closed forms
K14 = 0.06540601797056848
GAMMA14 = 1.1856034446626806
Q14 = {1: 0.5760886618261684, 4: 0.4239113381738316}
QSTAR14 = {0: 0.2535898384862245, 3: 0.7464101615137755}


def test_F_examples():
    assert F(P14, 0.0) == pytest.approx(-0.2, abs=1e-15)
    # limit beta -> 1-: F -> 1 - 2/mu = 0.2; |F'| <= 2 bounds the gap
    assert F(P14, 1 - 1e-9) == pytest.approx(0.2, abs=1e-6)
    assert F(P14, BETA14) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        F(P14, 1.0)


def test_solve_beta_closed_form():
    sol = solve_beta(P14, tol=1e-12)
    assert sol.beta == pytest.approx(BETA14, abs=1e-10)
    assert sol.residual <= 1e-12
    assert 0 < sol.beta < sol.upper_bound <= 1


def test_solve_beta_subcritical():
    with pytest.raises(SubcriticalDistribution):
        solve_beta(DegreeDistribution({2: 1.0}))


def test_solve_beta_against_grid_scan():
    # independent oracle: fine-grid sign scan of F at step 1e-6
    p = DegreeDistribution({1: 0.4, 3: 0.6})
    sol = solve_beta(p, tol=1e-10)
    step = 1e-6
    lo = None
    x = step
    while x < 1.0:
        if F(p, x) >= 0.0:
            lo = x - step
            break
        x += step
    assert lo is not None
    assert lo <= sol.beta <= lo + 2 * step


def test_rate_K_examples():
    result = rate_K(P14)
    assert result.K == pytest.approx(0.06544, abs=1e-4)
    assert result.K == pytest.approx(K14, abs=1e-12)
    assert result.gamma == pytest.approx(GAMMA14, abs=1e-10)
    with pytest.raises(SubcriticalDistribution):
        rate_K(DegreeDistribution({2: 1.0}))
    with pytest.raises(Degree1Required):
        rate_K(DegreeDistribution({3: 0.5, 4: 0.5}))


def test_rate_K_positive_on_random_valid_inputs():
    rng = random.Random(1)
    for _ in range(50):
        support = rng.sample(range(2, 9), k=rng.randint(1, 4))
        raw = {k: rng.uniform(0.05, 1.0) for k in support}
        raw[1] = rng.uniform(0.05, 0.5)
        total = sum(raw.values())
        p = DegreeDistribution({k: w / total for k, w in raw.items()})
        if p.mean <= 2.0:
            continue
        assert rate_K(p).K > 0.0


def test_giant_degree_distribution_example():
    q, gamma = giant_degree_distribution(P14, BETA14)
    assert gamma == pytest.approx(GAMMA14, abs=1e-12)
    assert q[1] == pytest.approx(Q14[1], abs=1e-9)
    assert q[4] == pytest.approx(Q14[4], abs=1e-9)
    # algebraic identity gamma q_k (1 - beta^k) = p_k, all k
    for k, w in P14.items:
        assert gamma * q[k] * (1 - BETA14**k) == pytest.approx(w, abs=1e-12)


def test_giant_degree_distribution_small_beta_limit():
    q, _ = giant_degree_distribution(P14, 1e-9)
    for k, w in P14.items:
        assert q[k] == pytest.approx(w, abs=1e-6)


def test_unimodular_offspring_examples():
    assert unimodular_offspring(DegreeDistribution({2: 1})).weights == {1: 1.0}
    assert unimodular_offspring(DegreeDistribution({1: 1})).weights == {0: 1.0}
    q, _ = giant_degree_distribution(P14, BETA14)
    qs = unimodular_offspring(q)
    assert qs[0] == pytest.approx(QSTAR14[0], abs=1e-5)
    assert qs[3] == pytest.approx(QSTAR14[3], abs=1e-5)


def test_survival_residual_examples():
    q, _ = giant_degree_distribution(P14, BETA14)
    assert survival_residual(q, BETA14) < 1e-9
    assert survival_residual(DegreeDistribution({1: 1}), 0.3) == pytest.approx(0.7)
    assert survival_residual(q, BETA14 + 0.01) > 1e-4


@st.composite
def supercritical(draw):
    support = draw(st.lists(st.integers(1, 10), min_size=1, max_size=4, unique=True))
    top = draw(st.integers(3, 10))
    support = sorted(set(support) | {top})
    raw = {k: draw(st.floats(0.05, 1.0)) for k in support}
    while sum(k * w for k, w in raw.items()) <= 2.05 * sum(raw.values()):
        raw[top] += 1.0
    total = sum(raw.values())
    return DegreeDistribution({k: w / total for k, w in raw.items()})


@settings(max_examples=60, deadline=None)
@given(supercritical(), st.floats(0.0, 0.999), st.floats(1e-6, 0.999))
def test_F_strictly_increasing(p, b1, span):
    b2 = b1 + (0.9999 - b1) * span
    if b2 <= b1:
        return
    assert F(p, b1) < F(p, b2)


@settings(max_examples=40, deadline=None)
@given(supercritical())
def test_solver_bracket_and_consistency_chain(p):
    if p.mean <= 2.0:
        return
    sol = solve_beta(p, tol=1e-12)
    star0 = size_biased(p)[0]
    assert star0 / 2.0 < sol.beta < sol.upper_bound
    assert sol.upper_bound == pytest.approx(1.0 - (1.0 - 2.0 / p.mean) / 2.0)
    # extinction cross-check through the giant's law
    q, _ = giant_degree_distribution(p, sol.beta)
    assert survival_residual(q, sol.beta) <= 10 * 1e-12 + 1e-13


@settings(max_examples=40, deadline=None)
@given(supercritical())
def test_mean_identity_at_fixed_point(p):
    if p.mean <= 2.0:
        return
    beta = solve_beta(p, tol=1e-13).beta
    lhs = p.mean
    rhs = (1 - beta**2) * sum(k * w / (1 - beta**k) for k, w in p.items)
    assert math.isclose(lhs, rhs, rel_tol=1e-9)


def test_derivative_bounded_by_two():
    rng = random.Random(9)
    for _ in range(200):
        support = rng.sample(range(1, 12), k=rng.randint(2, 5))
        raw = {k: rng.uniform(0.01, 1.0) for k in support}
        total = sum(raw.values())
        p = DegreeDistribution({k: w / total for k, w in raw.items()})
        beta = rng.uniform(0.0, 0.999)
        d = dF_dbeta(p, beta)
        assert -1e-12 <= d <= 2.0 + 1e-9


def test_lipschitz_sanity_of_K():
    # |K(p) - K(p')| / d(p, p') bounded over random close pairs with mu >= 2.2
    rng = random.Random(4)
    ratios = []
    while len(ratios) < 100:
        support = rng.sample(range(1, 7), k=3)
        raw = {k: rng.uniform(0.05, 1.0) for k in support}
        raw[1] = raw.get(1, rng.uniform(0.05, 0.3))
        raw[6] = raw.get(6, 0.0) + 2.0
        total = sum(raw.values())
        p_w = {k: w / total for k, w in raw.items()}
        p = DegreeDistribution(p_w)
        if p.mean < 2.2 or p[1] <= 0.0:
            continue
        ks = sorted(p_w)
        i, j = rng.sample(ks, 2)
        delta = rng.uniform(1e-6, 1e-4) / (i + j)
        if p_w[j] - delta <= 0:
            continue
        q_w = dict(p_w)
        q_w[i] += delta
        q_w[j] -= delta
        q = DegreeDistribution(q_w)
        if q.mean < 2.2 or q[1] <= 0.0:
            continue
        d = sum(k * abs(p[k] - q[k]) for k in set(p.support()) | set(q.support()))
        if d <= 0 or d > 1e-4:
            continue
        ratios.append(abs(rate_K(p).K - rate_K(q).K) / d)
    assert max(ratios) < 50.0
