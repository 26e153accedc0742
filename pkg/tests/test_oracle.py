"""Exact enumeration oracles and the decomposition identities."""
import math

import numpy as np
import pytest

from connected_cm.cli import direct_connectivity_mc
from connected_cm.degrees import TypeSequence
from connected_cm.errors import OddTotalDegree, TooLarge
from connected_cm.oracle import (
    all_sub_types,
    all_type_sequences,
    component_type_census,
    count_configurations,
    count_graphs,
    decomposition_check,
    double_factorial,
    enumerate_counts,
    type_binomial,
)


def test_count_configurations_examples():
    assert count_configurations(TypeSequence({1: 2})) == 1
    assert count_configurations(TypeSequence({1: 2, 2: 1})) == 3
    assert count_configurations(TypeSequence({3: 4})) == 11 * 9 * 7 * 5 * 3 * 1
    with pytest.raises(OddTotalDegree):
        count_configurations(TypeSequence({1: 3}))


def test_enumerate_counts_examples():
    rep = enumerate_counts(TypeSequence({1: 2, 2: 1}))
    assert (rep.total, rep.connected, rep.simple, rep.simple_connected) == (3, 2, 2, 2)
    assert (rep.graphs, rep.connected_graphs) == (1, 1)

    rep = enumerate_counts(TypeSequence({1: 4}))
    assert (rep.total, rep.connected, rep.simple, rep.simple_connected) == (3, 0, 3, 0)
    assert rep.graphs == 3  # perfect matchings on 4 labelled vertices

    rep = enumerate_counts(TypeSequence({2: 2}))
    assert (rep.total, rep.connected, rep.simple, rep.simple_connected) == (3, 2, 0, 0)

    with pytest.raises(TooLarge):
        enumerate_counts(TypeSequence({3: 6}))


def test_count_graphs_examples():
    assert count_graphs(TypeSequence({1: 2, 2: 1})) == 1
    assert count_graphs(TypeSequence({1: 4})) == 3
    assert count_graphs(TypeSequence({3: 2})) == 0


def test_totals_match_double_factorial_up_to_12():
    for t in all_type_sequences(12):
        assert enumerate_counts(t).total == count_configurations(t), t.counts


def test_graph_division_exact_up_to_12():
    for t in all_type_sequences(12):
        rep = enumerate_counts(t)
        mult = 1
        for k, c in t.items:
            mult *= math.factorial(k) ** c
        assert rep.graphs * mult == rep.simple
        assert rep.connected_graphs * mult == rep.simple_connected


def test_decomposition_examples():
    n = TypeSequence({1: 2, 2: 1})
    assert decomposition_check(n, [TypeSequence({1: 2})])
    assert decomposition_check(n, [n])  # reduces to the connected count
    assert decomposition_check(n, [])  # empty family: both sides zero
    with pytest.raises(TooLarge):
        decomposition_check(TypeSequence({4: 4}), [])
    with pytest.raises(ValueError):
        decomposition_check(n, [TypeSequence({5: 1})])


def test_decomposition_majority_family_equals_connected_count():
    # family {n} itself: the identity collapses to |connected configs|
    n = TypeSequence({2: 2, 3: 2})
    rep = enumerate_counts(n)
    census = component_type_census(n)
    assert census.get(n, (0, 0))[0] == rep.connected
    assert census.get(n, (0, 0))[1] == rep.simple_connected


def test_decomposition_worked_example_by_hand():
    # n = {1:2, 2:1}, family {{1:2}}: left side is
    # C(2,2) C(1,0) * 1 connected matching * 1 complement matching = 1,
    # and exactly one of the three matchings has an {1:2} component
    n = TypeSequence({1: 2, 2: 1})
    m = TypeSequence({1: 2})
    assert type_binomial(n, m) == 1
    assert enumerate_counts(m).connected == 1
    assert count_configurations(n - m) == 1
    census = component_type_census(n)
    assert census[m][0] == 1


def test_decomposition_exhaustive_small_scan():
    for n in all_type_sequences(8):
        for m in all_sub_types(n):
            assert decomposition_check(n, [m]), (n.counts, m.counts)


def test_monte_carlo_matches_oracle_fractions():
    rng = np.random.default_rng(2718)
    pool = [t for t in all_type_sequences(10) if t.ell >= 4]
    picks = rng.choice(len(pool), size=10, replace=False)
    reps = 100_000
    for idx in picks:
        t = pool[int(idx)]
        rep = enumerate_counts(t)
        n_conn, n_simple = direct_connectivity_mc(t, reps, seed=int(idx) + 1)
        for hits, exact in ((n_conn, rep.connected), (n_simple, rep.simple)):
            frac = exact / rep.total
            se = math.sqrt(max(frac * (1 - frac), 1e-12) / reps)
            if frac in (0.0, 1.0):
                assert hits == reps * frac
            else:
                assert abs(hits / reps - frac) <= 3 * se + 1e-9, (t.counts, hits / reps, frac)


def test_double_factorial_values():
    assert [double_factorial(m) for m in (-1, 1, 3, 5, 11)] == [1, 1, 3, 15, 10395]
