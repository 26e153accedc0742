"""Degree data model: distributions, type sequences, size-biasing."""
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from connected_cm.degrees import (
    DegreeDistribution,
    TypeSequence,
    empirical_distribution,
    size_biased,
    type_from_degrees,
)
from connected_cm.errors import EmptySequence, OddTotalDegree, ZeroDegree


def test_type_from_degrees_examples():
    t = type_from_degrees([1, 1, 2])
    assert t.counts == {1: 2, 2: 1}
    assert t.n == 3 and t.ell == 4

    t = type_from_degrees([3, 3, 3, 3])
    assert t.counts == {3: 4}
    assert t.n == 4 and t.ell == 12

    with pytest.raises(OddTotalDegree):
        type_from_degrees([1, 1, 1])
    with pytest.raises(ZeroDegree):
        type_from_degrees([0, 2])


def test_empirical_distribution_examples():
    assert empirical_distribution(TypeSequence({1: 2, 2: 1})).weights == {
        1: 2 / 3,
        2: 1 / 3,
    }
    assert empirical_distribution(TypeSequence({1: 50, 4: 50})).weights == {
        1: 0.5,
        4: 0.5,
    }
    with pytest.raises(EmptySequence):
        empirical_distribution(TypeSequence({}))


def test_size_biased_examples():
    assert size_biased(DegreeDistribution({2: 1})).weights == {1: 1.0}

    sb = size_biased(DegreeDistribution({1: 0.5, 4: 0.5}))
    assert sb.parent_mean == pytest.approx(2.5)
    assert sb[0] == pytest.approx(0.2)
    assert sb[3] == pytest.approx(0.8)

    sb = size_biased(DegreeDistribution({1: 0.4, 3: 0.6}))
    assert sb.parent_mean == pytest.approx(2.2)
    assert sb[0] == pytest.approx(0.4 / 2.2)
    assert sb[2] == pytest.approx(1.8 / 2.2)


def test_distribution_validation():
    with pytest.raises(ZeroDegree):
        DegreeDistribution({0: 0.5, 2: 0.5})
    with pytest.raises(ValueError):
        DegreeDistribution({1: 0.7, 2: 0.2})  # sums to 0.9
    with pytest.raises(ValueError):
        DegreeDistribution({1: -0.5, 2: 1.5})


def test_json_round_trip():
    p = DegreeDistribution({1: 0.5, 4: 0.5})
    assert DegreeDistribution.from_json(p.to_json()) == p
    assert json.loads(p.to_json()) == {"weights": {"1": 0.5, "4": 0.5}}

    t = TypeSequence({1: 50, 4: 50})
    assert TypeSequence.from_json(t.to_json()) == t
    assert json.loads(t.to_json()) == {"counts": {"1": 50, "4": 50}}


def test_type_sequence_arithmetic():
    n = TypeSequence({1: 4, 2: 2, 5: 1})
    m = TypeSequence({1: 2, 5: 1})
    assert n.covers(m)
    assert not m.covers(n)
    assert (n - m).counts == {1: 2, 2: 2}
    with pytest.raises(ValueError):
        m - n


@st.composite
def distributions(draw):
    support = draw(st.lists(st.integers(1, 12), min_size=1, max_size=6, unique=True))
    raw = [draw(st.floats(0.01, 1.0)) for _ in support]
    total = sum(raw)
    return DegreeDistribution({k: w / total for k, w in zip(support, raw)})


@given(distributions())
def test_size_biased_normalized(p):
    sb = size_biased(p)
    assert math.isclose(sum(w for _, w in sb.items), 1.0, abs_tol=1e-12)


@given(st.lists(st.integers(1, 9), min_size=1, max_size=40).filter(lambda d: sum(d) % 2 == 0))
def test_type_round_trip_identity(degree_list):
    t = type_from_degrees(degree_list)
    assert t.degree_list() == sorted(degree_list)
    assert type_from_degrees(t.degree_list()) == t


@given(st.dictionaries(st.integers(1, 9), st.integers(1, 30), min_size=1, max_size=5))
def test_empirical_mean_is_ell_over_n_exactly(counts):
    t = TypeSequence(counts)
    p = empirical_distribution(t)
    # rational check: sum_k k n_k / n as exact fractions
    exact = sum(Fraction(k * c, t.n) for k, c in t.items)
    assert math.isclose(p.mean, float(exact), rel_tol=0, abs_tol=1e-12)
