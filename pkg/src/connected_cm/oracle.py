"""Exhaustive ground truth for small instances.

Everything here is exact integer arithmetic: (ell-1)!! configurations per
type sequence, enumeration of all of them with connected/simple tallies,
per-component type censuses, and the decomposition identity that counts
connected graphs as components of larger ones.  Enumeration is capped at
total degree 16 (about 2 million matchings); the census-based checks at 14.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import kernels
from .confmodel import stub_layout
from .degrees import TypeSequence
from .errors import EmptySequence, NonIntegerResult, OddTotalDegree, TooLarge

ENUMERATION_CAP = 16
CENSUS_CAP = 14


@dataclass(frozen=True)
class EnumerationReport:
    total: int
    connected: int
    simple: int
    simple_connected: int
    graphs: int
    connected_graphs: int


def double_factorial(m: int) -> int:
    """(m)!! for odd m >= -1, exact; (-1)!! = 1 by convention."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def count_configurations(t: TypeSequence) -> int:
    """(ell - 1)!!, the number of perfect stub matchings."""
    ell = t.ell
    if ell % 2:
        raise OddTotalDegree(f"total degree {ell} is odd")
    return double_factorial(ell - 1)


def _config_multiplicity(t: TypeSequence) -> int:
    """prod_k (k!)^{n_k}: configurations per simple graph of type t."""
    out = 1
    for k, c in t.items:
        out *= math.factorial(k) ** c
    return out


@lru_cache(maxsize=4096)
def enumerate_counts(t: TypeSequence) -> EnumerationReport:
    """Classify every perfect matching of t's stubs.

    ``graphs`` and ``connected_graphs`` divide the simple tallies by
    prod_k (k!)^{n_k}; the division is exact or the enumeration is buggy.
    """
    ell = t.ell
    if t.n == 0:
        raise EmptySequence("nothing to enumerate")
    if ell % 2:
        raise OddTotalDegree(f"total degree {ell} is odd")
    if ell > ENUMERATION_CAP:
        raise TooLarge(f"total degree {ell} exceeds enumeration cap {ENUMERATION_CAP}")
    stub_vertex, _ = stub_layout(t)
    total, connected, simple, simple_connected = kernels.enumerate_counts(
        stub_vertex, t.n
    )
    mult = _config_multiplicity(t)
    if simple % mult or simple_connected % mult:
        raise NonIntegerResult(
            f"simple counts {simple}/{simple_connected} not divisible by {mult}"
        )
    return EnumerationReport(
        total=total,
        connected=connected,
        simple=simple,
        simple_connected=simple_connected,
        graphs=simple // mult,
        connected_graphs=simple_connected // mult,
    )


def count_graphs(t: TypeSequence) -> int:
    """Number of simple graphs with type t (labelled, exact)."""
    return enumerate_counts(t).graphs


@lru_cache(maxsize=512)
def component_type_census(t: TypeSequence) -> dict[TypeSequence, tuple[int, int]]:
    """For each component type m: (occurrences over all matchings of t,
    occurrences over simple matchings of t)."""
    ell = t.ell
    if t.n == 0:
        raise EmptySequence("nothing to enumerate")
    if ell % 2:
        raise OddTotalDegree(f"total degree {ell} is odd")
    if ell > CENSUS_CAP:
        raise TooLarge(f"total degree {ell} exceeds census cap {CENSUS_CAP}")
    stub_vertex, _ = stub_layout(t)
    _, census = kernels.component_census(stub_vertex, t.n)
    return {
        TypeSequence(dict(sig)): (entry[0], entry[1]) for sig, entry in census.items()
    }


def type_binomial(n: TypeSequence, m: TypeSequence) -> int:
    """prod_k C(n_k, m_k): ways to choose m's vertex labels inside n."""
    if not n.covers(m):
        return 0
    nc = n.counts
    out = 1
    for k, c in m.items:
        out *= math.comb(nc.get(k, 0), c)
    return out


def decomposition_check(n: TypeSequence, family: Iterable[TypeSequence]) -> bool:
    """Verify, by full enumeration, that for the given family of sub-types

        sum_m binom(n, m) |conn. configs of m| |configs of n - m|
            = total count of components with type in the family,

    and the same identity restricted to simple configurations.
    """
    if n.ell > CENSUS_CAP:
        raise TooLarge(f"total degree {n.ell} exceeds census cap {CENSUS_CAP}")
    family = list(family)
    for m in family:
        if not n.covers(m):
            raise ValueError(f"family member {m.counts} not dominated by {n.counts}")
    census = component_type_census(n) if family else {}

    lhs_all = lhs_simple = 0
    rhs_all = rhs_simple = 0
    for m in family:
        if m.n == 0:
            continue
        if m.ell % 2 == 0:
            rep_m = enumerate_counts(m)
            rest = n - m
            if rest.n == 0:
                rest_total, rest_simple = 1, 1
            else:
                rep_rest = enumerate_counts(rest)
                rest_total, rest_simple = rep_rest.total, rep_rest.simple
            binom = type_binomial(n, m)
            lhs_all += binom * rep_m.connected * rest_total
            lhs_simple += binom * rep_m.simple_connected * rest_simple
        occurrences = census.get(m, (0, 0))
        rhs_all += occurrences[0]
        rhs_simple += occurrences[1]
    return lhs_all == rhs_all and lhs_simple == rhs_simple


def all_sub_types(n: TypeSequence) -> list[TypeSequence]:
    """Every nonempty m <= n elementwise, for exhaustive family scans."""
    keys = [k for k, _ in n.items]
    out: list[TypeSequence] = []

    def rec(idx: int, current: dict[int, int]):
        if idx == len(keys):
            t = TypeSequence(dict(current))
            if t.n > 0:
                out.append(t)
            return
        k = keys[idx]
        for c in range(n[k] + 1):
            if c:
                current[k] = c
            elif k in current:
                del current[k]
            rec(idx + 1, current)
        current.pop(k, None)

    rec(0, {})
    return out


def all_type_sequences(max_ell: int) -> list[TypeSequence]:
    """All type sequences with even total degree 2..max_ell (no degree 0)."""
    out: list[TypeSequence] = []

    def partitions(remaining: int, max_part: int, current: dict[int, int]):
        if remaining == 0:
            out.append(TypeSequence(dict(current)))
            return
        for part in range(min(remaining, max_part), 0, -1):
            current[part] = current.get(part, 0) + 1
            partitions(remaining - part, part, current)
            if current[part] == 1:
                del current[part]
            else:
                current[part] -= 1

    for ell in range(2, max_ell + 1, 2):
        partitions(ell, ell, {})
    return out
