"""Degree distributions, type sequences, and size-biasing.

A *type sequence* counts vertices per degree class; a *degree distribution*
is its probabilistic limit.  Degree 0 is excluded throughout: isolated
vertices make connectivity impossible.  Supports are finite by construction;
callers truncate heavy-tailed laws before building a distribution here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptySequence, OddTotalDegree, ZeroDegree

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DegreeDistribution:
    """Probability weights on positive integer degrees, finite support."""

    items: tuple[tuple[int, float], ...]

    def __init__(self, weights: Mapping[int, float]):
        cleaned = {}
        for k, w in weights.items():
            k = int(k)
            w = float(w)
            if k == 0 and w != 0.0:
                raise ZeroDegree("degree distributions must put no mass at degree 0")
            if k < 1:
                if w == 0.0:
                    continue
                raise ZeroDegree(f"invalid degree {k}")
            if w < 0.0:
                raise ValueError(f"negative weight at degree {k}")
            if w > 0.0:
                cleaned[k] = cleaned.get(k, 0.0) + w
        total = sum(cleaned.values())
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "items", tuple(sorted(cleaned.items())))

    @property
    def weights(self) -> dict[int, float]:
        return dict(self.items)

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    def __getitem__(self, k: int) -> float:
        return dict(self.items).get(k, 0.0)

    @property
    def mean(self) -> float:
        """First moment mu = sum_k k p_k."""
        return sum(k * w for k, w in self.items)

    @property
    def max_degree(self) -> int:
        return self.items[-1][0] if self.items else 0

    def to_json(self) -> str:
        return json.dumps({"weights": {str(k): w for k, w in self.items}})

    @classmethod
    def from_json(cls, text: str) -> "DegreeDistribution":
        data = json.loads(text)
        return cls({int(k): float(w) for k, w in data["weights"].items()})


@dataclass(frozen=True)
class SizeBiasedDistribution:
    """Law of (degree - 1) seen along a uniformly chosen half-edge."""

    items: tuple[tuple[int, float], ...]
    parent_mean: float

    @property
    def weights(self) -> dict[int, float]:
        return dict(self.items)

    def __getitem__(self, k: int) -> float:
        return dict(self.items).get(k, 0.0)

    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)


@dataclass(frozen=True)
class TypeSequence:
    """Counts of vertices per degree class (degree >= 1).

    The constructor accepts odd total degree so error paths stay reachable;
    operations that need a perfect stub matching raise ``OddTotalDegree``.
    """

    items: tuple[tuple[int, int], ...]

    def __init__(self, counts: Mapping[int, int]):
        cleaned = {}
        for k, c in counts.items():
            k = int(k)
            c = int(c)
            if c < 0:
                raise ValueError(f"negative count at degree {k}")
            if c == 0:
                continue
            if k < 1:
                raise ZeroDegree("type sequences must not count degree-0 vertices")
            cleaned[k] = cleaned.get(k, 0) + c
        object.__setattr__(self, "items", tuple(sorted(cleaned.items())))

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    def __getitem__(self, k: int) -> int:
        return dict(self.items).get(k, 0)

    @property
    def n(self) -> int:
        """Number of vertices."""
        return sum(c for _, c in self.items)

    @property
    def ell(self) -> int:
        """Total degree (twice the number of edges)."""
        return sum(k * c for k, c in self.items)

    @property
    def max_degree(self) -> int:
        return self.items[-1][0] if self.items else 0

    def degree_list(self) -> list[int]:
        """Expansion to an ascending degree sequence d'_1 <= ... <= d'_n."""
        out: list[int] = []
        for k, c in self.items:
            out.extend([k] * c)
        return out

    def covers(self, other: "TypeSequence") -> bool:
        """Elementwise m_k <= n_k."""
        mine = dict(self.items)
        return all(mine.get(k, 0) >= c for k, c in other.items)

    def __sub__(self, other: "TypeSequence") -> "TypeSequence":
        if not self.covers(other):
            raise ValueError("subtraction would produce negative counts")
        mine = dict(self.items)
        for k, c in other.items:
            mine[k] -= c
        return TypeSequence(mine)

    def to_json(self) -> str:
        return json.dumps({"counts": {str(k): c for k, c in self.items}})

    @classmethod
    def from_json(cls, text: str) -> "TypeSequence":
        data = json.loads(text)
        return cls({int(k): int(c) for k, c in data["counts"].items()})


def type_from_degrees(degrees: Iterable[int]) -> TypeSequence:
    """Collapse a degree sequence into its type sequence."""
    counts: dict[int, int] = {}
    total = 0
    for d in degrees:
        d = int(d)
        if d < 1:
            raise ZeroDegree(f"degree {d} not allowed")
        counts[d] = counts.get(d, 0) + 1
        total += d
    if total % 2:
        raise OddTotalDegree(f"total degree {total} is odd")
    return TypeSequence(counts)


def empirical_distribution(t: TypeSequence) -> DegreeDistribution:
    """Normalized degree histogram n_k / n of a type sequence."""
    n = t.n
    if n == 0:
        raise EmptySequence("empty type sequence has no empirical distribution")
    return DegreeDistribution({k: c / n for k, c in t.items})


def size_biased(p: DegreeDistribution) -> SizeBiasedDistribution:
    """Shifted size-biased law: weight (k+1) p_{k+1} / mu at k >= 0."""
    mu = p.mean
    if mu <= 0.0:
        raise ValueError("size-biasing needs a positive mean")
    weights = tuple(sorted((k - 1, k * w / mu) for k, w in p.items))
    return SizeBiasedDistribution(items=weights, parent_mean=mu)
