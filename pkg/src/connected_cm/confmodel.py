"""Configuration model: uniform stub matchings and their multigraphs.

Vertices of a type sequence are labelled 0..n-1 in ascending degree order
and vertex i contributes d_i consecutively numbered half-edges (stubs).  A
configuration is a perfect matching of the stubs, sampled uniformly by a
seeded Fisher-Yates shuffle paired consecutively; there are (ell-1)!! such
matchings.  Randomness comes from splitmix64 streams (see ``rng``), so every
sample is a pure function of (type sequence, seed).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from . import kernels
from .degrees import TypeSequence
from .errors import EmptySequence, OddTotalDegree

RNG_ALGORITHM = "splitmix64"


def stub_layout(t: TypeSequence) -> tuple[np.ndarray, np.ndarray]:
    """(stub_vertex, vertex_degree) arrays for the canonical stub labelling."""
    degrees = np.asarray(t.degree_list(), dtype=np.int64)
    stub_vertex = np.repeat(np.arange(len(degrees), dtype=np.int64), degrees)
    return stub_vertex, degrees


@dataclass(frozen=True)
class Configuration:
    """A perfect matching on the stubs of a type sequence.

    ``matching[s]`` is the partner stub of s: a fixed-point-free involution.
    """

    type_seq: TypeSequence
    matching: np.ndarray

    def __post_init__(self):
        m = self.matching
        if len(m) != self.type_seq.ell:
            raise ValueError("matching length differs from total degree")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Configuration)
            and self.type_seq == other.type_seq
            and np.array_equal(self.matching, other.matching)
        )

    def edge_stub_pairs(self) -> list[tuple[int, int]]:
        """Edges as stub pairs (s, matching[s]) with s < matching[s]."""
        m = self.matching
        return [(s, int(m[s])) for s in range(len(m)) if s < m[s]]


@dataclass(frozen=True)
class MultiGraph:
    """Projected multigraph: loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1  # loops count twice
        return deg

    def type_sequence(self) -> TypeSequence:
        counts: dict[int, int] = {}
        for d in self.degrees.tolist():
            counts[d] = counts.get(d, 0) + 1
        return TypeSequence(counts)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            if u != v:
                adj[v].append(u)
        return adj


@dataclass(frozen=True)
class ComponentView:
    """Partition of a multigraph into connected components.

    Components are numbered by their smallest vertex, ascending; ``giant``
    is the index of the largest one (ties to the lowest index).
    """

    labels: np.ndarray
    component_types: tuple[TypeSequence, ...]
    giant: int

    @property
    def n_components(self) -> int:
        return len(self.component_types)

    def vertices_of(self, comp: int) -> np.ndarray:
        return np.flatnonzero(self.labels == comp)


def sample_configuration(t: TypeSequence, seed: int) -> Configuration:
    """Uniform configuration on t, a pure function of (t, seed)."""
    ell = t.ell
    if ell == 0:
        raise EmptySequence("cannot sample a configuration with no stubs")
    if ell % 2:
        raise OddTotalDegree(f"total degree {ell} is odd")
    order = kernels.shuffle_order(ell, seed)
    matching = np.empty(ell, dtype=np.int64)
    a = order[0::2]
    b = order[1::2]
    matching[a] = b
    matching[b] = a
    return Configuration(type_seq=t, matching=matching)


def project(c: Configuration) -> MultiGraph:
    """Multigraph with an edge for every matched stub pair."""
    stub_vertex, _ = stub_layout(c.type_seq)
    edges = []
    m = c.matching
    for s in range(len(m)):
        partner = int(m[s])
        if s < partner:
            u = int(stub_vertex[s])
            v = int(stub_vertex[partner])
            edges.append((u, v) if u <= v else (v, u))
    return MultiGraph(n=c.type_seq.n, edges=tuple(edges))


def is_simple(g: MultiGraph) -> bool:
    """True iff the multigraph has no self-loop and no repeated pair."""
    seen = set()
    for u, v in g.edges:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return False
        seen.add(key)
    return True


def components(g: MultiGraph) -> ComponentView:
    """Connected components via union-find."""
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru

    degrees = g.degrees
    roots: dict[int, int] = {}
    labels = np.empty(g.n, dtype=np.int64)
    type_counts: list[dict[int, int]] = []
    sizes: list[int] = []
    for v in range(g.n):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
            type_counts.append({})
            sizes.append(0)
        comp = roots[r]
        labels[v] = comp
        d = int(degrees[v])
        type_counts[comp][d] = type_counts[comp].get(d, 0) + 1
        sizes[comp] += 1
    giant = max(range(len(sizes)), key=lambda i: (sizes[i], -i))
    return ComponentView(
        labels=labels,
        component_types=tuple(TypeSequence(tc) for tc in type_counts),
        giant=giant,
    )


def write_edge_list(g: MultiGraph, fh: IO[str]) -> None:
    """One ``u v`` pair per line, 1-indexed; a loop appears as ``u u``."""
    for u, v in g.edges:
        fh.write(f"{u + 1} {v + 1}\n")


def read_edge_list(fh: IO[str]) -> MultiGraph:
    """Inverse of :func:`write_edge_list`; vertex count is the largest label."""
    edges = []
    n = 0
    for line in fh:
        line = line.strip()
        if not line:
            continue
        a, b = line.split()
        u, v = int(a) - 1, int(b) - 1
        if u < 0 or v < 0:
            raise ValueError("edge list labels are 1-indexed")
        edges.append((u, v) if u <= v else (v, u))
        n = max(n, u + 1, v + 1)
    return MultiGraph(n=n, edges=tuple(edges))
