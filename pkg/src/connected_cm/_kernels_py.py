"""Pure-Python kernel backend.

Same contracts and bit-identical random streams as the compiled module
``connected_cm._kernels``; used as the fallback when the extension is not
built.  Correctness over speed: the batch entry points loop in Python.
"""
from __future__ import annotations

import numpy as np

from .rng import GAMMA, MASK64, mix64

BACKEND = "python"

_TWO64 = 1 << 64


def _shuffled(ell: int, seed: int) -> list[int]:
    """Fisher-Yates order of [0, ell) from a splitmix64 stream at ``seed``."""
    order = list(range(ell))
    state = seed & MASK64
    for i in range(ell - 1, 0, -1):
        bound = i + 1
        rem = _TWO64 % bound
        lim = _TWO64 - rem
        state = (state + GAMMA) & MASK64
        x = mix64(state)
        if rem > 0:
            while x >= lim:
                state = (state + GAMMA) & MASK64
                x = mix64(state)
        j = x % bound
        order[i], order[j] = order[j], order[i]
    return order


def shuffle_order(ell: int, seed: int) -> np.ndarray:
    """Random stub order; pairing consecutive entries gives the matching."""
    return np.asarray(_shuffled(ell, seed), dtype=np.int64)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def classify_flags(stub_vertex: np.ndarray, n_vertices: int, seeds: np.ndarray) -> np.ndarray:
    """Per seed: bit0 = projected multigraph connected, bit1 = simple."""
    sv = stub_vertex.tolist()
    ell = len(sv)
    out = np.zeros(len(seeds), dtype=np.uint8)
    for s_idx, seed in enumerate(seeds.tolist()):
        order = _shuffled(ell, seed)
        parent = list(range(n_vertices))
        ncomp = n_vertices
        simple = True
        edges = set()
        for j in range(0, ell, 2):
            u = sv[order[j]]
            v = sv[order[j + 1]]
            if u == v:
                simple = False
            else:
                key = (u, v) if u < v else (v, u)
                if key in edges:
                    simple = False
                else:
                    edges.add(key)
            ru, rv = _find(parent, u), _find(parent, v)
            if ru != rv:
                parent[rv] = ru
                ncomp -= 1
        out[s_idx] = (1 if ncomp == 1 else 0) | (2 if simple else 0)
    return out


def _giant_root(sv, order, n_vertices):
    """Union-find pass; returns (parent, giant_root) with ties to the
    component containing the lowest vertex id."""
    parent = list(range(n_vertices))
    size = [1] * n_vertices
    minv = list(range(n_vertices))
    for j in range(0, len(order), 2):
        u = sv[order[j]]
        v = sv[order[j + 1]]
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[rv] = ru
            size[ru] += size[rv]
            if minv[rv] < minv[ru]:
                minv[ru] = minv[rv]
    best = -1
    for v in range(n_vertices):
        if parent[v] == v:
            if best < 0 or size[v] > size[best] or (
                size[v] == size[best] and minv[v] < minv[best]
            ):
                best = v
    return parent, best


def giant_type_counts(
    stub_vertex: np.ndarray,
    vertex_degree: np.ndarray,
    seeds: np.ndarray,
    kmax: int,
) -> np.ndarray:
    """Per seed: counts of degree-k vertices inside the largest component."""
    sv = stub_vertex.tolist()
    deg = vertex_degree.tolist()
    n_vertices = len(deg)
    ell = len(sv)
    out = np.zeros((len(seeds), kmax + 1), dtype=np.int64)
    for s_idx, seed in enumerate(seeds.tolist()):
        order = _shuffled(ell, seed)
        parent, groot = _giant_root(sv, order, n_vertices)
        row = out[s_idx]
        for v in range(n_vertices):
            if _find(parent, v) == groot:
                row[deg[v]] += 1
    return out


def giant_match_scan(
    stub_vertex: np.ndarray,
    vertex_degree: np.ndarray,
    seeds: np.ndarray,
    target: np.ndarray,
    require_simple_giant: bool,
) -> tuple[int, int, int, int]:
    """Scan seeds for draws whose giant has exactly the target type.

    Returns (hits, first_hit_index, min_distance, sum_distance) where the
    distance of a draw is sum_k |v_k(giant) - target_k|; first_hit_index is
    -1 when no draw qualifies.
    """
    sv = stub_vertex.tolist()
    deg = vertex_degree.tolist()
    tgt = target.tolist()
    kmax = len(tgt) - 1
    n_vertices = len(deg)
    ell = len(sv)
    hits = 0
    first = -1
    min_dist = -1
    sum_dist = 0
    for s_idx, seed in enumerate(seeds.tolist()):
        order = _shuffled(ell, seed)
        parent, groot = _giant_root(sv, order, n_vertices)
        counts = [0] * (kmax + 1)
        for v in range(n_vertices):
            if _find(parent, v) == groot:
                counts[deg[v]] += 1
        dist = sum(abs(counts[k] - tgt[k]) for k in range(kmax + 1))
        sum_dist += dist
        if min_dist < 0 or dist < min_dist:
            min_dist = dist
        if dist == 0:
            ok = True
            if require_simple_giant:
                edges = set()
                for j in range(0, ell, 2):
                    u = sv[order[j]]
                    v = sv[order[j + 1]]
                    if _find(parent, u) != groot:
                        continue
                    if u == v:
                        ok = False
                        break
                    key = (u, v) if u < v else (v, u)
                    if key in edges:
                        ok = False
                        break
                    edges.add(key)
            if ok:
                hits += 1
                if first < 0:
                    first = s_idx
    return hits, first, min_dist, sum_dist


def _classify_matching(pairs, sv, n_vertices):
    """(connected, simple) of the multigraph projected from stub pairs."""
    parent = list(range(n_vertices))
    ncomp = n_vertices
    simple = True
    edges = set()
    for a, b in pairs:
        u, v = sv[a], sv[b]
        if u == v:
            simple = False
        else:
            key = (u, v) if u < v else (v, u)
            if key in edges:
                simple = False
            else:
                edges.add(key)
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[rv] = ru
            ncomp -= 1
    return ncomp == 1, simple


def _all_matchings(ell):
    """Yield every perfect matching of [0, ell) as a list of pairs,
    generated by always pairing the lowest unpaired stub first."""
    used = [False] * ell
    pairs = []

    def rec(lowest):
        while lowest < ell and used[lowest]:
            lowest += 1
        if lowest >= ell:
            yield list(pairs)
            return
        used[lowest] = True
        for b in range(lowest + 1, ell):
            if used[b]:
                continue
            used[b] = True
            pairs.append((lowest, b))
            yield from rec(lowest + 1)
            pairs.pop()
            used[b] = False
        used[lowest] = False

    yield from rec(0)


def enumerate_counts(stub_vertex: np.ndarray, n_vertices: int) -> tuple[int, int, int, int]:
    """Exact (total, connected, simple, simple_and_connected) over all
    perfect matchings of the stubs."""
    sv = stub_vertex.tolist()
    ell = len(sv)
    total = connected = simple = simple_connected = 0
    for pairs in _all_matchings(ell):
        total += 1
        conn, simp = _classify_matching(pairs, sv, n_vertices)
        if conn:
            connected += 1
        if simp:
            simple += 1
            if conn:
                simple_connected += 1
    return total, connected, simple, simple_connected


def component_census(stub_vertex: np.ndarray, n_vertices: int):
    """Exhaustive per-component type census.

    Returns ``(totals, census)`` where totals is the enumerate_counts tuple
    and census maps a component type signature ``((degree, count), ...)`` to
    ``[occurrences over all matchings, occurrences over simple matchings]``.
    """
    sv = stub_vertex.tolist()
    ell = len(sv)
    total = connected = simple = simple_connected = 0
    census: dict[tuple, list[int]] = {}
    degree = [0] * n_vertices
    for s in sv:
        degree[s] += 1
    for pairs in _all_matchings(ell):
        total += 1
        conn, simp = _classify_matching(pairs, sv, n_vertices)
        if conn:
            connected += 1
        if simp:
            simple += 1
            if conn:
                simple_connected += 1
        parent = list(range(n_vertices))
        for a, b in pairs:
            ru, rv = _find(parent, sv[a]), _find(parent, sv[b])
            if ru != rv:
                parent[rv] = ru
        groups: dict[int, dict[int, int]] = {}
        for v in range(n_vertices):
            r = _find(parent, v)
            groups.setdefault(r, {})
            groups[r][degree[v]] = groups[r].get(degree[v], 0) + 1
        for counts in groups.values():
            sig = tuple(sorted(counts.items()))
            entry = census.setdefault(sig, [0, 0])
            entry[0] += 1
            if simp:
                entry[1] += 1
    return (total, connected, simple, simple_connected), census
