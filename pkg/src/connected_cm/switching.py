"""Edge switchings: degree-preserving rewiring of configurations.

An i-switching removes 2i edges of a configuration (freeing 4i stubs) and
re-pairs the freed stubs with any fixed-point-free matching; degrees never
change.  ``connect_repair`` uses one deterministic switching to absorb all
small components into the giant: it breaks one spare (non-bridge) edge of
the giant per small component, one edge inside each small component, and
cross-pairs giant stubs with small-component stubs.  Cross edges join
vertices from different components, so a simple input stays simple.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .confmodel import Configuration, components, project, stub_layout
from .errors import InsufficientSurplus, InvalidMove


@dataclass(frozen=True)
class SwitchingMove:
    """``broken_edges``: canonical stub ids (the lower stub of each edge).

    ``repairing``: perfect matching on the 4i freed stubs, as stub pairs.
    """

    broken_edges: tuple[int, ...]
    repairing: tuple[tuple[int, int], ...]


def apply_switching(c: Configuration, move: SwitchingMove) -> Configuration:
    """Re-pair the freed stubs; the type sequence is untouched."""
    matching = c.matching
    ell = len(matching)
    freed: set[int] = set()
    if len(move.broken_edges) != len(set(move.broken_edges)):
        raise InvalidMove("broken edges must be distinct")
    for s in move.broken_edges:
        if not 0 <= s < ell:
            raise InvalidMove(f"stub {s} out of range")
        partner = int(matching[s])
        if s > partner:
            raise InvalidMove(f"stub {s} is not the canonical end of its edge")
        freed.add(s)
        freed.add(partner)
    touched: set[int] = set()
    for a, b in move.repairing:
        if a == b:
            raise InvalidMove("re-pairing may not match a stub with itself")
        if a not in freed or b not in freed:
            raise InvalidMove("re-pairing touches a stub that was not freed")
        if a in touched or b in touched:
            raise InvalidMove("re-pairing uses a stub twice")
        touched.add(a)
        touched.add(b)
    if touched != freed:
        raise InvalidMove("re-pairing must cover exactly the freed stubs")
    new_matching = matching.copy()
    for a, b in move.repairing:
        new_matching[a] = b
        new_matching[b] = a
    return Configuration(type_seq=c.type_seq, matching=new_matching)


def inverse_move(c: Configuration, move: SwitchingMove) -> SwitchingMove:
    """The move that undoes ``move`` when applied to apply_switching(c, move)."""
    matching = c.matching
    broken = tuple(sorted(min(a, b) for a, b in move.repairing))
    repairing = []
    for s in move.broken_edges:
        repairing.append((s, int(matching[s])))
    return SwitchingMove(broken_edges=broken, repairing=tuple(repairing))


def giant_surplus_edges(c: Configuration) -> list[int]:
    """Canonical stub ids of the giant's non-bridge (spanning-tree surplus)
    edges: removable one at a time without disconnecting it."""
    g = project(c)
    view = components(g)
    stub_vertex, _ = stub_layout(c.type_seq)
    giant_vertices = set(view.vertices_of(view.giant).tolist())

    # BFS spanning tree over the giant using the configuration's edges in
    # canonical stub order; every non-tree edge is surplus.
    edges = c.edge_stub_pairs()
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in giant_vertices}
    giant_edges = []
    for s, t in edges:
        u = int(stub_vertex[s])
        v = int(stub_vertex[t])
        if u in giant_vertices:
            giant_edges.append((s, u, v))
            adj[u].append((v, s))
            if v != u:
                adj[v].append((u, s))
    root = min(giant_vertices)
    seen = {root}
    tree_edges: set[int] = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, s in adj[u]:
            if v not in seen:
                seen.add(v)
                tree_edges.add(s)
                queue.append(v)
    return [s for s, _, _ in giant_edges if s not in tree_edges]


def connect_repair(c: Configuration) -> Configuration:
    """Merge every small component into the giant with one switching.

    Needs the giant's edge surplus to cover the number of small components;
    output is connected with the same type sequence, and simple when the
    input was simple.
    """
    g = project(c)
    view = components(g)
    if view.n_components == 1:
        return c
    stub_vertex, _ = stub_layout(c.type_seq)
    small = [i for i in range(view.n_components) if i != view.giant]
    surplus = giant_surplus_edges(c)
    if len(surplus) < len(small):
        raise InsufficientSurplus(
            f"giant surplus {len(surplus)} < {len(small)} small components"
        )

    labels = view.labels
    matching = c.matching
    broken: list[int] = []
    giant_stubs: list[int] = []
    for s in surplus[: len(small)]:
        broken.append(s)
        giant_stubs.extend([s, int(matching[s])])
    small_stubs: list[int] = []
    for comp in small:
        # first stored edge of the component
        for s, t in c.edge_stub_pairs():
            if labels[int(stub_vertex[s])] == comp:
                broken.append(s)
                small_stubs.extend([s, t])
                break
    repairing = tuple(
        (giant_stubs[j], small_stubs[j]) for j in range(len(giant_stubs))
    )
    move = SwitchingMove(broken_edges=tuple(broken), repairing=repairing)
    return apply_switching(c, move)
