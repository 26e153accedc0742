"""Neighbourhood census, branching-process tree probabilities, and the
uniform connected-graph samplers.

The radius-r ball around a vertex is the induced subgraph on vertices within
distance r.  When the ball is a tree it is encoded canonically (sorted
child-code concatenation), so two balls get the same code exactly when they
are isomorphic as rooted trees; balls containing a cycle land in a reserved
NON_TREE bin.

For the two-stage branching process (root offspring ~ q, later generations
~ the shifted size-biased q*), the probability that the first r generations
form a given tree t, conditioned on survival, is

    mu(t) = P(tree = t) * (1 - beta^L) / (1 - sum_k q_k beta^k),

where L counts the vertices of t in generation exactly r: given the first r
generations, the process survives unless all L boundary lines die out, each
independently with the extinction probability beta.  An empty boundary
forces mu = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .confmodel import (
    Configuration,
    MultiGraph,
    components,
    is_simple,
    project,
    sample_configuration,
    stub_layout,
)
from .degrees import DegreeDistribution, TypeSequence, size_biased
from .embedding import EmbeddingPlan, build_embedding
from .errors import BudgetExhausted, EmptySequence, OddTotalDegree, TooLarge
from .rng import split_seed, split_seed_array

NON_TREE = "NON_TREE"

LEAF_CODE = "()"

_CHUNK = 4096


@dataclass(frozen=True)
class RootedTreeCode:
    """Canonical encoding of a rooted tree of depth <= radius.

    ``boundary`` counts the vertices at depth exactly ``radius``.
    """

    code: str
    radius: int
    boundary: int


@dataclass(frozen=True)
class CensusHistogram:
    counts: dict[str, int]
    total: int
    radius: int

    def fraction(self, code: str) -> float:
        return self.counts.get(code, 0) / self.total


@dataclass(frozen=True)
class NearMissReport:
    """Outcome summary of an exhausted giant rejection run.

    Distances are None when no attempt was made (budget 0).
    """

    attempts: int
    min_distance: int | None
    mean_distance: float | None
    target: TypeSequence


def tree_code(children: list[str]) -> str:
    """Code of a node from its children's codes."""
    return "(" + "".join(sorted(children)) + ")"


def parse_children(code: str) -> list[str]:
    """Child codes of the root; inverse of :func:`tree_code`."""
    if len(code) < 2 or code[0] != "(" or code[-1] != ")":
        raise ValueError(f"malformed tree code {code!r}")
    inner = code[1:-1]
    children = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            if depth == 0:
                start = i
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                children.append(inner[start : i + 1])
            if depth < 0:
                raise ValueError(f"malformed tree code {code!r}")
        else:
            raise ValueError(f"malformed tree code {code!r}")
    if depth != 0:
        raise ValueError(f"malformed tree code {code!r}")
    return children


@lru_cache(maxsize=65536)
def code_depth(code: str) -> int:
    children = parse_children(code)
    if not children:
        return 0
    return 1 + max(code_depth(c) for c in children)


@lru_cache(maxsize=65536)
def boundary_count(code: str, depth: int) -> int:
    """Number of nodes at depth exactly ``depth`` below this node."""
    if depth == 0:
        return 1
    return sum(boundary_count(c, depth - 1) for c in parse_children(code))


def as_tree_code(code: str, radius: int) -> RootedTreeCode:
    if code_depth(code) > radius:
        raise ValueError(f"tree deeper than radius {radius}")
    return RootedTreeCode(code=code, radius=radius, boundary=boundary_count(code, radius))


def _ball_code(adj: list[list[int]], v: int, r: int) -> str | None:
    """Canonical code of the induced radius-r ball, or None when not a tree."""
    depth = {v: 0}
    order = [v]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        if depth[u] == r:
            continue
        for w in adj[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                order.append(w)
    # the ball is a tree iff the induced edge count is |ball| - 1
    in_ball = set(order)
    edge_count = 0
    for u in in_ball:
        for w in adj[u]:
            if w in in_ball and u < w:
                edge_count += 1
    if edge_count != len(order) - 1:
        return None
    codes = {u: None for u in order}
    for u in reversed(order):
        child_codes = [codes[w] for w in adj[u] if depth.get(w, -1) == depth[u] + 1]
        codes[u] = tree_code(child_codes)
    return codes[v]


def neighborhood_tree(g: MultiGraph, v: int, r: int) -> RootedTreeCode | str:
    """Code of the induced radius-r ball at v, or the NON_TREE sentinel."""
    if not is_simple(g):
        raise ValueError("neighbourhood census is defined on simple graphs")
    code = _ball_code(g.adjacency(), v, r)
    if code is None:
        return NON_TREE
    return as_tree_code(code, r)


def empirical_census(g: MultiGraph, r: int) -> CensusHistogram:
    """Histogram of ball codes over every vertex of a simple graph."""
    if not is_simple(g):
        raise ValueError("neighbourhood census is defined on simple graphs")
    adj = g.adjacency()
    counts: dict[str, int] = {}
    for v in range(g.n):
        code = _ball_code(adj, v, r)
        key = NON_TREE if code is None else code
        counts[key] = counts.get(key, 0) + 1
    return CensusHistogram(counts=counts, total=g.n, radius=r)


def merge_histograms(histograms: list[CensusHistogram]) -> CensusHistogram:
    """Pooled census over many graphs (same radius)."""
    if not histograms:
        raise ValueError("nothing to merge")
    radius = histograms[0].radius
    counts: dict[str, int] = {}
    total = 0
    for h in histograms:
        if h.radius != radius:
            raise ValueError("cannot merge censuses of different radii")
        total += h.total
        for k, c in h.counts.items():
            counts[k] = counts.get(k, 0) + c
    return CensusHistogram(counts=counts, total=total, radius=radius)


def _multiset_factor(child_codes: list[str]) -> int:
    """Orderings of the children over repeated isomorphism classes."""
    mult: dict[str, int] = {}
    for c in child_codes:
        mult[c] = mult.get(c, 0) + 1
    out = math.factorial(len(child_codes))
    for m in mult.values():
        out //= math.factorial(m)
    return out


def bp_tree_probability(
    q: DegreeDistribution, beta: float, t: RootedTreeCode, r: int
) -> float:
    """mu(t): chance the first r generations, conditioned on survival,
    form the tree t."""
    if code_depth(t.code) > r:
        raise ValueError("tree deeper than the census radius")
    if r == 0:
        return 1.0 if t.code == LEAF_CODE else 0.0
    star = size_biased(q).weights

    def w_subtree(code: str, remaining: int) -> float:
        if remaining == 0:
            return 1.0
        children = parse_children(code)
        prob = star.get(len(children), 0.0)
        if prob == 0.0:
            return 0.0
        prob *= _multiset_factor(children)
        for child in set(children):
            wc = w_subtree(child, remaining - 1)
            prob *= wc ** children.count(child)
        return prob

    root_children = parse_children(t.code)
    unconditioned = q[len(root_children)] * _multiset_factor(root_children)
    for child in set(root_children):
        unconditioned *= w_subtree(child, r - 1) ** root_children.count(child)

    boundary = boundary_count(t.code, r)
    survive_given_tree = 1.0 - beta**boundary if boundary > 0 else 0.0
    extinct = sum(w * beta**k for k, w in q.items)
    return unconditioned * survive_given_tree / (1.0 - extinct)


def enumerate_bp_trees(
    q: DegreeDistribution,
    beta: float,
    r: int,
    min_prob: float = 0.0,
    max_trees: int = 1_000_000,
) -> list[tuple[RootedTreeCode, float]]:
    """All depth-<=r trees producible by the process, with their mu.

    Exact for finite support; trees with mu < min_prob are dropped from the
    output (after enumeration, which is exponential in r).
    """
    from itertools import combinations_with_replacement

    star = size_biased(q)
    level: list[str] = [LEAF_CODE]
    for _ in range(r - 1):
        nxt = set()
        for c in star.support():
            for combo in combinations_with_replacement(sorted(level), c):
                nxt.add(tree_code(list(combo)))
                if len(nxt) > max_trees:
                    raise TooLarge("tree enumeration blew past max_trees")
        level = sorted(nxt)
    out = []
    if r == 0:
        return [(as_tree_code(LEAF_CODE, 0), 1.0)]
    for c, _w in q.items:
        for combo in combinations_with_replacement(sorted(level), c):
            code = tree_code(list(combo))
            t = as_tree_code(code, r)
            mu = bp_tree_probability(q, beta, t, r)
            if mu >= min_prob and mu > 0.0:
                out.append((t, mu))
            if len(out) > max_trees:
                raise TooLarge("tree enumeration blew past max_trees")
    out.sort(key=lambda pair: (-pair[1], pair[0].code))
    return out


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------


def sample_uniform_connected(
    t: TypeSequence, seed: int, budget: int
) -> MultiGraph:
    """Exact uniform sample from connected simple graphs with type t.

    Rejection from uniform configurations: conditioning a uniform matching
    on (simple and connected) is uniform over connected simple graphs, since
    every simple graph corresponds to the same number of matchings.
    Attempt j uses the child seed split(seed, j).
    """
    if t.n == 0:
        raise EmptySequence("cannot sample an empty type sequence")
    if t.ell % 2:
        raise OddTotalDegree(f"total degree {t.ell} is odd")
    stub_vertex, _ = stub_layout(t)
    want = kernels.FLAG_CONNECTED | kernels.FLAG_SIMPLE
    done = 0
    while done < budget:
        count = min(_CHUNK, budget - done)
        seeds = split_seed_array(seed, done, count)
        flags = kernels.classify_flags(stub_vertex, t.n, seeds)
        hits = np.flatnonzero(flags == want)
        if hits.size:
            attempt = done + int(hits[0])
            cfg = sample_configuration(t, split_seed(seed, attempt))
            return project(cfg)
        done += count
    raise BudgetExhausted(
        f"no connected simple draw in {budget} attempts", attempts=budget
    )


def integerize_target(p: DegreeDistribution, n: int) -> TypeSequence:
    """Concrete target type for an abstract (p, n): counts round(n p_k),
    with one degree-1 vertex dropped when the total degree comes out odd."""
    counts = {k: round(n * w) for k, w in p.items}
    counts = {k: c for k, c in counts.items() if c > 0}
    if sum(k * c for k, c in counts.items()) % 2:
        if counts.get(1, 0) < 1:
            raise ValueError("cannot repair parity: target has no degree-1 vertex")
        counts[1] -= 1
    return TypeSequence(counts)


def _giant_as_graph(cfg: Configuration) -> MultiGraph:
    """Extract the largest component, relabelled to 0..m-1 in ascending
    degree order (ties by original vertex id)."""
    g = project(cfg)
    view = components(g)
    verts = view.vertices_of(view.giant).tolist()
    degs = g.degrees
    verts.sort(key=lambda v: (int(degs[v]), v))
    relabel = {v: i for i, v in enumerate(verts)}
    edges = []
    for u, v in g.edges:
        if int(view.labels[u]) == view.giant:
            a, b = relabel[u], relabel[v]
            edges.append((a, b) if a <= b else (b, a))
    return MultiGraph(n=len(verts), edges=tuple(edges))


def giant_rejection_sample(
    p: DegreeDistribution,
    eps: float,
    n: int,
    seed: int,
    budget: int,
    plan: EmbeddingPlan | None = None,
    target: TypeSequence | None = None,
) -> MultiGraph:
    """Uniform connected simple graph with type round(n p), sampled as the
    giant of a configuration model on the enlarged sequence N.

    A draw is accepted when the giant projects to a simple graph and its
    type equals the target exactly.  Raises :class:`BudgetExhausted` with a
    :class:`NearMissReport` when no draw is accepted.
    """
    if plan is None:
        plan = build_embedding(p, eps, n)
    if target is None:
        target = integerize_target(p, n)
    if plan.N.n == 0:
        raise EmptySequence("embedding produced an empty type sequence")
    stub_vertex, vertex_degree = stub_layout(plan.N)
    kmax = max(plan.N.max_degree, target.max_degree)
    dense = np.zeros(kmax + 1, dtype=np.int64)
    for k, c in target.items:
        dense[k] = c

    done = 0
    min_dist = -1
    sum_dist = 0
    while done < budget:
        count = min(_CHUNK, budget - done)
        seeds = split_seed_array(seed, done, count)
        hits, first, chunk_min, chunk_sum = kernels.giant_match_scan(
            stub_vertex, vertex_degree, seeds, dense, True
        )
        sum_dist += chunk_sum
        if chunk_min >= 0 and (min_dist < 0 or chunk_min < min_dist):
            min_dist = chunk_min
        if hits > 0:
            attempt = done + first
            cfg = sample_configuration(plan.N, split_seed(seed, attempt))
            return _giant_as_graph(cfg)
        done += count
    report = NearMissReport(
        attempts=budget,
        min_distance=min_dist if budget else None,
        mean_distance=(sum_dist / budget) if budget else None,
        target=target,
    )
    raise BudgetExhausted(
        f"giant never hit the target type in {budget} attempts",
        attempts=budget,
        report=report,
    )
