"""Truncation and the enlarged type sequence whose giant matches a target.

Given a supercritical p and eps > 0, ``truncate_p`` reweights p onto degrees
1..M (M the smallest cutoff with tail mean below eps/2):

    p^eps_i = rho^{-1} (1 - eps / (i 2^{i+2})) p_i,   i <= M,

with normalizer rho. ``build_embedding`` then solves the fixed point on
p^eps and produces N_i = floor(gamma rho q^eps_i n): a configuration model
on N has, with high probability, a giant whose degree-k count sits just
below n p_k for every k - close enough that a bounded number of edge
switchings can lift it to the target exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .degrees import DegreeDistribution, TypeSequence
from .errors import EpsilonTooLarge, SubcriticalDistribution
from .rate import DEFAULT_TOL, giant_degree_distribution, solve_beta


@dataclass(frozen=True)
class TruncationResult:
    p_eps: DegreeDistribution
    rho: float
    M: int
    eps: float


@dataclass(frozen=True)
class EmbeddingPlan:
    N: TypeSequence
    q_eps: DegreeDistribution
    beta_eps: float
    gamma: float
    rho: float
    n_target: int
    eps: float


def truncate_p(p: DegreeDistribution, eps: float) -> TruncationResult:
    """Reweighted truncation of p onto degrees 1..M."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if p.mean <= 2.0:
        raise SubcriticalDistribution(
            f"mean degree {p.mean!r} <= 2 before truncation"
        )
    max_deg = p.max_degree
    M = max_deg
    for candidate in range(1, max_deg + 1):
        tail = sum(k * w for k, w in p.items if k > candidate)
        if tail < eps / 2.0:
            M = candidate
            break
    damped = {k: (1.0 - eps / (k * 2 ** (k + 2))) * w for k, w in p.items if k <= M}
    rho = sum(damped.values())
    p_eps = DegreeDistribution({k: v / rho for k, v in damped.items()})
    if p_eps.mean <= 2.0:
        raise EpsilonTooLarge(
            f"eps={eps!r} leaves truncated mean {p_eps.mean!r} <= 2"
        )
    return TruncationResult(p_eps=p_eps, rho=rho, M=M, eps=eps)


def build_embedding(
    p: DegreeDistribution, eps: float, n: int, tol: float = DEFAULT_TOL
) -> EmbeddingPlan:
    """Enlarged type sequence N with giant-degree law matching n * p^eps.

    If the total degree of N comes out odd, one degree-1 vertex is dropped
    (or one vertex of the smallest odd degree class when N_1 = 0).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    tr = truncate_p(p, eps)
    sol = solve_beta(tr.p_eps, tol=tol)
    q_eps, gamma = giant_degree_distribution(tr.p_eps, sol.beta)
    counts = {}
    for k, w in q_eps.items:
        c = int(gamma * tr.rho * w * n)
        if c > 0:
            counts[k] = c
    if sum(k * c for k, c in counts.items()) % 2:
        odd_classes = sorted(k for k, c in counts.items() if k % 2 and c > 0)
        if 1 in counts:
            counts[1] -= 1
        elif odd_classes:
            counts[odd_classes[0]] -= 1
        else:
            raise ValueError("cannot repair parity: no odd degree class present")
    return EmbeddingPlan(
        N=TypeSequence(counts),
        q_eps=q_eps,
        beta_eps=sol.beta,
        gamma=gamma,
        rho=tr.rho,
        n_target=n,
        eps=eps,
    )


def in_nps(m: TypeSequence, n: TypeSequence, eps: float) -> bool:
    """True iff m approximates n from below: m <= n elementwise and
    ell_m > (1 - eps) ell_n."""
    return n.covers(m) and m.ell > (1.0 - eps) * n.ell
