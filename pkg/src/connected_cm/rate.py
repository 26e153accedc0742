"""The connectivity rate functional and its degree fixed point.

For a supercritical degree distribution p (mean mu > 2) there is a unique
beta in (0, 1) with

    sum_k k p_k = (1 - beta^2) sum_k k p_k / (1 - beta^k).

beta is also the extinction probability of the branching process whose
offspring law is the shifted size-biasing of the giant's root law q.  The
per-vertex exponential cost of connectivity is

    K(p) = (mu/2) log(1 - beta^2) - sum_k p_k log(1 - beta^k),

which is positive whenever p_1 > 0.  Dividing the trivial root beta = 0 out
of the fixed point gives the strictly increasing function

    F(p, beta) = sum_{k>=2} (beta - beta^k) / (1 - beta^{k+1}) p*_k - p*_0,

with p* the shifted size-biased law; we solve F = 0 by bisection (bracketed
a priori) and polish with Newton steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .degrees import DegreeDistribution, SizeBiasedDistribution, size_biased
from .errors import Degree1Required, SubcriticalDistribution

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class BetaSolution:
    beta: float
    residual: float
    upper_bound: float


@dataclass(frozen=True)
class RateResult:
    K: float
    beta: float
    q: DegreeDistribution
    gamma: float


def _F_items(star_items, star0: float, beta: float) -> float:
    total = 0.0
    for k, w in star_items:
        if k >= 2:
            total += (beta - beta**k) / (1.0 - beta ** (k + 1)) * w
    return total - star0


def _dF_items(star_items, beta: float) -> float:
    total = 0.0
    for k, w in star_items:
        if k >= 2:
            num = 1.0 - k * beta ** (k - 1) + k * beta ** (k + 1) - beta ** (2 * k)
            den = (1.0 - beta ** (k + 1)) ** 2
            total += w * num / den
    return total


def F(p: DegreeDistribution, beta: float) -> float:
    """Root function of the degree fixed point; strictly increasing in beta.

    F(p, 0) = -p*_0 < 0 and F(p, 1-) = 1 - 2/mu, positive for mu > 2.
    """
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta!r}")
    star = size_biased(p)
    return _F_items(star.items, star[0], beta)


def dF_dbeta(p: DegreeDistribution, beta: float) -> float:
    """Analytic derivative of F in beta; positive on (0, 1), bounded by 2."""
    return _dF_items(size_biased(p).items, beta)


def solve_beta(p: DegreeDistribution, tol: float = DEFAULT_TOL) -> BetaSolution:
    """Solve F(p, beta) = 0 for the unique root in (0, 1).

    The root is bracketed a priori in (p*_0 / 2, 1 - a/A) with a = 1 - 2/mu
    and A = 2 (the uniform bound on dF/dbeta), so bisection cannot escape;
    Newton steps then drive the residual |F| below ``tol``.
    """
    mu = p.mean
    if mu <= 2.0:
        raise SubcriticalDistribution(f"mean degree {mu!r} <= 2: no root in (0, 1)")
    star = size_biased(p)
    items = star.items
    star0 = star[0]
    a = 1.0 - 2.0 / mu
    upper = 1.0 - a / 2.0
    lo = star0 / 2.0
    hi = upper
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fmid = _F_items(items, star0, mid)
        if fmid < 0.0:
            lo = mid
        else:
            hi = mid
        if abs(fmid) <= tol or (hi - lo) < 4e-16:
            break
    beta = 0.5 * (lo + hi)
    for _ in range(8):
        fb = _F_items(items, star0, beta)
        if abs(fb) <= tol:
            break
        d = _dF_items(items, beta)
        if d <= 0.0:
            break
        nxt = beta - fb / d
        if not lo <= nxt <= hi:
            nxt = 0.5 * (lo + hi)
        beta = nxt
    residual = abs(_F_items(items, star0, beta))
    return BetaSolution(beta=beta, residual=residual, upper_bound=upper)


def giant_degree_distribution(
    p: DegreeDistribution, beta: float
) -> tuple[DegreeDistribution, float]:
    """Degree law of the enlarged graph whose giant reproduces p.

    q_k = (p_k / (1 - beta^k)) / gamma with gamma = sum_i p_i / (1 - beta^i);
    by construction gamma * q_k * (1 - beta^k) = p_k for every k.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta!r}")
    raw = {k: w / (1.0 - beta**k) for k, w in p.items}
    gamma = sum(raw.values())
    q = DegreeDistribution({k: v / gamma for k, v in raw.items()})
    return q, gamma


def unimodular_offspring(q: DegreeDistribution) -> SizeBiasedDistribution:
    """Offspring law q* of every non-root individual in the two-stage tree."""
    return size_biased(q)


def survival_residual(q: DegreeDistribution, beta: float) -> float:
    """|sum_k q*_k beta^k - beta|: zero iff beta is the q*-extinction probability."""
    star = size_biased(q)
    total = sum(w * beta**k for k, w in star.items)
    return abs(total - beta)


def rate_K(p: DegreeDistribution, tol: float = DEFAULT_TOL) -> RateResult:
    """Exponential cost per vertex of connectivity, plus the giant's q and gamma."""
    sol = solve_beta(p, tol=tol)
    if p[1] <= 0.0:
        raise Degree1Required("rate functional needs p_1 > 0 (otherwise it can vanish)")
    beta = sol.beta
    K = (p.mean / 2.0) * math.log1p(-beta * beta)
    for k, w in p.items:
        K -= w * math.log1p(-(beta**k))
    q, gamma = giant_degree_distribution(p, beta)
    return RateResult(K=K, beta=beta, q=q, gamma=gamma)
