"""Command-line interface and seeded experiment runners.

All randomness flows from one root seed: replicate j of any ensemble uses
the child seed split(root, j), so results do not depend on chunking or on
the number of worker processes, and identical invocations produce identical
bytes.  Numeric output is printed with 15 significant digits.
"""
from __future__ import annotations

import argparse
import json
import math
import multiprocessing
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .census import (
    empirical_census,
    enumerate_bp_trees,
    giant_rejection_sample,
    integerize_target,
    sample_uniform_connected,
)
from .confmodel import (
    RNG_ALGORITHM,
    components,
    is_simple,
    project,
    read_edge_list,
    sample_configuration,
    stub_layout,
    write_edge_list,
)
from .degrees import DegreeDistribution, TypeSequence
from .embedding import build_embedding
from .errors import BudgetExhausted, ConnectedCMError
from .oracle import (
    all_sub_types,
    count_configurations,
    decomposition_check,
    double_factorial,
    enumerate_counts,
    type_binomial,
)
from .rate import giant_degree_distribution, rate_K, solve_beta, survival_residual
from .rng import split_seed_array

THREADS_ENV = "CONNECTED_CM_THREADS"


# ---------------------------------------------------------------------------
# Experiment spec and rate-curve estimation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentSpec:
    """Fully serializable description of one CLI invocation."""

    command: str
    args: dict = field(default_factory=dict)

    def to_argv(self) -> list[str]:
        argv = [self.command]
        for key, value in sorted(self.args.items()):
            flag = "--" + key.replace("_", "-")
            if value is True:
                argv.append(flag)
            elif value is not None:
                argv.extend([flag, str(value)])
        return argv

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "args": self.args}, sort_keys=True)


def run(spec: ExperimentSpec) -> int:
    """Dispatch a spec exactly as the command line would."""
    return main(spec.to_argv())


def _direct_chunk(args) -> tuple[int, int]:
    counts_items, root_seed, start, count = args
    t = TypeSequence(dict(counts_items))
    stub_vertex, _ = stub_layout(t)
    seeds = split_seed_array(root_seed, start, count)
    flags = kernels.classify_flags(stub_vertex, t.n, seeds)
    n_conn = int(np.count_nonzero(flags & kernels.FLAG_CONNECTED))
    n_simple = int(np.count_nonzero(flags & kernels.FLAG_SIMPLE))
    return n_conn, n_simple


def _embedding_chunk(args) -> int:
    ncounts_items, target_dense, root_seed, start, count = args
    big = TypeSequence(dict(ncounts_items))
    stub_vertex, vertex_degree = stub_layout(big)
    seeds = split_seed_array(root_seed, start, count)
    dense = np.asarray(target_dense, dtype=np.int64)
    hits, _, _, _ = kernels.giant_match_scan(
        stub_vertex, vertex_degree, seeds, dense, False
    )
    return hits


def _chunk_ranges(replicates: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(chunk, replicates - s)) for s in range(0, replicates, chunk)]


def _pool_map(fn, jobs, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with multiprocessing.get_context("fork").Pool(threads) as pool:
        return pool.map(fn, jobs)


def direct_connectivity_mc(
    t: TypeSequence, replicates: int, seed: int, threads: int = 1, chunk: int = 50_000
) -> tuple[int, int]:
    """(connected draws, simple draws) among uniform configurations on t."""
    jobs = [
        (t.items, seed, start, count) for start, count in _chunk_ranges(replicates, chunk)
    ]
    results = _pool_map(_direct_chunk, jobs, threads)
    return (
        sum(r[0] for r in results),
        sum(r[1] for r in results),
    )


def estimate_rate_point(
    p: DegreeDistribution,
    n: int,
    replicates: int,
    seed: int,
    eps: float = 0.05,
    threads: int = 1,
    method: str = "auto",
) -> dict:
    """One point of the connectivity-rate curve: -log p_conn / n.

    ``direct`` measures the connected fraction of uniform configurations on
    the integerized target type.  ``embedding`` counts how often the giant
    of the enlarged model has exactly the target type; the exact identity

        #configs of N with a majority component of type m
            = binom(N, m) * #connected configs of m * #configs of N - m

    then converts that frequency into p_conn of the target with no
    asymptotics, which reaches rates far beyond direct Monte Carlo.
    ``auto`` picks direct only while hits stay plentiful.
    """
    target = integerize_target(p, n)
    if method == "auto":
        expected = math.exp(-rate_K(p).K * target.n) * replicates
        method = "direct" if expected >= 500.0 else "embedding"
    if method == "direct":
        hits, _ = direct_connectivity_mc(target, replicates, seed, threads)
        log_pconn = math.log(hits / replicates) if hits else -math.inf
    elif method == "embedding":
        plan = build_embedding(p, eps, n)
        kmax = max(plan.N.max_degree, target.max_degree)
        dense = [0] * (kmax + 1)
        for k, c in target.items:
            dense[k] = c
        jobs = [
            (plan.N.items, tuple(dense), seed, start, count)
            for start, count in _chunk_ranges(replicates, 50_000)
        ]
        hits = sum(_pool_map(_embedding_chunk, jobs, threads))
        if hits:
            rest = plan.N - target
            log_ratio = (
                math.log(double_factorial(plan.N.ell - 1))
                - math.log(type_binomial(plan.N, target))
                - math.log(double_factorial(rest.ell - 1))
                - math.log(double_factorial(target.ell - 1))
            )
            log_pconn = math.log(hits / replicates) + log_ratio
        else:
            log_pconn = -math.inf
    else:
        raise ValueError(f"unknown method {method!r}")
    khat = -log_pconn / target.n if math.isfinite(log_pconn) else math.inf
    return {
        "n": n,
        "n_vertices": target.n,
        "method": method,
        "hits": hits,
        "replicates": replicates,
        "log_pconn": log_pconn,
        "khat": khat,
    }


def estimate_rate_curve(
    p: DegreeDistribution,
    n_list: list[int],
    replicates: int,
    seed: int,
    eps: float = 0.05,
    threads: int = 1,
    method: str = "auto",
) -> list[dict]:
    """Rate-curve points, one per n; replicate streams split per point."""
    from .rng import split_seed

    return [
        estimate_rate_point(
            p, n, replicates, split_seed(seed, i), eps=eps, threads=threads, method=method
        )
        for i, n in enumerate(n_list)
    ]


# ---------------------------------------------------------------------------
# Output formatting
# ---------------------------------------------------------------------------


def _round_floats(obj):
    """15-significant-digit canonicalization, recursively."""
    if isinstance(obj, float):
        return float(f"{obj:.15g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(payload: dict) -> None:
    print(json.dumps(_round_floats(payload), indent=2, sort_keys=True))


def _fail(exc: Exception, code: int) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, BudgetExhausted):
        payload["error"]["attempts"] = exc.attempts
        if exc.report is not None:
            payload["error"]["report"] = {
                "min_distance": exc.report.min_distance,
                "mean_distance": exc.report.mean_distance,
                "target": exc.report.target.counts,
            }
    print(json.dumps(_round_floats(payload), indent=2, sort_keys=True))
    return code


def _load_text(arg: str) -> str:
    text = arg.strip()
    if text.startswith("{"):
        return text
    with open(arg, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_p(arg: str) -> DegreeDistribution:
    return DegreeDistribution.from_json(_load_text(arg))


def _load_type(arg: str) -> TypeSequence:
    return TypeSequence.from_json(_load_text(arg))


def _dist_json(d) -> dict:
    return {str(k): w for k, w in d.items}


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_rate(args) -> int:
    p = _load_p(args.p)
    sol = solve_beta(p, tol=args.tol)
    result = rate_K(p, tol=args.tol)
    _emit(
        {
            "beta": result.beta,
            "K": result.K,
            "gamma": result.gamma,
            "q": _dist_json(result.q),
            "residuals": {
                "fixed_point": sol.residual,
                "survival": survival_residual(result.q, result.beta),
            },
        }
    )
    return 0


def _cmd_build_nbig(args) -> int:
    p = _load_p(args.p)
    plan = build_embedding(p, args.eps, args.n)
    _emit(
        {
            "N": {str(k): c for k, c in plan.N.items},
            "N_total": plan.N.n,
            "ell": plan.N.ell,
            "q_eps": _dist_json(plan.q_eps),
            "beta_eps": plan.beta_eps,
            "gamma": plan.gamma,
            "rho": plan.rho,
            "n_target": plan.n_target,
            "eps": plan.eps,
        }
    )
    return 0


def _cmd_sample_cm(args) -> int:
    t = _load_type(args.type)
    cfg = sample_configuration(t, args.seed)
    g = project(cfg)
    view = components(g)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    _emit(
        {
            "rng": RNG_ALGORITHM,
            "seed": args.seed,
            "n": g.n,
            "ell": t.ell,
            "simple": is_simple(g),
            "n_components": view.n_components,
            "giant_type": {str(k): c for k, c in view.component_types[view.giant].items},
            "emitted": args.emit,
        }
    )
    return 0


def _cmd_sample_connected(args) -> int:
    t = _load_type(args.type)
    g = sample_uniform_connected(t, args.seed, args.budget)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    _emit(
        {
            "rng": RNG_ALGORITHM,
            "seed": args.seed,
            "n": g.n,
            "edges": len(g.edges),
            "emitted": args.emit,
        }
    )
    return 0


def _cmd_sample_giant(args) -> int:
    p = _load_p(args.p)
    g = giant_rejection_sample(p, args.eps, args.n, args.seed, args.budget)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
    _emit(
        {
            "rng": RNG_ALGORITHM,
            "seed": args.seed,
            "n": g.n,
            "edges": len(g.edges),
            "target": {str(k): c for k, c in integerize_target(p, args.n).items},
            "emitted": args.emit,
        }
    )
    return 0


def _cmd_oracle(args) -> int:
    t = _load_type(args.type)
    report = enumerate_counts(t)
    _emit(
        {
            "total": report.total,
            "connected": report.connected,
            "simple": report.simple,
            "simple_connected": report.simple_connected,
            "graphs": report.graphs,
            "connected_graphs": report.connected_graphs,
            "double_factorial": count_configurations(t),
        }
    )
    return 0


def _cmd_census(args) -> int:
    with open(args.edges, "r", encoding="utf-8") as fh:
        g = read_edge_list(fh)
    hist = empirical_census(g, args.r)
    _emit(
        {
            "radius": hist.radius,
            "total": hist.total,
            "counts": dict(sorted(hist.counts.items())),
        }
    )
    return 0


def _cmd_mu(args) -> int:
    p = _load_p(args.p)
    sol = solve_beta(p)
    q, gamma = giant_degree_distribution(p, sol.beta)
    trees = enumerate_bp_trees(q, sol.beta, args.r, min_prob=args.min_prob)
    _emit(
        {
            "radius": args.r,
            "beta": sol.beta,
            "gamma": gamma,
            "trees": [
                {"code": t.code, "mu": mu, "boundary": t.boundary} for t, mu in trees
            ],
            "mu_total": sum(mu for _, mu in trees),
        }
    )
    return 0


def _cmd_estimate_K(args) -> int:
    p = _load_p(args.p)
    n_list = [int(x) for x in args.n_list.split(",")]
    threads = args.threads
    points = estimate_rate_curve(
        p,
        n_list,
        replicates=args.replicates,
        seed=args.seed,
        eps=args.eps,
        threads=threads,
        method=args.method,
    )
    lines = ["n,minus_log_pconn_over_n,method,hits,replicates"]
    for pt in points:
        khat = f"{pt['khat']:.15g}" if math.isfinite(pt["khat"]) else "inf"
        lines.append(f"{pt['n']},{khat},{pt['method']},{pt['hits']},{pt['replicates']}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_decomp_check(args) -> int:
    t = _load_type(args.type)
    families = all_sub_types(t)
    ok = all(decomposition_check(t, [m]) for m in families)
    _emit({"ok": ok, "type": {str(k): c for k, c in t.items}, "families_checked": len(families)})
    return 0 if ok else 1


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="connected-cm",
        description="Connected graphs with prescribed degrees: rate, embedding, samplers, oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("rate", help="beta, K, gamma, q for a degree distribution")
    sp.add_argument("--p", required=True, help="JSON file or inline {\"weights\": ...}")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(fn=_cmd_rate)

    sp = sub.add_parser("build-nbig", help="enlarged type sequence for the embedding")
    sp.add_argument("--p", required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(fn=_cmd_build_nbig)

    sp = sub.add_parser("sample-cm", help="one seeded configuration-model draw")
    sp.add_argument("--type", required=True, help="JSON file or inline {\"counts\": ...}")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--emit", default=None, help="write edge list here")
    sp.set_defaults(fn=_cmd_sample_cm)

    sp = sub.add_parser("sample-connected", help="uniform connected simple graph")
    sp.add_argument("--type", required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--emit", default=None)
    sp.set_defaults(fn=_cmd_sample_connected)

    sp = sub.add_parser("sample-giant", help="connected graph via the giant embedding")
    sp.add_argument("--p", required=True)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--emit", default=None)
    sp.set_defaults(fn=_cmd_sample_giant)

    sp = sub.add_parser("oracle", help="exact enumeration report for a small type")
    sp.add_argument("--type", required=True)
    sp.set_defaults(fn=_cmd_oracle)

    sp = sub.add_parser("census", help="neighbourhood census of an edge list")
    sp.add_argument("--edges", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(fn=_cmd_census)

    sp = sub.add_parser("mu", help="branching-process tree probabilities")
    sp.add_argument("--p", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--min-prob", type=float, default=1e-4)
    sp.set_defaults(fn=_cmd_mu)

    sp = sub.add_parser("estimate-K", help="Monte Carlo rate curve -log p_conn / n")
    sp.add_argument("--p", required=True)
    sp.add_argument("--n-list", default="100,200,400,800")
    sp.add_argument("--replicates", type=int, default=1_000_000)
    sp.add_argument("--eps", type=float, default=0.05)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--threads", type=int, default=_default_threads())
    sp.add_argument("--method", choices=["auto", "direct", "embedding"], default="auto")
    sp.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    sp.set_defaults(fn=_cmd_estimate_K)

    sp = sub.add_parser("decomp-check", help="decomposition identities for a small type")
    sp.add_argument("--type", required=True)
    sp.set_defaults(fn=_cmd_decomp_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        return _fail(exc, 2)
    except json.JSONDecodeError as exc:
        return _fail(exc, 2)
    except ConnectedCMError as exc:
        return _fail(exc, 1)
    except ValueError as exc:
        return _fail(exc, 1)


if __name__ == "__main__":
    sys.exit(main())
