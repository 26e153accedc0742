#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--quick]

Both backends implement identical contracts and bit-identical random
streams, so the comparison is purely about speed.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from connected_cm import _kernels_py as pyk
from connected_cm.confmodel import stub_layout
from connected_cm.degrees import TypeSequence
from connected_cm.rng import split_seed_array

try:
    from connected_cm import _kernels as cyk
except ImportError:
    cyk = None


def timeit(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench(name, fn_cy, fn_py, *args, repeat=3):
    t_py = timeit(fn_py, *args, repeat=repeat)
    if cyk is None:
        print(f"{name:<42} python {t_py*1e3:9.2f} ms   (extension not built)")
        return
    t_cy = timeit(fn_cy, *args, repeat=repeat)
    print(
        f"{name:<42} cython {t_cy*1e3:9.2f} ms   python {t_py*1e3:9.2f} ms"
        f"   speedup {t_py/t_cy:7.1f}x"
    )


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    scale = 10 if args.quick else 1

    t = TypeSequence({1: 500, 4: 500})
    sv, vd = stub_layout(t)
    seeds = split_seed_array(0, 0, 2000 // scale)
    print(f"batch workloads on type {{1:500, 4:500}} (ell = {t.ell}):")
    bench(
        f"classify_flags, {len(seeds)} draws",
        lambda: cyk.classify_flags(sv, t.n, seeds) if cyk else None,
        lambda: pyk.classify_flags(sv, t.n, seeds),
    )
    bench(
        f"giant_type_counts, {len(seeds)} draws",
        lambda: cyk.giant_type_counts(sv, vd, seeds, 4) if cyk else None,
        lambda: pyk.giant_type_counts(sv, vd, seeds, 4),
    )
    target = np.array([0, 499, 0, 0, 500], dtype=np.int64)
    bench(
        f"giant_match_scan, {len(seeds)} draws",
        lambda: cyk.giant_match_scan(sv, vd, seeds, target, False) if cyk else None,
        lambda: pyk.giant_match_scan(sv, vd, seeds, target, False),
    )
    bench(
        "shuffle_order, 500 shuffles of 2500 stubs",
        lambda: [cyk.shuffle_order(t.ell, s) for s in range(500 // scale)] if cyk else None,
        lambda: [pyk.shuffle_order(t.ell, s) for s in range(500 // scale)],
    )

    small = TypeSequence({1: 4, 2: 2, 3: 2}) if args.quick else TypeSequence({1: 4, 2: 3, 3: 2})
    sv_s, _ = stub_layout(small)
    print(f"\nexhaustive enumeration on type {small.counts} (ell = {small.ell}):")
    bench(
        f"enumerate_counts, ({small.ell - 1})!! matchings",
        lambda: cyk.enumerate_counts(sv_s, small.n) if cyk else None,
        lambda: pyk.enumerate_counts(sv_s, small.n),
        repeat=1,
    )
    bench(
        "component_census, same matchings",
        lambda: cyk.component_census(sv_s, small.n) if cyk else None,
        lambda: pyk.component_census(sv_s, small.n),
        repeat=1,
    )


if __name__ == "__main__":
    main()
