#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python reference.

Times the two hot loops (exhaustive enumeration and simulation trials) on
both backends and reports the speedup.  Run:

    python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

import numpy as np

from ksecretary._kernels import load_backend


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_enumeration(backend, n, k, t, r):
    def run():
        total = None
        for lead in range(1, n + 1):
            chunk = backend.count_table_chunk(n, k, t, r, backend.SINGLE_REF, lead)
            total = chunk if total is None else total + chunk
        return total

    return run


def bench_trials(backend, n, k, t, r, trials):
    return lambda: backend.mc_chunk(n, k, t, r, backend.SINGLE_REF, 42, 0, trials)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    pure = load_backend("python")
    try:
        fast = load_backend("cython")
    except ImportError:
        print("compiled backend not available; build the extension first")
        return 1

    if args.quick:
        enum_cfg = dict(n=7, k=3, t=4, r=2)
        trial_cfg = dict(n=500, k=2, t=128, r=1, trials=2_000)
    else:
        enum_cfg = dict(n=9, k=4, t=5, r=2)
        trial_cfg = dict(n=5_000, k=2, t=1273, r=1, trials=20_000)

    print(f"{'workload':<34} {'python':>10} {'cython':>10} {'speedup':>9}")

    t_pure, counts_pure = time_call(bench_enumeration(pure, **enum_cfg), repeats=1)
    t_fast, counts_fast = time_call(bench_enumeration(fast, **enum_cfg))
    assert np.array_equal(counts_pure, counts_fast), "backends disagree"
    label = "enumerate n={n} k={k} t={t} r={r}".format(**enum_cfg)
    print(f"{label:<34} {t_pure:>9.3f}s {t_fast:>9.3f}s {t_pure / t_fast:>8.1f}x")

    t_pure, out_pure = time_call(bench_trials(pure, **trial_cfg), repeats=1)
    t_fast, out_fast = time_call(bench_trials(fast, **trial_cfg))
    assert out_pure[1] == out_fast[1], "backends disagree"
    label = "simulate n={n} trials={trials}".format(**trial_cfg)
    print(f"{label:<34} {t_pure:>9.3f}s {t_fast:>9.3f}s {t_pure / t_fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
