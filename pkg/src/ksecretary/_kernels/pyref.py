"""Pure-Python kernel implementations.

Reference twin of the compiled extension: same function signatures, same
deterministic outputs bit for bit (enumeration order, RNG streams, counters).
Selected automatically when the extension is unavailable or when
KSEC_PURE_PYTHON=1 is set.  Orders of magnitude slower on large inputs; see
benchmarks/bench_backends.py.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .._rng import Xoshiro256StarStar

NAME = "python"

SINGLE_REF = 0
OPTIMISTIC = 1


def count_table_chunk(n: int, k: int, t: int, r: int, policy: int, lead: int) -> np.ndarray:
    """Acceptance counts over all permutations with first element `lead`.

    Returns an (n, k) int64 matrix: entry (i, j) counts permutations in which
    rank i+1 is the (j+1)-th accept.  Iterates permutations of the remaining
    elements in lexicographic order.
    """
    counts = [[0] * k for _ in range(n)]
    rest = [x for x in range(1, n + 1) if x != lead]
    sample_len = t - 1
    ref_size = r if policy == SINGLE_REF else k
    for tail in permutations(rest):
        arr = (lead,) + tail
        best = sorted(arr[:sample_len])[:ref_size]
        cnt = 0
        if policy == SINGLE_REF:
            z = best[r - 1]
            for pos in range(sample_len, n):
                v = arr[pos]
                if v < z:
                    counts[v - 1][cnt] += 1
                    cnt += 1
                    if cnt == k:
                        break
        else:
            for pos in range(sample_len, n):
                v = arr[pos]
                if v < best[k - 1 - cnt]:
                    counts[v - 1][cnt] += 1
                    cnt += 1
                    if cnt == k:
                        break
    return np.asarray(counts, dtype=np.int64)


def count_delta_chunk(n: int, t: int, lead: int) -> int:
    """Count permutations (first element `lead`) where rank 2 is in the
    sampling and the optimistic policy with k=2 accepts rank 1 second."""
    count = 0
    rest = [x for x in range(1, n + 1) if x != lead]
    sample_len = t - 1
    for tail in permutations(rest):
        arr = (lead,) + tail
        sample = arr[:sample_len]
        if 2 not in sample:
            continue
        best = sorted(sample)[:2]
        cnt = 0
        for pos in range(sample_len, n):
            v = arr[pos]
            if v < best[1 - cnt]:
                if cnt == 1 and v == 1:
                    count += 1
                cnt += 1
                if cnt == 2:
                    break
    return count


def mc_chunk(
    n: int,
    k: int,
    t: int,
    r: int,
    policy: int,
    seed: int,
    start: int,
    count: int,
    values=None,
):
    """Simulate trials [start, start+count) with per-trial streams of `seed`.

    Returns (slot_counts, payoff_sum, payoff_sumsq, value_sum, value_sumsq):
    slot_counts is (k, k) int64 over the top-k items, payoff_* accumulate the
    per-trial number of accepted top-k items X and X**2, and the value_*
    floats accumulate the accepted value sum when `values` is given.
    """
    slot_counts = [[0] * k for _ in range(k)]
    payoff_sum = 0
    payoff_sumsq = 0
    value_sum = 0.0
    value_sumsq = 0.0
    vals = None if values is None else [float(v) for v in values]
    base = list(range(1, n + 1))
    arr = base[:]
    ref_size = r if policy == SINGLE_REF else k
    sample_len = t - 1
    for trial in range(start, start + count):
        rng = Xoshiro256StarStar(seed, stream=trial)
        below = rng.below
        arr[:] = base
        # sampling phase: shuffle positions forward, keep the ref_size best
        best = [n + 1] * ref_size
        for p in range(sample_len):
            q = p + below(n - p)
            arr[p], arr[q] = arr[q], arr[p]
            v = arr[p]
            if v < best[ref_size - 1]:
                pos = ref_size - 1
                while pos > 0 and best[pos - 1] > v:
                    best[pos] = best[pos - 1]
                    pos -= 1
                best[pos] = v
        # selection phase
        cnt = 0
        hits = 0
        alg = 0.0
        z = best[r - 1] if policy == SINGLE_REF else 0
        for p in range(sample_len, n):
            if n - p > 1:
                q = p + below(n - p)
                arr[p], arr[q] = arr[q], arr[p]
            v = arr[p]
            threshold = z if policy == SINGLE_REF else best[k - 1 - cnt]
            if v < threshold:
                if v <= k:
                    slot_counts[v - 1][cnt] += 1
                    hits += 1
                if vals is not None:
                    alg += vals[v - 1]
                cnt += 1
                if cnt == k:
                    break
        payoff_sum += hits
        payoff_sumsq += hits * hits
        if vals is not None:
            value_sum += alg
            value_sumsq += alg * alg
    return (
        np.asarray(slot_counts, dtype=np.int64),
        payoff_sum,
        payoff_sumsq,
        value_sum,
        value_sumsq,
    )


def xoshiro_outputs(seed: int, stream: int, count: int) -> list:
    """Raw u64 outputs of one stream (cross-backend parity checks)."""
    rng = Xoshiro256StarStar(seed, stream)
    return [rng.next_u64() for _ in range(count)]
