"""Worker-count resolution and deterministic parallel map."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "KSEC_THREADS"


def resolve_threads(threads: int | None) -> int:
    """Explicit argument, else KSEC_THREADS, else all cores; 0 means auto."""
    if threads is None:
        raw = os.environ.get(ENV_THREADS, "").strip()
        threads = int(raw) if raw else 0
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def ordered_map(fn, jobs, threads: int):
    """Apply fn over jobs, results in job order regardless of worker count.

    The compiled kernels release the GIL, so threads give real parallelism
    there; with the pure-Python backend this degrades to serial speed but
    identical results.
    """
    if threads <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return list(pool.map(fn, jobs))
