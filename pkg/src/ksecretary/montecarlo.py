"""Seeded Monte Carlo estimation for n far beyond enumeration range.

Trial i draws its arrival order from stream i of the seed (counter-based
splitting, see _rng), so a run is reproducible bit for bit regardless of how
trials are chunked over workers — chunk boundaries are fixed, results are
merged in chunk order, and all payoff accumulators are integers.

The headline estimate is the mean top-k payoff (fraction of the k best items
accepted), whose expectation is the competitive ratio under the hard
instance with near-identical top-k values.  A value-weighted mode for
arbitrary decreasing value vectors is available for experimentation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._parallel import ordered_map, resolve_threads
from ._rng import MASK64
from .core import PolicyParams, RangeError
from .policies import PolicyKind

#: Trials per kernel call; fixed so results never depend on the worker count.
CHUNK_TRIALS = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    """Accumulated simulation outcome.

    slot_counts[i, j] counts trials in which the item ranked i+1 (only the k
    best are tracked) was the (j+1)-th accept; payoff_sum and payoff_sumsq
    accumulate the per-trial number of accepted top-k items and its square.
    """

    params: PolicyParams
    kind: PolicyKind
    trials: int
    seed: int
    slot_counts: np.ndarray
    payoff_sum: int
    payoff_sumsq: int
    value_sum: float | None = None
    value_sumsq: float | None = None
    opt_value: float | None = None

    @property
    def prob_estimates(self) -> np.ndarray:
        """Per-item, per-slot acceptance probability estimates (k x k)."""
        return self.slot_counts / self.trials

    @property
    def std_errors(self) -> np.ndarray:
        """Bernoulli standard errors sqrt(p(1-p)/trials), entrywise."""
        p = self.prob_estimates
        return np.sqrt(p * (1.0 - p) / self.trials)

    @property
    def ratio_estimate(self) -> float:
        """Mean top-k payoff: the competitive-ratio estimate."""
        return self.payoff_sum / (self.params.k * self.trials)

    @property
    def ratio_se(self) -> float:
        k, trials = self.params.k, self.trials
        mean = self.ratio_estimate
        var = self.payoff_sumsq / (k * k * trials) - mean * mean
        return math.sqrt(max(var, 0.0) / trials)

    @property
    def value_ratio_estimate(self) -> float | None:
        if self.value_sum is None:
            return None
        return (self.value_sum / self.trials) / self.opt_value


def _validate_values(values, n: int, k: int) -> np.ndarray:
    vals = np.asarray(values, dtype=np.float64)
    if vals.shape != (n,):
        raise RangeError(f"values must have shape ({n},), got {vals.shape}")
    if np.any(vals < 0):
        raise RangeError("values must be non-negative")
    if np.any(np.diff(vals) > 0):
        raise RangeError("values must be non-increasing in rank")
    return vals


def mc_estimate(
    params: PolicyParams,
    kind: PolicyKind,
    trials: int,
    seed: int = 0,
    values=None,
    threads: int | None = None,
) -> McEstimate:
    """Estimate acceptance probabilities and competitive ratio by simulation."""
    if trials < 1:
        raise RangeError(f"trials must be at least 1, got {trials}")
    if seed < 0:
        raise RangeError(f"seed must be non-negative, got {seed}")
    if kind is PolicyKind.SINGLE_REF and params.r is None:
        raise ValueError("single-ref requires the reference rank r")
    n, k, t = params.n, params.k, params.t
    r = params.r if params.r is not None else 1
    code = _kernels.SINGLE_REF if kind is PolicyKind.SINGLE_REF else _kernels.OPTIMISTIC
    vals = None if values is None else _validate_values(values, n, k)
    seed64 = seed & MASK64

    starts = list(range(0, trials, CHUNK_TRIALS))
    jobs = [(s, min(CHUNK_TRIALS, trials - s)) for s in starts]
    workers = resolve_threads(threads)
    results = ordered_map(
        lambda job: _kernels.mc_chunk(n, k, t, r, code, seed64, job[0], job[1], vals),
        jobs,
        workers,
    )

    slot_counts = np.zeros((k, k), dtype=np.int64)
    payoff_sum = 0
    payoff_sumsq = 0
    value_sum = 0.0
    value_sumsq = 0.0
    for slots, ps, psq, vs, vsq in results:  # chunk order: deterministic merge
        slot_counts += slots
        payoff_sum += int(ps)
        payoff_sumsq += int(psq)
        value_sum += vs
        value_sumsq += vsq
    return McEstimate(
        params=params,
        kind=kind,
        trials=trials,
        seed=seed,
        slot_counts=slot_counts,
        payoff_sum=payoff_sum,
        payoff_sumsq=payoff_sumsq,
        value_sum=value_sum if vals is not None else None,
        value_sumsq=value_sumsq if vals is not None else None,
        opt_value=float(np.sum(vals[:k])) if vals is not None else None,
    )
