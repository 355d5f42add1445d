"""Domain types and permutation plumbing shared by all engines.

Items are identified by rank: rank 1 is the best item, rank n the worst, and
rank a beats rank b iff a < b.  An arrival order is a permutation of the ranks
1..n; the item at position p of the sequence is the p-th arrival.  Policies
are configured by (n, k, t, r): n items, budget k, sampling threshold t (the
first t-1 arrivals are always rejected), and reference rank r (only used by
the single-reference policy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from ._rng import Xoshiro256StarStar

#: Largest n for which exhaustive permutation enumeration is allowed (12! runs).
ENUMERATION_LIMIT = 12


class RangeError(ValueError):
    """A parameter violates its documented range constraint."""


class SizeError(ValueError):
    """An input is too large for an exhaustive computation."""


Rank = int  # in [1, n]; smaller is better


@dataclass(frozen=True)
class ArrivalOrder:
    """One input sequence: a permutation of the ranks 1..n."""

    seq: tuple[Rank, ...]

    @property
    def n(self) -> int:
        return len(self.seq)

    @staticmethod
    def from_ranks(ranks) -> "ArrivalOrder":
        """Validate and wrap a rank sequence (must be a bijection on 1..n)."""
        seq = tuple(ranks)
        n = len(seq)
        if sorted(seq) != list(range(1, n + 1)):
            raise RangeError("arrival order must be a permutation of 1..n")
        return ArrivalOrder(seq)


@dataclass(frozen=True)
class PolicyParams:
    """Validated (n, k, t, r) policy configuration.

    Invariants: n >= 2, k >= 1, k < t <= n - k, and 1 <= r <= k when r is
    given.  t > k guarantees the sampling holds at least k items, so the
    reference items of both policies always exist.
    """

    n: int
    k: int
    t: int
    r: int | None = None

    def __post_init__(self):
        validate_params(self.n, self.k, self.t, self.r)


def validate_params(n: int, k: int, t: int, r: int | None = None) -> PolicyParams:
    """Check policy parameters, returning them as a `PolicyParams`.

    Raises `RangeError` naming the violated constraint.
    """
    if n < 2:
        raise RangeError(f"n must be at least 2, got n={n}")
    if k < 1:
        raise RangeError(f"k must be at least 1, got k={k}")
    if t <= k:
        raise RangeError(f"t must exceed k: got t={t}, k={k}")
    if t > n - k:
        raise RangeError(f"t must be at most n-k={n - k}, got t={t}")
    if r is not None:
        if r < 1 or r > k:
            raise RangeError(f"r must be in [1, k]=[1, {k}], got r={r}")
    params = object.__new__(PolicyParams)
    object.__setattr__(params, "n", n)
    object.__setattr__(params, "k", k)
    object.__setattr__(params, "t", t)
    object.__setattr__(params, "r", r)
    return params


@dataclass(frozen=True)
class AcceptanceRecord:
    """What a policy accepted on one sequence.

    `accepts` lists (position, rank) pairs in arrival order; positions are
    1-based and at least t.  `reference_ranks` holds the ranks of the
    reference items read off the sampling phase (a single rank for the
    single-reference policy, the k best sampling ranks for the optimistic
    one, best first).
    """

    accepts: tuple[tuple[int, Rank], ...]
    reference_ranks: tuple[Rank, ...]


@dataclass(frozen=True)
class ProbTable:
    """Per-item, per-slot acceptance probabilities.

    entries[i][j] is the probability that the item of rank i+1 is accepted as
    the (j+1)-th accept.  `representation` is "rational" (fractions.Fraction
    entries) or "float".
    """

    entries: tuple[tuple, ...]
    representation: str  # "rational" | "float"

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row_sum(self, i: int):
        """Total acceptance probability of the item ranked i (1-based)."""
        return sum(self.entries[i - 1])

    def validate(self, k_budget: int | None = None) -> None:
        """Check range, budget, and better-items-win monotonicity invariants."""
        total = 0
        prev = None
        for i in range(1, self.n + 1):
            row = self.entries[i - 1]
            for p in row:
                if p < 0 or p > 1:
                    raise RangeError(f"probability out of [0,1] at item {i}")
            s = sum(row)
            if s > 1 + 1e-12:
                raise RangeError(f"item {i} row sum exceeds 1")
            if prev is not None and s > prev + 1e-12:
                raise RangeError(f"row sums increase from item {i - 1} to {i}")
            prev = s
            total += s
        budget = k_budget if k_budget is not None else self.k
        if total > budget + 1e-9:
            raise RangeError("expected number of accepts exceeds the budget k")


def random_arrival_order(n: int, seed: int) -> ArrivalOrder:
    """Uniformly random arrival order, deterministic per seed.

    Uses stream 0 of the seed; simulation trial i uses stream i of the same
    seed, so trial 0 of a Monte Carlo run sees exactly this order.
    """
    if n < 1:
        raise RangeError(f"n must be at least 1, got n={n}")
    ranks = list(range(1, n + 1))
    Xoshiro256StarStar(seed, stream=0).shuffle(ranks)
    return ArrivalOrder(tuple(ranks))


def enumerate_arrival_orders(n: int) -> Iterator[ArrivalOrder]:
    """Yield all n! arrival orders exactly once, in lexicographic order."""
    if n > ENUMERATION_LIMIT:
        raise SizeError(
            f"enumeration is limited to n <= {ENUMERATION_LIMIT} (n! sequences), got n={n}"
        )
    if n < 1:
        raise RangeError(f"n must be at least 1, got n={n}")
    for seq in permutations(range(1, n + 1)):
        yield ArrivalOrder(seq)


def count_arrival_orders(n: int) -> int:
    return math.factorial(n)
