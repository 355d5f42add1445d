"""Online execution of the two threshold selection policies.

Both policies reject the first t-1 arrivals (the sampling phase) and then
accept items as they arrive, comparing each against a reference item taken
from the sampling:

* single-reference: one fixed reference, the r-th best sampling item; the
  first k arrivals that beat it are accepted.
* optimistic: the k best sampling items serve as references, consumed worst
  to best; accept j consults the (k-j+1)-th best sampling item, regardless of
  how good earlier accepts were.

These are the executable reference semantics; the enumeration and simulation
kernels inline the same logic for speed and are tested against this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import AcceptanceRecord, ArrivalOrder, PolicyParams


class PolicyKind(enum.Enum):
    SINGLE_REF = "single-ref"
    OPTIMISTIC = "optimistic"


@dataclass(frozen=True)
class Policy:
    """A policy kind bound to its parameters (optimistic ignores r)."""

    kind: PolicyKind
    params: PolicyParams

    def __post_init__(self):
        if self.kind is PolicyKind.SINGLE_REF and self.params.r is None:
            raise ValueError("single-ref requires the reference rank r")

    def run(self, order: ArrivalOrder) -> AcceptanceRecord:
        if self.kind is PolicyKind.SINGLE_REF:
            return run_single_ref(self.params, order)
        return run_optimistic(self.params, order)


def _check_order(params: PolicyParams, order: ArrivalOrder) -> None:
    if order.n != params.n:
        raise ValueError(f"order has length {order.n}, params expect n={params.n}")


def run_single_ref(params: PolicyParams, order: ArrivalOrder) -> AcceptanceRecord:
    """Run the single-reference policy on one arrival order."""
    if params.r is None:
        raise ValueError("single-ref requires the reference rank r")
    _check_order(params, order)
    seq = order.seq
    t, k, r = params.t, params.k, params.r
    reference = sorted(seq[: t - 1])[r - 1]  # rank of the r-th best sampling item
    accepts = []
    for pos in range(t, params.n + 1):
        rank = seq[pos - 1]
        if rank < reference:
            accepts.append((pos, rank))
            if len(accepts) == k:
                break
    return AcceptanceRecord(tuple(accepts), (reference,))


def run_optimistic(params: PolicyParams, order: ArrivalOrder) -> AcceptanceRecord:
    """Run the optimistic policy on one arrival order."""
    _check_order(params, order)
    seq = order.seq
    t, k = params.t, params.k
    references = sorted(seq[: t - 1])[:k]  # ranks of the k best sampling items
    accepts = []
    for pos in range(t, params.n + 1):
        rank = seq[pos - 1]
        # accept j+1 (0-based j = len(accepts)) consults the (k-j)-th best
        if rank < references[k - 1 - len(accepts)]:
            accepts.append((pos, rank))
            if len(accepts) == k:
                break
    return AcceptanceRecord(tuple(accepts), tuple(references))


def payoff_topk(record: AcceptanceRecord, k: int) -> Fraction:
    """Fraction of the k best items that were accepted.

    Under the hard instance that makes the competitive ratio tight (top-k
    values nearly equal, the rest near zero), this is the per-sequence payoff
    ratio, so its expectation over uniform orders is the competitive ratio.
    """
    hits = sum(1 for _, rank in record.accepts if rank <= k)
    return Fraction(hits, k)
