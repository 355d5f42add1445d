"""Closed-form finite-n acceptance probabilities and competitive ratios.

Everything here is an exact expression evaluated either in rational
arithmetic (`fractions.Fraction`, default for n <= 12 so results can be
compared to enumeration counts as equalities) or in float via overflow-free
term recurrences (default for large n).  The float and rational evaluations
agree to 1e-12 relative wherever both are practical.

Covered quantities, all for uniformly random arrival orders:

* acceptance probability of a top-r ("dominating") item in a given accept
  slot under the single-reference policy;
* per-item, per-slot probabilities for all top-k items, which reduce to
  dominating-item probabilities;
* the single-reference competitive ratio as a weighted slot sum;
* the optimistic policy's k=2 quantities: the second-best item is accepted
  with exactly the classical secretary probability, and the best item adds a
  closed-form surplus delta, giving ratio = p2 + delta/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import PolicyParams, RangeError, validate_params

#: Largest n for which "auto" picks rational arithmetic.
RATIONAL_AUTO_LIMIT = 12


def _resolve_method(n: int, method: str) -> str:
    if method == "auto":
        return "rational" if n <= RATIONAL_AUTO_LIMIT else "float"
    if method not in ("rational", "float"):
        raise ValueError(f"method must be 'auto', 'rational' or 'float', got {method!r}")
    return method


def falling_factorial(n: int, k: int) -> int:
    """n(n-1)...(n-k+1), exact (arbitrary precision)."""
    if k < 0 or n < 0:
        raise RangeError(f"falling factorial needs n, k >= 0, got n={n}, k={k}")
    if k > n:
        raise RangeError(f"falling factorial needs k <= n, got n={n}, k={k}")
    out = 1
    for a in range(k):
        out *= n - a
    return out


def hypergeo_all_blue(N: int, M: int, K: int) -> Fraction:
    """Probability that K draws without replacement from N balls (M blue)
    are all blue: C(M, K) / C(N, K); zero when K > M."""
    if not 0 <= K <= N:
        raise RangeError(f"need 0 <= K <= N, got K={K}, N={N}")
    if not 0 <= M <= N:
        raise RangeError(f"need 0 <= M <= N, got M={M}, N={N}")
    if K > M:
        return Fraction(0)
    return Fraction(math.comb(M, K), math.comb(N, K))


def _require_r(params: PolicyParams) -> int:
    if params.r is None:
        raise RangeError("single-ref quantities require the reference rank r")
    return params.r


@dataclass(frozen=True)
class DominatingProbSpec:
    """One (params, slot) query for a dominating item, with the two falling-
    factorial products the closed form is built from.

    `kappa` counts arrangements of the j earlier accepts, `tau` those of the
    r sampling items ahead of the reference; slot indices j are 0-based (slot
    j+1 holds the (j+1)-th accepted item).
    """

    params: PolicyParams
    j: int

    def __post_init__(self):
        r = _require_r(self.params)
        if not 0 <= self.j <= self.params.k - 1:
            raise RangeError(f"slot index j must be in [0, k-1], got j={self.j}")
        object.__setattr__(self, "_kappa", falling_factorial(r - 1 + self.j, self.j))
        object.__setattr__(self, "_tau", falling_factorial(self.params.t - 1, r))

    @property
    def kappa(self) -> int:
        return self._kappa  # type: ignore[attr-defined]

    @property
    def tau(self) -> int:
        return self._tau  # type: ignore[attr-defined]


def _p_dom_rational(spec: DominatingProbSpec) -> Fraction:
    n, t, k, r = spec.params.n, spec.params.t, spec.params.k, spec.params.r
    j = spec.j
    total = Fraction(0)
    for i in range(t + j, n + 1):
        total += Fraction(math.comb(i - t, j), falling_factorial(i - 1, r + j))
    return Fraction(spec.kappa * spec.tau, n) * total


def _p_dom_float(spec: DominatingProbSpec) -> float:
    # Scale-free: terms relative to the first one via the ratio
    #   term(i+1)/term(i) = (i+1-t)/(i+1-t-j) * (i-r-j)/i,
    # so no factorial ever materializes in float.  The prefactor, a ratio of
    # exact integers, converts through Fraction for a correctly rounded float.
    n, t, r = spec.params.n, spec.params.t, spec.params.r
    j = spec.j
    i = np.arange(t + j, n, dtype=np.float64)
    u = np.empty(n - (t + j) + 1, dtype=np.float64)
    u[0] = 1.0
    if len(i):
        np.cumprod(((i + 1 - t) / (i + 1 - t - j)) * ((i - r - j) / i), out=u[1:])
    total = float(np.sum(u))
    prefactor = Fraction(
        spec.kappa * spec.tau, n * falling_factorial(t + j - 1, r + j)
    )
    return float(prefactor) * total


def p_dom_exact(params: PolicyParams, j: int, method: str = "auto"):
    """Probability that a fixed top-r item is the (j+1)-th accept of the
    single-reference policy (0-based slot j).  All top-r items share it."""
    spec = DominatingProbSpec(params, j)
    if _resolve_method(params.n, method) == "rational":
        return _p_dom_rational(spec)
    return _p_dom_float(spec)


def p_item_exact(params: PolicyParams, i: int, j: int, method: str = "auto"):
    """Probability that the item ranked i (1 <= i <= k) is the j-th accept
    (1-based slot j) of the single-reference policy.

    Ranks above the reference rank map directly to the dominating-item
    probability for the same slot.  An item ranked r+m is accepted in slots
    1..m+1 with one shared probability (the dominating value for slot m+1),
    and in any later slot with the dominating value for that slot.  Ranks
    beyond k have no closed form here and are only available via the
    enumeration oracle.
    """
    r = _require_r(params)
    k = params.k
    if not 1 <= i <= k:
        raise RangeError(f"item rank i must be in [1, k]=[1, {k}], got i={i}")
    if not 1 <= j <= k:
        raise RangeError(f"slot j must be in [1, k]=[1, {k}], got j={j}")
    if i <= r:
        return p_dom_exact(params, j - 1, method)
    m = i - r
    if j <= m:
        return p_dom_exact(params, m, method)
    return p_dom_exact(params, j - 1, method)


@lru_cache(maxsize=None)
def slot_weights(k: int, r: int) -> tuple[int, ...]:
    """Weight of each accept slot in the single-reference competitive ratio.

    Slot j (1-based) contributes r + 2(j-1) while j <= k-r+1 and k afterwards;
    the weights always sum to k**2.
    """
    if not 1 <= r <= k:
        raise RangeError(f"need 1 <= r <= k, got r={r}, k={k}")
    weights = tuple(
        r + 2 * (j - 1) if j <= k - r + 1 else k for j in range(1, k + 1)
    )
    assert sum(weights) == k * k
    return weights


def cr_single_ref_exact(params: PolicyParams, method: str = "auto"):
    """Competitive ratio of the single-reference policy at finite n.

    Equals the plain average (1/k) * sum of per-item acceptance probabilities
    over the top k items; the slot-weight form below is the same sum after
    collapsing every item onto dominating-slot probabilities.
    """
    r = _require_r(params)
    k = params.k
    weights = slot_weights(k, r)
    slots = [p_dom_exact(params, j, method) for j in range(k)]
    total = sum(w * p for w, p in zip(weights, slots))
    if isinstance(total, Fraction):
        return total / k
    return total / k


def classical_secretary_prob(n: int, t: int, method: str = "auto"):
    """Probability that the classical stop-after-sampling rule (budget 1,
    best sampling item as reference) accepts the best item:
    (t-1)/n * sum_{i=t..n} 1/(i-1)."""
    if not 1 < t <= n:
        raise RangeError(f"need 1 < t <= n, got t={t}, n={n}")
    if _resolve_method(n, method) == "rational":
        return Fraction(t - 1, n) * sum(Fraction(1, i - 1) for i in range(t, n + 1))
    inv = 1.0 / np.arange(t - 1, n, dtype=np.float64)
    return (t - 1) / n * float(np.sum(inv))


def p2_optimistic_k2(n: int, t: int, method: str = "auto"):
    """Probability that the optimistic policy with budget 2 accepts the
    second-best item: exactly the classical single-item probability above."""
    validate_params(n, 2, t)
    return classical_secretary_prob(n, t, method)


def optimistic_tail_sum(n: int, t: int, method: str = "auto"):
    """sum_{i=t..n-1} (n-i) / ((i-2)(i-1)), the kernel of the delta term."""
    if t < 3:
        raise RangeError(f"need t >= 3, got t={t}")
    if t > n:
        raise RangeError(f"need t <= n, got t={t}, n={n}")
    if _resolve_method(n, method) == "rational":
        return sum(Fraction(n - i, (i - 2) * (i - 1)) for i in range(t, n))
    i = np.arange(t, n, dtype=np.float64)
    return float(np.sum((n - i) / ((i - 2) * (i - 1))))


def delta_optimistic_k2(n: int, t: int, method: str = "auto"):
    """Surplus probability of the best item over the second-best under the
    optimistic policy with budget 2:
    (t-1)/n * (t-2)/(n-1) * sum_{i=t..n-1} (n-i)/((i-2)(i-1))."""
    validate_params(n, 2, t)
    tail = optimistic_tail_sum(n, t, method)
    if isinstance(tail, Fraction):
        return Fraction((t - 1) * (t - 2), n * (n - 1)) * tail
    return (t - 1) * (t - 2) / (n * (n - 1)) * tail


def cr_optimistic_k2_exact(n: int, t: int, method: str = "auto"):
    """Competitive ratio of the optimistic policy with budget 2 at finite n:
    (p1 + p2)/2 with p1 = p2 + delta, i.e. p2 + delta/2."""
    p2 = p2_optimistic_k2(n, t, method)
    delta = delta_optimistic_k2(n, t, method)
    return p2 + delta / 2


@dataclass(frozen=True)
class OptimisticK2Report:
    """Exact k=2 optimistic quantities for one (n, t)."""

    n: int
    t: int
    p2: object
    delta: object
    p1: object
    ratio: object

    @classmethod
    def compute(cls, n: int, t: int, method: str = "auto") -> "OptimisticK2Report":
        p2 = p2_optimistic_k2(n, t, method)
        delta = delta_optimistic_k2(n, t, method)
        return cls(n=n, t=t, p2=p2, delta=delta, p1=p2 + delta, ratio=p2 + delta / 2)
