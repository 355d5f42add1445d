"""Ground truth by exhaustive enumeration of all n! arrival orders.

Every closed form in `exact` is checkable against the counts produced here
as an equality of rationals, and the combinatorial identities the analysis
rests on are verified as exact integer-count equalities, configuration by
configuration.  Counts fit in int64 for the whole supported range (n <= 12).

Enumeration is partitioned by the first arrival (n chunks in lexicographic
order) and merged by addition, so it parallelizes deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from ._parallel import ordered_map, resolve_threads
from .core import ENUMERATION_LIMIT, PolicyParams, ProbTable, SizeError, validate_params
from .policies import PolicyKind

#: verify_identities sweeps every configuration up to this many items.
VERIFY_LIMIT = 10


def _policy_code(kind: PolicyKind) -> int:
    return _kernels.SINGLE_REF if kind is PolicyKind.SINGLE_REF else _kernels.OPTIMISTIC


@dataclass(frozen=True)
class OracleTable:
    """Exact acceptance counts for one policy configuration.

    counts[i, j] = number of arrival orders in which the item of rank i+1 is
    the (j+1)-th accept; total = n!.
    """

    params: PolicyParams
    kind: PolicyKind
    counts: np.ndarray
    total: int

    def prob(self, i: int, j: int) -> Fraction:
        """P(item ranked i is the j-th accept); both indices 1-based."""
        return Fraction(int(self.counts[i - 1, j - 1]), self.total)

    def item_prob(self, i: int) -> Fraction:
        """P(item ranked i is accepted at all)."""
        return Fraction(int(self.counts[i - 1].sum()), self.total)

    def item_count(self, i: int) -> int:
        return int(self.counts[i - 1].sum())

    def ratio_topk(self) -> Fraction:
        """(1/k) * sum of acceptance probabilities of the k best items."""
        k = self.params.k
        return Fraction(int(self.counts[:k].sum()), k * self.total)

    def prob_table(self) -> ProbTable:
        entries = tuple(
            tuple(Fraction(int(c), self.total) for c in row) for row in self.counts
        )
        return ProbTable(entries=entries, representation="rational")


def oracle_table(
    params: PolicyParams, kind: PolicyKind, threads: int | None = None
) -> OracleTable:
    """Run the policy on every one of the n! arrival orders and count."""
    n, k, t = params.n, params.k, params.t
    if n > ENUMERATION_LIMIT:
        raise SizeError(
            f"oracle enumeration is limited to n <= {ENUMERATION_LIMIT}, got n={n}"
        )
    if kind is PolicyKind.SINGLE_REF and params.r is None:
        raise ValueError("single-ref requires the reference rank r")
    r = params.r if params.r is not None else 1
    code = _policy_code(kind)
    workers = resolve_threads(threads)
    chunks = ordered_map(
        lambda lead: _kernels.count_table_chunk(n, k, t, r, code, lead),
        list(range(1, n + 1)),
        workers,
    )
    counts = np.sum(chunks, axis=0)
    return OracleTable(params=params, kind=kind, counts=counts, total=math.factorial(n))


def count_P1_minus_P1prime(n: int, t: int, threads: int | None = None) -> int:
    """Number of arrival orders in which the second-best item lands in the
    sampling and the optimistic policy (budget 2) accepts the best item as
    its second accept.  Divided by n!, this is the exact delta surplus."""
    validate_params(n, 2, t)
    if n > ENUMERATION_LIMIT:
        raise SizeError(
            f"oracle enumeration is limited to n <= {ENUMERATION_LIMIT}, got n={n}"
        )
    workers = resolve_threads(threads)
    chunks = ordered_map(
        lambda lead: _kernels.count_delta_chunk(n, t, lead),
        list(range(1, n + 1)),
        workers,
    )
    return int(sum(chunks))


# ---------------------------------------------------------------------------
# Identity verification sweep


@dataclass(frozen=True)
class IdentityCheck:
    """One identity verified on one configuration."""

    identity: str
    config: dict
    instances: int
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    n_max: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def total_instances(self) -> int:
        return sum(c.instances for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_monotone(table: OracleTable, identity: str, config: dict) -> IdentityCheck:
    sums = table.counts.sum(axis=1)
    failures = [
        f"item {i + 1} count {sums[i]} < item {i + 2} count {sums[i + 1]}"
        for i in range(len(sums) - 1)
        if sums[i] < sums[i + 1]
    ]
    return IdentityCheck(identity, config, instances=len(sums) - 1, failures=tuple(failures))


def verify_identities(n_max: int, threads: int | None = None) -> VerificationReport:
    """Sweep all valid configurations with n <= n_max and check, as exact
    integer-count equalities:

    * both policies accept better items at least as often as worse ones;
    * a mid item (reference rank r exceeded by i) is accepted with one shared
      probability in slots 1..i+1, and with the top item's probability in any
      later slot;
    * with budget 2, the optimistic policy takes the second-best item exactly
      as often as the classical budget-1 rule takes the best;
    * the best item's surplus event count matches: orders accepting the best
      item split into as many "clean" ones as orders accepting the second
      best.
    """
    if n_max > VERIFY_LIMIT:
        raise SizeError(f"verification sweep is limited to n_max <= {VERIFY_LIMIT}")
    report = VerificationReport(n_max=n_max)
    for n in range(2, n_max + 1):
        for k in range(1, (n - 1) // 2 + 1):
            for t in range(k + 1, n - k + 1):
                opt_params = validate_params(n, k, t)
                opt = oracle_table(opt_params, PolicyKind.OPTIMISTIC, threads)
                config = {"n": n, "k": k, "t": t}
                report.checks.append(
                    _check_monotone(opt, "monotone-acceptance[optimistic]", config)
                )
                for r in range(1, k + 1):
                    params = validate_params(n, k, t, r)
                    sr = oracle_table(params, PolicyKind.SINGLE_REF, threads)
                    config_r = {"n": n, "k": k, "t": t, "r": r}
                    report.checks.append(
                        _check_monotone(sr, "monotone-acceptance[single-ref]", config_r)
                    )
                    if k - r >= 1:
                        report.checks.append(_check_mid_item_plateau(sr, config_r))
                        report.checks.append(_check_mid_item_late_slots(sr, config_r))
                if k == 2:
                    report.checks.append(
                        _check_second_best_transfer(opt, threads, config)
                    )
                    report.checks.append(_check_best_item_split(opt, threads, config))
    return report


def _check_mid_item_plateau(sr: OracleTable, config: dict) -> IdentityCheck:
    # item r+i is the j-th accept equally often for every j in 1..i+1
    k, r = sr.params.k, sr.params.r
    instances = 0
    failures = []
    for i in range(1, k - r + 1):
        ref = int(sr.counts[r + i - 1, i])  # slot i+1, 0-based column i
        for j in range(1, i + 1):
            instances += 1
            got = int(sr.counts[r + i - 1, j - 1])
            if got != ref:
                failures.append(
                    f"item {r + i}: slot {j} count {got} != slot {i + 1} count {ref}"
                )
    return IdentityCheck("mid-item-slot-plateau", config, instances, tuple(failures))


def _check_mid_item_late_slots(sr: OracleTable, config: dict) -> IdentityCheck:
    # item r+i in slot i+j matches the top item in the same slot
    k, r = sr.params.k, sr.params.r
    instances = 0
    failures = []
    for i in range(1, k - r + 1):
        for j in range(1, k - i + 1):
            instances += 1
            got = int(sr.counts[r + i - 1, i + j - 1])
            want = int(sr.counts[0, i + j - 1])
            if got != want:
                failures.append(
                    f"item {r + i}: slot {i + j} count {got} != top item count {want}"
                )
    return IdentityCheck("mid-item-late-slots-match-top", config, instances, tuple(failures))


def _check_second_best_transfer(
    opt: OracleTable, threads: int | None, config: dict
) -> IdentityCheck:
    n, t = opt.params.n, opt.params.t
    classical = oracle_table(
        validate_params(n, 1, t, 1), PolicyKind.SINGLE_REF, threads
    )
    got = opt.item_count(2)
    want = classical.item_count(1)
    failures = ()
    if got != want:
        failures = (f"optimistic takes rank 2 in {got} orders, classical takes rank 1 in {want}",)
    return IdentityCheck("optimistic-k2-second-best-equals-classical", config, 1, failures)


def _check_best_item_split(
    opt: OracleTable, threads: int | None, config: dict
) -> IdentityCheck:
    n, t = opt.params.n, opt.params.t
    delta_count = count_P1_minus_P1prime(n, t, threads)
    p1_clean = opt.item_count(1) - delta_count
    p2 = opt.item_count(2)
    failures = ()
    if p1_clean != p2:
        failures = (
            f"best-item orders minus surplus = {p1_clean}, second-best orders = {p2}",
        )
    return IdentityCheck("optimistic-k2-best-item-split", config, 1, failures)
