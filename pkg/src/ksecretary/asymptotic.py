"""Large-n limits: slot probabilities, competitive ratios, calculus helpers.

With the sampling length pinned to a fraction c of the input (t - 1 = cn,
n -> infinity), the finite-n slot probabilities converge to n-free
expressions in (r, c, j).  These are what the parameter optimizer maximizes.

The published expression for the reference rank r = 1 is an alternating
binomial sum; for r >= 2 it is one minus a weighted sum.  Both are evaluated
here through algebraically identical positive-term forms (a truncated
logarithm series, and a binomial lower tail), which are immune to the
catastrophic cancellation the alternating binomials develop for slot indices
beyond ~50.  The literal coefficient forms are kept (`*_coeff_form`,
`AsymptoticCoeffs`) and the equivalence is part of the test suite, as exact
rational identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import RangeError
from .exact import slot_weights


def _check_c(c: float) -> None:
    if not 0 < c < 1:
        raise RangeError(f"sampling fraction c must be in (0, 1), got c={c}")


# ---------------------------------------------------------------------------
# Coefficient machinery (literal published form, used for cross-validation)


@dataclass(frozen=True)
class AsymptoticCoeffs:
    """Binomial coefficient families entering the slot-probability formulas.

    betas[l-1] = (-1)**l * C(j, l) for l = 1..j (alternating, r = 1 form);
    alphas[l] = C(j+r-1, l+r-1) for l = 0..j (r >= 2 form).
    """

    j: int
    r: int
    betas: tuple[int, ...]
    alphas: tuple[int, ...]

    @classmethod
    def build(cls, j: int, r: int) -> "AsymptoticCoeffs":
        if j < 0 or r < 1:
            raise RangeError(f"need j >= 0 and r >= 1, got j={j}, r={r}")
        betas = tuple((-1) ** l * math.comb(j, l) for l in range(1, j + 1))
        alphas = tuple(math.comb(j + r - 1, l + r - 1) for l in range(0, j + 1))
        assert alphas[-1] == 1 and alphas[0] == math.comb(j + r - 1, r - 1)
        return cls(j=j, r=r, betas=betas, alphas=alphas)


def beta_weighted_sum(j: int, c):
    """sum_{l=1..j} (-1)**l C(j,l) (c**l - 1)/l  (works on Fraction or float)."""
    coeffs = AsymptoticCoeffs.build(j, 1)
    return sum(b * (c**l - 1) / l for l, b in enumerate(coeffs.betas, start=1))


def truncated_log_series(j: int, c):
    """sum_{m=1..j} (1-c)**m / m: the order-j truncation of -log(c).

    Equal to `beta_weighted_sum(j, c)` term reordering aside; all terms are
    positive, so it is the numerically safe way to evaluate that sum.
    """
    w = 1 - c
    return sum(w**m / m for m in range(1, j + 1))


def alpha_weighted_sum(j: int, r: int, c):
    """sum_{l=0..j} C(j+r-1, l+r-1) (1-c)**(j-l) c**l."""
    coeffs = AsymptoticCoeffs.build(j, r)
    w = 1 - c
    return sum(a * w ** (j - l) * c**l for l, a in enumerate(coeffs.alphas))


def binomial_lower_tail(j: int, r: int, c):
    """sum_{m=0..r-2} C(j+r-1, m) c**m (1-c)**(j+r-1-m).

    This is 1 - c**(r-1) * alpha_weighted_sum(j, r, c): the probability that
    a Binomial(j+r-1, c) stays below r-1.  Positive terms only.
    """
    w = 1 - c
    s = j + r - 1
    return sum(math.comb(s, m) * c**m * w ** (s - m) for m in range(r - 1))


# ---------------------------------------------------------------------------
# Slot probabilities and competitive ratios


def p_dom_asym(r: int, c: float, j: int) -> float:
    """Large-n limit of the dominating-item probability for slot j+1 of the
    single-reference policy with sampling fraction c (lower-bound expression
    with the vanishing terms dropped)."""
    if r < 1 or j < 0:
        raise RangeError(f"need r >= 1 and j >= 0, got r={r}, j={j}")
    _check_c(c)
    if r == 1:
        return c * (math.log(1 / c) - truncated_log_series(j, c))
    return c / (r - 1) * binomial_lower_tail(j, r, c)


def p_dom_asym_coeff_form(r: int, c: float, j: int) -> float:
    """Same quantity via the literal alternating/weighted coefficient sums.

    Accurate in float only for moderate j (the r=1 binomials cancel);
    production code uses `p_dom_asym`.
    """
    if r < 1 or j < 0:
        raise RangeError(f"need r >= 1 and j >= 0, got r={r}, j={j}")
    _check_c(c)
    if r == 1:
        return c * (math.log(1 / c) - beta_weighted_sum(j, c))
    return c / (r - 1) * (1 - c ** (r - 1) * alpha_weighted_sum(j, r, c))


@lru_cache(maxsize=None)
def _lower_tail_binomials(r: int, j_max: int) -> np.ndarray:
    """C(j+r-1, m) as a float matrix over j = 0..j_max, m = 0..r-2."""
    return np.array(
        [[float(math.comb(j + r - 1, m)) for m in range(r - 1)] for j in range(j_max + 1)],
        dtype=np.float64,
    )


def _iter_slot_probs(r: int, c: float, j_max: int):
    """Yield p_dom_asym(r, c, j) for j = 0..j_max in O(1) per slot.

    r = 1 extends the truncated log series one term at a time; r >= 2 peels
    one Bernoulli trial off the binomial lower tail per slot:
    P(j+1) = P(j) - C(j+r-1, r-2) c**(r-1) (1-c)**(j+1).
    """
    w = 1.0 - c
    if r == 1:
        log_term = math.log(1.0 / c)
        series = 0.0
        w_pow = 1.0
        for j in range(j_max + 1):
            yield c * (log_term - series)
            w_pow *= w
            series += w_pow / (j + 1)
        return
    scale = c / (r - 1)
    tail = 1.0 - c ** (r - 1)
    step = (r - 1) * c ** (r - 1) * w
    for j in range(j_max + 1):
        yield scale * tail
        tail -= step
        step *= (j + r) / (j + 2) * w


def slot_probs_asym(r: int, c: float, j_max: int) -> np.ndarray:
    """p_dom_asym(r, c, j) for all j = 0..j_max."""
    if r < 1 or j_max < 0:
        raise RangeError(f"need r >= 1 and j_max >= 0, got r={r}, j_max={j_max}")
    _check_c(c)
    return np.fromiter(_iter_slot_probs(r, c, j_max), dtype=np.float64, count=j_max + 1)


def slot_probs_asym_grid(r: int, cs: np.ndarray, j_max: int) -> np.ndarray:
    """Slot probabilities over a grid of sampling fractions.

    Returns shape (j_max + 1, len(cs)); column order follows `cs`.
    """
    cs = np.asarray(cs, dtype=np.float64)
    w = 1.0 - cs
    if r == 1:
        out = np.empty((j_max + 1, len(cs)), dtype=np.float64)
        log_term = np.log(1.0 / cs)
        out[0] = cs * log_term
        if j_max >= 1:
            m = np.arange(1, j_max + 1, dtype=np.float64)[:, None]
            series = np.cumsum(w[None, :] ** m / m, axis=0)
            out[1:] = cs * (log_term - series)
        return out
    binoms = _lower_tail_binomials(r, j_max)  # (j_max+1, r-1)
    m = np.arange(r - 1, dtype=np.float64)[:, None]
    col = cs[None, :] ** m * w[None, :] ** (r - 1 - m)  # (r-1, nc)
    tail = binoms @ col  # (j_max+1, nc)
    j = np.arange(j_max + 1, dtype=np.float64)[:, None]
    return (cs / (r - 1)) * (w[None, :] ** j) * tail


def cr_single_ref_asym(k: int, r: int, c: float) -> float:
    """Large-n competitive ratio of the single-reference policy at (k, r, c)."""
    if k < 1:
        raise RangeError(f"k must be at least 1, got k={k}")
    if not 1 <= r <= k:
        raise RangeError(f"need 1 <= r <= k, got r={r}, k={k}")
    _check_c(c)
    weights = slot_weights(k, r)
    total = 0.0
    for w, p in zip(weights, _iter_slot_probs(r, c, k - 1)):
        total += w * p
    return total / k


def cr_optimistic_k2_asym(c: float) -> float:
    """Large-n competitive ratio of the optimistic policy with budget 2:
    c log(1/c) + (c**2/2)(1/c - log(1/c) - 1)."""
    _check_c(c)
    log_term = math.log(1 / c)
    return c * log_term + 0.5 * c * c * (1 / c - log_term - 1)


def kleinberg_bound(k: int) -> float | None:
    """The 1 - 5/sqrt(k) guarantee curve; None where the guarantee is vacuous
    (k <= 24, where the expression is negative)."""
    if k < 1:
        raise RangeError(f"k must be at least 1, got k={k}")
    value = 1 - 5 / math.sqrt(k)
    if k <= 24:
        return None
    return value


# ---------------------------------------------------------------------------
# Calculus objects used by the verification suite


@dataclass(frozen=True)
class KernelSpec:
    """Parameters of the comparison kernel f(i) = i**j / (i+y)**(r+j)."""

    j: int
    r: int
    y: float

    def __post_init__(self):
        if self.j < 0 or self.r < 1 or not self.y > 0:
            raise RangeError(
                f"need j >= 0, r >= 1, y > 0, got j={self.j}, r={self.r}, y={self.y}"
            )

    @property
    def max_point(self) -> float:
        """f increases up to j*y/r and decreases beyond it."""
        return self.j * self.y / self.r


def kernel_f(spec: KernelSpec, i: float) -> float:
    if i < 0:
        raise RangeError(f"kernel argument must be >= 0, got {i}")
    return i**spec.j / (i + spec.y) ** (spec.r + spec.j)


def antiderivative_F(spec: KernelSpec, i: float) -> float:
    """An antiderivative of `kernel_f` (F' = f), in the two published forms:
    logarithmic for r = 1, rational for r >= 2."""
    j, r, y = spec.j, spec.r, spec.y
    if r == 1:
        coeffs = AsymptoticCoeffs.build(j, 1)
        correction = sum(
            (b / l) * (y / (i + y)) ** l for l, b in enumerate(coeffs.betas, start=1)
        )
        return math.log(i + y) - correction
    coeffs = AsymptoticCoeffs.build(j, r)
    numerator = sum(a * i ** (j - l) * y**l for l, a in enumerate(coeffs.alphas))
    return -numerator / (coeffs.alphas[0] * (r - 1) * (i + y) ** (r + j - 1))


@dataclass(frozen=True)
class TailSumBounds:
    """Sandwich for sum_{i=t..n-1} (n-i)/((i-2)(i-1)) at sampling fraction c.

    `asymptotic` is the n-free value 1/c - log(1/c) - 1.  With n given, the
    finite sum is bounded by [lower, upper]; the slacks are 1/(ct) below and
    (n-t+2)/(t-2)**2 + (n-t+1)/(t-1)**2 above, evaluated at the effective
    fraction (t-1)/n.
    """

    c: float
    asymptotic: float
    n: int | None = None
    t: int | None = None
    lower: float | None = None
    upper: float | None = None


def optimistic_sum_bounds(c: float, n: int | None = None, t: int | None = None) -> TailSumBounds:
    _check_c(c)
    asymptotic = 1 / c - math.log(1 / c) - 1
    if n is None:
        return TailSumBounds(c=c, asymptotic=asymptotic)
    if t is None:
        t = round(c * n) + 1
    if t < 3 or t > n:
        raise RangeError(f"need 3 <= t <= n, got t={t}, n={n}")
    c_eff = (t - 1) / n
    base = 1 / c_eff - math.log(1 / c_eff) - 1
    lower = base - 1 / (c_eff * t)
    upper = base + (n - (t - 2)) / (t - 2) ** 2 + (n - (t - 1)) / (t - 1) ** 2
    return TailSumBounds(c=c, asymptotic=asymptotic, n=n, t=t, lower=lower, upper=upper)
