"""Deterministic random streams: splitmix64 seeding into xoshiro256**.

Every consumer of randomness in this package draws from a `(seed, stream)`
pair.  Stream derivation is counter-based: stream ``i`` depends only on the
seed and ``i``, never on how much randomness earlier streams consumed.  Monte
Carlo trial ``i`` uses stream ``i``, so estimates are bit-identical no matter
how trials are chunked across workers, and the compiled kernels reproduce the
exact same draws as this pure-Python reference.

Bounded draws use the multiply-shift method with rejection, so permutations
are uniform conditional on an ideal 64-bit generator (no modulo bias).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STREAM_SALT = 0xD1B54A32D192ED03


def mix64(z: int) -> int:
    """splitmix64 output mix (finalizer)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def stream_state(seed: int, stream: int) -> list[int]:
    """Initial xoshiro256** state for (seed, stream).

    A splitmix64 run seeded from a two-level hash of seed and stream index,
    which is the standard way to seed xoshiro generators.
    """
    base = mix64((seed ^ mix64((stream * _STREAM_SALT + GOLDEN) & MASK64)) & MASK64)
    state = []
    x = base
    for _ in range(4):
        x = (x + GOLDEN) & MASK64
        state.append(mix64(x))
    if not any(state):
        state[0] = GOLDEN  # the all-zero state is the one invalid xoshiro state
    return state


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** with counter-split streams; mirrored by the C kernels."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int, stream: int = 0):
        self.s0, self.s1, self.s2, self.s3 = stream_state(seed, stream)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        out = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return out

    def below(self, m: int) -> int:
        """Uniform integer in [0, m), unbiased (multiply-shift + rejection)."""
        x = self.next_u64()
        prod = x * m
        low = prod & MASK64
        if low < m:
            threshold = (MASK64 - m + 1) % m
            while low < threshold:
                x = self.next_u64()
                prod = x * m
                low = prod & MASK64
        return prod >> 64

    def shuffle(self, a: list) -> None:
        """Uniform in-place shuffle (forward Fisher-Yates).

        Draws position p's element with one bounded draw, p = 0..n-2, so a
        partially consumed shuffle (as in the simulation kernels) sees the
        same prefix as a full one.
        """
        n = len(a)
        for p in range(n - 1):
            q = p + self.below(n - p)
            a[p], a[q] = a[q], a[p]
