"""Pinned random source for reproducible runs.

xoshiro256** seeded through SplitMix64. Every consumer draws through the
methods below so the draw discipline is the same everywhere:

* ``next_u64``     one raw 64-bit output
* ``uniform``      one output, top 53 bits as a fraction of 2**53
* ``bernoulli``    one ``uniform(0, 1)`` draw compared with ``< p``
* ``choose``       one output, Lemire multiply-shift ``(x * n) >> 64``
* ``shuffle``      Fisher-Yates from index n-1 down to 1, one ``choose(i + 1)``
                   per position; n == 1 draws nothing
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state. Returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


class RngStream:
    """xoshiro256** generator owned by exactly one simulation run."""

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int = 0):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        words = []
        sm = seed
        for _ in range(4):
            sm, out = splitmix64(sm)
            words.append(out)
        self.s0, self.s1, self.s2, self.s3 = words

    @classmethod
    def from_state(cls, state) -> "RngStream":
        s = list(state)
        if len(s) != 4 or not any(s):
            raise ValueError("state must be four words, not all zero")
        stream = cls.__new__(cls)
        stream.s0, stream.s1, stream.s2, stream.s3 = (w & MASK64 for w in s)
        return stream

    @property
    def state(self) -> tuple[int, int, int, int]:
        return (self.s0, self.s1, self.s2, self.s3)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        x = (s1 * 5) & MASK64
        result = ((((x << 7) | (x >> 57)) & MASK64) * 9) & MASK64
        s2 ^= s0
        s3 ^= s1
        self.s1 = s1 ^ s2
        self.s0 = s0 ^ s3
        self.s2 = s2 ^ ((s1 << 17) & MASK64)
        self.s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        return result

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        if not lo < hi:
            raise ValueError(f"need lo < hi, got lo={lo}, hi={hi}")
        return lo + (hi - lo) * ((self.next_u64() >> 11) * _INV_2_53)

    def bernoulli(self, p: float) -> bool:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probability out of range: {p}")
        return (self.next_u64() >> 11) * _INV_2_53 < p

    def choose(self, n: int) -> int:
        if n < 1:
            raise ValueError("choose needs n >= 1")
        return (self.next_u64() * n) >> 64

    def shuffle(self, n: int) -> list[int]:
        """Return a permutation of ``range(n)``."""
        if n < 1:
            raise ValueError("shuffle needs n >= 1")
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.choose(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm

    def choose_other(self, n: int, exclude: int) -> int:
        """Uniform index in ``range(n)`` other than ``exclude`` (one draw)."""
        j = self.choose(n - 1)
        return j + 1 if j >= exclude else j
