"""Seeded pseudo-randomness shared by subsampling, samplers, and the harness.

The generator is splitmix64, chosen because its full algorithm fits in a
dozen lines and therefore reproduces bit-for-bit in any language, unlike
library-default generators. All user-visible randomness in this package
(subsampling, k-means init, random baselines, ablation fill-ins) is drawn
from it.
"""

from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 generator (Steele, Lea & Flood's published constants)."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) with 53 bits of precision."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        # Largest multiple of n that fits in 64 bits; draws at or above it
        # would bias the modulo and are rejected.
        limit = ((1 << 64) // n) * n
        while True:
            draw = self.next_uint64()
            if draw < limit:
                return draw % n

    def sample_indices(self, n_total: int, k: int) -> list[int]:
        """Draw k distinct indices from range(n_total), in draw order.

        Partial Fisher-Yates: position i swaps with a uniform position in
        [i, n_total); the first k slots of the permutation are the sample.
        """
        if not 0 <= k <= n_total:
            raise ValueError(f"cannot draw {k} from {n_total}")
        pool = list(range(n_total))
        for i in range(k):
            j = i + self.randbelow(n_total - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items: list):
        return items[self.randbelow(len(items))]


def derive_seed(*components: object) -> int:
    """Map a tuple of labels to a 64-bit seed, stably across runs and platforms.

    Components are joined with an ASCII unit separator and hashed with
    SHA-256; the first 8 bytes (little-endian) become the seed. Used so each
    (dataset, sampler, run-seed) tuple owns an independent stream and results
    do not depend on execution order.
    """
    key = "\x1f".join(str(c) for c in components).encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")
