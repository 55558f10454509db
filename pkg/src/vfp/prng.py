"""Portable seeded pseudorandom generator used for dataset shuffling.

The generator is SplitMix64, fixed here by its recurrence so that splits are
reproducible bit-for-bit across implementations and languages.  All arithmetic
is modulo 2**64:

    state   <- state + 0x9E3779B97F4A7C15
    z       <- state
    z       <- (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9
    z       <- (z XOR (z >> 27)) * 0x94D049BB133111EB
    output  <- z XOR (z >> 31)

Shuffling is an in-place Fisher-Yates walk from the top: for i = n-1 .. 1,
draw j = next() mod (i + 1) and swap positions i and j.  The modulo bias is
negligible for any realistic n and keeps the contract one line long.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Draw an integer in [0, bound) by modular reduction."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound


def shuffled_indices(n: int, seed: int) -> list[int]:
    """Return a deterministic permutation of range(n) for the given seed."""
    indices = list(range(n))
    rng = SplitMix64(seed)
    for i in range(n - 1, 0, -1):
        j = rng.next_below(i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    return indices
