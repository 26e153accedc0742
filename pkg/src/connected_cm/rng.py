"""Deterministic 64-bit randomness: splitmix64 streams and seed splitting.

All randomness in the package flows from one root seed through this module.
A stream with seed ``s`` produces ``mix64(s + GAMMA)``, ``mix64(s + 2*GAMMA)``,
... ; child seeds are derived with :func:`split_seed`, so replicate ``i`` of an
ensemble never shares a stream with replicate ``j``.  The compiled and the
pure-Python kernels implement bit-identical streams, which is what makes runs
reproducible across backends and machines.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15

ALGORITHM = "splitmix64"


def mix64(z: int) -> int:
    """splitmix64 finalizer: a bijective scramble of a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def split_seed(parent: int, index: int) -> int:
    """Derive the seed of child stream ``index`` from ``parent``.

    Distinct indices give distinct arguments to the bijective mixer, so child
    seeds never collide for a fixed parent.
    """
    return mix64((parent + GAMMA * (index + 1)) & MASK64)


def split_seed_array(parent: int, start: int, count: int):
    """Vectorized :func:`split_seed` for child indices start..start+count-1."""
    import numpy as np

    idx = np.arange(start, start + count, dtype=np.uint64)
    z = (np.uint64(parent & MASK64) + np.uint64(GAMMA) * (idx + np.uint64(1)))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Reference splitmix64 stream (the compiled kernels match it exactly)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased via rejection."""
        rem = (1 << 64) % bound
        lim = (1 << 64) - rem
        x = self.next64()
        if rem > 0:
            while x >= lim:
                x = self.next64()
        return x % bound

    def shuffle(self, seq) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]
