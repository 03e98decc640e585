"""Deterministic random number generation.

Two pieces live here. First, a pure Python splitmix64 generator that serves as
the documented reference for the compiled kernels: both advance the same state
with the same constants, so a kernel run and a Python run consume identical
streams. Second, the stateless derivation of per-replicate seeds from a master
seed, so experiment streams are reproducible regardless of execution order or
worker count.

splitmix64 uses the Steele-Vigna constants. State update: state += 0x9E3779B9
7F4A7C15; output: z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31). All mod 2^64.
"""

from __future__ import annotations

import hashlib

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# 2^-53, so (r >> 11) * INV53 is uniform on [0, 1) with full double precision
INV53 = 1.0 / 9007199254740992.0


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance one splitmix64 step.

    Args:
        state: current 64-bit state.

    Returns:
        (new_state, output) pair, both in [0, 2^64).
    """
    state = (state + GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Stateful wrapper around splitmix64 with bounded and uniform draws."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, value = splitmix64_next(self.state)
        return value

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * INV53

    def rand_below(self, bound: int) -> int:
        """Unbiased integer in [0, bound) via modulo rejection.

        Draws are rejected while they fall in the short residue block
        [0, 2^64 mod bound), which keeps every class equally likely.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound


def replicate_seed(master_seed: int, n: int, b: int) -> int:
    """Derive the seed for replicate b of a size-n experiment.

    Stateless mix: sha256 of the tag "pa:{master_seed}:{n}:{b}", first 8 bytes
    big-endian. Any implementation that reproduces this derivation reproduces
    the exact replicate streams.
    """
    tag = f"pa:{master_seed}:{n}:{b}".encode("ascii")
    return int.from_bytes(hashlib.sha256(tag).digest()[:8], "big")
