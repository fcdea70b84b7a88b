"""Seedable, platform-independent pseudo-random source.

The algorithm is xoshiro256** with its 256-bit state filled from the
64-bit seed by four successive SplitMix64 outputs, the seeding procedure
recommended by the generator's authors.  Outputs depend only on the seed,
never on the platform or on which drawing backend is active.
"""

from __future__ import annotations

from . import _pure

__all__ = ["SeededGenerator", "splitmix64", "draw_discrete", "draw_continuous"]

M64 = (1 << 64) - 1


def splitmix64(x: int) -> tuple[int, int]:
    """One SplitMix64 step: returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return x, z ^ (z >> 31)


class SeededGenerator:
    """Single-owner mutable generator.  Do not share between threads."""

    algorithm = "xoshiro256**"

    def __init__(self, seed: int):
        if not isinstance(seed, int) or not 0 <= seed <= M64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        self.seed = seed
        x = seed
        state = []
        for _ in range(4):
            x, out = splitmix64(x)
            state.append(out)
        self._state = state

    @property
    def state(self) -> tuple[int, int, int, int]:
        return tuple(self._state)

    @state.setter
    def state(self, value) -> None:
        value = [int(v) for v in value]
        if len(value) != 4 or not all(0 <= v <= M64 for v in value) or not any(value):
            raise ValueError("state must be four 64-bit words, not all zero")
        self._state = value

    def next_u64(self) -> int:
        return _pure.next_u64(self._state)

    def __repr__(self):
        return f"SeededGenerator(seed={self.seed})"


def draw_discrete(gen: SeededGenerator, L: int) -> int:
    """Uniform integer in ``0 .. L-1`` by rejection on the 64-bit word.

    Words below ``2**64 mod L`` are discarded, which leaves exactly
    ``floor(2**64 / L) * L`` accepted words, an equal number per residue.
    """
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")
    if L > 1 << 64:
        raise OverflowError(f"L={L} exceeds the generator's 64-bit word")
    if L == 1 << 64:
        return gen.next_u64()
    return _pure.bounded(gen._state, L)


def draw_continuous(gen: SeededGenerator) -> float:
    """Uniform float in ``[0, 1)`` with 53 random bits."""
    return (gen.next_u64() >> 11) * (1.0 / (1 << 53))
