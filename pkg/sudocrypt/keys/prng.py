"""
Deterministic SplitMix64 source and permutation derivation.

Every shuffle in the cipher is reproduced bit-exactly from a recorded seed, so
the generator is pinned to SplitMix64 and permutations to a Fisher-Yates pass
over its output. Not a cryptographically secure generator.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, TypeVar

import numpy as np

from .exceptions import InvalidArgumentError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MUL1 = 0xBF58476D1CE4E5B9
MIX_MUL2 = 0x94D049BB133111EB

T = TypeVar("T")


@dataclass(frozen=True)
class PrngState:
    """SplitMix64 state; the output stream is a pure function of it."""

    state: int

    def __post_init__(self):
        if not 0 <= self.state <= MASK64:
            raise InvalidArgumentError(f"PRNG state out of 64-bit range: {self.state}")


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1; ``map[i]`` is the source index for position i."""

    map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(i) for i in self.map))
        if sorted(self.map) != list(range(len(self.map))):
            raise InvalidArgumentError(f"Not a permutation: {self.map}")

    def __len__(self) -> int:
        return len(self.map)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.map, dtype=np.intp)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.map))


def next_u64(s: PrngState) -> Tuple[PrngState, int]:
    state = (s.state + GOLDEN_GAMMA) & MASK64
    z = state
    z ^= z >> 30
    z = (z * MIX_MUL1) & MASK64
    z ^= z >> 27
    z = (z * MIX_MUL2) & MASK64
    z ^= z >> 31
    return PrngState(state), z


def mix_seed(seed: int, salt: int = 0) -> int:
    """First SplitMix64 output for state ``seed XOR salt``."""
    _, value = next_u64(PrngState((seed ^ salt) & MASK64))
    return value


def derive_permutation(seed: int, n: int) -> Permutation:
    """Fisher-Yates over SplitMix64 seeded with ``seed``; deterministic in (seed, n)."""
    if n < 1:
        raise InvalidArgumentError(f"Permutation length must be positive, got {n}")

    indices = list(range(n))
    state = PrngState(seed & MASK64)
    for i in range(n - 1, 0, -1):
        state, value = next_u64(state)
        j = value % (i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    return Permutation(tuple(indices))


def invert_permutation(p: Permutation) -> Permutation:
    inverse = [0] * len(p)
    for i, source in enumerate(p.map):
        inverse[source] = i
    return Permutation(tuple(inverse))


def apply_permutation(seq: Sequence[T], p: Permutation) -> list[T]:
    """``out[i] = seq[p.map[i]]``."""
    if len(seq) != len(p):
        raise InvalidArgumentError(
            f"Sequence length {len(seq)} does not match permutation length {len(p)}"
        )
    return [seq[i] for i in p.map]


def unapply_permutation(seq: Sequence[T], p: Permutation) -> list[T]:
    return apply_permutation(seq, invert_permutation(p))
