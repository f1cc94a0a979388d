"""Deterministic, counter-based randomness.

Every stochastic component (basis vectors, tie-breaking, fold shuffling,
synthetic graph generation) draws from a (master_seed, stream_id) pair.
Hypervector bits are produced by a SplitMix64-style avalanche applied to
the tuple (master_seed, stream_id, dim, index, word_position), so vector
``index`` never depends on how many other vectors were generated before
it and results are bit-identical across platforms and runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1

# Reserved stream ids. Derived streams are obtained via SeedSpec.derive().
STREAM_BASIS = 1
STREAM_TIE_BREAK = 2
STREAM_FOLDS = 3
STREAM_GRAPHS = 4

_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer (Python-int version)."""
    x = (x + _GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * _MIX_A) & MASK64
    x = ((x ^ (x >> 27)) * _MIX_B) & MASK64
    return x ^ (x >> 31)


def combine64(*parts: int) -> int:
    """Fold an arbitrary tuple of integers into one well-mixed 64-bit value."""
    h = 0
    for p in parts:
        h = mix64(h ^ (p & MASK64))
    return h


def _mix64_array(z: np.ndarray) -> np.ndarray:
    # Vectorized SplitMix64 finalizer; must agree bit-for-bit with mix64().
    z = (z + np.uint64(_GOLDEN)).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_A)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_B)
    return z ^ (z >> np.uint64(31))


def words_for(dim: int) -> int:
    """Number of 64-bit words that hold ``dim`` packed bits."""
    return (dim + 63) // 64


def tail_mask(dim: int) -> int:
    """Mask of valid bits in the final word (all-ones when dim % 64 == 0)."""
    rem = dim % 64
    return MASK64 if rem == 0 else (1 << rem) - 1


@dataclass(frozen=True)
class SeedSpec:
    """Identifies one independent randomness consumer.

    Identical (master_seed, stream_id) pairs always yield identical draws.
    """

    master_seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "master_seed", self.master_seed & MASK64)
        object.__setattr__(self, "stream_id", self.stream_id & MASK64)

    def derive(self, *parts: int) -> "SeedSpec":
        """New spec with a stream id mixed from this stream and ``parts``."""
        return SeedSpec(self.master_seed, combine64(self.stream_id, *parts))

    def rng(self) -> np.random.Generator:
        """NumPy generator for shuffle-style consumers (folds, graph edges)."""
        return np.random.default_rng((self.master_seed, self.stream_id))


def random_bit_words(seed: SeedSpec, index: int, dim: int) -> np.ndarray:
    """Packed fair-coin bits: uint64 words keyed by (seed, index, dim, word).

    Tail bits beyond position dim-1 in the final word are zeroed so that
    popcounts are exact for any dim.
    """
    if dim < 1:
        raise ValueError(f"hypervector dim must be >= 1, got {dim}")
    if index < 0:
        raise ValueError(f"hypervector index must be >= 0, got {index}")
    base = combine64(seed.master_seed, seed.stream_id, dim, index)
    w = words_for(dim)
    words = _mix64_array(np.uint64(base) ^ np.arange(w, dtype=np.uint64))
    words[-1] &= np.uint64(tail_mask(dim))
    return words
