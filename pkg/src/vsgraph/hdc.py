"""Binary hypervector algebra.

The atomic representation is a D-dimensional {0,1} vector, bit-packed
into 64-bit words with the tail bits of the final word zeroed so
popcounts stay exact for any D. Core operations:

    bind:     componentwise XOR (self-inverse, commutative)
    bundle:   componentwise majority vote, exact ties resolved by a
              dedicated seeded tie-break vector
    hamming:  similarity = 1 - popcount(x ^ y) / D
    cosine:   u.v / ((|u| + eps) (|v| + eps)),  eps = 1e-12

Dense (real-valued) hypervectors are plain float64 ndarrays; they appear
once convex blending makes node states non-binary, and every component
produced by the pipeline stays inside [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .kernels.numpy_impl import pack_bits, popcount64, unpack_words
from .seeding import STREAM_TIE_BREAK, SeedSpec, random_bit_words, tail_mask, words_for

COSINE_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class BinaryHypervector:
    """Bit-packed {0,1}^dim vector; padding bits beyond dim-1 are zero."""

    dim: int
    words: np.ndarray

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"hypervector dim must be >= 1, got {self.dim}")
        if self.words.dtype != np.uint64 or self.words.shape != (words_for(self.dim),):
            raise ValueError("words must be a uint64 array of ceil(dim/64) entries")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryHypervector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.words, other.words))

    def bits(self) -> np.ndarray:
        """Unpacked uint8 view of the dim components."""
        return unpack_words(self.words, self.dim)

    def popcount(self) -> int:
        return int(popcount64(self.words).sum())

    def __repr__(self) -> str:
        return f"BinaryHypervector(dim={self.dim}, popcount={self.popcount()})"


def random_hypervector(seed: SeedSpec, index: int, dim: int) -> BinaryHypervector:
    """Fair-coin hypervector, a pure function of (seed, index, dim)."""
    return BinaryHypervector(dim, random_bit_words(seed, index, dim))


def from_bits(bits: Sequence[int] | np.ndarray) -> BinaryHypervector:
    """Pack an explicit 0/1 sequence (mostly a test convenience)."""
    arr = np.asarray(bits, dtype=np.uint8)
    return BinaryHypervector(len(arr), pack_bits(arr))


def zero_hypervector(dim: int) -> BinaryHypervector:
    return BinaryHypervector(dim, np.zeros(words_for(dim), dtype=np.uint64))


def tie_break_vector(seed: SeedSpec, dim: int) -> BinaryHypervector:
    """The dedicated tie-break vector for majority bundling.

    Drawn from a reserved stream of the master seed, so it is constant
    across all other consumers of the same experiment seed.
    """
    return random_hypervector(SeedSpec(seed.master_seed, STREAM_TIE_BREAK), 0, dim)


def _check_dims(x: BinaryHypervector, y: BinaryHypervector) -> None:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} != {y.dim}")


def bind(x: BinaryHypervector, y: BinaryHypervector) -> BinaryHypervector:
    """XOR binding; dissimilar from both inputs for random inputs."""
    _check_dims(x, y)
    return BinaryHypervector(x.dim, x.words ^ y.words)


def invert(x: BinaryHypervector) -> BinaryHypervector:
    """Componentwise complement (tail bits kept zero)."""
    words = ~x.words
    words[-1] &= np.uint64(tail_mask(x.dim))
    return BinaryHypervector(x.dim, words)


def bundle(vs: Sequence[BinaryHypervector],
           tie_breaker: BinaryHypervector) -> BinaryHypervector:
    """Componentwise majority vote over a nonempty list.

    Component d is 1 iff strictly more than half of the inputs have bit
    d set; exact ties (possible only for even counts) copy bit d of
    ``tie_breaker``.
    """
    if len(vs) == 0:
        raise ValueError("cannot bundle an empty list of hypervectors")
    dim = vs[0].dim
    for v in vs:
        if v.dim != dim:
            raise ValueError(f"dimension mismatch: {v.dim} != {dim}")
    if tie_breaker.dim != dim:
        raise ValueError(f"tie-break dimension mismatch: {tie_breaker.dim} != {dim}")
    stacked = np.stack([v.words for v in vs])
    counts = unpack_words(stacked, dim).astype(np.int64).sum(axis=0)
    twice = 2 * counts
    n = len(vs)
    bits = (twice > n).astype(np.uint8)
    ties = twice == n
    if ties.any():
        bits[ties] = tie_breaker.bits()[ties]
    return BinaryHypervector(dim, pack_bits(bits))


def hamming_similarity(x: BinaryHypervector, y: BinaryHypervector) -> float:
    """1 - normalized Hamming distance; 1.0 iff identical."""
    _check_dims(x, y)
    return 1.0 - int(popcount64(x.words ^ y.words).sum()) / x.dim


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Epsilon-regularized cosine; zero vectors score 0 against anything."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} != {v.shape}")
    nu = np.linalg.norm(u) + COSINE_EPS
    nv = np.linalg.norm(v) + COSINE_EPS
    return float(np.dot(u, v) / (nu * nv))


def to_dense(x: BinaryHypervector) -> np.ndarray:
    """Lift a binary hypervector to float64 components in {0.0, 1.0}."""
    return x.bits().astype(np.float64)
