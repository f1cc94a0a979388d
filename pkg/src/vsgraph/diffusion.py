"""Topology-derived node identification.

Every node starts with a unit activation spike; K synchronous rounds
replace each node's value with the sum of its neighbors' previous
values (per-round max rescaling keeps magnitudes bounded without
changing any order relation). Dense descending ranks over the final
spike responses index into a global rank basis of random binary
hypervectors, so nodes in comparable structural positions across
different graphs receive the same hypervector.
"""

from __future__ import annotations

import threading

import numpy as np

from . import kernels
from .graphs import Graph
from .hdc import BinaryHypervector
from .seeding import STREAM_BASIS, SeedSpec, random_bit_words, words_for

RANK_TIE_REL_TOL = 1e-9


def diffuse(graph: Graph, hops: int) -> np.ndarray:
    """K-round spike propagation; returns per-node nonnegative responses.

    hops=0 returns the all-ones start state; isolated nodes drop to zero
    after one round.
    """
    if hops < 0:
        raise ValueError(f"hops must be >= 0, got {hops}")
    return kernels.diffuse(graph.csr_offsets, graph.csr_neighbors, hops)


def rank_nodes(spikes: np.ndarray) -> np.ndarray:
    """Dense descending ranks; rank 0 is the largest spike response.

    Values within a relative tolerance of 1e-9 of their group leader
    share a rank (float rescaling may perturb exactly-tied counts).
    """
    spikes = np.asarray(spikes, dtype=np.float64)
    if spikes.size == 0:
        raise ValueError("cannot rank an empty spike vector")
    return kernels.dense_ranks(spikes, RANK_TIE_REL_TOL)


class RankBasis:
    """Lazily materialized item memory mapping rank r -> random hypervector.

    Vector r is a pure function of (seed, r, dim): extending capacity
    never changes existing vectors. Reads of already materialized rows
    are thread-safe; growth is serialized by an internal lock (pre-size
    with ensure() before fanning out across workers).
    """

    def __init__(self, seed: SeedSpec, dim: int, capacity: int = 0):
        if dim < 1:
            raise ValueError(f"basis dim must be >= 1, got {dim}")
        self.seed = seed
        self.dim = dim
        self._words = np.zeros((0, words_for(dim)), dtype=np.uint64)
        self._lock = threading.Lock()
        if capacity:
            self.ensure(capacity)

    @property
    def capacity(self) -> int:
        return self._words.shape[0]

    def ensure(self, capacity: int) -> None:
        if capacity <= self.capacity:
            return
        with self._lock:
            have = self._words.shape[0]
            if capacity <= have:
                return
            rows = np.stack([random_bit_words(self.seed, r, self.dim)
                             for r in range(have, capacity)])
            self._words = np.concatenate([self._words, rows])

    def words(self, upto: int) -> np.ndarray:
        """Packed (upto, words_per_vector) matrix of the first ranks."""
        self.ensure(upto)
        return self._words[:upto]

    def vector(self, rank: int) -> BinaryHypervector:
        if rank < 0:
            raise ValueError(f"rank must be >= 0, got {rank}")
        self.ensure(rank + 1)
        return BinaryHypervector(self.dim, self._words[rank].copy())


def default_basis(seed: SeedSpec, dim: int) -> RankBasis:
    """Rank basis on the reserved basis stream of an experiment seed."""
    return RankBasis(seed.derive(STREAM_BASIS), dim)


def node_ranks(graph: Graph, hops: int) -> np.ndarray:
    """Composition rank_nodes(diffuse(graph, hops))."""
    return rank_nodes(diffuse(graph, hops))


def assign_node_hvs(graph: Graph, hops: int, basis: RankBasis) -> list[BinaryHypervector]:
    """Per-node basis hypervectors B[rank_i] after K-hop spike diffusion."""
    ranks = node_ranks(graph, hops)
    basis.ensure(int(ranks.max()) + 1)
    return [basis.vector(int(r)) for r in ranks]
