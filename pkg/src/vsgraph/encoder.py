"""Associative message passing and graph-level readout.

Starting from the rank hypervectors lifted to dense [0,1] states, each
of L synchronous layers aggregates neighbor states with an idempotent
fuzzy-OR (componentwise max, which restricts to logical OR on binary
states) and blends the result with the previous state:

    m_i = max_{j in N(i)} h_j
    h_i <- alpha * h_i + (1 - alpha) * m_i

The graph embedding is the componentwise mean over the final node
states, summed per component in ascending value order so the result is
exactly invariant under node relabeling.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .diffusion import RANK_TIE_REL_TOL, RankBasis, node_ranks
from .graphs import Graph
from .seeding import SeedSpec

AGGREGATION_MODES = ("max", "binarize-or")

# Reusable per-thread scratch keeps the hot encode loop allocation-free
# (fresh multi-MB buffers per graph would thrash the allocator). Graphs
# too large for a cached workspace fall back to one-off buffers; their
# encode cost dwarfs the allocation anyway.
_SCRATCH_ELEM_CAP = 1 << 24
_scratch = threading.local()


def _scratch_buffers(num_nodes: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    if num_nodes * dim > _SCRATCH_ELEM_CAP:
        return (np.empty((num_nodes, dim)), np.empty((num_nodes, dim)))
    pair = getattr(_scratch, "pair", None)
    if (pair is None or pair[0].shape[1] != dim
            or pair[0].shape[0] < num_nodes):
        cap = max(num_nodes, 64)
        pair = (np.empty((cap, dim)), np.empty((cap, dim)))
        _scratch.pair = pair
    return pair[0][:num_nodes], pair[1][:num_nodes]


@dataclass(frozen=True)
class EncoderConfig:
    """Pipeline parameters: dimensionality, hops, layers, blend factor."""

    dim: int = 8192
    hops: int = 2
    layers: int = 2
    alpha: float = 0.5
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))
    aggregation: str = "max"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.hops < 0:
            raise ValueError(f"hops must be >= 0, got {self.hops}")
        if self.layers < 0:
            raise ValueError(f"layers must be >= 0, got {self.layers}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.aggregation not in AGGREGATION_MODES:
            raise ValueError(f"aggregation must be one of {AGGREGATION_MODES}, "
                             f"got {self.aggregation!r}")


def aggregate(graph: Graph, states: np.ndarray,
              mode: str = "max") -> np.ndarray:
    """Neighbor aggregation; rows of ``states`` are per-node dense vectors.

    Componentwise max over neighbor states (logical OR when all states
    are binary); isolated nodes receive the zero vector. States must be
    nonnegative, which the pipeline guarantees.
    """
    states = np.asarray(states, dtype=np.float64)
    if states.ndim != 2 or states.shape[0] != graph.num_nodes:
        raise ValueError(f"states must be ({graph.num_nodes}, dim), "
                         f"got {states.shape}")
    if mode == "max":
        return kernels.aggregate_max(graph.csr_offsets, graph.csr_neighbors, states)
    if mode == "binarize-or":
        return kernels.aggregate_binary_or(graph.csr_offsets, graph.csr_neighbors,
                                           states)
    raise ValueError(f"unknown aggregation mode {mode!r}")


def blend(h: np.ndarray, m: np.ndarray, alpha: float) -> np.ndarray:
    """Convex residual update alpha*h + (1-alpha)*m."""
    h = np.asarray(h, dtype=np.float64)
    m = np.asarray(m, dtype=np.float64)
    if h.shape != m.shape:
        raise ValueError(f"dimension mismatch: {h.shape} != {m.shape}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return kernels.blend(h, m, alpha)


def _node_states_scratch(graph: Graph, config: EncoderConfig,
                         basis: RankBasis) -> np.ndarray:
    """Final states in thread-local scratch (valid until the next encode)."""
    if graph.num_nodes < 1:
        raise ValueError("graph must have at least one node")
    if basis.dim != config.dim:
        raise ValueError(f"basis dim {basis.dim} != config dim {config.dim}")
    ranks = node_ranks(graph, config.hops)
    words = basis.words(int(ranks.max()) + 1)
    buf_a, buf_b = _scratch_buffers(graph.num_nodes, config.dim)
    return kernels.encode_states(graph.csr_offsets, graph.csr_neighbors,
                                 words, ranks, config.dim, config.alpha,
                                 config.layers,
                                 config.aggregation == "binarize-or",
                                 buf_a, buf_b)


def node_states(graph: Graph, config: EncoderConfig,
                basis: RankBasis) -> np.ndarray:
    """Final (num_nodes, dim) states after K-hop ranking and L layers."""
    return _node_states_scratch(graph, config, basis).copy()


def encode_graph(graph: Graph, config: EncoderConfig,
                 basis: RankBasis) -> np.ndarray:
    """Graph embedding: componentwise mean of the final node states."""
    if graph.num_nodes < 1:
        raise ValueError("graph must have at least one node")
    if basis.dim != config.dim:
        raise ValueError(f"basis dim {basis.dim} != config dim {config.dim}")
    # ranks are always < num_nodes, so pre-sizing covers the kernel's needs
    words = basis.words(graph.num_nodes)
    buf_a, buf_b = _scratch_buffers(graph.num_nodes, config.dim)
    return kernels.encode_embedding(graph.csr_offsets, graph.csr_neighbors,
                                    words, config.hops, RANK_TIE_REL_TOL,
                                    config.dim, config.alpha, config.layers,
                                    config.aggregation == "binarize-or",
                                    buf_a, buf_b)


def encode_graphs(graphs, config: EncoderConfig, basis: RankBasis,
                  workers: int = 1) -> np.ndarray:
    """Encode many graphs into an (N, dim) embedding matrix.

    Graphs encode independently; with workers > 1 a thread pool is used
    (the kernels release the GIL). Pre-sizes the basis so no growth
    happens inside the parallel section.
    """
    graphs = list(graphs)
    if graphs:
        basis.ensure(max(g.num_nodes for g in graphs))
    out = np.empty((len(graphs), config.dim), dtype=np.float64)
    if workers > 1 and len(graphs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for i, emb in enumerate(pool.map(
                    lambda g: encode_graph(g, config, basis), graphs)):
                out[i] = emb
    else:
        for i, g in enumerate(graphs):
            out[i] = encode_graph(g, config, basis)
    return out
