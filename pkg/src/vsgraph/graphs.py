"""Immutable undirected simple graphs in CSR form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seeding import SeedSpec


@dataclass(frozen=True, eq=False)
class Graph:
    """Canonical CSR graph: symmetric, no self-loops, no duplicate edges,
    neighbor lists sorted ascending."""

    num_nodes: int
    csr_offsets: np.ndarray
    csr_neighbors: np.ndarray
    num_edges: int

    def neighbors(self, i: int) -> np.ndarray:
        return self.csr_neighbors[self.csr_offsets[i]:self.csr_offsets[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.csr_offsets)

    def edge_list(self) -> np.ndarray:
        """Undirected edges as (num_edges, 2) pairs with i < j."""
        rows = np.repeat(np.arange(self.num_nodes, dtype=np.int64), self.degrees())
        fwd = rows < self.csr_neighbors
        return np.column_stack([rows[fwd], self.csr_neighbors[fwd]])

    def __repr__(self) -> str:
        return f"Graph(num_nodes={self.num_nodes}, num_edges={self.num_edges})"


def make_graph(num_nodes: int, edges) -> Graph:
    """Build a canonical Graph from an edge list.

    Symmetrizes, drops self-loops, deduplicates, and sorts neighbor
    lists, so single-direction and doubly-listed inputs build the same
    graph.
    """
    if num_nodes < 1:
        raise ValueError(f"num_nodes must be >= 1, got {num_nodes}")
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if pairs.size:
        if pairs.min() < 0 or pairs.max() >= num_nodes:
            bad = pairs.min() if pairs.min() < 0 else pairs.max()
            raise ValueError(f"edge endpoint {bad} out of range for {num_nodes} nodes")
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    if pairs.size:
        both = np.concatenate([pairs, pairs[:, ::-1]])
        both = np.unique(both, axis=0)
        src, dst = both[:, 0], both[:, 1]
    else:
        src = dst = np.empty(0, dtype=np.int64)
    offsets = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=num_nodes), out=offsets[1:])
    return Graph(num_nodes, offsets, dst.copy(), len(src) // 2)


def random_graph(seed: SeedSpec, num_nodes: int, edge_prob: float) -> Graph:
    """Erdos-Renyi style simple graph, deterministic in the seed."""
    if num_nodes < 1:
        raise ValueError(f"num_nodes must be >= 1, got {num_nodes}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must be in [0, 1], got {edge_prob}")
    iu, ju = np.triu_indices(num_nodes, k=1)
    mask = seed.rng().random(len(iu)) < edge_prob
    return make_graph(num_nodes, np.column_stack([iu[mask], ju[mask]]))


def permute_graph(graph: Graph, perm: np.ndarray) -> Graph:
    """Relabel nodes: new id of node i is perm[i]."""
    perm = np.asarray(perm, dtype=np.int64)
    edges = graph.edge_list()
    return make_graph(graph.num_nodes,
                      np.column_stack([perm[edges[:, 0]], perm[edges[:, 1]]])
                      if edges.size else [])


def validate_graph(graph: Graph) -> None:
    """Raise ValueError unless all structural invariants hold."""
    n, off, nbr = graph.num_nodes, graph.csr_offsets, graph.csr_neighbors
    if n < 1:
        raise ValueError("graph must have at least one node")
    if off.shape != (n + 1,) or off[0] != 0 or np.any(np.diff(off) < 0):
        raise ValueError("csr_offsets must be nondecreasing, start at 0, length n+1")
    if off[-1] != len(nbr) or off[-1] != 2 * graph.num_edges:
        raise ValueError("csr_offsets[-1] must equal len(neighbors) == 2*num_edges")
    if len(nbr) and (nbr.min() < 0 or nbr.max() >= n):
        raise ValueError("neighbor index out of range")
    seen = set()
    for i in range(n):
        row = nbr[off[i]:off[i + 1]]
        if np.any(row == i):
            raise ValueError(f"self-loop at node {i}")
        if np.any(np.diff(row) <= 0):
            raise ValueError(f"neighbor list of node {i} not strictly ascending")
        for j in row:
            seen.add((i, int(j)))
    for i, j in seen:
        if (j, i) not in seen:
            raise ValueError(f"edge ({i},{j}) lacks its mirror")
