"""Synthetic graph corpora for tests and desk-scale benchmarks."""

from __future__ import annotations

import numpy as np

from .datasets import GraphDataset
from .graphs import Graph, make_graph, random_graph
from .seeding import STREAM_GRAPHS, SeedSpec


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)]) if n > 1 \
        else make_graph(1, [])


def star_graph(leaves: int) -> Graph:
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def triangles_vs_hexagons(per_class: int = 20) -> GraphDataset:
    """Two classes of identical regular graphs: 3-cycles and 6-cycles.

    Note that every regular graph puts all of its nodes in one rank
    group, so rank-identity encoders map both classes to the same
    embedding; this corpus probes exactly that degenerate behavior.
    """
    graphs = [cycle_graph(3) for _ in range(per_class)] + \
             [cycle_graph(6) for _ in range(per_class)]
    labels = np.array([0] * per_class + [1] * per_class, dtype=np.int64)
    return GraphDataset(graphs, labels, "triangles-vs-hexagons", 2)


def stars_vs_paths(per_class: int = 20, size: int = 6) -> GraphDataset:
    """Separable two-class corpus: star S_{size-1} vs path P_size.

    Both classes are class-constant, and the degree patterns differ, so
    the two classes produce distinct embeddings under rank-identity
    encoders.
    """
    graphs = [star_graph(size - 1) for _ in range(per_class)] + \
             [path_graph(size) for _ in range(per_class)]
    labels = np.array([0] * per_class + [1] * per_class, dtype=np.int64)
    return GraphDataset(graphs, labels, "stars-vs-paths", 2)


def random_two_class(seed: SeedSpec, per_class: int, num_nodes: int = 12,
                     edge_prob: float = 0.3,
                     name: str = "random-two-class") -> GraphDataset:
    """Random ER graphs with arbitrary balanced labels (a null corpus)."""
    gseed = seed.derive(STREAM_GRAPHS)
    graphs = [random_graph(gseed.derive(i), num_nodes, edge_prob)
              for i in range(2 * per_class)]
    labels = np.array([i % 2 for i in range(2 * per_class)], dtype=np.int64)
    return GraphDataset(graphs, labels, name, 2)


def shuffle_labels(dataset: GraphDataset, seed: SeedSpec) -> GraphDataset:
    """Copy of the dataset with labels permuted (class balance preserved)."""
    perm = seed.rng().permutation(len(dataset.labels))
    return GraphDataset(dataset.graphs, dataset.labels[perm],
                        dataset.name + "-shuffled", dataset.num_classes,
                        raw_labels=dataset.raw_labels)
