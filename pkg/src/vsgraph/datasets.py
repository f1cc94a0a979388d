"""Graph-classification datasets in the TUDataset flat-file format.

A dataset directory holds three required files (attribute files, when
present, are ignored; encoding is topology-only):

    <name>_A.txt                comma-separated 1-based edge pairs
    <name>_graph_indicator.txt  1-based graph id for each node line
    <name>_graph_labels.txt     one raw class label per graph line

Raw labels may be arbitrary integers; they are remapped to dense
0..C-1 indices preserving the sorted order of distinct raw values.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, make_graph


class DatasetFormatError(ValueError):
    """Malformed TUDataset file; message carries file name and line number."""


@dataclass(frozen=True, eq=False)
class GraphDataset:
    graphs: list[Graph]
    labels: np.ndarray
    name: str
    num_classes: int
    raw_labels: tuple = ()

    def __post_init__(self) -> None:
        if len(self.graphs) != len(self.labels):
            raise ValueError(
                f"{len(self.graphs)} graphs but {len(self.labels)} labels")
        if len(self.labels) and (self.labels.min() < 0
                                 or self.labels.max() >= self.num_classes):
            raise ValueError("label outside 0..num_classes-1")
        counts = np.bincount(self.labels, minlength=self.num_classes)
        if np.any(counts == 0):
            empty = int(np.flatnonzero(counts == 0)[0])
            raise ValueError(f"class {empty} has no graphs")

    def __len__(self) -> int:
        return len(self.graphs)

    def __repr__(self) -> str:
        return (f"GraphDataset({self.name!r}, graphs={len(self.graphs)}, "
                f"classes={self.num_classes})")


def _read_int_lines(path: str, expect_cols: int) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",") if expect_cols > 1 else [line]
            if len(parts) != expect_cols:
                raise DatasetFormatError(
                    f"{os.path.basename(path)}:{lineno}: expected "
                    f"{expect_cols} comma-separated fields, got {len(parts)}")
            try:
                rows.append([int(p.strip()) for p in parts])
            except ValueError:
                raise DatasetFormatError(
                    f"{os.path.basename(path)}:{lineno}: non-integer token "
                    f"{line!r}") from None
    return np.asarray(rows, dtype=np.int64).reshape(-1, expect_cols)


def parse_tudataset(directory: str, name: str) -> GraphDataset:
    """Load a TUDataset directory into canonical graphs and dense labels.

    Edges are symmetrized and deduplicated and self-loops are dropped,
    so files listing each edge once or twice parse identically.
    """
    paths = {key: os.path.join(directory, f"{name}_{key}.txt")
             for key in ("A", "graph_indicator", "graph_labels")}
    for key, path in paths.items():
        if not os.path.isfile(path):
            raise FileNotFoundError(f"missing dataset file: {path}")

    indicator = _read_int_lines(paths["graph_indicator"], 1)[:, 0]
    raw_labels = _read_int_lines(paths["graph_labels"], 1)[:, 0]
    edges = _read_int_lines(paths["A"], 2)

    num_nodes_total = len(indicator)
    num_graphs = len(raw_labels)
    if indicator.size and (indicator.min() < 1 or indicator.max() > num_graphs):
        bad = int(np.argmax((indicator < 1) | (indicator > num_graphs))) + 1
        raise DatasetFormatError(
            f"{os.path.basename(paths['graph_indicator'])}:{bad}: graph id "
            f"{indicator[bad - 1]} outside 1..{num_graphs}")

    # Global 1-based node id -> (graph, local index); nodes of a graph are
    # numbered by ascending global id.
    graph_of = indicator - 1
    local = np.zeros(num_nodes_total, dtype=np.int64)
    sizes = np.bincount(graph_of, minlength=num_graphs)
    starts = np.zeros(num_graphs, dtype=np.int64)
    np.cumsum(sizes[:-1], out=starts[1:])
    counters = starts.copy()
    for gid in range(num_graphs):
        if sizes[gid] == 0:
            raise DatasetFormatError(
                f"{name}: graph {gid + 1} has no nodes in the indicator file")
    for node in range(num_nodes_total):
        g = graph_of[node]
        local[node] = counters[g] - starts[g]
        counters[g] += 1

    per_graph_edges: list[list[tuple[int, int]]] = [[] for _ in range(num_graphs)]
    for lineno, (u, v) in enumerate(edges, start=1):
        if not (1 <= u <= num_nodes_total) or not (1 <= v <= num_nodes_total):
            raise DatasetFormatError(
                f"{os.path.basename(paths['A'])}:{lineno}: node id "
                f"{u if not (1 <= u <= num_nodes_total) else v} not present "
                f"in the graph indicator")
        gu, gv = graph_of[u - 1], graph_of[v - 1]
        if gu != gv:
            raise DatasetFormatError(
                f"{os.path.basename(paths['A'])}:{lineno}: edge ({u},{v}) "
                f"spans graphs {gu + 1} and {gv + 1}")
        per_graph_edges[gu].append((int(local[u - 1]), int(local[v - 1])))

    graphs = [make_graph(int(sizes[g]), per_graph_edges[g])
              for g in range(num_graphs)]
    distinct = np.unique(raw_labels)
    labels = np.searchsorted(distinct, raw_labels).astype(np.int64)
    return GraphDataset(graphs, labels, name, len(distinct),
                        raw_labels=tuple(int(x) for x in distinct))


def write_tudataset(dataset: GraphDataset, directory: str,
                    name: str | None = None) -> None:
    """Write a dataset back out in TUDataset format (both edge directions)."""
    name = name or dataset.name
    os.makedirs(directory, exist_ok=True)
    a_lines, ind_lines = [], []
    offset = 1
    for gid, graph in enumerate(dataset.graphs, start=1):
        for i in range(graph.num_nodes):
            ind_lines.append(f"{gid}\n")
            for j in graph.neighbors(i):
                a_lines.append(f"{offset + i}, {offset + int(j)}\n")
        offset += graph.num_nodes
    with open(os.path.join(directory, f"{name}_A.txt"), "w") as fh:
        fh.writelines(a_lines)
    with open(os.path.join(directory, f"{name}_graph_indicator.txt"), "w") as fh:
        fh.writelines(ind_lines)
    with open(os.path.join(directory, f"{name}_graph_labels.txt"), "w") as fh:
        fh.writelines(f"{int(lbl)}\n" for lbl in dataset.labels)


def dataset_stats(dataset: GraphDataset) -> dict:
    """Summary statistics: graph/class counts and mean vertex/edge counts."""
    nodes = np.array([g.num_nodes for g in dataset.graphs], dtype=np.float64)
    edges = np.array([g.num_edges for g in dataset.graphs], dtype=np.float64)
    return {
        "name": dataset.name,
        "num_graphs": len(dataset.graphs),
        "num_classes": dataset.num_classes,
        "mean_nodes": float(nodes.mean()),
        "mean_edges": float(edges.mean()),
        "class_counts": np.bincount(dataset.labels,
                                    minlength=dataset.num_classes).tolist(),
        "num_edgeless_graphs": int((edges == 0).sum()),
    }
