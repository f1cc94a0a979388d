import os

import numpy as np
import pytest

from conftest import require_dataset
from vsgraph.datasets import (DatasetFormatError, GraphDataset, dataset_stats,
                              parse_tudataset, write_tudataset)
from vsgraph.graphs import make_graph, validate_graph


def _write(path, lines):
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


@pytest.fixture
def triangle_dir(tmp_path):
    """Hand-written fixture: a single triangle graph, one class."""
    d = tmp_path / "tri"
    d.mkdir()
    _write(d / "tri_A.txt", ["1, 2", "2, 1", "2, 3", "3, 2", "1, 3", "3, 1"])
    _write(d / "tri_graph_indicator.txt", ["1", "1", "1"])
    _write(d / "tri_graph_labels.txt", ["1"])
    return str(d)


def test_parse_triangle_fixture(triangle_dir):
    ds = parse_tudataset(triangle_dir, "tri")
    assert len(ds) == 1
    assert ds.num_classes == 1
    g = ds.graphs[0]
    validate_graph(g)
    assert g.num_nodes == 3
    assert g.num_edges == 3


def test_parse_single_direction_edges(tmp_path):
    d = tmp_path / "one"
    d.mkdir()
    _write(d / "one_A.txt", ["1, 2", "2, 3"])
    _write(d / "one_graph_indicator.txt", ["1", "1", "1"])
    _write(d / "one_graph_labels.txt", ["4"])
    ds = parse_tudataset(str(d), "one")
    g = ds.graphs[0]
    assert g.num_edges == 2
    assert np.array_equal(g.degrees(), [1, 2, 1])


def test_label_remap_preserves_sorted_order(tmp_path):
    d = tmp_path / "lbl"
    d.mkdir()
    _write(d / "lbl_A.txt", ["1, 2", "3, 4", "5, 6"])
    _write(d / "lbl_graph_indicator.txt", ["1", "1", "2", "2", "3", "3"])
    _write(d / "lbl_graph_labels.txt", ["7", "-2", "7"])
    ds = parse_tudataset(str(d), "lbl")
    assert ds.num_classes == 2
    assert ds.raw_labels == (-2, 7)
    assert ds.labels.tolist() == [1, 0, 1]


def test_multi_graph_parse_and_locals(tmp_path):
    d = tmp_path / "two"
    d.mkdir()
    # graph 1: triangle over global nodes 1-3; graph 2: edge over 4-5
    _write(d / "two_A.txt", ["1, 2", "2, 3", "3, 1", "4, 5"])
    _write(d / "two_graph_indicator.txt", ["1", "1", "1", "2", "2"])
    _write(d / "two_graph_labels.txt", ["0", "1"])
    ds = parse_tudataset(str(d), "two")
    assert [g.num_nodes for g in ds.graphs] == [3, 2]
    assert [g.num_edges for g in ds.graphs] == [3, 1]


def test_missing_file_names_it(tmp_path):
    d = tmp_path / "miss"
    d.mkdir()
    _write(d / "miss_A.txt", ["1, 2"])
    _write(d / "miss_graph_indicator.txt", ["1", "1"])
    with pytest.raises(FileNotFoundError, match="miss_graph_labels.txt"):
        parse_tudataset(str(d), "miss")


def test_non_integer_token_reports_line(tmp_path):
    d = tmp_path / "bad"
    d.mkdir()
    _write(d / "bad_A.txt", ["1, 2", "2, x"])
    _write(d / "bad_graph_indicator.txt", ["1", "1"])
    _write(d / "bad_graph_labels.txt", ["0"])
    with pytest.raises(DatasetFormatError, match=r"bad_A.txt:2"):
        parse_tudataset(str(d), "bad")


def test_unknown_node_reports_line(tmp_path):
    d = tmp_path / "oob"
    d.mkdir()
    _write(d / "oob_A.txt", ["1, 2", "2, 9"])
    _write(d / "oob_graph_indicator.txt", ["1", "1"])
    _write(d / "oob_graph_labels.txt", ["0"])
    with pytest.raises(DatasetFormatError, match=r"oob_A.txt:2"):
        parse_tudataset(str(d), "oob")


def test_cross_graph_edge_rejected(tmp_path):
    d = tmp_path / "x"
    d.mkdir()
    _write(d / "x_A.txt", ["1, 2", "2, 3"])
    _write(d / "x_graph_indicator.txt", ["1", "1", "2"])
    _write(d / "x_graph_labels.txt", ["0", "1"])
    with pytest.raises(DatasetFormatError, match="spans graphs"):
        parse_tudataset(str(d), "x")


def test_attribute_files_ignored(triangle_dir):
    _write(os.path.join(triangle_dir, "tri_node_labels.txt"), ["9", "9", "9"])
    _write(os.path.join(triangle_dir, "tri_edge_attributes.txt"), ["1.5"] * 6)
    ds = parse_tudataset(triangle_dir, "tri")
    assert len(ds) == 1


def test_parse_idempotent(triangle_dir):
    a = parse_tudataset(triangle_dir, "tri")
    b = parse_tudataset(triangle_dir, "tri")
    assert len(a) == len(b)
    assert np.array_equal(a.labels, b.labels)
    for ga, gb in zip(a.graphs, b.graphs):
        assert np.array_equal(ga.csr_offsets, gb.csr_offsets)
        assert np.array_equal(ga.csr_neighbors, gb.csr_neighbors)


def test_write_parse_round_trip(tmp_path, seed):
    from vsgraph.synthetic import random_two_class
    ds = random_two_class(seed, per_class=5, num_nodes=8, edge_prob=0.4)
    write_tudataset(ds, str(tmp_path / "rt"), "rt")
    back = parse_tudataset(str(tmp_path / "rt"), "rt")
    assert len(back) == len(ds)
    assert np.array_equal(back.labels, ds.labels)
    for ga, gb in zip(ds.graphs, back.graphs):
        assert np.array_equal(ga.csr_offsets, gb.csr_offsets)
        assert np.array_equal(ga.csr_neighbors, gb.csr_neighbors)


def test_dataset_validation():
    tri = make_graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        GraphDataset([tri], np.array([0, 1]), "bad", 2)
    with pytest.raises(ValueError):
        GraphDataset([tri], np.array([0]), "bad", 2)  # class 1 empty
    with pytest.raises(ValueError):
        GraphDataset([tri], np.array([2]), "bad", 2)


def test_mutag_statistics():
    path = require_dataset("MUTAG")
    ds = parse_tudataset(path, "MUTAG")
    stats = dataset_stats(ds)
    assert stats["num_graphs"] == 188
    assert stats["num_classes"] == 2
    assert abs(stats["mean_nodes"] - 17.93) <= 0.01
    assert abs(stats["mean_edges"] - 19.79) <= 0.01
    for g in ds.graphs:
        validate_graph(g)


def test_ptc_fm_statistics():
    path = require_dataset("PTC_FM")
    ds = parse_tudataset(path, "PTC_FM")
    stats = dataset_stats(ds)
    assert stats["num_graphs"] == 349
    assert abs(stats["mean_nodes"] - 14.11) <= 0.01
    assert abs(stats["mean_edges"] - 14.48) <= 0.01
