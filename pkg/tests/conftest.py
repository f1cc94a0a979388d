import os

import numpy as np
import pytest

from vsgraph.datasets import GraphDataset, write_tudataset
from vsgraph.graphs import make_graph
from vsgraph.seeding import SeedSpec

MASTER_SEED = 7

# Real TUDataset directories are looked up under this root when present;
# tests needing them skip otherwise (see scripts/fetch_tudataset.py).
DATA_ROOT = os.environ.get("VSGRAPH_DATA_ROOT",
                           os.path.join(os.path.dirname(__file__), "..", "data"))


def dataset_dir(name: str) -> str:
    return os.path.join(DATA_ROOT, name)


def require_dataset(name: str) -> str:
    path = dataset_dir(name)
    if not os.path.isfile(os.path.join(path, f"{name}_A.txt")):
        pytest.skip(f"dataset {name} not present under {DATA_ROOT} "
                    f"(run scripts/fetch_tudataset.py with network access)")
    return path


@pytest.fixture
def seed() -> SeedSpec:
    return SeedSpec(MASTER_SEED)


@pytest.fixture
def triangle():
    return make_graph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def path3():
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def star4():
    # 1 hub (node 0) + 3 leaves
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def tu_fixture_dir(tmp_path):
    """Tiny TUDataset directory: a triangle and a path, two classes."""
    ds = GraphDataset(
        [make_graph(3, [(0, 1), (1, 2), (2, 0)]), make_graph(3, [(0, 1), (1, 2)])],
        np.array([0, 1]), "tiny", 2)
    write_tudataset(ds, str(tmp_path / "tiny"), "tiny")
    return str(tmp_path / "tiny")
