"""Stratified repeated k-fold cross-validation with wall-clock timing.

Per fold: encode the training graphs, fit, encode the test graphs,
predict. Training time covers encoding plus fitting (encoding is the
training cost of a single-pass pipeline); inference time covers
encoding plus prediction of the test graphs. The rank basis is rebuilt
per (repeat, fold) from a derived stream seed, fold assignment depends
only on (seed, repeat), and one untimed warm-up fold absorbs one-time
allocation and compilation effects, so reruns with the same seed
reproduce every accuracy digit exactly.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import kernels
from .classifier import fit, predict_many
from .datasets import GraphDataset, dataset_stats
from .diffusion import RankBasis
from .encoder import EncoderConfig, encode_graphs
from .graphhd import encode_graphhd_many, fit_graphhd_encoded, predict_graphhd
from .seeding import STREAM_BASIS, STREAM_FOLDS, SeedSpec, words_for

REPORT_FORMAT_VERSION = 1
MODELS = ("vsgraph", "graphhd")
CSV_COLUMNS = ("dataset", "model", "dim", "repeat", "fold", "test_size",
               "accuracy", "train_ms_per_graph", "infer_ms_per_graph",
               "setup_ms")


@dataclass(frozen=True)
class CVConfig:
    """Cross-validation protocol parameters."""

    seed: SeedSpec
    encoder: EncoderConfig
    model: str = "vsgraph"
    folds: int = 10
    repeats: int = 3
    dims: tuple[int, ...] = ()
    workers: int = 1

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.folds < 2:
            raise ValueError(f"folds must be >= 2, got {self.folds}")
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if any(d < 1 for d in self.dims):
            raise ValueError(f"sweep dims must be >= 1, got {self.dims}")


@dataclass
class FoldResult:
    repeat: int
    fold: int
    test_size: int
    accuracy: float
    train_ms_per_graph: float
    infer_ms_per_graph: float
    setup_ms: float


@dataclass
class CVReport:
    """Accuracy and per-graph timing for one (dataset, model, dim) run."""

    dataset: str
    model: str
    dim: int
    folds: int
    repeats: int
    workers: int
    backend: str
    fold_results: list[FoldResult]
    mean_accuracy: float
    std_accuracy: float
    weighted_mean_accuracy: float
    train_ms_per_graph_mean: float
    train_ms_per_graph_median: float
    infer_ms_per_graph_mean: float
    infer_ms_per_graph_median: float
    setup_ms_total: float
    bytes_per_hypervector: int
    num_edgeless_graphs: int
    manifest: dict = field(default_factory=dict)
    format_version: int = REPORT_FORMAT_VERSION

    @property
    def per_fold_accuracy(self) -> list[float]:
        return [fr.accuracy for fr in self.fold_results]


def stratified_kfold(labels, k: int, seed: SeedSpec) -> list[np.ndarray]:
    """Disjoint index folds with per-class counts differing by at most 1.

    Deterministic in the seed; classes are dealt round-robin after a
    seeded in-class shuffle, with a rotating start so overall fold sizes
    stay balanced too.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if k < 2:
        raise ValueError(f"folds must be >= 2, got {k}")
    rng = seed.rng()
    buckets: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for c in np.unique(labels):
        idx = np.flatnonzero(labels == c)
        if len(idx) < k:
            raise ValueError(
                f"class {int(c)} has {len(idx)} members, fewer than k={k}")
        for pos, i in enumerate(rng.permutation(idx)):
            buckets[(pos + offset) % k].append(int(i))
        offset += len(idx)
    return [np.sort(np.array(b, dtype=np.int64)) for b in buckets]


def _run_fold(dataset: GraphDataset, config: CVConfig, basis_seed: SeedSpec,
              train_idx: np.ndarray,
              test_idx: np.ndarray) -> tuple[float, float, float, float]:
    """Train and evaluate one fold; returns (accuracy, train_s, infer_s, setup_s)."""
    enc = config.encoder
    train_graphs = [dataset.graphs[i] for i in train_idx]
    test_graphs = [dataset.graphs[i] for i in test_idx]
    y_train = dataset.labels[train_idx]
    y_test = dataset.labels[test_idx]

    t_setup = time.perf_counter()
    basis = RankBasis(basis_seed, enc.dim)
    basis.ensure(max(g.num_nodes for g in dataset.graphs))
    setup_s = time.perf_counter() - t_setup

    if config.model == "vsgraph":
        t0 = time.perf_counter()
        z_train = encode_graphs(train_graphs, enc, basis, config.workers)
        model = fit(z_train, y_train, dataset.num_classes, enc)
        t1 = time.perf_counter()
        z_test = encode_graphs(test_graphs, enc, basis, config.workers)
        preds = predict_many(model, z_test)
        t2 = time.perf_counter()
    else:
        t0 = time.perf_counter()
        encs = encode_graphhd_many(train_graphs, basis, config.workers)
        model = fit_graphhd_encoded(encs, y_train, basis, dataset.num_classes)
        t1 = time.perf_counter()
        test_encs = encode_graphhd_many(test_graphs, basis, config.workers)
        preds = np.array([predict_graphhd(model, h) for h in test_encs])
        t2 = time.perf_counter()

    accuracy = float(np.mean(preds == y_test))
    return accuracy, t1 - t0, t2 - t1, setup_s


def run_cv(dataset: GraphDataset, config: CVConfig,
           manifest: dict | None = None) -> CVReport:
    """Run the full repeated stratified CV protocol for one dimension."""
    labels = dataset.labels
    enc = config.encoder
    counts = np.bincount(labels, minlength=dataset.num_classes)
    small = np.flatnonzero(counts < config.folds)
    if small.size:
        raise ValueError(f"class {int(small[0])} has {int(counts[small[0]])} "
                         f"graphs, fewer than folds={config.folds}")

    all_idx = np.arange(len(labels))

    def fold_seed(r: int) -> SeedSpec:
        return config.seed.derive(STREAM_FOLDS, r)

    def basis_seed(r: int, f: int) -> SeedSpec:
        return config.seed.derive(STREAM_BASIS, r, f)

    # Untimed warm-up fold: compiles kernels, touches allocators.
    warm_test = stratified_kfold(labels, config.folds, fold_seed(0))[0]
    warm_train = np.setdiff1d(all_idx, warm_test)
    _run_fold(dataset, config, basis_seed(0, 0), warm_train, warm_test)

    results: list[FoldResult] = []
    setup_total = 0.0
    for r in range(config.repeats):
        folds = stratified_kfold(labels, config.folds, fold_seed(r))
        for f, test_idx in enumerate(folds):
            train_idx = np.setdiff1d(all_idx, test_idx)
            acc, train_s, infer_s, setup_s = _run_fold(
                dataset, config, basis_seed(r, f), train_idx, test_idx)
            setup_total += setup_s
            results.append(FoldResult(
                repeat=r, fold=f, test_size=len(test_idx), accuracy=acc,
                train_ms_per_graph=1e3 * train_s / len(train_idx),
                infer_ms_per_graph=1e3 * infer_s / len(test_idx),
                setup_ms=1e3 * setup_s))

    accs = np.array([fr.accuracy for fr in results])
    sizes = np.array([fr.test_size for fr in results], dtype=np.float64)
    train_ms = np.array([fr.train_ms_per_graph for fr in results])
    infer_ms = np.array([fr.infer_ms_per_graph for fr in results])
    stats = dataset_stats(dataset)
    return CVReport(
        dataset=dataset.name, model=config.model, dim=enc.dim,
        folds=config.folds, repeats=config.repeats, workers=config.workers,
        backend=kernels.BACKEND, fold_results=results,
        mean_accuracy=float(accs.mean()),
        std_accuracy=float(accs.std()),
        weighted_mean_accuracy=float((accs * sizes).sum() / sizes.sum()),
        train_ms_per_graph_mean=float(train_ms.mean()),
        train_ms_per_graph_median=float(np.median(train_ms)),
        infer_ms_per_graph_mean=float(infer_ms.mean()),
        infer_ms_per_graph_median=float(np.median(infer_ms)),
        setup_ms_total=1e3 * setup_total,
        bytes_per_hypervector=words_for(enc.dim) * 8,
        num_edgeless_graphs=stats["num_edgeless_graphs"],
        manifest=dict(manifest or {}))


@dataclass
class SweepReport:
    """run_cv repeated across hypervector dimensionalities."""

    dims: tuple[int, ...]
    reports: list[CVReport]

    def series(self) -> list[tuple[int, float]]:
        return [(rep.dim, rep.mean_accuracy) for rep in self.reports]


def run_dim_sweep(dataset: GraphDataset, config: CVConfig,
                  manifest: dict | None = None) -> SweepReport:
    """Run the CV protocol at every dim in config.dims, all else fixed."""
    if not config.dims:
        raise ValueError("config.dims must be nonempty for a sweep")
    reports = []
    for dim in config.dims:
        sub = replace(config, encoder=replace(config.encoder, dim=dim))
        reports.append(run_cv(dataset, sub, manifest))
    return SweepReport(tuple(config.dims), reports)


def report_to_dict(report: CVReport) -> dict:
    doc = asdict(report)
    doc["per_fold_accuracy"] = report.per_fold_accuracy
    return doc


def write_report_json(reports: CVReport | list[CVReport], path: str) -> None:
    if isinstance(reports, CVReport):
        doc: dict | list = report_to_dict(reports)
    else:
        doc = [report_to_dict(r) for r in reports]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def write_report_csv(reports: CVReport | list[CVReport], path: str) -> None:
    """One row per repeat x fold x dim; floats use repr for stable digits."""
    if isinstance(reports, CVReport):
        reports = [reports]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rep in reports:
            for fr in rep.fold_results:
                writer.writerow([
                    rep.dataset, rep.model, rep.dim, fr.repeat, fr.fold,
                    fr.test_size, repr(fr.accuracy),
                    repr(fr.train_ms_per_graph), repr(fr.infer_ms_per_graph),
                    repr(fr.setup_ms)])


def write_accuracy_series(sweep: SweepReport, path: str) -> None:
    """Gnuplot-friendly two-column series: dim and mean accuracy."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# dim mean_accuracy\n")
        for dim, acc in sweep.series():
            fh.write(f"{dim} {acc!r}\n")
