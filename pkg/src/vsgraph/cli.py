"""Command-line interface.

Subcommands: ``cv``, ``sweep``, ``train``, ``predict``,
``validate-dataset``. Human-readable summaries go to stdout,
diagnostics to stderr, machine-readable output only to files, so every
command scripts cleanly. A JSON config file may supply defaults
(``--config``); explicit flags override it. The ``VSGRAPH_DATA_ROOT``
environment variable provides the default dataset root.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, kernels
from .classifier import PrototypeModel, fit, predict_scores
from .datasets import dataset_stats, parse_tudataset
from .diffusion import RankBasis, default_basis
from .encoder import AGGREGATION_MODES, EncoderConfig, encode_graphs
from .graphhd import (GraphHDModel, encode_graphhd_many, fit_graphhd_encoded,
                      predict_scores_graphhd)
from .graphs import validate_graph
from .harness import (MODELS, CVConfig, run_cv, run_dim_sweep,
                      write_accuracy_series, write_report_csv,
                      write_report_json)
from .model_io import load_model, save_model
from .seeding import SeedSpec

DATA_ROOT_ENV = "VSGRAPH_DATA_ROOT"
DEFAULT_DIMS = (128, 256, 512, 1024, 2048, 4096, 8192)


@dataclass
class RunManifest:
    """Everything needed to reproduce a run; echoed into every report."""

    dataset: str
    name: str
    model: str
    dim: int
    hops: int
    layers: int
    alpha: float
    folds: int
    repeats: int
    seed: int
    dims: tuple[int, ...]
    workers: int
    aggregation: str
    out_json: str
    out_csv: str
    series_prefix: str
    backend: str

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["dims"] = list(self.dims)
        doc["version"] = __version__
        return doc


def _resolve_dataset(path_or_name: str, name: str | None) -> tuple[str, str]:
    """Map (--dataset, --name) to (directory, tu-prefix)."""
    if os.path.isdir(path_or_name):
        directory = path_or_name
        prefix = name or os.path.basename(os.path.normpath(path_or_name))
        return directory, prefix
    root = os.environ.get(DATA_ROOT_ENV, "")
    if root:
        candidate = os.path.join(root, path_or_name)
        if os.path.isdir(candidate):
            return candidate, name or path_or_name
    raise FileNotFoundError(
        f"dataset directory not found: {path_or_name!r} "
        f"(set {DATA_ROOT_ENV} or pass a directory path)")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--dataset", required=True,
                     help="dataset directory, or a name under $" + DATA_ROOT_ENV)
    sub.add_argument("--name", default=None,
                     help="TUDataset file prefix (default: directory basename)")
    sub.add_argument("--model", default="vsgraph",
                     help="vsgraph | graphhd (sweep accepts a comma list)")
    sub.add_argument("--dim", type=int, default=8192, help="hypervector dimension")
    sub.add_argument("--hops", type=int, default=2, help="diffusion hops K")
    sub.add_argument("--layers", type=int, default=2, help="message passing layers L")
    sub.add_argument("--alpha", type=float, default=0.5, help="residual blend factor")
    sub.add_argument("--aggregation", default="max", choices=AGGREGATION_MODES)
    sub.add_argument("--seed", type=int, default=7, help="master seed")
    sub.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                     help="worker threads (1 = reference timing)")


def _add_cv_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--folds", type=int, default=10)
    sub.add_argument("--repeats", type=int, default=3)
    sub.add_argument("--out-json", default="report.json")
    sub.add_argument("--out-csv", default="report.csv")
    sub.add_argument("--series-prefix", default="series",
                     help="prefix for sweep accuracy series files")


def build_parser() -> tuple[argparse.ArgumentParser,
                            dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="vsgraph",
        description="Training-free vector-symbolic graph classification "
                    "benchmark (spike-diffusion encoder vs GraphHD baseline).")
    parser.add_argument("--config", default=None,
                        help="JSON file with default flag values")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    cv = subs.add_parser("cv", help="repeated stratified k-fold cross-validation")
    _add_common(cv)
    _add_cv_flags(cv)

    sweep = subs.add_parser("sweep", help="cross-validation across dimensions")
    _add_common(sweep)
    _add_cv_flags(sweep)
    sweep.add_argument("--dims", default=",".join(str(d) for d in DEFAULT_DIMS),
                       help="comma-separated hypervector dimensions")

    train = subs.add_parser("train", help="fit a model on a whole dataset")
    _add_common(train)
    train.add_argument("--out", default="model.vsg", help="model file path")

    predict = subs.add_parser("predict", help="predict labels with a saved model")
    predict.add_argument("--dataset", required=True)
    predict.add_argument("--name", default=None)
    predict.add_argument("--model-file", required=True)
    predict.add_argument("--dim", type=int, default=None,
                         help="expected model dimension (checked if given)")
    predict.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    predict.add_argument("--out-csv", default="predictions.csv")

    val = subs.add_parser("validate-dataset",
                          help="parse a dataset and check graph invariants")
    val.add_argument("--dataset", required=True)
    val.add_argument("--name", default=None)
    return parser, {"cv": cv, "sweep": sweep, "train": train,
                    "predict": predict, "validate-dataset": val}


def _manifest(args: argparse.Namespace, models: list[str],
              dims: tuple[int, ...]) -> RunManifest:
    return RunManifest(
        dataset=args.dataset, name=args.name or "", model=",".join(models),
        dim=args.dim, hops=args.hops, layers=args.layers, alpha=args.alpha,
        folds=getattr(args, "folds", 0), repeats=getattr(args, "repeats", 0),
        seed=args.seed, dims=dims, workers=args.workers,
        aggregation=args.aggregation,
        out_json=getattr(args, "out_json", ""),
        out_csv=getattr(args, "out_csv", ""),
        series_prefix=getattr(args, "series_prefix", ""),
        backend=kernels.BACKEND)


def _cv_config(args: argparse.Namespace, model: str, dim: int,
               dims: tuple[int, ...] = ()) -> CVConfig:
    seed = SeedSpec(args.seed)
    enc = EncoderConfig(dim=dim, hops=args.hops, layers=args.layers,
                        alpha=args.alpha, seed=seed,
                        aggregation=args.aggregation)
    return CVConfig(seed=seed, encoder=enc, model=model, folds=args.folds,
                    repeats=args.repeats, dims=dims, workers=args.workers)


def _print_summary_header() -> None:
    print(f"{'dataset':<22} {'model':<9} {'dim':>6} {'accuracy':>18} "
          f"{'train ms/g':>11} {'infer ms/g':>11}")


def _print_summary_row(report) -> None:
    acc = f"{report.mean_accuracy:.4f} +/- {report.std_accuracy:.4f}"
    print(f"{report.dataset:<22} {report.model:<9} {report.dim:>6} {acc:>18} "
          f"{report.train_ms_per_graph_mean:>11.3f} "
          f"{report.infer_ms_per_graph_mean:>11.3f}")


def _cmd_cv(args: argparse.Namespace) -> int:
    directory, prefix = _resolve_dataset(args.dataset, args.name)
    dataset = parse_tudataset(directory, prefix)
    if args.model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {args.model!r}")
    manifest = _manifest(args, [args.model], ())
    report = run_cv(dataset, _cv_config(args, args.model, args.dim),
                    manifest.to_dict())
    write_report_json(report, args.out_json)
    write_report_csv(report, args.out_csv)
    _print_summary_header()
    _print_summary_row(report)
    print(f"reports: {args.out_json}, {args.out_csv}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    directory, prefix = _resolve_dataset(args.dataset, args.name)
    dataset = parse_tudataset(directory, prefix)
    models = [m.strip() for m in args.model.split(",") if m.strip()]
    for m in models:
        if m not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {m!r}")
    dims = tuple(int(d) for d in str(args.dims).split(","))
    manifest = _manifest(args, models, dims)
    all_reports = []
    _print_summary_header()
    for model in models:
        sweep = run_dim_sweep(dataset, _cv_config(args, model, dims[0], dims),
                              manifest.to_dict())
        for rep in sweep.reports:
            _print_summary_row(rep)
        write_accuracy_series(sweep, f"{args.series_prefix}_{model}.dat")
        all_reports.extend(sweep.reports)
    write_report_json(all_reports, args.out_json)
    write_report_csv(all_reports, args.out_csv)
    print(f"reports: {args.out_json}, {args.out_csv}; series prefix: "
          f"{args.series_prefix}_<model>.dat")
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    directory, prefix = _resolve_dataset(args.dataset, args.name)
    dataset = parse_tudataset(directory, prefix)
    if args.model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {args.model!r}")
    seed = SeedSpec(args.seed)
    basis = default_basis(seed, args.dim)
    if args.model == "vsgraph":
        enc = EncoderConfig(dim=args.dim, hops=args.hops, layers=args.layers,
                            alpha=args.alpha, seed=seed,
                            aggregation=args.aggregation)
        embeddings = encode_graphs(dataset.graphs, enc, basis, args.workers)
        model: PrototypeModel | GraphHDModel = fit(
            embeddings, dataset.labels, dataset.num_classes, enc)
    else:
        encs = encode_graphhd_many(dataset.graphs, basis, args.workers)
        model = fit_graphhd_encoded(encs, dataset.labels, basis,
                                    dataset.num_classes)
    save_model(model, args.out)
    print(f"trained {args.model} on {dataset.name} "
          f"({len(dataset)} graphs, {dataset.num_classes} classes, D={args.dim})")
    print(f"model written to {args.out} (+ {args.out}.meta.json)")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model_file)
    if args.dim is not None and args.dim != model.dim:
        raise ValueError(
            f"model file has dim {model.dim}, manifest expects {args.dim}")
    directory, prefix = _resolve_dataset(args.dataset, args.name)
    dataset = parse_tudataset(directory, prefix)
    if isinstance(model, PrototypeModel):
        basis = default_basis(model.config.seed, model.dim)
        embeddings = encode_graphs(dataset.graphs, model.config, basis,
                                   args.workers)
        scores = [predict_scores(model, z) for z in embeddings]
    else:
        basis = RankBasis(model.seed, model.dim)
        encs = encode_graphhd_many(dataset.graphs, basis, args.workers)
        scores = [predict_scores_graphhd(model, h) for h in encs]
    preds = [int(np.argmax(s)) for s in scores]
    with open(args.out_csv, "w", encoding="utf-8", newline="") as fh:
        cols = ["graph_index", "predicted_class"] + \
               [f"score_{c}" for c in range(model.num_classes)]
        fh.write(",".join(cols) + "\n")
        for i, (p, s) in enumerate(zip(preds, scores)):
            fh.write(",".join([str(i), str(p)] + [repr(float(v)) for v in s]) + "\n")
    correct = sum(int(p == y) for p, y in zip(preds, dataset.labels))
    print(f"predicted {len(preds)} graphs; agreement with dataset labels: "
          f"{correct}/{len(preds)}")
    print(f"predictions written to {args.out_csv}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    directory, prefix = _resolve_dataset(args.dataset, args.name)
    dataset = parse_tudataset(directory, prefix)
    for i, g in enumerate(dataset.graphs):
        try:
            validate_graph(g)
        except ValueError as exc:
            raise ValueError(f"graph {i} invalid: {exc}") from exc
    stats = dataset_stats(dataset)
    print(f"{stats['name']}: {stats['num_graphs']} graphs, "
          f"{stats['num_classes']} classes, "
          f"mean vertices {stats['mean_nodes']:.2f}, "
          f"mean edges {stats['mean_edges']:.2f}, "
          f"class counts {stats['class_counts']}, "
          f"edgeless graphs {stats['num_edgeless_graphs']}")
    print("all graph invariants hold")
    return 0


_COMMANDS = {
    "cv": _cmd_cv,
    "sweep": _cmd_sweep,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "validate-dataset": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    parser, subparsers = build_parser()
    if known.config:
        try:
            with open(known.config, "r", encoding="utf-8") as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {known.config}: {exc}",
                  file=sys.stderr)
            return 1
        # Config values become parser defaults; explicit flags still win.
        for sub in subparsers.values():
            sub.set_defaults(**{k.replace("-", "_"): v
                                for k, v in defaults.items()})
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
