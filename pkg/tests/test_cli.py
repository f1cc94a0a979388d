import csv
import json
import os

import numpy as np
import pytest

from vsgraph.cli import main
from vsgraph.datasets import write_tudataset
from vsgraph.synthetic import stars_vs_paths


@pytest.fixture
def corpus_dir(tmp_path):
    d = tmp_path / "stars-vs-paths"
    write_tudataset(stars_vs_paths(per_class=20), str(d), "stars-vs-paths")
    return str(d)


def run_cli(args):
    return main([str(a) for a in args])


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_cv_writes_reports(tmp_path, corpus_dir, capsys):
    out_json = tmp_path / "r.json"
    out_csv = tmp_path / "r.csv"
    rc = run_cli(["cv", "--dataset", corpus_dir, "--model", "vsgraph",
                  "--dim", 128, "--folds", 10, "--repeats", 3, "--seed", 7,
                  "--workers", 1,
                  "--out-json", out_json, "--out-csv", out_csv])
    assert rc == 0
    rows = read_csv(out_csv)
    assert len(rows) == 30
    doc = json.loads(out_json.read_text())
    assert doc["manifest"]["seed"] == 7
    assert doc["mean_accuracy"] == 1.0
    out = capsys.readouterr().out
    assert "stars-vs-paths" in out and "vsgraph" in out


def test_cv_same_seed_same_folds_across_models(tmp_path, corpus_dir):
    csvs = {}
    for model in ("vsgraph", "graphhd"):
        out_csv = tmp_path / f"{model}.csv"
        rc = run_cli(["cv", "--dataset", corpus_dir, "--model", model,
                      "--dim", 128, "--folds", 5, "--repeats", 2,
                      "--seed", 11, "--workers", 1,
                      "--out-json", tmp_path / f"{model}.json",
                      "--out-csv", out_csv])
        assert rc == 0
        csvs[model] = read_csv(out_csv)
    for a, b in zip(csvs["vsgraph"], csvs["graphhd"]):
        assert (a["repeat"], a["fold"], a["test_size"]) == \
               (b["repeat"], b["fold"], b["test_size"])


def test_cv_determinism_byte_identical_accuracy(tmp_path, corpus_dir):
    cols = []
    for run in range(2):
        out_csv = tmp_path / f"run{run}.csv"
        rc = run_cli(["cv", "--dataset", corpus_dir, "--dim", 128,
                      "--folds", 5, "--repeats", 2, "--seed", 3,
                      "--workers", 2,
                      "--out-json", tmp_path / f"run{run}.json",
                      "--out-csv", out_csv])
        assert rc == 0
        cols.append([r["accuracy"] for r in read_csv(out_csv)])
    assert cols[0] == cols[1]


def test_cv_missing_dataset_names_path(tmp_path, capsys):
    rc = run_cli(["cv", "--dataset", tmp_path / "nowhere"])
    assert rc != 0
    err = capsys.readouterr().err
    assert "nowhere" in err
    assert err.startswith("error:")


def test_data_root_env_resolution(tmp_path, corpus_dir, monkeypatch, capsys):
    monkeypatch.setenv("VSGRAPH_DATA_ROOT", os.path.dirname(corpus_dir))
    rc = run_cli(["validate-dataset", "--dataset", "stars-vs-paths"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "40 graphs" in out
    assert "all graph invariants hold" in out


def test_sweep_series_files(tmp_path, corpus_dir):
    prefix = tmp_path / "series"
    rc = run_cli(["sweep", "--dataset", corpus_dir,
                  "--model", "vsgraph,graphhd", "--dims", "128,256",
                  "--folds", 5, "--repeats", 1, "--seed", 7, "--workers", 1,
                  "--out-json", tmp_path / "s.json",
                  "--out-csv", tmp_path / "s.csv",
                  "--series-prefix", prefix])
    assert rc == 0
    series = {}
    for model in ("vsgraph", "graphhd"):
        lines = (tmp_path / f"series_{model}.dat").read_text().strip().splitlines()
        series[model] = [line.split()[0] for line in lines[1:]]
    assert series["vsgraph"] == series["graphhd"] == ["128", "256"]
    rows = read_csv(tmp_path / "s.csv")
    assert len(rows) == 2 * 2 * 5  # models x dims x folds


def test_single_dim_sweep_matches_cv(tmp_path, corpus_dir):
    rc = run_cli(["sweep", "--dataset", corpus_dir, "--dims", "128",
                  "--folds", 5, "--repeats", 1, "--seed", 5, "--workers", 1,
                  "--out-json", tmp_path / "sweep.json",
                  "--out-csv", tmp_path / "sweep.csv",
                  "--series-prefix", tmp_path / "sx"])
    assert rc == 0
    rc = run_cli(["cv", "--dataset", corpus_dir, "--dim", 128,
                  "--folds", 5, "--repeats", 1, "--seed", 5, "--workers", 1,
                  "--out-json", tmp_path / "cv.json",
                  "--out-csv", tmp_path / "cv.csv"])
    assert rc == 0
    sweep_accs = [r["accuracy"] for r in read_csv(tmp_path / "sweep.csv")]
    cv_accs = [r["accuracy"] for r in read_csv(tmp_path / "cv.csv")]
    assert sweep_accs == cv_accs


@pytest.mark.parametrize("model", ["vsgraph", "graphhd"])
def test_train_predict_round_trip(tmp_path, corpus_dir, model, capsys):
    model_path = tmp_path / "m.vsg"
    rc = run_cli(["train", "--dataset", corpus_dir, "--model", model,
                  "--dim", 128, "--seed", 7, "--workers", 1,
                  "--out", model_path])
    assert rc == 0
    assert model_path.exists()
    assert (tmp_path / "m.vsg.meta.json").exists()
    pred_csv = tmp_path / "preds.csv"
    rc = run_cli(["predict", "--dataset", corpus_dir,
                  "--model-file", model_path, "--workers", 1,
                  "--out-csv", pred_csv])
    assert rc == 0
    out = capsys.readouterr().out
    assert "agreement with dataset labels: 40/40" in out
    rows = read_csv(pred_csv)
    assert len(rows) == 40
    preds = [int(r["predicted_class"]) for r in rows]
    assert preds == [0] * 20 + [1] * 20
    assert {"graph_index", "predicted_class", "score_0", "score_1"} <= set(rows[0])


def test_model_round_trip_preserves_prototypes(tmp_path, corpus_dir):
    from vsgraph.model_io import load_model, save_model
    model_path = str(tmp_path / "m.vsg")
    rc = run_cli(["train", "--dataset", corpus_dir, "--dim", 128,
                  "--seed", 7, "--workers", 1, "--out", model_path])
    assert rc == 0
    model = load_model(model_path)
    second = str(tmp_path / "m2.vsg")
    save_model(model, second)
    assert open(model_path, "rb").read() == open(second, "rb").read()


def test_predict_dim_mismatch_errors(tmp_path, corpus_dir, capsys):
    model_path = tmp_path / "m.vsg"
    rc = run_cli(["train", "--dataset", corpus_dir, "--dim", 128,
                  "--seed", 7, "--workers", 1, "--out", model_path])
    assert rc == 0
    rc = run_cli(["predict", "--dataset", corpus_dir,
                  "--model-file", model_path, "--dim", 256,
                  "--out-csv", tmp_path / "p.csv"])
    assert rc != 0
    assert "dim" in capsys.readouterr().err


def test_config_file_defaults_and_flag_override(tmp_path, corpus_dir):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dim": 128, "folds": 5, "repeats": 1,
                               "seed": 9, "workers": 1}))
    out_csv = tmp_path / "c.csv"
    rc = run_cli(["--config", cfg, "cv", "--dataset", corpus_dir,
                  "--repeats", 2,  # flag overrides config
                  "--out-json", tmp_path / "c.json", "--out-csv", out_csv])
    assert rc == 0
    rows = read_csv(out_csv)
    assert len(rows) == 10  # 5 folds x 2 repeats
    assert rows[0]["dim"] == "128"


def test_validate_dataset_stats_output(corpus_dir, capsys):
    rc = run_cli(["validate-dataset", "--dataset", corpus_dir])
    assert rc == 0
    out = capsys.readouterr().out
    assert "40 graphs" in out
    assert "2 classes" in out
