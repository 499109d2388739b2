import json
import logging

import pandas as pd
import pytest
from sqlmodel import Session, select

from app.cli import (
    EXIT_BASELINE_EXCLUDED, EXIT_INVALID_PARAMS, EXIT_IO, EXIT_OK, EXIT_UNKNOWN_METHOD,
    describe_text, main, parse_param_overrides, select_methods
)
from app.exceptions import InvalidParamsError
from app.models import Dataset, EvalRecord, LabeledSeries, SplitEnum, as_series
from app.services.registry import method_names


def augment_args(train_path, output, *extra):
    return ["augment", "--input", str(train_path), "--output", str(output), *extra]


# --- Helpers ---

def test_parse_param_overrides():
    parsed = parse_param_overrides(["sfcc.strata=8", "window_warp.scales=[0.5, 2]", "dtw.local_cost=absolute"])
    assert parsed == {"sfcc.strata": 8, "window_warp.scales": [0.5, 2], "dtw.local_cost": "absolute"}
    with pytest.raises(InvalidParamsError):
        parse_param_overrides(["strata"])


def test_select_methods():
    assert select_methods("all", None) == method_names()
    assert select_methods("rgw,jitter", None) == ["none", "rgw", "jitter"]
    assert select_methods("all", "emd, wdba") == [m for m in method_names() if m not in ("emd", "wdba")]


# --- augment ---

def test_augment_writes_quadrupled_split(cbf_files, tmp_path):
    train_path, _ = cbf_files
    out = tmp_path / "out.tsv"
    code = main(augment_args(train_path, out, "--method", "rgws", "--factor", "4", "--seed", "42"))
    assert code == EXIT_OK
    assert len(out.read_text().splitlines()) == 120
    assert (tmp_path / "out.tsv.runlog.jsonl").exists()
    assert '"seed": 42' in (tmp_path / "out.tsv.meta.json").read_text()


def test_augment_is_byte_identical_on_rerun(cbf_files, tmp_path):
    train_path, _ = cbf_files
    first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
    for out in (first, second):
        assert main(augment_args(train_path, out, "--method", "sfcc", "--seed", "42", "--jobs", "4")) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_output_does_not_depend_on_jobs(cbf_files, tmp_path):
    train_path, _ = cbf_files
    serial, parallel = tmp_path / "j1.tsv", tmp_path / "j8.tsv"
    assert main(augment_args(train_path, serial, "--method", "dgw", "--seed", "3", "--jobs", "1")) == EXIT_OK
    assert main(augment_args(train_path, parallel, "--method", "dgw", "--seed", "3", "--jobs", "8")) == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()
    assert (tmp_path / "j1.tsv.runlog.jsonl").read_bytes() == (tmp_path / "j8.tsv.runlog.jsonl").read_bytes()


def test_global_flags_work_on_either_side_of_the_subcommand(cbf_files, tmp_path):
    train_path, _ = cbf_files
    before, after = tmp_path / "before.tsv", tmp_path / "after.tsv"
    assert main(["--jobs", "2", "--log-level", "debug",
                 *augment_args(train_path, before, "--method", "jitter")]) == EXIT_OK
    assert main(augment_args(train_path, after, "--method", "jitter", "--jobs", "2", "--log-level", "debug")) == EXIT_OK
    assert before.read_bytes() == after.read_bytes()
    assert main(["list-methods", "--jobs", "0"]) == EXIT_INVALID_PARAMS


def test_run_config_matches_the_flag_form(cbf_files, tmp_path):
    train_path, _ = cbf_files
    from_flags, from_config = tmp_path / "flags.tsv", tmp_path / "config.tsv"
    assert main(augment_args(train_path, from_flags, "--method", "sfcc", "--factor", "3",
                             "--seed", "42", "--param", "sfcc.strata=2")) == EXIT_OK
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"dataset": str(train_path), "method": "SFCC",
                                  "params": {"sfcc.strata": 2}, "factor": 3, "seed": 42}))
    assert main(["augment", "--config", str(config), "--output", str(from_config)]) == EXIT_OK
    assert from_flags.read_bytes() == from_config.read_bytes()
    assert (tmp_path / "flags.tsv.meta.json").read_bytes() == (tmp_path / "config.tsv.meta.json").read_bytes()


def test_run_config_errors(cbf_files, tmp_path):
    train_path, _ = cbf_files
    no_dataset = tmp_path / "no_dataset.json"
    no_dataset.write_text(json.dumps({"method": "jitter"}))
    assert main(["augment", "--config", str(no_dataset), "--output", str(tmp_path / "o.tsv")]) == EXIT_INVALID_PARAMS
    bad_factor = tmp_path / "bad_factor.json"
    bad_factor.write_text(json.dumps({"dataset": str(train_path), "method": "jitter", "factor": 0}))
    assert main(["augment", "--config", str(bad_factor), "--output", str(tmp_path / "o.tsv")]) == EXIT_INVALID_PARAMS
    assert main(["augment", "--config", str(tmp_path / "missing.json"),
                 "--output", str(tmp_path / "o.tsv")]) == EXIT_IO
    assert main(["augment", "--input", str(train_path), "--output", str(tmp_path / "o.tsv")]) == EXIT_INVALID_PARAMS


def test_seed_falls_back_to_environment(cbf_files, tmp_path, monkeypatch):
    train_path, _ = cbf_files
    monkeypatch.setenv("TSAUG_SEED", "42")
    from_env = tmp_path / "env.tsv"
    assert main(augment_args(train_path, from_env, "--method", "jitter")) == EXIT_OK
    monkeypatch.delenv("TSAUG_SEED")
    from_flag = tmp_path / "flag.tsv"
    assert main(augment_args(train_path, from_flag, "--method", "jitter", "--seed", "42")) == EXIT_OK
    assert from_env.read_bytes() == from_flag.read_bytes()


def test_unknown_method_exits_2(cbf_files, tmp_path, caplog):
    train_path, _ = cbf_files
    with caplog.at_level(logging.ERROR):
        code = main(augment_args(train_path, tmp_path / "o.tsv", "--method", "gan"))
    assert code == EXIT_UNKNOWN_METHOD
    assert "rgws" in caplog.text
    assert not (tmp_path / "o.tsv").exists()


def test_missing_input_exits_3(tmp_path):
    assert main(augment_args(tmp_path / "nope.tsv", tmp_path / "o.tsv", "--method", "jitter")) == EXIT_IO


@pytest.mark.parametrize("param", ["sfcc.strata=0", "sfcc.bands=2", "novalue"])
def test_invalid_param_exits_4(cbf_files, tmp_path, param):
    train_path, _ = cbf_files
    code = main(augment_args(train_path, tmp_path / "o.tsv", "--method", "sfcc", "--param", param))
    assert code == EXIT_INVALID_PARAMS


# --- bench ---

def bench_args(cbf_files, report, *extra):
    train_path, test_path = cbf_files
    return ["bench", "--train", str(train_path), "--test", str(test_path),
            "--classifier", "euclidean", "--factor", "2", "--seed", "5",
            "--report", str(report), "--no-progress", *extra]


def test_bench_all_methods_has_nineteen_rows(cbf_files, tmp_path):
    assert main(bench_args(cbf_files, tmp_path / "r")) == EXIT_OK
    accuracy = pd.read_csv(tmp_path / "r" / "accuracy.csv", comment="#", index_col=0)
    assert accuracy.shape == (1, 19)
    residuals = pd.read_csv(tmp_path / "r" / "residuals.csv", comment="#")
    assert residuals.loc[residuals.method == "none", "residual"].tolist() == [0.0]


def test_bench_rerun_reports_are_identical(cbf_files, tmp_path):
    for name in ("a", "b"):
        assert main(bench_args(cbf_files, tmp_path / name, "--methods", "jitter,dtw_merge")) == EXIT_OK
    for report in ("accuracy.csv", "ranking.csv", "residuals.csv", "heatmap_long.csv", "summary.json"):
        assert (tmp_path / "a" / report).read_bytes() == (tmp_path / "b" / report).read_bytes()


def test_bench_excluding_baseline_exits_5(cbf_files, tmp_path):
    assert main(bench_args(cbf_files, tmp_path / "r", "--exclude", "none")) == EXIT_BASELINE_EXCLUDED


def test_bench_unpaired_splits_exit_4(cbf_files, tmp_path):
    train_path, _ = cbf_files
    code = main(["bench", "--train", str(train_path), "--report", str(tmp_path / "r")])
    assert code == EXIT_INVALID_PARAMS


def test_bench_store_persists_records(cbf_files, tmp_path):
    from app.database import engine

    assert main(bench_args(cbf_files, tmp_path / "r", "--methods", "scaling", "--store")) == EXIT_OK
    with Session(engine) as session:
        methods = [r.method for r in session.exec(select(EvalRecord).where(EvalRecord.dataset == "CBF")).all()]
    assert methods[-2:] == ["none", "scaling"]


# --- list-methods / describe ---

def test_list_methods_prints_the_registry(capsys):
    assert main(["list-methods"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 19
    assert lines[0].split("\t")[:2] == ["none", "baseline"]
    assert "rgws\tpattern\tRGWs" in lines


def test_describe_fungi_like_split(tmp_path, capsys):
    rows = [f"{k}\t" + "\t".join(["0.5"] * 201) for k in range(1, 19)]
    path = tmp_path / "Fungi_TRAIN.tsv"
    path.write_text("\n".join(rows) + "\n")
    assert main(["describe", "--input", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "18 items, 18 classes, length 201"
    assert "catalog: Fungi (HRM)" in out
    assert "⚠️" not in out


def test_describe_variable_length():
    items = [LabeledSeries(series=as_series([1.0] * n), label="1") for n in (3, 5)]
    text = describe_text(Dataset.from_items("Var", SplitEnum.TRAIN, items))
    assert text.splitlines()[0] == "2 items, 1 classes, length variable (3-5)"


def test_describe_empty_file_exits_3(tmp_path):
    path = tmp_path / "Empty_TRAIN.tsv"
    path.write_text("")
    assert main(["describe", "--input", str(path)]) == EXIT_IO
