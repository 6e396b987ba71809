"""CLI subcommands, formats, and exit codes."""

from __future__ import annotations

import json

import pytest

from logblend.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from logblend.corpus import load_structured, write_dataset

from helpers import apacheish, source_datasets


@pytest.fixture(scope="module")
def cli_workspace(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    write_dataset(apacheish(), root / "apacheish.csv")
    for ds in source_datasets()[1:4]:
        write_dataset(ds, root / f"{ds.name}.csv")
    rc = main(
        [
            "pool",
            "build",
            "--outlier-fraction",
            "0.05",
            "--out",
            str(root / "pools"),
        ]
        + [str(root / f"{name}.csv") for name in ("apacheish", "dbsvc", "authsvc", "netmon")]
    )
    assert rc == EXIT_OK
    return root


def test_stats_outputs_json(cli_workspace, capsys):
    rc = main(["stats", "--in", str(cli_workspace / "apacheish.csv")])
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"nuw", "nuc", "nuldl"}


def test_stats_raw_input(cli_workspace, tmp_path, capsys):
    raw = tmp_path / "messages.log"
    raw.write_text("alpha beta\ngamma\n", encoding="utf-8")
    rc = main(["stats", "--in", str(raw), "--raw"])
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["nuw"] == 3


def test_heterogeneity_with_reference_flags(cli_workspace, capsys):
    rc = main(
        [
            "heterogeneity",
            "--in",
            str(cli_workspace / "apacheish.csv"),
            "--ref-nuw", "300", "--ref-nuc", "40", "--ref-nuldl", "25",
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert 0 < doc["h"] <= 1
    assert set(doc["components"]) == {"nuw_ratio", "nuc_ratio", "nuldl_ratio"}


def test_pool_build_created_both_files(cli_workspace):
    assert (cli_workspace / "pools" / "outlier_pool.csv").exists()
    assert (cli_workspace / "pools" / "variable_pool.tsv").exists()


def test_mix_writes_dataset(cli_workspace, tmp_path):
    out = tmp_path / "mixed.csv"
    rc = main(
        [
            "mix",
            "--in", str(cli_workspace / "apacheish.csv"),
            "--pool", str(cli_workspace / "pools"),
            "--strength", "1.0",
            "--seed", "7",
            "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    mixed = load_structured(out, name="apacheish")
    assert len(mixed.records) == 2000
    assert any(r.source != "apacheish" for r in mixed.records)


def test_fuzz_writes_labeled_dataset(cli_workspace, tmp_path):
    out = tmp_path / "fuzzed.csv"
    rc = main(
        [
            "fuzz",
            "--in", str(cli_workspace / "apacheish.csv"),
            "--vpool", str(cli_workspace / "pools" / "variable_pool.tsv"),
            "--seed", "3",
            "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    fuzzed = load_structured(out)
    assert len(fuzzed.records) == 2000
    assert fuzzed.is_labeled()


def test_parse_then_evaluate(cli_workspace, tmp_path, capsys):
    parsed = tmp_path / "parsed.csv"
    rc = main(
        [
            "parse",
            "--in", str(cli_workspace / "apacheish.csv"),
            "--parser", "tree",
            "--depth", "4",
            "--st", "0.4",
            "--out", str(parsed),
        ]
    )
    assert rc == EXIT_OK
    header = parsed.read_text(encoding="utf-8").splitlines()[0]
    assert header == "LineId,EventTemplate"

    rc = main(
        [
            "evaluate",
            "--truth", str(cli_workspace / "apacheish.csv"),
            "--predicted", str(parsed),
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["template_accuracy"] > 0.9
    assert doc["grouping_accuracy"] > 0.9


def test_parsed_mode_fuzz_via_cli(cli_workspace, tmp_path):
    parsed = tmp_path / "parsed.csv"
    main(
        [
            "parse",
            "--in", str(cli_workspace / "apacheish.csv"),
            "--out", str(parsed),
        ]
    )
    out = tmp_path / "fuzzed_parsed.csv"
    rc = main(
        [
            "fuzz",
            "--in", str(cli_workspace / "apacheish.csv"),
            "--vpool", str(cli_workspace / "pools" / "variable_pool.tsv"),
            "--mode", "parsed",
            "--parsed", str(parsed),
            "--seed", "3",
            "--out", str(out),
        ]
    )
    assert rc == EXIT_OK


def test_combine_across_datasets(cli_workspace, tmp_path):
    out = tmp_path / "combined.csv"
    rc = main(
        [
            "combine",
            str(cli_workspace / "apacheish.csv"),
            str(cli_workspace / "dbsvc.csv"),
            "--size", "100",
            "--seed", "5",
            "--out", str(out),
        ]
    )
    assert rc == EXIT_OK
    combined = load_structured(out)
    sources = {r.source for r in combined.records}
    assert sources == {"apacheish", "dbsvc"}


def test_benchmark_runs_plan(cli_workspace, tmp_path, capsys):
    plan = {
        "datasets": ["apacheish.csv"],
        "parsers": [{"kind": "tree"}, {"kind": "identity"}],
        "synthesis": {
            "mix_strength": 1.0,
            "fuzz_mode": "labeled",
            "outlier_pool": "pools/outlier_pool.csv",
            "variable_pool": "pools/variable_pool.tsv",
        },
        "runs": 2,
        "base_seed": 0,
    }
    plan_path = cli_workspace / "plan.json"
    plan_path.write_text(json.dumps(plan), encoding="utf-8")
    out = tmp_path / "report.json"
    rc = main(["benchmark", "--plan", str(plan_path), "--out", str(out)])
    assert rc == EXIT_OK
    doc = json.loads(out.read_text(encoding="utf-8"))
    tree = doc["datasets"]["apacheish"]["parsers"]["tree"]
    identity = doc["datasets"]["apacheish"]["parsers"]["identity"]
    assert identity["mean"]["template_accuracy"] == 1.0
    assert tree["mean"]["template_accuracy"] < 0.5
    assert "timings" not in doc


def test_benchmark_overrides_and_timings(cli_workspace, tmp_path, capsys):
    plan = {
        "datasets": ["apacheish.csv"],
        "parsers": [{"kind": "identity"}],
        "runs": 5,
        "base_seed": 0,
    }
    plan_path = tmp_path / "plan.json"
    plan_path.write_text(json.dumps(plan), encoding="utf-8")
    # plan paths resolve relative to the plan file; point at the workspace copy
    plan["datasets"] = [str(cli_workspace / "apacheish.csv")]
    plan_path.write_text(json.dumps(plan), encoding="utf-8")
    rc = main(
        [
            "benchmark",
            "--plan", str(plan_path),
            "--runs", "2",
            "--seed", "41",
            "--timings",
        ]
    )
    assert rc == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["plan"]["runs"] == 2
    assert doc["plan"]["seeds"] == [41, 42]
    assert "timings" in doc


def test_exit_code_usage_error():
    assert main(["mix", "--strength", "0.5"]) == EXIT_USAGE


def test_exit_code_data_error(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("NotContent\nx\n", encoding="utf-8")
    assert main(["stats", "--in", str(bad)]) == EXIT_DATA


def test_exit_code_missing_file():
    assert main(["stats", "--in", "/no/such/file.csv"]) == EXIT_DATA
