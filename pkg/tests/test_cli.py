import json

import pytest

from edgemaps import cli
from edgemaps.mapping import parse_mapping
from edgemaps.reproduce import ClaimResult, RunRecord


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_text_and_json_carry_identical_values(capsys):
    code, text, _ = run_cli(capsys, "construct", "k4_involution")
    assert code == 0
    code, raw, _ = run_cli(capsys, "construct", "k4_involution", "--json")
    assert code == 0
    record = json.loads(raw)
    assert record["mapping"] == [5, 4, 3, 2, 1, 0]
    assert f"mapping: {record['mapping']}" in text
    assert f"n: {record['n']}" in text


def test_construct_writes_mapping_file(tmp_path, capsys):
    path = tmp_path / "star7.map"
    code, raw, _ = run_cli(capsys, "construct", "star_shift", "7", "--out", str(path), "--json")
    assert code == 0
    f = parse_mapping(path.read_text())
    assert f.n == 7
    assert list(f.images) == json.loads(raw)["mapping"]


def test_construct_wrong_arity(capsys):
    code, _, err = run_cli(capsys, "construct", "star_shift")
    assert code == cli.EXIT_USAGE
    assert "takes" in err


def test_verify_pass_and_fail_exit_codes(tmp_path, capsys):
    path = tmp_path / "inv.map"
    run_cli(capsys, "construct", "k4_involution", "--out", str(path))
    code, _, _ = run_cli(
        capsys, "verify", "--mapping", str(path), "--claim", "free:2K2", "--klass", "disjoint"
    )
    assert code == 0
    code, out, _ = run_cli(capsys, "verify", "--mapping", str(path), "--claim", "free:K2")
    assert code == cli.EXIT_FAIL
    assert "FAIL" in out


def test_verify_rejects_malformed_claim(tmp_path, capsys):
    path = tmp_path / "inv.map"
    run_cli(capsys, "construct", "k4_involution", "--out", str(path))
    code, _, err = run_cli(capsys, "verify", "--mapping", str(path), "--claim", "nonsense")
    assert code == cli.EXIT_USAGE


def test_detect_reports_embedding(tmp_path, capsys):
    path = tmp_path / "inv.map"
    run_cli(capsys, "construct", "k4_involution", "--out", str(path))
    code, raw, _ = run_cli(
        capsys, "detect", "--mapping", str(path),
        "--pattern", "K3", "--relation", "strong_shifted", "--json",
    )
    assert code == 0
    record = json.loads(raw)
    assert record["found"] is True
    assert len(record["embedding"]) == 3
    assert len(record["copy_edges"]) == 3


def test_bound_ex_value(capsys):
    code, raw, _ = run_cli(capsys, "bound", "ex", "--n", "7", "--pattern", "K4-K2", "--json")
    assert code == 0
    record = json.loads(raw)
    assert record["value"] == 12
    assert record["source"] == "oracle"


def test_bound_pattern_from_file(tmp_path, capsys):
    pat = tmp_path / "pat.el"
    pat.write_text("3 3\n0 1\n0 2\n1 2\n")
    code, raw, _ = run_cli(capsys, "bound", "ex", "--n", "6", "--pattern", f"@{pat}", "--json")
    assert code == 0
    assert json.loads(raw)["value"] == 9


def test_bound_closed_forms(capsys):
    code, raw, _ = run_cli(capsys, "bound", "w-star", "--r", "3", "--json")
    assert code == 0
    assert json.loads(raw)["upper"] == 12
    code, raw, _ = run_cli(capsys, "bound", "tree-star", "--k", "3", "--r", "2", "--json")
    assert code == 0
    assert json.loads(raw)["upper"] == 8


def test_compute_json_matches_text(capsys):
    code, raw, _ = run_cli(capsys, "compute", "g", "--g", "2K2", "--json")
    assert code == 0
    record = json.loads(raw)
    assert record["status"] == "tight"
    assert record["lower"]["value"] == 5
    code, text, _ = run_cli(capsys, "compute", "g", "--g", "2K2")
    assert "value: 5" in text and "status: tight" in text


def test_oracle_subcommand(capsys):
    code, raw, _ = run_cli(capsys, "oracle", "paircover", "--n", "8", "--pattern", "K5", "--json")
    assert code == 0
    assert json.loads(raw)["value"] == 10
    code, _, err = run_cli(capsys, "oracle", "supersat", "--n", "6", "--pattern", "K3")
    assert code == cli.EXIT_USAGE
    assert "--m" in err


def test_cli_error_paths(capsys):
    code, _, err = run_cli(capsys, "bound", "ex", "--n", "6", "--pattern", "QQquébec")
    assert code == cli.EXIT_USAGE
    assert "error:" in err
    code, _, err = run_cli(capsys, "detect", "--mapping", "/nonexistent.map",
                           "--pattern", "K3", "--relation", "free")
    assert code == cli.EXIT_USAGE


def test_reproduce_list_and_single_run(capsys):
    code, raw, _ = run_cli(capsys, "reproduce", "--list", "--json")
    assert code == 0
    ids = [row["id"] for row in json.loads(raw)["manifest"]]
    assert "matching-thresholds" in ids
    code, raw, _ = run_cli(capsys, "reproduce", "two-star-exclusive", "--json")
    assert code == 0
    runs = json.loads(raw)["runs"]
    assert len(runs) == 1
    assert all(c["status"] == "PASS" for c in runs[0]["claims"])
    assert "digest" in runs[0]


def test_reproduce_exit_codes(monkeypatch, capsys):
    def fake_run(mid, ctx):
        claims = (ClaimResult("stub", "SKIPPED", "budget exceeded", {}),)
        return RunRecord(
            manifest_id=mid, command=f"reproduce {mid}", config={}, seed=0,
            claims=claims, wall_time=0.0,
        )

    monkeypatch.setattr(cli, "run_manifest", fake_run)
    code, out, _ = run_cli(capsys, "reproduce", "matching-thresholds")
    assert code == cli.EXIT_SKIPPED
    assert "SKIPPED" in out

    def fail_run(mid, ctx):
        claims = (ClaimResult("stub", "FAIL", "wrong value", {}),)
        return RunRecord(
            manifest_id=mid, command=f"reproduce {mid}", config={}, seed=0,
            claims=claims, wall_time=0.0,
        )

    monkeypatch.setattr(cli, "run_manifest", fail_run)
    code, _, _ = run_cli(capsys, "reproduce", "matching-thresholds")
    assert code == cli.EXIT_FAIL


def test_threads_env_sets_default_workers(monkeypatch):
    monkeypatch.setenv("EDGEMAP_THREADS", "3")
    args = cli._parser().parse_args(["compute", "g", "--g", "2K2"])
    assert args.workers == 3
    monkeypatch.delenv("EDGEMAP_THREADS")
    args = cli._parser().parse_args(["compute", "g", "--g", "2K2"])
    assert args.workers == 1
