"""End-to-end checks of the command-line interface: config resolution,
manifest reproducibility, CSV payloads and exit codes."""

import json
from pathlib import Path

import numpy as np
import pytest

from complexity_lab import cli, geometry, moments


def run(tmp_path, *argv):
    return cli.main([*argv, "--output-dir", str(tmp_path)])


def read_csv(path):
    lines = Path(path).read_text().splitlines()
    header = lines[0].split(",")
    return header, [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_no_arguments_prints_usage(capsys):
    assert cli.main([]) == 1
    assert "usage" in capsys.readouterr().err


def test_unknown_flag_is_a_config_error(tmp_path, capsys):
    assert run(tmp_path, "vol", "--nope", "3") == 1
    assert "error:" in capsys.readouterr().err


def test_bounds_prints_seventeen_digit_value(tmp_path, capsys):
    code = run(tmp_path, "bounds", "--formula", "gap_rqc", "--n", "4",
               "--q", "2", "--delta", "1e-3", "--c2", "1e5")
    assert code == 0
    out = capsys.readouterr().out
    assert "724330639941.39734" in out
    payload = json.loads((tmp_path / "bounds.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["results"]["gap_rqc"] == pytest.approx(724330639941.39734,
                                                          rel=1e-15)


def test_bounds_equid_time_matches_library(tmp_path, capsys):
    code = run(tmp_path, "bounds", "--formula", "equid_time", "--model",
               "rqc1d", "--n", "2", "--q", "2", "--eps", "0.1",
               "--gamma", "0.5", "--c2", "1e5")
    assert code == 0
    want = moments.equid_time_bounds(
        moments.BoundInputs(n=2, q=2, eps=0.1, gamma=0.5, c2=1e5), "rqc1d")
    payload = json.loads((tmp_path / "bounds.json").read_text())
    assert payload["results"]["tau"] == pytest.approx(want["tau"], rel=1e-15)


def test_bounds_unknown_formula_errors(tmp_path, capsys):
    assert run(tmp_path, "bounds", "--formula", "no_such_bound") == 1
    assert "error:" in capsys.readouterr().err


def test_vol_csv_schema_and_exact_column(tmp_path, capsys):
    code = run(tmp_path, "vol", "--space", "state", "--d", "2",
               "--eps", "0.3,0.5", "--samples", "20000", "--master-seed", "7")
    assert code == 0
    header, rows = read_csv(tmp_path / "vol_sweep.csv")
    assert header == ["space", "d", "eps", "n_samples", "hits", "estimate",
                      "ci_low", "ci_high", "exact"]
    assert len(rows) == 2
    for row, eps in zip(rows, (0.3, 0.5)):
        assert row["space"] == "state" and row["d"] == "2"
        assert float(row["eps"]) == eps
        assert float(row["exact"]) == pytest.approx(
            geometry.vol_state_ball(2, eps), rel=1e-15)
        assert float(row["ci_low"]) <= float(row["exact"]) <= float(row["ci_high"])


def test_manifest_round_trip_reproduces_bytes(tmp_path):
    first = tmp_path / "a"
    second = tmp_path / "b"
    assert cli.main(["vol", "--space", "unitary", "--d", "2", "--eps", "0.4",
                     "--samples", "30000", "--master-seed", "123",
                     "--output-dir", str(first)]) == 0
    manifest = first / "manifest.json"
    assert json.loads(manifest.read_text())["master_seed"] == 123
    assert cli.main(["vol", "--config", str(manifest),
                     "--output-dir", str(second)]) == 0
    assert (first / "vol_sweep.csv").read_bytes() == \
        (second / "vol_sweep.csv").read_bytes()


def test_workers_do_not_change_results(tmp_path):
    one = tmp_path / "w1"
    two = tmp_path / "w2"
    args = ["vol", "--space", "state", "--d", "3", "--eps", "0.3,0.5,0.7",
            "--samples", "20000", "--master-seed", "5"]
    assert cli.main([*args, "--workers", "1", "--output-dir", str(one)]) == 0
    assert cli.main([*args, "--workers", "4", "--output-dir", str(two)]) == 0
    assert (one / "vol_sweep.csv").read_bytes() == \
        (two / "vol_sweep.csv").read_bytes()


def test_config_file_unknown_parameter(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "vol", "parameters": {"bogus": 1}}))
    assert run(tmp_path, "vol", "--config", str(cfg)) == 1
    assert "unknown parameter" in capsys.readouterr().err


def test_config_file_unknown_top_key(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"comand": "vol"}))
    assert run(tmp_path, "vol", "--config", str(cfg)) == 1
    assert "unknown keys" in capsys.readouterr().err


def test_config_file_malformed_json_reports_line(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{nope\n")
    assert run(tmp_path, "vol", "--config", str(cfg)) == 1
    assert "line 1" in capsys.readouterr().err


def test_config_file_for_other_command(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "gap"}))
    assert run(tmp_path, "vol", "--config", str(cfg)) == 1
    assert "is for command" in capsys.readouterr().err


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "vol", "master_seed": 9,
                               "parameters": {"eps": [0.9], "samples": 5000}}))
    out = tmp_path / "run"
    assert cli.main(["vol", "--config", str(cfg), "--eps", "0.2",
                     "--output-dir", str(out)]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["parameters"]["eps"] == [0.2]
    assert manifest["parameters"]["samples"] == 5000
    assert manifest["master_seed"] == 9


def test_gap_csv_exact_value(tmp_path, capsys):
    code = run(tmp_path, "gap", "--n", "2", "--q", "2", "--k", "1")
    assert code == 0
    header, rows = read_csv(tmp_path / "gap_sweep.csv")
    assert header == ["n", "q", "k", "graph_id", "edges", "gap",
                      "expander_norm", "method"]
    assert rows[0]["edges"] == "0-1"
    assert float(rows[0]["gap"]) == pytest.approx(1.0, abs=1e-6)
    assert "gap 1" in capsys.readouterr().out


def test_gap_points_from_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "command": "gap",
        "parameters": {"points": [
            {"n": 3, "q": 2, "k": 1, "graph_id": "triangle",
             "edges": [[0, 1], [1, 2], [0, 2]]}]}}))
    assert run(tmp_path, "gap", "--config", str(cfg)) == 0
    _, rows = read_csv(tmp_path / "gap_sweep.csv")
    assert rows[0]["graph_id"] == "triangle"
    assert rows[0]["edges"] == "0-1;0-2;1-2"
    assert float(rows[0]["gap"]) == pytest.approx(2.0, abs=1e-6)


def test_gap_uses_projector_cache(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv(moments.CACHE_ENV_VAR, str(cache))
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["gap", "--n", "2", "--q", "2", "--k", "1"]
    assert cli.main([*args, "--output-dir", str(a)]) == 0
    cached = list(cache.glob("haar_projector_*.bin"))
    assert cached
    assert cli.main([*args, "--output-dir", str(b)]) == 0
    assert (a / "gap_sweep.csv").read_bytes() == (b / "gap_sweep.csv").read_bytes()


def test_walk_trace_columns(tmp_path, capsys):
    code = run(tmp_path, "walk", "--kind", "grqc_gateset", "--n", "1",
               "--gateset", "ht", "--t-max", "5", "--record", "full",
               "--eps", "0.25", "--r-max", "4", "--master-seed", "3")
    assert code == 0
    header, rows = read_csv(tmp_path / "trace.csv")
    assert header == ["t", "dist_to_id", "complexity_eps_0.25"]
    assert len(rows) == 6  # t = 0 .. 5
    assert rows[0]["t"] == "0" and rows[0]["dist_to_id"] == "0"
    assert rows[0]["complexity_eps_0.25"] == "0"


def test_walk_complexity_without_gateset_errors(tmp_path, capsys):
    code = run(tmp_path, "walk", "--kind", "rqc1d", "--n", "2",
               "--t-max", "2", "--eps", "0.3")
    assert code == 1
    assert "complexity-gateset" in capsys.readouterr().err


def test_complexity_csv(tmp_path, capsys):
    code = run(tmp_path, "complexity", "--gateset", "ht",
               "--word-targets", "0;1", "--eps", "0.3", "--r-max", "4")
    assert code == 0
    header, rows = read_csv(tmp_path / "complexity_sweep.csv")
    assert header == ["target_id", "eps", "value", "witness_length", "mode",
                      "truncated"]
    values = {row["target_id"]: row["value"] for row in rows}
    assert values == {"word_0": "1", "word_1": "1"}


def test_complexity_needs_targets(tmp_path, capsys):
    assert run(tmp_path, "complexity", "--gateset", "ht") == 1
    assert "no targets" in capsys.readouterr().err


def test_recur_outputs(tmp_path, capsys):
    code = run(tmp_path, "recur", "--kind", "grqc_haar", "--n", "1",
               "--eps", "0.6", "--t-max", "200", "--n-realizations", "30",
               "--vol-samples", "20000", "--master-seed", "11")
    assert code == 0
    payload = json.loads((tmp_path / "recurrence.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["experiment"] == "recurrence"
    header, rows = read_csv(tmp_path / "recurrence_detail.csv")
    assert header[0] == "realization" and len(rows) == 30
    assert "mean blocks" in capsys.readouterr().out


def test_equid_exit_codes(tmp_path, capsys):
    code = run(tmp_path / "pass", "equid-cert", "--kind", "grqc_haar",
               "--n", "1", "--t", "1", "--eps", "0.3", "--alpha", "0.9",
               "--beta", "1.1", "--centers", "4", "--samples", "8000")
    assert code == 0

    code = run(tmp_path / "fail", "equid-cert", "--kind", "grqc_gateset",
               "--n", "1", "--gateset", "ht", "--t", "1", "--eps", "0.3",
               "--alpha", "0.5", "--beta", "1.5", "--centers", "4",
               "--samples", "6000")
    assert code == 2

    code = run(tmp_path / "open", "equid-cert", "--kind", "grqc_haar",
               "--n", "1", "--q", "3", "--t", "1", "--eps", "0.05",
               "--alpha", "0.5", "--beta", "2.0", "--centers", "2",
               "--samples", "60")
    assert code == 3
    out = capsys.readouterr().out
    assert "inconclusive" in out and "raise n_samples" in out
    payload = json.loads((tmp_path / "open" / "equid_certificate.json").read_text())
    assert payload["verdict"] == "inconclusive"


def test_slh_stability_command(tmp_path, capsys):
    code = run(tmp_path, "slh-stability", "--n", "2", "--s", "0.25",
               "--dt", "0.005", "--x-grid", "0,1", "--n-realizations", "100")
    assert code == 0
    payload = json.loads((tmp_path / "slh_stability.json").read_text())
    assert payload["verdict"] == "pass"
    header, rows = read_csv(tmp_path / "slh_stability.csv")
    assert "bound" in header and len(rows) == 2


def test_grqc_gateset_without_gateset_flag(tmp_path, capsys):
    code = run(tmp_path, "walk", "--kind", "grqc_gateset", "--n", "1",
               "--t-max", "2")
    assert code == 1
    assert "needs --gateset" in capsys.readouterr().err
