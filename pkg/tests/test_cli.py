import json
import subprocess
import sys

import pytest

from mixednorm.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out = capsys.readouterr().out if capsys else ""
    return code, out


def test_norm_finite(capsys):
    code, out = run_cli("norm", "--f", "const:1", "--space", "2,2,1", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "finite"
    assert payload["value"] == pytest.approx(1.0, abs=1e-7)


def test_norm_divergent_exits_zero(capsys):
    code, out = run_cli("norm", "--f", "power:2", "--space", "1,2,1", capsys=capsys)
    assert code == 0
    assert json.loads(out)["kind"] == "divergent"


def test_norm_decimal_space_rejected(capsys):
    code, _ = run_cli("norm", "--f", "const:1", "--space", "1,2,0.5", capsys=capsys)
    assert code == 2


def test_norm_tolerance_range_enforced():
    assert main(["norm", "--f", "const:1", "--space", "1,1,1", "--tol", "0.5"]) == 2
    assert main(["norm", "--f", "const:1", "--space", "1,1,1", "--tol", "-1"]) == 2


def test_mean_command(capsys):
    code, out = run_cli("mean", "--f", "power:1", "--p", "2", "--r", "0.6", capsys=capsys)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(1.25, rel=1e-8)


def test_include_exit_codes(capsys):
    code, out = run_cli("include", "--src", "4,2,1", "--dst", "2,3,1", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["included"] is True and payload["branch"] == "T1-equal"
    code, out = run_cli("include", "--src", "2,2,1", "--dst", "2,1,1", capsys=capsys)
    assert code == 1
    payload = json.loads(out)
    assert payload["witness"]["family"] == "lacunary"


def test_include_reflexive_constant_one(capsys):
    code, out = run_cli("include", "--src", "2,2,1", "--dst", "2,2,1", capsys=capsys)
    assert code == 0
    assert json.loads(out)["constant"]["value"] == 1.0


def test_include_c_dependent_marker(capsys):
    code, out = run_cli("include", "--src", "1,1,1/2", "--dst", "2,2,1", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["constant"]["kind"] == "up-to-unknown-factor"
    assert payload["constant"]["note"] == "C-dependent"


def test_witness_command(capsys):
    code, out = run_cli("witness", "--src", "1,2,1", "--dst", "2,2,1/2", capsys=capsys)
    assert code == 0
    assert json.loads(out)["witness"]["params"]["gamma"] == "1"
    code, out = run_cli("witness", "--src", "1,1,1", "--dst", "1,1,2", capsys=capsys)
    assert code == 1
    assert json.loads(out)["witness"] is None


def test_sweep_matches_closed_form(capsys):
    code, out = run_cli(
        "sweep", "--f", "power:1", "--p", "2", "--k", "4..8", capsys=capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,mean,error"
    for line in lines[1:]:
        r, mean, _ = (float(x) for x in line.split(","))
        assert mean == pytest.approx((1 - r * r) ** -0.5, rel=1e-8)


def test_sweep_constant_all_ones(capsys):
    code, out = run_cli("sweep", "--f", "const:1", "--p", "1", "--k", "2..6", capsys=capsys)
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        assert float(line.split(",")[1]) == pytest.approx(1.0, abs=1e-10)


def test_sweep_weighted_lacunary_decreasing(capsys):
    code, out = run_cli(
        "sweep", "--f", "lacunary:ones", "--p", "2", "--k", "2..9",
        "--weighted", "--alpha", "1", capsys=capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "r,weighted_mean"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_sweep_output_bytes_deterministic(tmp_path, capsys):
    args = ["sweep", "--f", "power:1/2", "--p", "2", "--k", "2..10"]
    code1, out1 = run_cli(*args, capsys=capsys)
    code2, out2 = run_cli(*args, capsys=capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_out_file_and_figure(tmp_path, capsys):
    csv_path = tmp_path / "profile.csv"
    fig_path = tmp_path / "profile.png"
    code, _ = run_cli(
        "sweep", "--f", "power:1", "--p", "2", "--k", "2..8",
        "--out", str(csv_path), "--fig", str(fig_path), capsys=capsys,
    )
    assert code == 0
    assert csv_path.read_text().startswith("r,mean,error")
    assert fig_path.stat().st_size > 1000


def test_verify_beta_subset(capsys):
    code, out = run_cli("verify", "--checks", "beta*", capsys=capsys)
    assert code == 0
    assert "0 unexpected outcomes" in out


def test_verify_empty_selection_usage_error(capsys):
    code, _ = run_cli("verify", "--checks", "zzz*", capsys=capsys)
    assert code == 2


def test_verify_expected_fail_rows(capsys):
    code, out = run_cli("verify", "--checks", "little-oh*", capsys=capsys)
    assert code == 0
    assert "expected-fail" in out


def test_verify_json_lines_and_figure(tmp_path, capsys):
    fig_path = tmp_path / "checks.png"
    code, out = run_cli(
        "verify", "--checks", "beta*", "--format", "json",
        "--fig", str(fig_path), capsys=capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 75
    assert all(json.loads(line)["ok"] for line in lines)
    assert fig_path.stat().st_size > 1000


def test_threads_env_var_respected(capsys, monkeypatch):
    monkeypatch.setenv("MNL_THREADS", "4")
    code, out = run_cli("verify", "--checks", "beta*", capsys=capsys)
    assert code == 0
    assert "0 unexpected outcomes" in out


def test_sweep_budget_exhaustion_exit_code(capsys):
    # high-degree lacunary partial sums at deep radii exceed the angle
    # budget for p not in {2, inf}
    code, _ = run_cli(
        "sweep", "--f", "lacunary:ones", "--p", "3", "--k", "14..15",
        "--tol", "1e-6", capsys=capsys,
    )
    assert code == 4


def test_json_function_input(capsys):
    spec = json.dumps({"family": "power", "params": {"gamma": "1"}})
    code, out = run_cli("norm", "--f-json", spec, "--space", "1,2,1", capsys=capsys)
    assert code == 0
    assert json.loads(out)["kind"] == "finite"


def test_console_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "mixednorm.cli", "include", "--src", "1,1,1", "--dst", "1,1,2"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["included"] is True
