"""Command-line interface: exit codes, formats, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from quintic_mirror.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariants_order_four(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "4")
    assert code == 0
    last = out.strip().splitlines()[-1].split()
    assert last == ["4", "15517926796875/64", "242467530000"]


def test_invariants_order_one(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "1")
    assert code == 0
    rows = out.strip().splitlines()
    assert len(rows) == 2
    assert rows[1].split() == ["1", "2875", "2875"]


def test_invariants_order_zero_empty(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "0")
    assert code == 0
    assert out.strip().splitlines() == ["d", "N_d", "n_d"] or "N_d" in out


def test_invariants_rejects_other_hypersurfaces(capsys):
    code, _, err = run_cli(capsys, "invariants", "--m", "3", "--l", "4")
    assert code == 2
    assert "quintic" in err


def test_invariants_json_schema(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "2",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["m"] == 4 and doc["l"] == 5
    assert doc["rows"][0] == {"d": 1, "N": "2875", "n": "2875"}
    assert doc["rows"][1]["N"] == "4876875/8"
    assert "." not in doc["rows"][1]["N"]


def test_invariants_csv(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "2",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,N_d,n_d"
    assert lines[1] == "1,2875,2875"
    assert lines[2] == "2,4876875/8,609250"


def test_verify_picard_fuchs_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "picard-fuchs", "--order", "5")
    assert code == 0
    assert out.startswith("PASS")


def test_verify_case_i_precondition(capsys):
    code, _, err = run_cli(capsys, "verify", "case-i", "--m", "4", "--l", "5")
    assert code == 2
    assert "l < m" in err


def test_verify_case_i_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "case-i", "--m", "4", "--l",
                           "2", "--order", "3")
    assert code == 0


def test_verify_descendents(capsys):
    code, out, _ = run_cli(capsys, "verify", "descendents", "--order", "3")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_unknown_check_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "no-such-check"])


def test_oracle_degree_one(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--degree", "1", "--trials", "2")
    assert code == 0
    assert "2875" in out


def test_oracle_degree_two(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--degree", "2", "--trials", "2")
    assert code == 0
    assert "4876875/8" in out


def test_oracle_degree_three_rejected(capsys):
    code, _, err = run_cli(capsys, "oracle", "--degree", "3")
    assert code == 2


def test_explicit_lambda_flag(capsys):
    code, out, _ = run_cli(capsys, "verify", "recursion-cy", "--order", "2",
                           "--lambda", "0,1,10,100,1000")
    assert code == 0


def test_explicit_degenerate_lambda_is_usage_error(capsys):
    # (lam_2 - lam_3)/2 collides with a pole of the second correlator.
    code, _, err = run_cli(capsys, "verify", "recursion-cy", "--order", "2",
                           "--lambda", "1/3,-2,5/2,8,-1/4")
    assert code == 2
    assert "degenerate" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "invariants", "--order", "1",
                           "--format", "json", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text()) == json.loads(out)


def test_threads_flag_accepted(capsys):
    code, out, _ = run_cli(capsys, "invariants", "--order", "1",
                           "--threads", "2")
    assert code == 0


def test_byte_identical_reruns():
    cmd = [sys.executable, "-m", "quintic_mirror.cli", "verify",
           "recursion-cy", "--order", "2", "--seed", "3", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
