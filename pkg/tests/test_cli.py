import json

import pytest

from ostrowski.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_identity(capsys):
    code, out, _ = run(capsys, "identity", "--function", "poly:0,0,0,1", "--a", "0", "--b", "1", "--x", "0.5")
    d = json.loads(out)
    assert code == 0 and d["lhs_signed"] == pytest.approx(0.125) and d["residual"] < 1e-9


def test_bound_csv_columns(capsys):
    code, out, _ = run(capsys, "--format", "csv", "bound", "--eq", "e2.5", "--function", "poly:0,0,0,1",
                       "--a", "0", "--b", "1", "--x", "0.5", "--s", "1")
    assert code == 0
    assert out.splitlines()[0] == "equation_id,x,lhs,rhs,margin,holds,hypothesis_checked"


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "bound", "--eq", "e2.6", "--relaxed", "--function", "exp", "--a", "0", "--b", "1",
                       "--x", "0.2", "--s", "0.5", "--format", "json", "--tolerance", "1e-6")
    d = json.loads(out)
    assert code == 0 and d["equation_id"] == "e2.6b"


def test_violation_exit_code(capsys):
    code, out, _ = run(capsys, "bound", "--eq", "e2.5", "--function", "poly:0,0,0,2,-1", "--a", "0", "--b", "1",
                       "--x", "0", "--s", "1", "--no-gate")
    assert code == 2 and json.loads(out)["holds"] is False


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bound", "--eq", "nope", "--function", "exp", "--a", "0", "--b", "1"])
    assert exc.value.code == 1
    code, _, err = run(capsys, "bound", "--eq", "e2.5", "--function", "exp", "--a", "1", "--b", "0", "--x", "0.5",
                       "--s", "1")
    assert code == 1 and "a < b" in err
    code, _, err = run(capsys, "means", "--show", "Lp", "--x", "1", "--y", "2")
    assert code == 1 and "--p" in err


def test_convexity(capsys):
    code, out, _ = run(capsys, "convexity", "--function", "exp", "--power", "2", "--s", "0.5", "--a", "0", "--b", "1",
                       "--hadamard")
    d = json.loads(out)
    assert code == 0 and d["verdict"] == "Satisfied" and len(d["hadamard"]) == 2


def test_means(capsys):
    code, out, _ = run(capsys, "means", "--show", "I", "--x", "1", "--y", "2")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(1.4715177646857693)
    code, out, _ = run(capsys, "means", "--prop", "p6", "--a", "1", "--b", "2", "--p", "2")
    d = json.loads(out)
    assert code == 0 and d["rhs"] == pytest.approx(0.027015, abs=1e-5) and d["metadata"]["printed_holds"] is False


def test_sweep_default_csv(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--eq", "e2.9", "--function", "pow_s:0.5", "--a", "0", "--b", "1",
                       "--s", "0.5", "--p", "2", "--n", "5", "--out", str(target))
    assert code == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "x,lhs,rhs,margin,holds,hypothesis_checked" and lines[1] == "0.0,,,,,"


def test_campaign_config(capsys, tmp_path):
    cfg = tmp_path / "c.conf"
    cfg.write_text("functions = poly:0,0,0,2,-1\nintervals = 0,1\ns_grid = 1\nequations = e2.5\nx_points = 3\n")
    code, out, _ = run(capsys, "campaign", "--config", str(cfg))
    assert code == 0 and json.loads(out)["summary"]["violations"] == 0
    code, out, _ = run(capsys, "campaign", "--config", str(cfg), "--no-gate")
    assert code == 2 and json.loads(out)["summary"]["violations"] > 0
    cfg.write_text("equations = nope\n")
    code, _, _ = run(capsys, "campaign", "--config", str(cfg))
    assert code == 1


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "ostrowski", "means", "--show", "A", "--x", "1", "--y", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 2.0
