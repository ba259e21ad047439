import json
import subprocess
import sys

import numpy as np
import pytest

from fracsusy.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_susy_example(capsys):
    code, out, _ = run(capsys, "verify-susy", "--k", "3", "--linear", "a=2,b=5", "--nmax", "20")
    data = json.loads(out)
    assert code == 0 and data["pass"]
    assert all(c["residual"] <= 1e-9 for c in data["checks"])
    assert list(data) == ["schema", "command", "config", "checks", "pass", "extra"]
    assert data["schema"] == 1


def test_emit_spectrum(capsys):
    code, out, _ = run(capsys, "cyclic", "--k", "3", "--f", "2,3,5", "--emit-spectrum")
    assert code == 0
    assert out.splitlines()[:3] == ["0,0,0,0", "1,0,1,2", "2,0,2,5"]


def test_arity_mismatch(capsys):
    code, _, err = run(capsys, "cyclic", "--k", "3", "--f", "2,3")
    assert code == 2
    assert "--f has 2 gaps but --k is 3" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify-algebra", "--linear", "a=2")[0] == 2
    assert run(capsys, "verify-algebra", "--tol", "-1")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "translational", "--linear", "a=-2,b=4")[0] == 2
    assert run(capsys, "verify-algebra", "--k", "1")[0] == 2
    assert run(capsys, "verify-algebra", "--config", "/does/not/exist")[0] == 2


def test_numerical_failure_exits_1(capsys):
    code, out, _ = run(capsys, "crosscheck", "--family", "pt", "--m", "200", "--tol-fd", "1e-6")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_formats(capsys):
    _, csv_out, _ = run(capsys, "verify-algebra", "--k", "2", "--format", "csv")
    assert csv_out.splitlines()[0] == "name,residual,tol,pass"
    _, table, _ = run(capsys, "verify-algebra", "--k", "2", "--format", "table")
    assert table.strip().endswith("(14 checks)")


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# cyclic run\nk = 3\nf = 2,3,5\nnmax = 12\nformat = csv\n")
    code, out, _ = run(capsys, "verify-algebra", "--config", str(cfg))
    assert code == 0 and out.startswith("name,residual")
    code, out, _ = run(capsys, "verify-algebra", "--config", str(cfg), "--format", "json")
    data = json.loads(out)
    assert data["config"]["nmax"] == 12 and data["config"]["f"] == [2.0, 3.0, 5.0]


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "verify-algebra", "--config", str(cfg))
    assert code == 2 and "colour" in err


def test_tabulated_spec(tmp_path, capsys):
    rng = np.random.default_rng(5)
    path = tmp_path / "gaps.csv"
    rows = ["s,n,f"] + [f"{s},{n},{rng.uniform(0, 2)!r}" for s in range(2) for n in range(20)]
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = run(capsys, "verify-susy", "--tabulated", str(path), "--nmax", "16")
    assert code == 0 and json.loads(out)["pass"]
    code, _, err = run(capsys, "verify-susy", "--tabulated", str(path), "--k", "3")
    assert code == 2 and "--k is 3" in err
    path.write_text("0,0,1\n1,1,1\n")
    assert run(capsys, "verify-susy", "--tabulated", str(path))[0] == 2


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FRACSUSY_OUTPUT_DIR", str(tmp_path / "reports"))
    code, out, _ = run(capsys, "translational", "--family", "morse", "--l", "2", "--k", "3", "--output", "m.json")
    assert code == 0 and out == ""
    data = json.loads((tmp_path / "reports" / "m.json").read_text())
    assert data["extra"]["spectrum_class"] == {"kind": "finite", "cutoff": 2, "degenerate_first_gap": False}


def test_hierarchy_command(capsys):
    code, out, _ = run(capsys, "hierarchy", "--k", "3", "--f", "2,3,5")
    data = json.loads(out)
    assert code == 0
    assert set(data["extra"]["hierarchy"]["spectra"]) == {"0", "1", "2"}


def test_crosscheck_families(capsys):
    for argv in (["--family", "morse"], ["--family", "ho"], ["--family", "pt", "--k", "3", "--s", "1"], ["--family", "cs"]):
        code, out, _ = run(capsys, "crosscheck", *argv)
        assert code == 0, (argv, out)


def test_crosscheck_sampled_potential(tmp_path, capsys):
    xs = np.linspace(-9, 9, 4001)
    path = tmp_path / "v.csv"
    path.write_text("\n".join(f"{float(x)!r},{float(x * x)!r}" for x in xs) + "\n")
    argv = ["crosscheck", "--potential-csv", str(path), "--x-min", "-8", "--x-max", "8", "--m", "2000"]
    code, out, _ = run(capsys, *argv, "--reference", "1,3,5")
    assert code == 0
    assert run(capsys, *argv)[0] == 2


def test_full_suite_seed_changes_report(capsys):
    _, a, _ = run(capsys, "full-suite", "--seed", "7")
    _, b, _ = run(capsys, "full-suite", "--seed", "7")
    _, c, _ = run(capsys, "full-suite", "--seed", "8")
    assert a == b and a != c
    assert len(json.loads(a)["checks"]) >= 12


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fracsusy.cli", "cyclic", "--f", "3,1", "--format", "table"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "overall: PASS" in proc.stdout
