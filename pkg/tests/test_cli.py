import json
import subprocess
import sys

import pytest

from cobasic import cli


def run_json(capsys, *argv):
    code, payload = cli.run(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_table_json(capsys):
    code, data = run_json(capsys, "table", "--algebra", "field", "--max-degree", "6")
    assert code == 0
    assert data["tool"] == "cobasic" and data["algebra"] == "field"
    assert [r["dimH"] for r in data["reports"][0]["rows"]] == [1, 0, 1, 0, 1, 0, 1]


def test_table_all_variants(capsys):
    code, data = run_json(capsys, "table", "--algebra", "matrix:2", "--complex", "all", "--max-degree", "3")
    assert code == 0
    assert [r["variant"] for r in data["reports"]] == ["full", "invariant", "basic"]
    assert [r["dimH"] for r in data["reports"][0]["rows"]] == [1, 0, 0, 0]


def test_table_csv(capsys):
    code, _ = cli.run(["table", "--algebra", "field", "--max-degree", "2", "--format", "csv", "--complex", "all"])
    lines = capsys.readouterr().out.strip().split("\n")
    assert code == 0
    assert len(lines) == 1 + 3 * 3
    assert lines[0].startswith("algebra,variant,n")


def test_deterministic_output(capsys):
    argv = ["selftest", "--algebra", "field", "--samples", "5", "--seed", "7", "--format", "json"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    assert capsys.readouterr().out == first


def test_selftest_passes(capsys):
    code, data = run_json(capsys, "selftest", "--algebra", "upper_triangular:2", "--samples", "5")
    assert code == 0 and data["passed"]
    assert data["lemma"]["recursion"]


def test_theorem_command(capsys):
    code, data = run_json(capsys, "theorem", "--algebra", "upper_triangular:2", "--max-degree", "4")
    assert code == 0 and data["holds"]


def test_lemma(capsys):
    code, data = run_json(capsys, "lemma", "--n", "4")
    assert code == 0 and data["holds"]
    assert [r["k"] for r in data["checks"]] == [1, 2, 3]


def test_bicomplex(capsys):
    code, data = run_json(capsys, "bicomplex", "--algebra", "matrix:2", "--m", "1", "--n", "3")
    assert code == 0
    assert data["dimH"] == 2


def test_spectral(capsys):
    code, data = run_json(capsys, "spectral", "--algebra", "matrix:2", "--page", "2", "--max-total", "3")
    assert code == 0
    row = sorted((c["p"], c["dim"]) for c in data["cells"] if c["q"] == 0)
    assert [d for _, d in row] == [1, 0, 1, 0]


def test_algebra_file(tmp_path, capsys):
    from cobasic.algebra import field
    path = tmp_path / "k.json"
    path.write_text(json.dumps(field().to_json()))
    code, data = run_json(capsys, "table", "--algebra-file", str(path), "--max-degree", "2")
    assert code == 0
    assert [r["dimH"] for r in data["reports"][0]["rows"]] == [1, 0, 1]


def test_unknown_algebra_exit_code(capsys):
    code, err = cli.run(["table", "--algebra", "octonions"])
    assert code == 2
    assert json.loads(capsys.readouterr().err)["exit_code"] == 2


def test_capacity_exit_code(capsys):
    code, err = cli.run(["table", "--algebra", "matrix:2", "--max-degree", "4", "--capacity", "10"])
    assert code == 3
    assert err["error"]


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        cli.run(["spectral", "--format", "csv"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["table", "--max-degree", "-1"])
    assert exc.value.code == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "cobasic.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("cobasic ")
