import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cdyck import cli, paths

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "stat,r,n_max",
    [(s, r, 6) for s in ("points", "usteps", "peaks", "udu") for r in (2, 3)] + [("count", r, 8) for r in (2, 3, 4, 5)],
)
def test_table_golden(capsys, stat, r, n_max):
    code, out, _ = run(capsys, "table", "--stat", stat, "--r", str(r), "--n-max", str(n_max), "--format", "md")
    assert code == 0
    assert out == (GOLDEN / f"{stat}_r{r}.md").read_text()


@pytest.mark.parametrize("route", ["riordan", "recurrence", "oracle"])
def test_table_routes_agree(capsys, route):
    _, expected, _ = run(capsys, "table", "--stat", "peaks", "--r", "3", "--n-max", "5")
    code, out, _ = run(capsys, "table", "--stat", "peaks", "--r", "3", "--n-max", "5", "--route", route)
    assert code == 0 and out == expected


def test_table_udu_series_route(capsys):
    _, expected, _ = run(capsys, "table", "--stat", "udu", "--r", "2", "--n-max", "6")
    _, out, _ = run(capsys, "table", "--stat", "udu", "--r", "2", "--n-max", "6", "--route", "series")
    assert out == expected


def test_table_csv_and_json(capsys, tables):
    _, out, _ = run(capsys, "table", "--stat", "points", "--r", "2", "--n-max", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n/l", "0", "1", "2", "3", "4", "5", "6"]
    assert rows[2] == ["1", "4", "2", "", "", "", "", ""]
    _, out, _ = run(capsys, "table", "--stat", "usteps", "--r", "3", "--n-max", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["rows"] == [[str(v) for v in row] for row in tables["usteps"]["3"]]
    _, out, _ = run(capsys, "table", "--stat", "count", "--r", "5", "--n-max", "8", "--format", "json")
    assert json.loads(out)["values"][-1] == "262577745"


def test_table_markdown_alias(capsys):
    a = run(capsys, "table", "--stat", "peaks", "--r", "2", "--n-max", "3", "--format", "markdown")
    b = run(capsys, "table", "--stat", "peaks", "--r", "2", "--n-max", "3", "--format", "md")
    assert a == b


def test_table_is_byte_stable(capsys):
    first = run(capsys, "table", "--stat", "udu", "--r", "3", "--n-max", "6")
    second = run(capsys, "table", "--stat", "udu", "--r", "3", "--n-max", "6")
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--stat", "points", "--r", "1", "--n-max", "3"],
        ["table", "--stat", "points", "--n-max", "3"],
        ["table", "--stat", "valleys", "--r", "2", "--n-max", "3"],
        ["table", "--stat", "points", "--r", "2", "--n-max", "3", "--format", "xml"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    assert code == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--id", "cor4.2", "--n-max", "10", "--r", "2")
    assert code == 0 and "cor4.2" in out and "PASS" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--id", "thm6.2", "--n-max", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass"
    assert {"check_id", "grid", "status", "counterexample", "millis"} <= set(doc["checks"][0])


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "--id", "cor9.9")
    assert code == 2 and "cor4.2" in err and "lemma2.2" in err


def test_verify_parameter_error(capsys):
    code, _, err = run(capsys, "verify", "--id", "lemma2.2", "--a", "0", "--b", "1")
    assert code == 2 and "a" in err


def test_verify_failure_exit_1(capsys, monkeypatch):
    from cdyck import formulas as fm

    real = fm.ustep_count
    monkeypatch.setattr(fm, "ustep_count", lambda n, ell, r: real(n, ell, r) + (n == 4))
    code, out, _ = run(capsys, "verify", "--id", "cor4.2", "--n-max", "6", "--r", "2")
    assert code == 1 and "FAIL" in out and "'n': 4" in out


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["oracle", "--stat", "peaks", "--n", "1", "--level", "0", "--r", "2"], "8"),
        (["oracle", "--stat", "usteps", "--n", "2", "--level", "1", "--r", "2"], "18"),
        (["oracle", "--stat", "udu", "--n", "4", "--level", "1", "--r", "2"], "36"),
        (["oracle", "--stat", "dd", "--n", "2", "--level", "1", "--r", "2"], "2"),
        (["series", "--which", "Sr", "--r", "3", "--order", "8"], "1,3,15,93,645,4791,37275,299865,2474025"),
        (["series", "--which", "T0", "--r", "2", "--order", "6"], "1,2,2,6,14,42,122"),
        (["series", "--which", "C", "--a", "1", "--b", "1", "--order", "4"], "1,1,2,5,14"),
        (["series", "--which", "S", "--a", "1/2", "--b", "1", "--order", "2"], "1,3/2,15/4"),
    ],
)
def test_single_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_oracle_cap_exit_3(capsys):
    code, _, err = run(capsys, "oracle", "--stat", "points", "--n", "12", "--r", "3")
    assert code == 3 and str(paths.catalan(12) * 3**12) in err


def test_oracle_cap_from_env(capsys, monkeypatch):
    monkeypatch.setenv(paths.CAP_ENV, "3")
    code, _, _ = run(capsys, "oracle", "--stat", "points", "--n", "4", "--r", "2")
    assert code == 3
    code, out, _ = run(capsys, "oracle", "--stat", "points", "--n", "4", "--r", "2", "--cap", "4")
    assert code == 0 and out.strip() == "304"


def test_series_parameter_error(capsys):
    code, _, _ = run(capsys, "series", "--which", "Z", "--m", "1", "--a", "0", "--b", "1")
    assert code == 2


def test_cross_check(capsys):
    code, out, _ = run(capsys, "cross-check", "--stat", "udu", "--n-max", "5", "--r", "2", "3")
    assert code == 0 and "cross.udu" in out


def test_config_file_flags_win(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"r": 3, "table": {"stat": "peaks", "n_max": 2, "format": "csv"}}))
    code, out, _ = run(capsys, "--config", str(cfg), "table")
    assert code == 0 and out.splitlines()[1] == "0,3,,"
    code, out, _ = run(capsys, "--config", str(cfg), "table", "--r", "2")
    assert out.splitlines()[1] == "0,2,,"


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1, 2]")
    with pytest.raises(SystemExit) as info:
        cli.main(["--config", str(cfg), "table"])
    assert info.value.code == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cdyck.cli", "series", "--which", "Sr", "--r", "2", "--order", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1,2,6,22"
