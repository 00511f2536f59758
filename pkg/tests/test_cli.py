import json
from pathlib import Path

import pandas as pd
import pytest
from typer.testing import CliRunner

import fpdlab
from _version import __version__
from commands.schema import bundle_schema_json
from utils.bundle import ReportBundle
from utils.dataframe_utils import SUMMARY_COLUMNS, print_summary_table

runner = CliRunner()

SCRIPT = """\
ring R = QQ[x, y] / (x^2, x*y)
ideal m = (x, y) in R
query grade koszul m on R
query verify thm-dim R using m
"""

SCHEMA_FILE = Path(__file__).parent.parent / "schema" / "report_bundle.schema.json"


@pytest.fixture
def script_file(tmp_path):
    path = tmp_path / "demo.fpd"
    path.write_text(SCRIPT, encoding="utf-8")
    return path


def test_version():
    result = runner.invoke(fpdlab.app, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.stdout


def test_run_writes_the_bundle(script_file, tmp_path):
    out = tmp_path / "demo.json"
    result = runner.invoke(fpdlab.app, ["run", str(script_file), "--out", str(out)])
    assert result.exit_code == 0
    bundle = json.loads(out.read_text(encoding="utf-8"))
    assert bundle["exit_code"] == 0
    assert [r["query"] for r in bundle["results"]] == ["grade", "verify"]
    assert bundle["results"][1]["verification"]["verdict"] == "verified"


def test_default_output_is_named_after_the_script(script_file, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    result = runner.invoke(fpdlab.app, ["run", str(script_file)])
    assert result.exit_code == 0
    assert (tmp_path / "demo.json").exists()


def test_runs_are_byte_identical(script_file, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    runner.invoke(fpdlab.app, ["run", str(script_file), "-o", str(first), "--seed", "3"])
    runner.invoke(fpdlab.app, ["run", str(script_file), "-o", str(second), "--seed", "3"])
    assert first.read_bytes() == second.read_bytes()


def test_dash_writes_to_stdout(script_file):
    result = runner.invoke(fpdlab.app, ["run", str(script_file), "--out", "-"])
    assert result.exit_code == 0
    bundle = ReportBundle.model_validate_json(result.stdout)
    assert bundle.script == "demo.fpd"


def test_failed_query_exits_with_one(tmp_path):
    path = tmp_path / "unit.fpd"
    path.write_text("ring R = QQ[x]\nideal u = (1) in R\nquery grade ext u on R\n", encoding="utf-8")
    result = runner.invoke(fpdlab.app, ["run", str(path), "-o", str(tmp_path / "unit.json")])
    assert result.exit_code == 1


def test_syntax_error_stops_before_running(tmp_path):
    path = tmp_path / "bad.fpd"
    path.write_text("ring R = QQ[x]\nideal m = x in R\n", encoding="utf-8")
    out = tmp_path / "bad.json"
    result = runner.invoke(fpdlab.app, ["run", str(path), "-o", str(out)])
    assert result.exit_code == 1
    assert not out.exists()


def test_summary_csv(script_file, tmp_path):
    summary = tmp_path / "summary.csv"
    result = runner.invoke(
        fpdlab.app, ["run", str(script_file), "-o", str(tmp_path / "demo.json"), "--summary", str(summary)]
    )
    assert result.exit_code == 0
    df = pd.read_csv(summary, sep=";")
    assert list(df["consulta"]) == ["grade", "verify"]
    assert list(df["veredicto"]) == ["ok", "verified"]
    assert df["valor"].iloc[0] == "0"


def test_summary_parquet(script_file, tmp_path):
    summary = tmp_path / "summary.parquet"
    result = runner.invoke(
        fpdlab.app,
        ["run", str(script_file), "-o", str(tmp_path / "demo.json"), "--summary", str(summary), "--summaryformat", "parquet"],
    )
    assert result.exit_code == 0
    df = pd.read_parquet(summary)
    assert list(df.columns) == SUMMARY_COLUMNS
    assert df["línea"].dtype == "int64"
    assert list(df["línea"]) == [3, 4]
    assert list(df["veredicto"]) == ["ok", "verified"]


def test_long_summary_is_truncated(capsys):
    rows = [[i, "grade", f"m{i} on R", "1", "ok"] for i in range(1, 14)]
    print_summary_table(pd.DataFrame(rows, columns=SUMMARY_COLUMNS), title="largo.fpd")
    err = capsys.readouterr().err
    assert "3 consultas más" in err
    assert "m5 on R" in err and "m9 on R" in err
    assert "m6 on R" not in err and "m8 on R" not in err


def test_schema_file_is_in_sync():
    generated = json.loads(bundle_schema_json())
    stored = json.loads(SCHEMA_FILE.read_text(encoding="utf-8"))
    assert sorted(stored["properties"]) == sorted(generated["properties"])
    assert sorted(stored["required"]) == sorted(generated["required"])


def test_schema_command(tmp_path):
    out = tmp_path / "schema.json"
    result = runner.invoke(fpdlab.app, ["schema", "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["title"] == "ReportBundle"
