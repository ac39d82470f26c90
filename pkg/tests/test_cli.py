"""CLI entry points via click's test runner."""

from click.testing import CliRunner

from conftest import C1_DSL, CAR_CSV
from prefq.cli import main


def test_run_script(tmp_path):
    (tmp_path / "cars.csv").write_text(CAR_CSV, encoding="utf-8")
    script = tmp_path / "session.pq"
    script.write_text(
        f"LOAD car FROM '{tmp_path}/cars.csv' (make:str, year:rat);\n"
        f"PREF c1 = {C1_DSL};\n"
        "WINNOW c1 OVER car;\n"
        "CHECK c1 SPO\n",
        encoding="utf-8",
    )
    result = CliRunner().invoke(main, ["run", str(script)])
    assert result.exit_code == 0, result.output
    assert "VW" in result.output and "Kia" in result.output
    assert "true" in result.output


def test_run_reports_errors(tmp_path):
    script = tmp_path / "bad.pq"
    script.write_text("WINNOW nope OVER nothing\n", encoding="utf-8")
    result = CliRunner().invoke(main, ["run", str(script)])
    assert result.exit_code == 1
    assert "unknown" in result.output


def test_run_with_saved_state(tmp_path):
    (tmp_path / "cars.csv").write_text(CAR_CSV, encoding="utf-8")
    first = tmp_path / "first.pq"
    first.write_text(
        f"LOAD car FROM '{tmp_path}/cars.csv' (make:str, year:rat);\n"
        f"PREF c1 = {C1_DSL};\n"
        f"SAVE '{tmp_path}/state.prefq'\n",
        encoding="utf-8",
    )
    assert CliRunner().invoke(main, ["run", str(first)]).exit_code == 0
    second = tmp_path / "second.pq"
    second.write_text("WINNOW c1 OVER car\n", encoding="utf-8")
    result = CliRunner().invoke(
        main, ["run", str(second), "--state", f"{tmp_path}/state.prefq"]
    )
    assert result.exit_code == 0, result.output
    assert "2002" in result.output


def test_help_lists_commands():
    result = CliRunner().invoke(main, ["--help"])
    assert result.exit_code == 0
    for cmd in ("repl", "run", "serve"):
        assert cmd in result.output
