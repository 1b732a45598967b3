import json

import pytest
from click.testing import CliRunner

from vie_solver import ENV
from vie_solver.pipeline.main import cli
from vie_solver.utils.json_schema import (
    AugmentedSystemRecord, CheckRecord, CompareRecord, RECORDS, SolveReportRecord,
)


def example(name):
    return str(ENV.EQUATIONS_DIR / f"{name}.vie")


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args))
    return invoke


def test_check(run):
    result = run("check", example("example_1"))
    assert result.exit_code == 0
    assert "separable: f(t) = 2+cos(t), k(s, y) = y(s)/(2+cos(s))" in result.stdout


def test_check_json(run):
    result = run("check", "--format", "json", example("example_2"))
    record = CheckRecord.model_validate_json(result.stdout)
    assert len(record.terms) == 2


def test_syntax_error_exit_code(run):
    result = run("check", "--equation", "y(t) = int(")
    assert result.exit_code == 2
    assert "syntax error" in result.output


def test_multiple_integrals_exit_code(run):
    result = run("check", "-e", "y(t) = int(y(s), s=0..t) + int(s, s=0..t)")
    assert result.exit_code == 2
    assert "multiple integral terms" in result.output


def test_closure_failure_exit_code(run):
    result = run("show-system", "-e", "y(t) = 1 + t*int(sin(y(s)), s=0..t)")
    assert result.exit_code == 3


def test_show_system(run):
    result = run("show-system", example("sin_y"))
    assert result.exit_code == 0
    assert "v1 := sin(y)" in result.stdout
    assert "v2 := cos(y)" in result.stdout


def test_show_system_polynomial_only(run):
    result = run("show-system", "-e", "y(t) = 1 + int(3/2*y(s)^2, s=0..t)")
    assert "no auxiliary variables required" in result.stdout


def test_show_system_json(run):
    result = run("show-system", "--format", "json", example("example_1"))
    record = AugmentedSystemRecord.model_validate_json(result.stdout)
    assert [v.definition for v in record.variables][3:] == ["2+cos(t)", "1/(2+cos(t))"]


def test_solve_example_2(run):
    result = run("solve", example("example_2"))
    assert result.exit_code == 0
    assert "y^[7](t) = 1.00000 t - 0.16667 t^3 + 0.00833 t^5 + 0.00000 t^7" in result.stdout


def test_solve_is_deterministic(run):
    first = run("solve", example("example_1")).stdout
    second = run("solve", example("example_1")).stdout
    assert first == second


def test_solve_json_and_flags(run):
    result = run("solve", "--format", "json", "-N", "4", "--iters", "3", example("example_2"))
    record = SolveReportRecord.model_validate_json(result.stdout)
    assert record.iterations == 3
    assert record.components[0].order == 4
    assert record.reference[:4] == ["0.00000", "1.00000", "0.00000", "-0.16667"]


def test_solve_csv(run):
    result = run("solve", "--format", "csv", example("example_2"))
    lines = result.stdout.splitlines()
    assert lines[0] == "power,coefficient,rounded"
    assert lines[4] == "3,-1/6,-0.16667"


def test_bad_precision(run):
    result = run("solve", "--precision", "8", example("example_2"))
    assert result.exit_code == 2


def test_compare_json(run):
    result = run("compare", "--format", "json", "--samples", "5", example("example_2"))
    assert result.exit_code == 0
    record = CompareRecord.model_validate_json(result.stdout)
    assert record.source == "closed form"
    assert len(record.samples) == 5
    assert 5e-4 <= float(record.max_error) <= 2e-3


def test_residual(run):
    result = run("residual", example("example_2"))
    assert result.exit_code == 0


def test_batch_isolates_failures(run, tmp_path):
    bad = tmp_path / "bad.vie"
    bad.write_text("y(t) = int(\n", encoding="utf-8")
    good = tmp_path / "good.vie"
    good.write_text("label: good\ny(t) = 1 + int(y(s), s=0..t)\n", encoding="utf-8")
    out = tmp_path / "out"
    result = run("solve", "-o", str(out), str(bad), str(good))
    assert result.exit_code == 2
    assert (out / "good.txt").exists()


def test_export_schema(run, tmp_path):
    result = run("export-schema", "--out", str(tmp_path))
    assert result.exit_code == 0
    for name in RECORDS:
        schema = json.loads((tmp_path / f"{name}.schema.json").read_text(encoding="utf-8"))
        assert schema["type"] == "object"


def test_config_file(run, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("series:\n  order: 3\n", encoding="utf-8")
    result = run("--config", str(config), "solve", "--format", "json", "-e", "y(t) = 1 + int(y(s), s=0..t)")
    record = SolveReportRecord.model_validate_json(result.stdout)
    assert record.components[0].order == 3


def test_stabilize_budget_warning(run):
    result = run("solve", "--mode", "stabilize", "--iters", "2", "-N", "6", "-e", "y(t) = 1 + int(y(s), s=0..t)")
    assert result.exit_code == 0
    assert "not stable beyond degree" in result.output


def test_low_oracle_precision_is_a_config_error(run, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("oracle:\n  precision: 16\n", encoding="utf-8")
    result = run("--config", str(config), "compare", "-e", "y(t) = 1 + int(y(s), s=0..t)")
    assert result.exit_code == 2
    assert "oracle.precision" in result.output


def test_compare_writes_oracle_grid(run, tmp_path):
    grid = tmp_path / "grid.csv"
    result = run("compare", "--grid-csv", str(grid), "--oracle-h", "0.1", "--samples", "3", "--window", "0..1",
                 "-e", "y(t) = 1 + int(y(s), s=0..t)")
    assert result.exit_code == 0
    rows = grid.read_text(encoding="utf-8").splitlines()
    assert rows[0] == "t,y"
    assert len(rows) == 12
    t, y = rows[-1].split(",")
    assert float(t) == 1.0
    assert abs(float(y) - 2.718281828) < 1e-2


def test_compare_grid_directory_per_label(run, tmp_path):
    out = tmp_path / "grids"
    result = run("compare", "--grid-csv", str(out), "--oracle-h", "0.25", "--samples", "2",
                 "-e", "label: growth\nwindow: 0..0.5\ny(t) = 1 + int(y(s), s=0..t)")
    assert result.exit_code == 0
    assert (out / "growth.grid.csv").read_text(encoding="utf-8").startswith("t,y\n")
