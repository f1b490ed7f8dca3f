import json
from pathlib import Path

import pandas as pd
import pytest

from linsup.core.problem_io import read_problem
from linsup.main import EXIT_IO, EXIT_NUMERICAL, EXIT_OK, main
from linsup.services.reports import TRACE_COLUMNS


@pytest.fixture
def problem_file(tmp_path: Path) -> Path:
    path = tmp_path / "problem.txt"
    assert main(["generate", "--rows", "8", "--cols", "10", "--seed", "4", "--out", str(path)]) == EXIT_OK
    return path


def test_generate_writes_readable_problem(problem_file: Path, capsys: pytest.CaptureFixture[str]) -> None:
    problem = read_problem(problem_file)
    assert problem.A.shape == (8, 10)
    assert "8 x 10" in capsys.readouterr().out


def test_run_linsup_with_trace(problem_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    trace = tmp_path / "trace.csv"

    code = main(["run", "--problem", str(problem_file), "--alpha", "0.9", "--n", "10", "--trace", str(trace)])

    assert code == EXIT_OK
    frame = pd.read_csv(trace)
    assert list(frame.columns) == TRACE_COLUMNS
    assert frame["sweep"].tolist() == list(range(len(frame)))
    assert "ProxBelowEpsilon" in capsys.readouterr().out


def test_run_feasibility_from_point_file(problem_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    point = tmp_path / "point.txt"
    point.write_text(" ".join(["5"] * 10) + "\n", encoding="utf-8")

    code = main(["run", "--problem", str(problem_file), "--mode", "feasibility", "--init", f"file:{point}"])

    assert code == EXIT_OK
    assert "beta_sum=0 " in capsys.readouterr().out


def test_simplex_budgeted_trace(problem_file: Path, tmp_path: Path) -> None:
    trace = tmp_path / "simplex.csv"

    code = main(
        ["simplex", "--problem", str(problem_file), "--budget", "60", "--sample-every", "1", "--trace", str(trace)]
    )

    assert code == EXIT_OK
    frame = pd.read_csv(trace)
    assert list(frame.columns) == [*TRACE_COLUMNS, "phase"]
    assert frame["elapsed_s"].is_monotonic_increasing


def test_simplex_trace_without_budget_is_sampled(problem_file: Path, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    trace = tmp_path / "simplex.csv"

    code = main(["simplex", "--problem", str(problem_file), "--sample-every", "1", "--trace", str(trace)])

    assert code == EXIT_OK
    frame = pd.read_csv(trace)
    assert len(frame) >= 1
    assert frame["k"].iloc[0] == 0
    assert frame["k"].is_monotonic_increasing
    assert "simplex:" in capsys.readouterr().out


def test_experiment_writes_reports(tmp_path: Path) -> None:
    out_dir = tmp_path / "out"

    code = main(
        ["experiment", "--kind", "task1", "--sizes", "8x10", "--reps", "1", "--seed", "2", "--out-dir", str(out_dir)]
    )

    assert code == EXIT_OK
    rows = pd.read_csv(out_dir / "task1.csv")
    assert len(rows) == 2
    assert (out_dir / "task1_summary.csv").exists()
    assert list(pd.read_csv(out_dir / "task1_plot.csv").columns) == ["x", "y", "series"]
    metadata = json.loads((out_dir / "task1_metadata.json").read_text(encoding="utf-8"))
    assert metadata["spec"]["sizes"] == [[8, 10]]


@pytest.mark.parametrize(
    "argv",
    [
        ["run"],
        ["experiment", "--kind", "task3", "--out-dir", "x"],
        ["experiment", "--kind", "task1", "--sizes", "80by100", "--out-dir", "x"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_with_one(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 1


def test_invalid_config_exits_with_one(problem_file: Path) -> None:
    assert main(["run", "--problem", str(problem_file), "--alpha", "1.5"]) == 1


def test_malformed_problem_exits_with_one(tmp_path: Path) -> None:
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 0\n", encoding="utf-8")
    assert main(["simplex", "--problem", str(path)]) == 1


def test_missing_problem_exits_with_three(tmp_path: Path) -> None:
    assert main(["run", "--problem", str(tmp_path / "missing.txt")]) == EXIT_IO


def test_numerical_failure_exits_with_two(tmp_path: Path) -> None:
    # every point of the nonnegative orthant satisfies -x1 - x2 <= 1
    path = tmp_path / "orthant.txt"
    path.write_text("1 2\n-1 -1\n1\n1 1\n", encoding="utf-8")
    assert main(["run", "--problem", str(path), "--init", "random"]) == EXIT_NUMERICAL
