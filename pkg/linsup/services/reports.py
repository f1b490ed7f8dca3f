"""CSV and plot-data output. Every numeric cell is written with 17 significant digits."""

import json
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from linsup.models.experiment import ExperimentKind, ExperimentReport
from linsup.models.simplex import SimplexTraceSample
from linsup.models.solver import TraceSample

FLOAT_FORMAT = "%.17g"
TRACE_COLUMNS = ["sweep", "k", "elapsed_s", "instrumentation_s", "prox", "phi"]
PLOT_COLUMNS = ["x", "y", "series"]


def _to_csv(frame: pd.DataFrame, path: str | Path) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def write_trace(trace: Sequence[TraceSample], path: str | Path) -> None:
    """Write a run or Simplex trace; Simplex traces carry an extra ``phase`` column."""
    columns = list(TRACE_COLUMNS)
    if trace and isinstance(trace[0], SimplexTraceSample):
        columns.append("phase")
    records = [
        {"sweep": index, **sample.model_dump()} for index, sample in enumerate(trace)
    ]
    _to_csv(pd.DataFrame(records, columns=columns), path)


def _sibling(path: Path, suffix: str) -> Path:
    return path.with_name(f"{path.stem}_{suffix}{path.suffix or '.csv'}")


def emit_csv(report: ExperimentReport, path: str | Path) -> None:
    """Write the raw rows to ``path`` and the summary (and series) next to it."""
    path = Path(path)
    _to_csv(pd.DataFrame(report.rows, columns=report.columns), path)
    summary_columns = list(report.summary[0]) if report.summary else []
    _to_csv(pd.DataFrame(report.summary, columns=summary_columns), _sibling(path, "summary"))
    if report.series:
        _to_csv(pd.DataFrame(report.series), _sibling(path, "series"))


def emit_metadata(report: ExperimentReport, path: str | Path) -> None:
    """Write the report metadata as indented JSON."""
    Path(path).write_text(json.dumps(report.metadata, indent=2, default=str), encoding="utf-8")


def _plot_frame(report: ExperimentReport) -> pd.DataFrame:
    summary = pd.DataFrame(report.summary)
    if summary.empty and not report.series:
        return pd.DataFrame(columns=PLOT_COLUMNS)

    match report.kind:
        case ExperimentKind.TASK1:
            frames = [
                pd.DataFrame(
                    {
                        "x": summary["cols"],
                        "y": summary[f"phi_{arm}"],
                        "series": [f"{arm} alpha={alpha:g}" for alpha in summary["alpha"]],
                    }
                )
                for arm in ("with", "without")
            ]
        case ExperimentKind.TASK2:
            frames = [
                pd.DataFrame(
                    {
                        "x": summary["cols"],
                        "y": summary[metric],
                        "series": [f"{metric} alpha={alpha:g}" for alpha in summary["alpha"]],
                    }
                )
                for metric in ("re", "tr")
            ]
        case ExperimentKind.NSWEEP:
            frames = [
                pd.DataFrame(
                    {
                        "x": summary["n"],
                        "y": summary["re"],
                        "series": [f"{r}x{c}" for r, c in zip(summary["rows"], summary["cols"], strict=True)],
                    }
                )
            ]
        case ExperimentKind.SUBOPTIMAL:
            series = pd.DataFrame(report.series)
            labels = [
                f"{rows}x{cols}#{rep} {arm}" + ("" if pd.isna(alpha) else f" alpha={alpha:g}")
                for rows, cols, rep, arm, alpha in zip(
                    series["rows"], series["cols"], series["rep"], series["arm"], series["alpha"],
                    strict=True,
                )
            ]
            frames = [
                pd.DataFrame(
                    {"x": series["t"], "y": series[metric], "series": [f"{label} {metric}" for label in labels]}
                )
                for metric in ("phi", "prox")
            ]
    return pd.concat(frames, ignore_index=True)[PLOT_COLUMNS]


def emit_plotdata(report: ExperimentReport, path: str | Path) -> None:
    """Write (x, y, series) triples for external plotting."""
    _to_csv(_plot_frame(report), path)
