"""Experiment drivers: the N sweep, Task 1 (with vs. without superiorization),
Task 2 (LinSup vs. Simplex at matched proximity) and the suboptimal Simplex race.

Every (size, rep) cell derives its seeds from the master seed, so a report is
a pure function of its ExperimentSpec apart from the time columns. Cells whose times
feed a time ratio always run serially.
"""

import logging
import math
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from typing import Any

import numpy as np
import pandas as pd

from linsup.core.config import settings
from linsup.core.errors import RegenerationExhaustedError
from linsup.core.rng import derive_seed
from linsup.models.experiment import Cell, ExperimentKind, ExperimentReport, ExperimentSpec
from linsup.models.generation import GenSpec
from linsup.models.problem import Problem
from linsup.models.simplex import SimplexResult, SimplexStatus
from linsup.models.solver import RunReport
from linsup.services.metrics import compare, proximity
from linsup.services.problem_gen import generate
from linsup.services.simplex import solve, solve_budgeted
from linsup.services.superiorization import linsup_run, proximity_stop_check

logger = logging.getLogger(__name__)

DESK_SIZES: list[tuple[int, int]] = [(80, 100), (200, 250), (400, 500), (800, 1000)]
LARGE_SIZES: list[tuple[int, int]] = [(2000, 2500), (4000, 5000), (8000, 10000)]
TIGHT_TASK1_EPSILON = 1e-20

_INSTANCE_STREAM = 0
_RUN_STREAM = 1

TASK1_COLUMNS = [
    "rows", "cols", "rep", "instance_seed", "alpha", "arm",
    "phi", "prox", "sweeps", "wall_s", "beta_sum", "stop_reason", "flagged",
]
TASK2_COLUMNS = [
    "rows", "cols", "rep", "instance_seed", "attempts", "alpha", "n",
    "phi_simplex", "phi_linsup", "re", "t_simplex", "t_linsup", "tr",
    "prox_simplex", "epsilon", "prox_linsup", "epsilon_relaxed", "above_simplex_prox",
    "sweeps", "stop_reason", "flagged",
]
SUBOPTIMAL_COLUMNS = [
    "rows", "cols", "rep", "instance_seed", "arm", "alpha", "phi", "prox",
    "time_s", "iterations", "stop_reason", "budget_s", "crossover", "crossover_t",
]
SERIES_COLUMNS = ["rows", "cols", "rep", "arm", "alpha", "t", "phi", "prox", "phase"]
TIME_COLUMNS = {"wall_s", "t_simplex", "t_linsup", "tr", "time_s", "budget_s", "crossover_t", "t"}

CellKey = tuple[ExperimentSpec, int, int]


def _instance_seed(spec: ExperimentSpec, size_index: int, rep: int, attempt: int = 0) -> int:
    return derive_seed(spec.seed, _INSTANCE_STREAM, size_index, rep, attempt)


def _run_seed(spec: ExperimentSpec, size_index: int, rep: int) -> int:
    return derive_seed(spec.seed, _RUN_STREAM, size_index, rep)


def _instance(spec: ExperimentSpec, size_index: int, rep: int, attempt: int = 0) -> tuple[Problem, int]:
    rows, cols = spec.sizes[size_index]
    seed = _instance_seed(spec, size_index, rep, attempt)
    return generate(GenSpec(rows=rows, cols=cols, seed=seed)), seed


def _solved_instance(
    spec: ExperimentSpec, size_index: int, rep: int
) -> tuple[Problem, int, SimplexResult, int]:
    """Generate instances for one slot until Simplex solves one to optimality."""
    for attempt in range(settings.REGENERATION_LIMIT):
        problem, seed = _instance(spec, size_index, rep, attempt)
        result = solve(problem)
        if result.status is SimplexStatus.OPTIMAL and result.objective != 0:
            return problem, seed, result, attempt + 1
        logger.warning(
            "Discarding instance %s rep %d (seed=%d): Simplex reported %s",
            spec.sizes[size_index], rep, seed, result.status,
        )
    raise RegenerationExhaustedError(
        f"no solvable instance for size {spec.sizes[size_index]} rep {rep} "
        f"after {settings.REGENERATION_LIMIT} attempts"
    )


def _cells(spec: ExperimentSpec) -> list[CellKey]:
    return [(spec, size_index, rep) for size_index in range(len(spec.sizes)) for rep in range(spec.reps)]


def _map_cells(
    fn: Callable[[CellKey], Any], cells: list[CellKey], workers: int
) -> list[Any]:
    if workers <= 1:
        return [fn(cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells))


def _flatten(results: Iterable[list[Cell]]) -> list[Cell]:
    return [row for rows in results for row in rows]


def _summarize(
    rows: list[Cell], columns: list[str], keys: list[str], values: list[str],
    fractions: Iterable[str] = (),
) -> list[Cell]:
    """Per-group means of ``values``; boolean ``fractions`` columns come out as ``<name>_fraction``."""
    if not rows:
        return []
    fractions = list(fractions)
    frame = pd.DataFrame(rows, columns=columns)
    grouped = frame.groupby(keys, dropna=False, sort=True)
    summary = grouped[values + fractions].mean()
    summary["instances"] = grouped.size()
    summary = summary.rename(columns={name: f"{name}_fraction" for name in fractions})
    return summary.reset_index().to_dict(orient="records")


def _metadata(spec: ExperimentSpec, columns: list[str], **extra: Any) -> dict[str, Any]:
    return {
        "build": f"{settings.PROJECT_NAME} {settings.VERSION}",
        "spec": spec.model_dump(mode="json"),
        "columns": columns,
        "time_columns": sorted(TIME_COLUMNS),
        **extra,
    }


def _require(spec: ExperimentSpec, kind: ExperimentKind) -> None:
    if spec.kind is not kind:
        raise ValueError(f"expected a {kind} spec, got {spec.kind}")


# Task 1


def _task1_row(
    spec: ExperimentSpec, size_index: int, rep: int, seed: int, alpha: float, arm: str,
    problem: Problem, run: RunReport, epsilon: float | None,
) -> Cell:
    rows, cols = spec.sizes[size_index]
    flagged = epsilon is not None and not proximity_stop_check(run.final_point, problem, epsilon)
    if flagged:
        logger.warning("Task 1 %dx%d rep %d %s arm stopped with %s", rows, cols, rep, arm, run.stop_reason)
    return {
        "rows": rows, "cols": cols, "rep": rep, "instance_seed": seed, "alpha": alpha,
        "arm": arm, "phi": run.final_phi, "prox": run.final_prox, "sweeps": run.sweeps,
        "wall_s": run.wall_time_s, "beta_sum": run.beta_sum,
        "stop_reason": str(run.stop_reason), "flagged": flagged,
    }


def _task1_cell(cell: CellKey) -> list[Cell]:
    spec, size_index, rep = cell
    problem, seed = _instance(spec, size_index, rep)
    config = spec.base_config.model_copy(update={"seed": _run_seed(spec, size_index, rep)})
    epsilon = config.prox_epsilon
    without = linsup_run(problem, config.model_copy(update={"superiorize": False}))

    rows = []
    for alpha in spec.alphas:
        with_run = linsup_run(problem, config.model_copy(update={"superiorize": True, "alpha": alpha}))
        rows.append(_task1_row(spec, size_index, rep, seed, alpha, "with", problem, with_run, epsilon))
        rows.append(_task1_row(spec, size_index, rep, seed, alpha, "without", problem, without, epsilon))
    return rows


def _task1_summary(rows: list[Cell]) -> list[Cell]:
    if not rows:
        return []
    frame = pd.DataFrame(rows, columns=TASK1_COLUMNS)
    keys = ["rows", "cols", "rep", "alpha"]
    paired = frame[frame["arm"] == "with"].merge(
        frame[frame["arm"] == "without"], on=keys, suffixes=("_with", "_without")
    )
    paired["superiorized_lower"] = paired["phi_with"] < paired["phi_without"]
    paired["phi_ratio"] = paired["phi_with"] / paired["phi_without"]
    paired["flagged"] = paired["flagged_with"] | paired["flagged_without"]
    values = [
        "phi_with", "phi_without", "prox_with", "prox_without",
        "wall_s_with", "wall_s_without", "sweeps_with", "sweeps_without",
        "superiorized_lower", "phi_ratio", "flagged",
    ]
    grouped = paired.groupby(["rows", "cols", "alpha"], sort=True)
    summary = grouped[values].mean()
    summary["instances"] = grouped.size()
    return summary.reset_index().rename(
        columns={
            "superiorized_lower": "superiorized_lower_fraction",
            "flagged": "flagged_fraction",
        }
    ).to_dict(orient="records")


def run_task1(spec: ExperimentSpec) -> ExperimentReport:
    """Paired runs per cell: LinSup against plain AMS from the same start and epsilon.

    The superiorized arm is expected to stop at the lower target value.
    """
    _require(spec, ExperimentKind.TASK1)
    logger.info("Task 1: sizes=%s reps=%d alphas=%s", spec.sizes, spec.reps, spec.alphas)
    rows = _flatten(_map_cells(_task1_cell, _cells(spec), spec.workers))
    return ExperimentReport(
        kind=spec.kind,
        columns=TASK1_COLUMNS,
        rows=rows,
        summary=_task1_summary(rows),
        metadata=_metadata(spec, TASK1_COLUMNS),
    )


# Task 2 and the N sweep


def _comparison_row(
    spec: ExperimentSpec, size_index: int, rep: int, seed: int, attempts: int,
    result: SimplexResult, prox_simplex: float, epsilon: float, run: RunReport,
    alpha: float, n: int,
) -> Cell:
    rows, cols = spec.sizes[size_index]
    stats = compare(run.final_phi, result.objective, run.wall_time_s, result.wall_time_s)
    flagged = bool(run.final_prox > epsilon)
    # epsilon sits above the Simplex proximity whenever the floor or a fixed epsilon binds
    epsilon_relaxed = bool(epsilon > prox_simplex)
    if flagged:
        logger.warning("%dx%d rep %d alpha=%g N=%d stopped with %s", rows, cols, rep, alpha, n, run.stop_reason)
    return {
        "rows": rows, "cols": cols, "rep": rep, "instance_seed": seed, "attempts": attempts,
        "alpha": alpha, "n": n, "phi_simplex": stats.phi_simplex, "phi_linsup": stats.phi_linsup,
        "re": stats.re, "t_simplex": stats.t_simplex, "t_linsup": stats.t_linsup, "tr": stats.tr,
        "prox_simplex": prox_simplex, "epsilon": epsilon, "prox_linsup": run.final_prox,
        "epsilon_relaxed": epsilon_relaxed, "above_simplex_prox": bool(run.final_prox > prox_simplex),
        "sweeps": run.sweeps, "stop_reason": str(run.stop_reason), "flagged": flagged,
    }


def _task2_cell(cell: CellKey) -> list[Cell]:
    spec, size_index, rep = cell
    problem, seed, result, attempts = _solved_instance(spec, size_index, rep)
    prox_simplex = proximity(problem, result.x)
    epsilon = max(prox_simplex, settings.EPSILON_FLOOR)
    config = spec.base_config.model_copy(
        update={"seed": _run_seed(spec, size_index, rep), "prox_epsilon": epsilon, "superiorize": True}
    )
    rows = []
    for alpha in spec.alphas:
        run = linsup_run(problem, config.model_copy(update={"alpha": alpha}))
        rows.append(
            _comparison_row(
                spec, size_index, rep, seed, attempts, result, prox_simplex, epsilon, run,
                alpha, config.inner_steps,
            )
        )
    return rows


def run_task2(spec: ExperimentSpec) -> ExperimentReport:
    """LinSup vs. Simplex: LinSup stops at the proximity of the Simplex solution.

    That proximity is floored at ``EPSILON_FLOOR``; rows where the floor binds
    carry ``epsilon_relaxed`` and are counted in the metadata.
    """
    _require(spec, ExperimentKind.TASK2)
    logger.info("Task 2: sizes=%s reps=%d alphas=%s", spec.sizes, spec.reps, spec.alphas)
    rows = _flatten(_map_cells(_task2_cell, _cells(spec), workers=1))
    relaxed = sum(1 for row in rows if row["epsilon_relaxed"])
    above = sum(1 for row in rows if row["above_simplex_prox"])
    if relaxed:
        logger.warning(
            "Task 2: epsilon floor %g replaced the Simplex proximity in %d of %d rows; "
            "%d rows ended above the Simplex proximity",
            settings.EPSILON_FLOOR, relaxed, len(rows), above,
        )
    values = ["phi_simplex", "phi_linsup", "re", "t_simplex", "t_linsup", "tr", "prox_simplex", "prox_linsup"]
    return ExperimentReport(
        kind=spec.kind,
        columns=TASK2_COLUMNS,
        rows=rows,
        summary=_summarize(
            rows, TASK2_COLUMNS, ["rows", "cols", "alpha"], values,
            fractions=["epsilon_relaxed", "above_simplex_prox", "flagged"],
        ),
        metadata=_metadata(
            spec, TASK2_COLUMNS,
            epsilon_floor=settings.EPSILON_FLOOR,
            epsilon_relaxed_rows=relaxed,
            above_simplex_prox_rows=above,
        ),
    )


def _nsweep_cell(cell: CellKey) -> list[Cell]:
    spec, size_index, rep = cell
    problem, seed, result, attempts = _solved_instance(spec, size_index, rep)
    prox_simplex = proximity(problem, result.x)
    config = spec.base_config.model_copy(
        update={"seed": _run_seed(spec, size_index, rep), "superiorize": True}
    )
    epsilon = config.prox_epsilon
    if epsilon is None:
        epsilon = max(prox_simplex, settings.EPSILON_FLOOR)
        config = config.model_copy(update={"prox_epsilon": epsilon})
    rows = []
    for n in spec.n_values:
        run = linsup_run(problem, config.model_copy(update={"inner_steps": n}))
        rows.append(
            _comparison_row(
                spec, size_index, rep, seed, attempts, result, prox_simplex, epsilon, run,
                config.alpha, n,
            )
        )
    return rows


def run_nsweep(spec: ExperimentSpec) -> ExperimentReport:
    """Relative error as a function of the number N of perturbations per sweep."""
    _require(spec, ExperimentKind.NSWEEP)
    logger.info("N sweep: sizes=%s reps=%d N=%s", spec.sizes, spec.reps, spec.n_values)
    # rows carry t_linsup and tr, so cells run serially like Task 2
    rows = _flatten(_map_cells(_nsweep_cell, _cells(spec), workers=1))
    return ExperimentReport(
        kind=spec.kind,
        columns=TASK2_COLUMNS,
        rows=rows,
        summary=_summarize(
            rows, TASK2_COLUMNS, ["rows", "cols", "n"], ["re", "phi_linsup", "phi_simplex", "t_linsup"],
            fractions=["epsilon_relaxed", "above_simplex_prox"],
        ),
        metadata=_metadata(spec, TASK2_COLUMNS),
    )


# Suboptimal race


def _crossover(run: RunReport, simplex: SimplexResult) -> float:
    """First LinSup time at which it beats the latest Simplex sample in both phi and prox."""
    if not simplex.trace:
        return math.nan
    simplex_times = np.array([sample.elapsed_s for sample in simplex.trace])
    for sample in run.trace:
        t = sample.elapsed_s + sample.instrumentation_s
        position = int(np.searchsorted(simplex_times, t, side="right")) - 1
        if position < 0:
            continue
        latest = simplex.trace[position]
        if sample.phi < latest.phi and sample.prox < latest.prox:
            return t
    return math.nan


def _suboptimal_cell(cell: CellKey) -> tuple[list[Cell], list[Cell]]:
    spec, size_index, rep = cell
    rows_count, cols = spec.sizes[size_index]
    problem, seed = _instance(spec, size_index, rep)
    config = spec.base_config.model_copy(
        update={
            "seed": _run_seed(spec, size_index, rep),
            "superiorize": True,
            "prox_epsilon": None,
            "iterate_change_epsilon": spec.iterate_change_epsilon,
        }
    )
    runs = {alpha: linsup_run(problem, config.model_copy(update={"alpha": alpha})) for alpha in spec.alphas}
    budget = spec.budget_multiplier * max(run.wall_time_s for run in runs.values())
    simplex = solve_budgeted(problem, budget, spec.sample_every)

    base = {"rows": rows_count, "cols": cols, "rep": rep}
    rows: list[Cell] = []
    series: list[Cell] = []
    for alpha, run in runs.items():
        crossover_t = _crossover(run, simplex)
        rows.append({
            **base, "instance_seed": seed, "arm": "linsup", "alpha": alpha,
            "phi": run.final_phi, "prox": run.final_prox, "time_s": run.wall_time_s,
            "iterations": run.sweeps, "stop_reason": str(run.stop_reason), "budget_s": budget,
            "crossover": not math.isnan(crossover_t), "crossover_t": crossover_t,
        })
        series.extend(
            {**base, "arm": "linsup", "alpha": alpha, "t": s.elapsed_s + s.instrumentation_s,
             "phi": s.phi, "prox": s.prox, "phase": None}
            for s in run.trace
        )
    rows.append({
        **base, "instance_seed": seed, "arm": "simplex", "alpha": math.nan,
        "phi": simplex.objective, "prox": proximity(problem, simplex.x), "time_s": simplex.wall_time_s,
        "iterations": simplex.pivots, "stop_reason": str(simplex.status), "budget_s": budget,
        "crossover": False, "crossover_t": math.nan,
    })
    series.extend(
        {**base, "arm": "simplex", "alpha": math.nan, "t": s.elapsed_s, "phi": s.phi,
         "prox": s.prox, "phase": s.phase}
        for s in simplex.trace
    )
    return rows, series


def run_suboptimal(spec: ExperimentSpec) -> ExperimentReport:
    """LinSup stopped on iterate change vs. a Simplex run stopped on a time budget."""
    _require(spec, ExperimentKind.SUBOPTIMAL)
    logger.info("Suboptimal race: sizes=%s reps=%d alphas=%s", spec.sizes, spec.reps, spec.alphas)
    results = _map_cells(_suboptimal_cell, _cells(spec), workers=1)
    rows = [row for cell_rows, _ in results for row in cell_rows]
    series = [point for _, cell_series in results for point in cell_series]
    return ExperimentReport(
        kind=spec.kind,
        columns=SUBOPTIMAL_COLUMNS,
        rows=rows,
        summary=_summarize(
            rows, SUBOPTIMAL_COLUMNS, ["rows", "cols", "arm", "alpha"],
            ["phi", "prox", "time_s", "iterations", "crossover"],
        ),
        series=series,
        metadata=_metadata(
            spec, SUBOPTIMAL_COLUMNS, series_columns=SERIES_COLUMNS, budget_multiplier=spec.budget_multiplier
        ),
    )


RUNNERS: dict[ExperimentKind, Callable[[ExperimentSpec], ExperimentReport]] = {
    ExperimentKind.NSWEEP: run_nsweep,
    ExperimentKind.TASK1: run_task1,
    ExperimentKind.TASK2: run_task2,
    ExperimentKind.SUBOPTIMAL: run_suboptimal,
}


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Dispatch to the runner for ``spec.kind``."""
    return RUNNERS[spec.kind](spec)
