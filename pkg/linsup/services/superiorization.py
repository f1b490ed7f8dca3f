"""The LinSup loop: N target-reduction steps before every AMS sweep.

Step sizes come from the geometric sequence alpha**ell. At the start of
every sweep ell is redrawn uniformly between the sweep index k and the
value it had at the end of the previous sweep (the ATL2 reset), which slows
the decay of the steps. There is no target-value comparison test: every
perturbation is taken.
"""

from typing import NamedTuple

import numpy as np

from linsup.models.problem import Problem
from linsup.models.solver import RunReport, RunState, SolverConfig, StepRecord
from linsup.services.feasibility import PerturbationPhase, run_sweeps
from linsup.services.metrics import proximity


class StepSchedule(NamedTuple):
    alpha: float
    ell: int


def atl2_reset(k: int, ell_prev: int, rng: np.random.Generator) -> int:
    """Integer drawn uniformly from the inclusive range between k and ell_prev."""
    low, high = min(k, ell_prev), max(k, ell_prev)
    if low == high:
        return low
    return int(rng.integers(low, high, endpoint=True))


def next_beta(schedule: StepSchedule) -> tuple[float, StepSchedule]:
    """Return alpha**ell and the schedule advanced by one."""
    beta = schedule.alpha**schedule.ell
    return beta, schedule._replace(ell=schedule.ell + 1)


def perturb(y: np.ndarray, c: np.ndarray, beta: float) -> np.ndarray:
    """Step of length beta along -c/||c||; lowers <c, y> by beta*||c||."""
    return y - beta * (c / np.linalg.norm(c))


def proximity_stop_check(y: np.ndarray, problem: Problem, epsilon: float) -> bool:
    """True once the proximity of y has dropped to epsilon."""
    return proximity(problem, y) <= epsilon


def _perturbation_phase(problem: Problem, config: SolverConfig) -> PerturbationPhase:
    def phase(state: RunState, steps: list[StepRecord] | None) -> float:
        inner_steps = config.inner_steps + config.inner_steps_increment * state.k
        schedule = StepSchedule(config.alpha, atl2_reset(state.k, state.ell_prev, state.rng))
        y = state.y
        emitted = 0.0
        for _ in range(inner_steps):
            beta, schedule = next_beta(schedule)
            y = perturb(y, problem.c, beta)
            emitted += beta
            if steps is not None:
                steps.append(StepRecord(k=state.k, ell=schedule.ell - 1, beta=beta))
        state.y = y
        state.ell = schedule.ell
        state.ell_prev = schedule.ell
        return emitted

    return phase


def linsup_run(problem: Problem, config: SolverConfig) -> RunReport:
    """Run the superiorized loop, or the bare feasibility-seeking loop when
    ``config.superiorize`` is false."""
    if not config.superiorize:
        return run_sweeps(problem, config)
    return run_sweeps(problem, config, _perturbation_phase(problem, config))
