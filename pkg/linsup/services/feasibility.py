"""Half-space projections and the cyclic Agmon-Motzkin-Schoenberg sweep.

One ``ams_sweep`` is the basic algorithm of the LinSup loop: a relaxed
projection onto every row, in index order, followed by a single clamp onto
the nonnegative orthant.
"""

import logging
import time
from collections.abc import Callable

import numpy as np

from linsup.core.rng import make_rng
from linsup.models.problem import HalfspaceView, Problem
from linsup.models.solver import (
    RunReport,
    RunState,
    SolverConfig,
    StepRecord,
    StopReason,
    TraceSample,
)
from linsup.services.metrics import proximity, target_value
from linsup.services.problem_gen import initial_point

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 1000

# Mutates state.y, state.ell and state.ell_prev; returns the beta mass emitted.
PerturbationPhase = Callable[[RunState, list[StepRecord] | None], float]


def project_halfspace(z: np.ndarray, h: HalfspaceView, relaxation: float) -> np.ndarray:
    """Relaxed orthogonal projection of z onto {x : <a, x> <= b_i}.

    Points inside the half-space are returned as is; relaxation 1 is the
    plain projection and 2 the reflection.
    """
    residual = float(np.dot(h.a, z)) - h.b_i
    if residual <= 0.0:
        return z
    return z - (relaxation * residual / h.norm_sq) * h.a


def clamp_nonnegative(x: np.ndarray) -> np.ndarray:
    """Componentwise projection onto the nonnegative orthant."""
    return np.maximum(x, 0.0)


def ams_sweep(y: np.ndarray, problem: Problem, relaxation: float) -> np.ndarray:
    """One cyclic pass of relaxed projections over every row, then the clamp."""
    z = y
    for h in problem.halfspaces:
        z = project_halfspace(z, h, relaxation)
    return clamp_nonnegative(z)


def _iterate_change(previous: np.ndarray, current: np.ndarray) -> float:
    scale = float(np.linalg.norm(previous))
    change = float(np.linalg.norm(current - previous))
    if scale == 0.0:
        return 0.0 if change == 0.0 else float("inf")
    return change / scale


def run_sweeps(
    problem: Problem,
    config: SolverConfig,
    perturbation: PerturbationPhase | None = None,
) -> RunReport:
    """Drive y(k+1) = AMS(y(k)) from the configured initialization until a stop rule fires.

    When ``perturbation`` is given it runs before every sweep; without it the
    loop is plain feasibility-seeking. Stop rules are checked on the initial
    point and then once per sweep, on the post-clamp iterate.
    """
    rng = make_rng(config.seed)
    state = RunState(
        y=initial_point(problem, config.init, rng, config.init_point),
        rng=rng,
    )
    steps: list[StepRecord] | None = [] if config.record_steps else None
    ell_history: list[int] = []
    trace: list[TraceSample] = []
    beta_sum = 0.0
    instrumentation = 0.0
    start = time.perf_counter()

    def sample() -> TraceSample:
        nonlocal instrumentation
        t0 = time.perf_counter()
        prox = proximity(problem, state.y)
        phi = target_value(problem, state.y)
        t1 = time.perf_counter()
        entry = TraceSample(
            k=state.k,
            elapsed_s=t0 - start - instrumentation,
            instrumentation_s=instrumentation + (t1 - t0),
            prox=prox,
            phi=phi,
        )
        instrumentation += t1 - t0
        trace.append(entry)
        return entry

    current = sample()
    previous: np.ndarray | None = None
    while True:
        if config.prox_epsilon is not None and current.prox <= config.prox_epsilon:
            stop_reason = StopReason.PROX_BELOW_EPSILON
            break
        if (
            previous is not None
            and config.iterate_change_epsilon is not None
            and _iterate_change(previous, state.y) <= config.iterate_change_epsilon
        ):
            stop_reason = StopReason.ITERATE_CHANGE_BELOW_EPSILON
            break
        if state.k >= config.max_sweeps:
            stop_reason = StopReason.MAX_SWEEPS
            break

        previous = state.y
        if perturbation is not None:
            beta_sum += perturbation(state, steps)
            ell_history.append(state.ell_prev)
        state.y = ams_sweep(state.y, problem, config.relaxation)
        state.k += 1
        current = sample()
        if state.k % PROGRESS_EVERY == 0:
            logger.debug("sweep %d: prox=%.3e phi=%.6g", state.k, current.prox, current.phi)

    wall_time = time.perf_counter() - start
    if stop_reason is StopReason.MAX_SWEEPS:
        logger.warning("Run hit the %d sweep cap (prox=%.3e)", config.max_sweeps, current.prox)
    logger.info(
        "Run stopped (%s) after %d sweeps: prox=%.3e phi=%.6g in %.3fs",
        stop_reason,
        state.k,
        current.prox,
        current.phi,
        wall_time,
    )
    return RunReport(
        trace=trace,
        final_point=state.y,
        stop_reason=stop_reason,
        beta_sum=beta_sum,
        sweeps=state.k,
        wall_time_s=wall_time,
        ell_history=ell_history,
        steps=steps or [],
    )


def seek_feasible(problem: Problem, config: SolverConfig) -> RunReport:
    """Plain feasibility-seeking: the loop without any perturbation."""
    return run_sweeps(problem, config)
