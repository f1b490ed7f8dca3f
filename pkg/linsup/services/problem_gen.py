import logging

import numpy as np

from linsup.core.errors import EscalationFailedError
from linsup.core.rng import make_rng
from linsup.models.generation import GenSpec
from linsup.models.problem import Problem, validate
from linsup.models.solver import InitPolicy
from linsup.services.metrics import proximity

logger = logging.getLogger(__name__)

ESCALATION_LIMIT = 64
ESCALATION_FACTOR = 10.0


def generate(spec: GenSpec) -> Problem:
    """Draw a dense instance whose target set contains the all-ones vector.

    Entries of A and c are i.i.d. uniform on the half-open ranges of ``spec``;
    b = A1 + slack*1 puts 1 strictly inside every half-space.
    """
    rng = make_rng(spec.seed)
    A = rng.uniform(*spec.a_range, size=(spec.rows, spec.cols))
    c = rng.uniform(*spec.c_range, size=spec.cols)
    while not np.linalg.norm(c) > 0.0:
        c = rng.uniform(*spec.c_range, size=spec.cols)
    b = A @ np.ones(spec.cols) + spec.slack

    problem = Problem(A=A, b=b, c=c)
    validate(problem)
    logger.debug("Generated %d x %d instance (seed=%d)", spec.rows, spec.cols, spec.seed)
    return problem


def initial_point(
    problem: Problem,
    policy: InitPolicy,
    rng: np.random.Generator,
    point: list[float] | np.ndarray | None = None,
) -> np.ndarray:
    """Pick the initialization point of a run.

    The random policy draws from [0, 1)^J and multiplies by 10 until the point
    leaves M, giving up after ESCALATION_LIMIT escalations.
    """
    match policy:
        case InitPolicy.ALL_TENS:
            return np.full(problem.col_count, 10.0)
        case InitPolicy.EXPLICIT:
            if point is None:
                raise ValueError("explicit initialization requires a point")
            y = np.array(point, dtype=np.float64)
            if y.shape != (problem.col_count,):
                raise ValueError(f"initial point has shape {y.shape}, expected ({problem.col_count},)")
            return y
        case InitPolicy.RANDOM_ESCALATED:
            y = rng.uniform(0.0, 1.0, size=problem.col_count)
            for _ in range(ESCALATION_LIMIT + 1):
                if proximity(problem, y) > 0:
                    return y
                y = ESCALATION_FACTOR * y
            raise EscalationFailedError(
                f"no point with positive proximity after {ESCALATION_LIMIT} escalations"
            )
    raise ValueError(f"unknown initialization policy {policy!r}")
