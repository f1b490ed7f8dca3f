"""Brute-force LP oracle used to cross-check the Simplex baseline on tiny instances."""

from itertools import combinations
from typing import NamedTuple

import numpy as np

from linsup.core.errors import OracleTooLargeError
from linsup.models.problem import Problem
from linsup.models.simplex import SimplexStatus

MAX_COLS = 8
MAX_ROWS = 12
FEASIBILITY_TOL = 1e-9
RANK_TOL = 1e-10


class OracleResult(NamedTuple):
    status: SimplexStatus
    objective: float
    x: np.ndarray | None


def _constraints(problem: Problem) -> tuple[np.ndarray, np.ndarray]:
    """Stack Ax <= b and -x <= 0 into one system Gx <= h."""
    cols = problem.col_count
    G = np.vstack([problem.A, -np.eye(cols)])
    h = np.concatenate([problem.b, np.zeros(cols)])
    return G, h


def _extreme_directions(G: np.ndarray, cols: int) -> list[np.ndarray]:
    """Candidate extreme rays of {d : Gd <= 0}: null directions of cols-1 active rows."""
    if cols == 1:
        return [np.ones(1), -np.ones(1)]
    directions = []
    for subset in combinations(range(G.shape[0]), cols - 1):
        _, singular, vt = np.linalg.svd(G[list(subset)])
        if singular[-1] <= RANK_TOL * singular[0]:
            continue
        directions.extend((vt[-1], -vt[-1]))
    return directions


def vertex_enumeration_oracle(problem: Problem) -> OracleResult:
    """Minimize <c, x> over M by enumerating every vertex.

    A vertex is a feasible point where J linearly independent constraints of
    Gx <= h are active. M is pointed (x >= 0), so a nonempty M has a vertex and
    an unbounded LP has an extreme ray d with <c, d> < 0.
    """
    rows, cols = problem.row_count, problem.col_count
    if cols > MAX_COLS or rows > MAX_ROWS:
        raise OracleTooLargeError(
            f"oracle supports at most {MAX_ROWS} x {MAX_COLS}, got {rows} x {cols}"
        )
    G, h = _constraints(problem)
    slack = FEASIBILITY_TOL * (1.0 + np.abs(h))

    best_x: np.ndarray | None = None
    best_objective = np.inf
    for subset in combinations(range(G.shape[0]), cols):
        active = list(subset)
        try:
            x = np.linalg.solve(G[active], h[active])
        except np.linalg.LinAlgError:
            continue
        if np.linalg.cond(G[active]) > 1.0 / RANK_TOL:
            continue
        if np.all(G @ x <= h + slack):
            objective = float(problem.c @ x)
            if objective < best_objective:
                best_objective, best_x = objective, x

    if best_x is None:
        return OracleResult(SimplexStatus.INFEASIBLE, np.nan, None)

    for d in _extreme_directions(G, cols):
        if np.all(G @ d <= FEASIBILITY_TOL) and problem.c @ d < -FEASIBILITY_TOL:
            return OracleResult(SimplexStatus.UNBOUNDED, -np.inf, None)
    return OracleResult(SimplexStatus.OPTIMAL, best_objective, best_x)
