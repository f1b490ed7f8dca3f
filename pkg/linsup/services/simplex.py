"""Dense two-phase primal Simplex for min <c, x> s.t. Ax <= b, x >= 0.

The tableau carries one slack per row and one artificial per row with a
negative right-hand side. Pivoting follows Bland's rule (smallest entering
index, ratio-test ties broken by the smallest basic index), so the method
cannot cycle.
"""

import logging
import math
import time

import numpy as np

from linsup.core.errors import NumericalBreakdownError
from linsup.models.problem import Problem
from linsup.models.simplex import SimplexResult, SimplexStatus, SimplexTraceSample
from linsup.services.metrics import proximity, target_value

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-11
REDUCED_COST_TOL = 1e-9
RATIO_TIE_TOL = 1e-12
PHASE1_TOL = 1e-9


class _Tableau:
    """Simplex tableau whose last row holds the reduced costs."""

    def __init__(self, problem: Problem):
        A, b = problem.A, problem.b
        m, n = A.shape
        negative = np.flatnonzero(b < 0)

        self.rows = m
        self.structural = n
        self.first_artificial = n + m
        width = n + m + negative.size
        T = np.zeros((m + 1, width + 1))
        T[:m, :n] = A
        T[:m, n : n + m] = np.eye(m)
        T[:m, -1] = b
        T[negative, :] *= -1.0
        T[negative, n + m + np.arange(negative.size)] = 1.0
        self.T = T

        self.basis = n + np.arange(m)
        self.basis[negative] = n + m + np.arange(negative.size)

    @property
    def width(self) -> int:
        return self.T.shape[1] - 1

    @property
    def has_artificials(self) -> bool:
        return self.width > self.first_artificial

    def set_cost(self, cost: np.ndarray) -> None:
        body = self.T[: self.rows]
        self.T[-1, :-1] = cost - cost[self.basis] @ body[:, :-1]
        self.T[-1, -1] = -cost[self.basis] @ body[:, -1]

    def objective(self) -> float:
        return float(-self.T[-1, -1])

    def point(self) -> np.ndarray:
        values = np.zeros(self.width)
        values[self.basis] = self.T[: self.rows, -1]
        return values[: self.structural]

    def pivot(self, row: int, col: int) -> None:
        element = self.T[row, col]
        if abs(element) < PIVOT_TOL:
            raise NumericalBreakdownError(f"pivot element {element:.3e} at ({row}, {col})")
        pivot_row = self.T[row] / element
        if not np.isfinite(pivot_row).all():
            raise NumericalBreakdownError(f"non-finite tableau row after pivot ({row}, {col})")
        self.T -= np.outer(self.T[:, col], pivot_row)
        self.T[row] = pivot_row
        self.basis[row] = col

    def entering(self) -> int | None:
        candidates = np.flatnonzero(self.T[-1, :-1] < -REDUCED_COST_TOL)
        return int(candidates[0]) if candidates.size else None

    def leaving(self, col: int) -> int | None:
        column = self.T[: self.rows, col]
        eligible = np.flatnonzero(column > PIVOT_TOL)
        if not eligible.size:
            return None
        rhs = np.maximum(self.T[eligible, -1], 0.0)
        ratios = rhs / column[eligible]
        best = ratios.min()
        ties = eligible[ratios <= best + RATIO_TIE_TOL * (1.0 + abs(best))]
        return int(ties[np.argmin(self.basis[ties])])

    def drop_artificials(self) -> None:
        """Pivot zero-level artificials out of the basis, then delete their columns."""
        row = 0
        while row < self.rows:
            if self.basis[row] >= self.first_artificial:
                candidates = np.flatnonzero(
                    np.abs(self.T[row, : self.first_artificial]) > PIVOT_TOL
                )
                if candidates.size:
                    self.pivot(row, int(candidates[0]))
                else:
                    self.T = np.delete(self.T, row, axis=0)
                    self.basis = np.delete(self.basis, row)
                    self.rows -= 1
                    continue
            row += 1
        self.T = np.delete(self.T, np.arange(self.first_artificial, self.width), axis=1)


class _SimplexRun:
    def __init__(
        self,
        problem: Problem,
        budget: float,
        sample_every: int,
        max_pivots: int | None,
    ):
        self.problem = problem
        self.budget = budget
        self.sample_every = sample_every
        rows, cols = problem.A.shape
        self.max_pivots = max_pivots if max_pivots is not None else 50 * (rows + cols) + 1000
        self.tableau = _Tableau(problem)
        self.trace: list[SimplexTraceSample] = []
        self.pivots = 0
        self.phase = 1 if self.tableau.has_artificials else 2
        self.instrumentation = 0.0
        self.start = time.perf_counter()

    def solver_time(self) -> float:
        return time.perf_counter() - self.start - self.instrumentation

    def sample(self) -> None:
        if not self.sample_every:
            return
        t0 = time.perf_counter()
        x = self.tableau.point()
        prox = proximity(self.problem, x)
        phi = target_value(self.problem, x)
        t1 = time.perf_counter()
        self.trace.append(
            SimplexTraceSample(
                k=self.pivots,
                elapsed_s=t0 - self.start - self.instrumentation,
                instrumentation_s=self.instrumentation + (t1 - t0),
                prox=prox,
                phi=phi,
                phase=self.phase,
            )
        )
        self.instrumentation += t1 - t0

    def iterate(self) -> SimplexStatus:
        """Pivot until the current phase is optimal, unbounded or out of budget."""
        tableau = self.tableau
        while True:
            col = tableau.entering()
            if col is None:
                return SimplexStatus.OPTIMAL
            row = tableau.leaving(col)
            if row is None:
                return SimplexStatus.UNBOUNDED
            tableau.pivot(row, col)
            self.pivots += 1
            if self.pivots > self.max_pivots:
                raise NumericalBreakdownError(f"pivot cap of {self.max_pivots} exceeded")
            if self.sample_every and self.pivots % self.sample_every == 0:
                self.sample()
            if self.solver_time() >= self.budget:
                return SimplexStatus.BUDGET_EXHAUSTED

    def run(self) -> SimplexResult:
        tableau = self.tableau
        self.sample()
        phase1_pivots = 0
        status = SimplexStatus.OPTIMAL

        if tableau.has_artificials:
            cost = np.zeros(tableau.width)
            cost[tableau.first_artificial :] = 1.0
            tableau.set_cost(cost)
            status = self.iterate()
            phase1_pivots = self.pivots
            if status is SimplexStatus.OPTIMAL:
                scale = 1.0 + float(np.max(np.abs(self.problem.b)))
                if tableau.objective() > PHASE1_TOL * scale:
                    status = SimplexStatus.INFEASIBLE
                else:
                    tableau.drop_artificials()

        if status is SimplexStatus.OPTIMAL:
            self.phase = 2
            cost = np.zeros(tableau.width)
            cost[: tableau.structural] = self.problem.c
            tableau.set_cost(cost)
            status = self.iterate()

        if self.sample_every and (not self.trace or self.trace[-1].k != self.pivots):
            self.sample()

        x = tableau.point()
        objective = target_value(self.problem, x)
        if status is SimplexStatus.UNBOUNDED:
            objective = -math.inf
        wall_time = time.perf_counter() - self.start
        logger.info(
            "Simplex %s after %d pivots (%d in phase 1), objective=%.10g in %.3fs",
            status,
            self.pivots,
            phase1_pivots,
            objective,
            wall_time,
        )
        return SimplexResult(
            status=status,
            x=x,
            objective=objective,
            pivots=self.pivots,
            phase1_pivots=phase1_pivots,
            wall_time_s=wall_time,
            trace=self.trace,
        )


def solve(problem: Problem, max_pivots: int | None = None) -> SimplexResult:
    """Solve the LP to optimality (or prove it infeasible or unbounded)."""
    return _SimplexRun(problem, math.inf, 0, max_pivots).run()


def solve_budgeted(
    problem: Problem,
    budget: float,
    sample_every: int,
    max_pivots: int | None = None,
) -> SimplexResult:
    """Pivot exactly as ``solve`` but stop once ``budget`` seconds of solver time elapse.

    A trace sample (objective and proximity of the current basic solution) is
    taken every ``sample_every`` pivots; the time spent computing samples is
    excluded from both the budget and the trace timestamps.
    """
    if not budget > 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if sample_every < 1:
        raise ValueError(f"sample_every must be at least 1, got {sample_every}")
    return _SimplexRun(problem, budget, sample_every, max_pivots).run()
