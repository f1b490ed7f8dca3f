import numpy as np

from linsup.core.errors import DivisionByZeroObjectiveError, NonPositiveDenominatorError
from linsup.models.metrics import ComparisonStats
from linsup.models.problem import Problem


def proximity(problem: Problem, x: np.ndarray) -> float:
    """Feasibility violation of x with respect to M.

    Mean half squared distance to the violated half-spaces plus the mean half
    squared negative part of x. Zero exactly on M and invariant under positive
    row scaling.
    """
    violation = np.maximum(problem.A @ x - problem.b, 0.0)
    rows_term = np.sum(violation * violation / problem.row_norms_sq) / (2 * problem.row_count)
    negative = np.maximum(-x, 0.0)
    cols_term = np.dot(negative, negative) / (2 * problem.col_count)
    return float(rows_term + cols_term)


def target_value(problem: Problem, x: np.ndarray) -> float:
    """phi(x) = <c, x>."""
    return float(np.dot(problem.c, x))


def relative_error(phi_linsup: float, phi_simplex: float) -> float:
    """|phi_linsup - phi_simplex| / |phi_simplex|."""
    if phi_simplex == 0:
        raise DivisionByZeroObjectiveError("relative error is undefined for a zero Simplex objective")
    return abs(phi_linsup - phi_simplex) / abs(phi_simplex)


def time_ratio(t_linsup: float, t_simplex: float) -> float:
    """LinSup time over Simplex time."""
    if t_simplex <= 0:
        raise NonPositiveDenominatorError(f"Simplex time must be positive, got {t_simplex}")
    return t_linsup / t_simplex


def compare(
    phi_linsup: float, phi_simplex: float, t_linsup: float, t_simplex: float
) -> ComparisonStats:
    """Bundle both objectives and times with their RE and TR."""
    return ComparisonStats(
        phi_linsup=phi_linsup,
        phi_simplex=phi_simplex,
        re=relative_error(phi_linsup, phi_simplex),
        t_linsup=t_linsup,
        t_simplex=t_simplex,
        tr=time_ratio(t_linsup, t_simplex),
    )
