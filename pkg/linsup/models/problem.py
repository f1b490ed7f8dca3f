from functools import cached_property
from typing import Any, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from linsup.core.errors import (
    DimensionMismatchError,
    NonFiniteEntryError,
    ZeroCostError,
    ZeroRowError,
)


class HalfspaceView(NamedTuple):
    """One constraint row ``<a, x> <= b_i`` with its squared norm cached."""

    a: np.ndarray
    b_i: float
    norm_sq: float


def _frozen_array(value: Any) -> np.ndarray:
    array = np.array(value, dtype=np.float64)
    array.setflags(write=False)
    return array


class Problem(BaseModel):
    """Dense LP instance: target set M = {x : Ax <= b, x >= 0} and cost c."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: np.ndarray = Field(..., description="Constraint matrix, I rows x J columns")
    b: np.ndarray = Field(..., description="Right-hand side, length I")
    c: np.ndarray = Field(..., description="Cost vector of the target function, length J")

    @field_validator("A", "b", "c", mode="before")
    @classmethod
    def _as_float_array(cls, value: Any) -> np.ndarray:
        return _frozen_array(value)

    @property
    def row_count(self) -> int:
        return int(self.A.shape[0])

    @property
    def col_count(self) -> int:
        return int(self.A.shape[1]) if self.A.ndim == 2 else 0

    @cached_property
    def row_norms_sq(self) -> np.ndarray:
        """Sum of squares of each row of A."""
        return np.einsum("ij,ij->i", self.A, self.A)

    @cached_property
    def halfspaces(self) -> list[HalfspaceView]:
        norms = self.row_norms_sq
        return [
            HalfspaceView(a=self.A[i], b_i=float(self.b[i]), norm_sq=float(norms[i]))
            for i in range(self.row_count)
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Problem):
            return NotImplemented
        return all(
            mine.shape == theirs.shape and np.array_equal(mine, theirs)
            for mine, theirs in ((self.A, other.A), (self.b, other.b), (self.c, other.c))
        )

    __hash__ = None  # type: ignore[assignment]


def validate(problem: Problem) -> None:
    """Check every Problem invariant, raising the matching ProblemError."""
    A, b, c = problem.A, problem.b, problem.c
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionMismatchError(f"A must be a non-empty matrix, got shape {A.shape}")
    rows, cols = A.shape
    if b.shape != (rows,):
        raise DimensionMismatchError(f"b has shape {b.shape}, expected ({rows},)")
    if c.shape != (cols,):
        raise DimensionMismatchError(f"c has shape {c.shape}, expected ({cols},)")
    for name, array in (("A", A), ("b", b), ("c", c)):
        if not np.isfinite(array).all():
            raise NonFiniteEntryError(f"{name} contains a non-finite entry")

    zero_rows = np.flatnonzero(problem.row_norms_sq == 0.0)
    if zero_rows.size:
        raise ZeroRowError(int(zero_rows[0]))
    if not np.linalg.norm(c) > 0.0:
        raise ZeroCostError()
