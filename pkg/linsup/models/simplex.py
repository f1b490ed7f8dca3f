from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from linsup.models.solver import TraceSample


class SimplexStatus(StrEnum):
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"
    BUDGET_EXHAUSTED = "BudgetExhausted"


class SimplexTraceSample(TraceSample):
    """Trace row of a Simplex run; ``k`` counts pivots."""

    phase: int = Field(..., ge=1, le=2)


class SimplexResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    status: SimplexStatus
    x: np.ndarray = Field(..., description="Best basic solution found, length J")
    objective: float
    pivots: int
    phase1_pivots: int = 0
    wall_time_s: float = 0.0
    trace: list[SimplexTraceSample] = Field(default_factory=list)
