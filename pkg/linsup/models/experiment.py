from enum import StrEnum
from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from linsup.core.config import settings
from linsup.core.rng import SEED_BOUND
from linsup.models.solver import SolverConfig

Cell = dict[str, Any]


class ExperimentKind(StrEnum):
    NSWEEP = "nsweep"
    TASK1 = "task1"
    TASK2 = "task2"
    SUBOPTIMAL = "suboptimal"


class ExperimentSpec(BaseModel):
    """Replication counts, size schedule and solver settings of one experiment."""

    model_config = ConfigDict(frozen=True)

    kind: ExperimentKind
    sizes: list[tuple[int, int]] = Field(..., min_length=1, description="(I, J) pairs")
    reps: int = Field(10, ge=1, description="Instances per size")
    alphas: list[float] = Field(default_factory=lambda: [0.99], description="Kernel values")
    n_values: list[int] = Field(default_factory=lambda: [30], description="N values (nsweep only)")
    base_config: SolverConfig = Field(default_factory=SolverConfig)
    seed: int = Field(0, ge=0, lt=SEED_BOUND, description="Master seed")
    iterate_change_epsilon: float = Field(1e-16, ge=0, description="LinSup stop rule of the race")
    budget_multiplier: float = Field(
        default_factory=lambda: settings.BUDGET_MULTIPLIER,
        gt=1,
        description="Simplex budget as a multiple of the slower LinSup run",
    )
    sample_every: int = Field(default_factory=lambda: settings.SIMPLEX_SAMPLE_EVERY, ge=1)
    workers: int = Field(default_factory=lambda: settings.WORKERS, ge=1)

    @model_validator(mode="after")
    def _check_lists(self) -> Self:
        if any(rows < 1 or cols < 1 for rows, cols in self.sizes):
            raise ValueError("sizes must be positive (I, J) pairs")
        if self.kind in (ExperimentKind.TASK2, ExperimentKind.SUBOPTIMAL) and not self.alphas:
            raise ValueError(f"{self.kind} requires at least one alpha")
        if any(not 0 < alpha < 1 for alpha in self.alphas):
            raise ValueError("every alpha must lie in (0, 1)")
        if self.kind is ExperimentKind.NSWEEP and not self.n_values:
            raise ValueError("nsweep requires at least one N value")
        if any(n < 1 for n in self.n_values):
            raise ValueError("every N must be at least 1")
        return self


class ExperimentReport(BaseModel):
    """Raw per-instance rows, their per-size averages and run metadata."""

    kind: ExperimentKind
    columns: list[str] = Field(..., description="Column order of the raw rows")
    rows: list[Cell] = Field(default_factory=list, description="One row per (instance, alpha, arm)")
    summary: list[Cell] = Field(default_factory=list, description="Averages of the raw rows")
    series: list[Cell] = Field(default_factory=list, description="Aligned time series (suboptimal)")
    metadata: dict[str, Any] = Field(default_factory=dict)
