from enum import StrEnum
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from linsup.core.config import settings
from linsup.core.rng import SEED_BOUND


class InitPolicy(StrEnum):
    """How the initialization point of a run is chosen."""

    ALL_TENS = "tens"
    RANDOM_ESCALATED = "random"
    EXPLICIT = "explicit"


class StopReason(StrEnum):
    PROX_BELOW_EPSILON = "ProxBelowEpsilon"
    ITERATE_CHANGE_BELOW_EPSILON = "IterateChangeBelowEpsilon"
    MAX_SWEEPS = "MaxSweeps"


class SolverConfig(BaseModel):
    """Tunables of the LinSup loop and of the AMS basic algorithm."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(0.99, gt=0, lt=1, description="Step-size kernel, beta = alpha**ell")
    inner_steps: int = Field(30, ge=1, description="Perturbations N per outer sweep")
    inner_steps_increment: int = Field(
        0, ge=0, description="Sweep k performs N + increment * k perturbations"
    )
    relaxation: float = Field(1.0, gt=0, lt=2, description="AMS relaxation parameter lambda")
    prox_epsilon: float | None = Field(
        1e-10,
        ge=0,
        allow_inf_nan=False,
        description="Stop when the proximity drops to this value; None disables the rule",
    )
    iterate_change_epsilon: float | None = Field(
        None,
        ge=0,
        allow_inf_nan=False,
        description="Stop when ||y(k+1) - y(k)|| / ||y(k)|| drops to this value",
    )
    max_sweeps: int = Field(
        default_factory=lambda: settings.MAX_SWEEPS, ge=1, description="Safety cap on outer sweeps"
    )
    seed: int = Field(0, ge=0, lt=SEED_BOUND, description="Seed of the run's Philox generator")
    init: InitPolicy = Field(InitPolicy.ALL_TENS, description="Initialization policy")
    init_point: list[float] | None = Field(None, description="Point used by the explicit policy")
    superiorize: bool = Field(True, description="False runs plain feasibility-seeking")
    record_steps: bool = Field(False, description="Record every emitted step size")

    @model_validator(mode="after")
    def _check_policy(self) -> Self:
        if self.init is InitPolicy.EXPLICIT and self.init_point is None:
            raise ValueError("the explicit init policy requires init_point")
        if self.prox_epsilon is None and self.iterate_change_epsilon is None:
            raise ValueError("at least one stop rule (prox_epsilon or iterate_change_epsilon) is required")
        return self


class RunState(BaseModel):
    """Mutable iterate of one run; never shared between runs."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    y: np.ndarray
    k: int = 0
    ell: int = 0
    ell_prev: int = 0
    rng: np.random.Generator


class TraceSample(BaseModel):
    """One trace row. ``k`` is the iteration counter (outer sweep or pivot count)."""

    k: int
    elapsed_s: float = Field(..., description="Solver time, instrumentation excluded")
    instrumentation_s: float = Field(..., description="Cumulative time spent computing samples")
    prox: float
    phi: float


class StepRecord(BaseModel):
    k: int
    ell: int
    beta: float


class RunReport(BaseModel):
    """Outcome of one feasibility-seeking or LinSup run."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    trace: list[TraceSample]
    final_point: np.ndarray
    stop_reason: StopReason
    beta_sum: float
    sweeps: int
    wall_time_s: float
    ell_history: list[int] = Field(default_factory=list, description="ell_k at the end of each sweep")
    steps: list[StepRecord] = Field(default_factory=list)

    @property
    def final_prox(self) -> float:
        return self.trace[-1].prox

    @property
    def final_phi(self) -> float:
        return self.trace[-1].phi
