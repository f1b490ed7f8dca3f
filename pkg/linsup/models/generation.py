from typing import Self

from pydantic import BaseModel, ConfigDict, Field, model_validator

from linsup.core.rng import SEED_BOUND


class GenSpec(BaseModel):
    """Parameters of one randomly generated test instance."""

    model_config = ConfigDict(frozen=True)

    rows: int = Field(..., ge=1, description="Number of constraints I")
    cols: int = Field(..., ge=1, description="Number of variables J")
    a_range: tuple[float, float] = Field((-1.0, 2.0), description="Interval of the entries of A")
    c_range: tuple[float, float] = Field((-2.0, 3.0), description="Interval of the entries of c")
    slack: float = Field(10.0, gt=0, allow_inf_nan=False, description="Margin in b = A1 + slack*1")
    seed: int = Field(0, ge=0, lt=SEED_BOUND)

    @model_validator(mode="after")
    def _check_ranges(self) -> Self:
        for name, (lo, hi) in (("a_range", self.a_range), ("c_range", self.c_range)):
            if not lo < hi:
                raise ValueError(f"{name} must be a nonempty interval, got [{lo}, {hi})")
        return self
