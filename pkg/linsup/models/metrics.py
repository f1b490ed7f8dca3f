from pydantic import BaseModel, Field


class ComparisonStats(BaseModel):
    """LinSup versus Simplex on one instance."""

    phi_linsup: float = Field(..., description="Target value at the LinSup stopping point")
    phi_simplex: float = Field(..., description="Objective value of the Simplex solution")
    re: float = Field(..., description="Relative error |phi_linsup - phi_simplex| / |phi_simplex|")
    t_linsup: float = Field(..., description="LinSup wall time in seconds")
    t_simplex: float = Field(..., description="Simplex wall time in seconds")
    tr: float = Field(..., description="Time ratio t_linsup / t_simplex")
