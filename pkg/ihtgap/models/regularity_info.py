"""RegularityInfo model for representing smoothness and boundedness constants of a loss."""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class RegularityInfo(BaseModel):
    """
    Regularity constants of the empirical risk over a ball of radius R.

    Attributes:
        smoothness_L: Strong-smoothness constant of F_S
        lipschitz_G: Bound on the per-sample gradient norm over the ball
        value_bound_M: Bound on the per-sample loss over the ball, None when unbounded
        domain_radius: The radius R the bounds refer to
    """
    model_config = ConfigDict(frozen=True)

    smoothness_L: float = Field(gt=0, description="Strong-smoothness constant L")
    lipschitz_G: float = Field(ge=0, description="Lipschitz constant G")
    value_bound_M: Optional[float] = Field(default=None, ge=0, description="Loss bound M, None if unbounded")
    domain_radius: float = Field(gt=0, description="Domain radius R")
