"""IhtParams model for representing iterative hard thresholding settings."""
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ihtgap.config import DEFAULT_GRAD_TOL, DEFAULT_MAX_ITERS
from ihtgap.models.array_fields import frozen_array


class IhtParams(BaseModel):
    """
    Settings of one IHT run.

    Attributes:
        k: Sparsity level
        step_size: Positive step size, or "auto" for 2/(3L)
        max_iters: Iteration budget T
        grad_tol: Early-stop threshold on the support-restricted gradient norm
        w0: k-sparse initialization, all-zero when None
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(ge=1, description="Sparsity level k")
    step_size: Union[Literal["auto"], float] = Field(default="auto", description="Step size eta or 'auto'")
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=1, description="Iteration budget T")
    grad_tol: float = Field(default=DEFAULT_GRAD_TOL, ge=0, description="Restricted gradient tolerance")
    w0: Optional[np.ndarray] = Field(default=None, description="Initialization, zero when None")

    @field_validator("step_size")
    @classmethod
    def _check_step(cls, value):
        if value != "auto" and not value > 0:
            raise ValueError(f"step_size must be positive or 'auto', got {value}")
        return value

    @field_validator("w0", mode="before")
    @classmethod
    def _freeze_w0(cls, value):
        return None if value is None else frozen_array(value, 1, "w0")

    @model_validator(mode="after")
    def _check_w0_sparsity(self) -> "IhtParams":
        if self.w0 is not None and np.count_nonzero(self.w0) > self.k:
            raise ValueError(f"w0 has {np.count_nonzero(self.w0)} nonzeros, more than k={self.k}")
        return self

