"""IhtTrace model for representing the full record of an IHT run."""
import math
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ihtgap.models.support_set import SupportSet


class IhtTrace(BaseModel):
    """
    The iterates of an IHT run and the quantities observed along the way.

    Index 0 of `iterates`, `objectives` and `supports` holds the initialization;
    `margins[t-1]` is the hard-thresholding margin of the pre-threshold vector of step t.

    Attributes:
        iterates: w^(0), w^(1), ..., w^(T)
        objectives: Objective value at each iterate
        supports: Kept coordinates at each iterate
        margins: Pre-threshold margin of each step
        converged: Whether the early-stop rule fired before the budget ran out
        iters_run: Number of steps performed
        step_size: The step size that was used
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    iterates: List[np.ndarray] = Field(default_factory=list)
    objectives: List[float] = Field(default_factory=list)
    supports: List[SupportSet] = Field(default_factory=list)
    margins: List[float] = Field(default_factory=list)
    converged: bool = False
    iters_run: int = 0
    step_size: float = 0.0

    @property
    def min_margin(self) -> float:
        """Smallest recorded margin, +inf when no step was taken."""
        return min(self.margins) if self.margins else math.inf

    def is_monotone(self, rel_slack: float = 1e-10) -> bool:
        """Whether the objective sequence is non-increasing up to a relative slack."""
        objectives = np.asarray(self.objectives)
        if objectives.size < 2:
            return True
        allowance = rel_slack * np.maximum(np.abs(objectives[:-1]), 1.0)
        return bool(np.all(objectives[1:] <= objectives[:-1] + allowance))
