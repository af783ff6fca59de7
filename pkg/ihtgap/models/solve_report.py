"""SolveReport model for representing the outcome of a sparse solver run."""
import json
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ihtgap.models.iht_trace import IhtTrace
from ihtgap.models.support_set import SupportSet


def _finite_or_none(value: float) -> Optional[float]:
    return value if math.isfinite(value) else None


class SolveReport(BaseModel):
    """
    Result of IHT (or of the exhaustive oracle) on one problem.

    Attributes:
        solution: The final iterate
        debiased: Minimizer of F_S restricted to `support`
        objective: F_S(solution)
        debiased_objective: F_S(debiased)
        support: Coordinates kept by the last thresholding step (at most k)
        iters_run: IHT steps performed, 0 for the exhaustive oracle
        converged: Whether the early-stop rule fired
        step_size: Step size used, 0 for the exhaustive oracle
        min_margin: Smallest pre-threshold margin seen along the run
        trace: Full run record when requested
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    solution: np.ndarray
    debiased: np.ndarray
    objective: float
    debiased_objective: float
    support: SupportSet
    iters_run: int = Field(default=0, ge=0)
    converged: bool = False
    step_size: float = 0.0
    min_margin: float = math.inf
    trace: Optional[IhtTrace] = None

    def to_dict(self, include_trace: bool = False) -> dict:
        """
        JSON-ready fields of the report. Infinite margins (k >= p) become None.

        With include_trace, the per-step objectives and margins of a recorded
        trace are added.
        """
        document = {
            "objective": self.objective,
            "debiased_objective": self.debiased_objective,
            "support": list(self.support.indices),
            "solution": self.solution.tolist(),
            "debiased": self.debiased.tolist(),
            "iters_run": self.iters_run,
            "converged": self.converged,
            "step_size": self.step_size,
            "min_margin": _finite_or_none(self.min_margin),
        }
        if include_trace and self.trace is not None:
            document["objectives"] = list(self.trace.objectives)
            document["margins"] = [_finite_or_none(margin) for margin in self.trace.margins]
        return document

    def to_json(self, indent: int = 2) -> str:
        """Serialize the report (without the trace) as a JSON document."""
        return json.dumps(self.to_dict(), indent=indent)
