"""ThresholdOutcome model for representing the result of hard thresholding."""
import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ihtgap.models.support_set import SupportSet


class ThresholdOutcome(BaseModel):
    """
    Output of the hard-thresholding operator H_k.

    Attributes:
        vector: The k-sparse result, zero outside `kept`
        kept: The min(k, p) retained coordinates
        margin: |k-th largest magnitude| - |(k+1)-th largest magnitude|, 0 when k >= p
        tie_broken: Whether the magnitudes at the k/k+1 boundary were equal
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vector: np.ndarray
    kept: SupportSet
    margin: float = Field(ge=0)
    tie_broken: bool = False
