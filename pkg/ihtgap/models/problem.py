"""Problem model for representing an l0-constrained empirical risk minimization instance."""
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ihtgap.config import DEFAULT_MARGIN_SCALE
from ihtgap.models.dataset import Dataset


class LossKind(str, Enum):
    SQUARED = "squared"
    LOGISTIC = "logistic"


class Problem(BaseModel):
    """
    The empirical risk F_S(w) = (1/n) sum_i loss(w; x_i, y_i) over a dataset.

    Attributes:
        loss_kind: Squared or logistic loss
        data: Training samples
        margin_scale: Factor c in the logistic loss log(1 + exp(-c y w'x))
    """
    model_config = ConfigDict(frozen=True)

    loss_kind: LossKind
    data: Dataset
    margin_scale: float = Field(default=DEFAULT_MARGIN_SCALE, gt=0,
                                description="Logistic margin factor c")

    @model_validator(mode="after")
    def _check_labels(self) -> "Problem":
        if self.loss_kind == LossKind.LOGISTIC and not self.data.is_binary():
            bad = np.unique(self.data.responses[np.abs(self.data.responses) != 1.0])
            raise ValueError(f"logistic loss requires responses in {{-1, +1}}, found {bad[:5]}")
        return self

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def p(self) -> int:
        return self.data.p
