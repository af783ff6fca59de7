"""BoundCurve model for representing theoretical generalization rates as functions of n."""
from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field


class BoundKind(str, Enum):
    WHITE_BOX = "whitebox"
    UNIFORM = "uniform"
    STRONG_SIGNAL = "strongsignal"


class BoundCurve(BaseModel):
    """
    A theoretical bound evaluated on a grid of sample sizes.

    Attributes:
        kind: Which rate the curve follows
        points: (n, value) pairs in increasing n
        label: Legend label used when the curve is drawn as an overlay
    """
    model_config = ConfigDict(frozen=True)

    kind: BoundKind
    points: List[Tuple[int, float]] = Field(default_factory=list)
    label: str = ""

    @property
    def n_values(self) -> List[int]:
        return [n for n, _ in self.points]

    @property
    def values(self) -> List[float]:
        return [value for _, value in self.points]
