"""SupportSet model for representing sorted index sets of sparse vectors."""
from typing import Iterable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class SupportSet(BaseModel):
    """
    A sorted set of coordinates of a vector in R^p.

    Equality is sequence equality on the sorted indices, which keeps support
    comparisons deterministic in stability experiments.

    Attributes:
        indices: Strictly increasing 0-based indices, all below p
        p: Ambient dimension
    """
    model_config = ConfigDict(frozen=True)

    indices: Tuple[int, ...] = Field(default=(), description="Strictly increasing 0-based indices")
    p: int = Field(ge=0, description="Ambient dimension")

    @model_validator(mode="after")
    def _check_indices(self) -> "SupportSet":
        previous = -1
        for index in self.indices:
            if index <= previous:
                raise ValueError(f"support indices must be strictly increasing, got {self.indices}")
            previous = index
        if self.indices and (self.indices[0] < 0 or self.indices[-1] >= self.p):
            raise ValueError(f"support indices {self.indices} out of range for p={self.p}")
        return self

    @classmethod
    def from_indices(cls, indices: Iterable[int], p: int) -> "SupportSet":
        """Build a support from any iterable of indices, sorting and de-duplicating."""
        return cls(indices=tuple(sorted({int(i) for i in indices})), p=p)

    @classmethod
    def full(cls, p: int) -> "SupportSet":
        return cls(indices=tuple(range(p)), p=p)

    @classmethod
    def empty(cls, p: int) -> "SupportSet":
        return cls(indices=(), p=p)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, index: object) -> bool:
        return index in self.indices

    def issubset(self, other: "SupportSet") -> bool:
        return set(self.indices).issubset(other.indices)

    def to_array(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.intp)

    def mask(self) -> np.ndarray:
        """Boolean mask of length p that is True on the support."""
        mask = np.zeros(self.p, dtype=bool)
        mask[self.to_array()] = True
        return mask

    def __str__(self):
        return "{" + ", ".join(str(i) for i in self.indices) + "}"
