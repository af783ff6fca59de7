"""Dataset model for representing training and evaluation samples."""
import os

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ihtgap.models.array_fields import frozen_array


class Dataset(BaseModel):
    """
    n samples, each a feature vector in R^p and a response.

    Attributes:
        features: n-by-p row-major float64 matrix
        responses: length-n responses (real for regression, +-1 for classification)
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    features: np.ndarray = Field(description="n-by-p feature matrix")
    responses: np.ndarray = Field(description="Length-n response vector")

    @field_validator("features", mode="before")
    @classmethod
    def _freeze_features(cls, value):
        return frozen_array(value, 2, "features")

    @field_validator("responses", mode="before")
    @classmethod
    def _freeze_responses(cls, value):
        return frozen_array(value, 1, "responses")

    @model_validator(mode="after")
    def _check_shapes(self) -> "Dataset":
        n, p = self.features.shape
        if n < 1 or p < 1:
            raise ValueError(f"dataset must have n >= 1 and p >= 1, got shape {self.features.shape}")
        if self.responses.shape[0] != n:
            raise ValueError(f"{n} feature rows but {self.responses.shape[0]} responses")
        return self

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]

    def is_binary(self) -> bool:
        """Whether every response is exactly -1 or +1."""
        return bool(np.all(np.abs(self.responses) == 1.0))

    def replace_sample(self, index: int, x: np.ndarray, y: float) -> "Dataset":
        """Return a copy of the dataset with sample `index` swapped for (x, y)."""
        features = np.array(self.features)
        responses = np.array(self.responses)
        features[index] = x
        responses[index] = y
        return Dataset(features=features, responses=responses)

    def to_csv(self, path: str) -> str:
        """
        Write the dataset as CSV with header `y,x0,...,x{p-1}`.

        Floats are written with 17 significant digits so the file round-trips exactly.

        Args:
            path: Destination file path

        Returns:
            The path written
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        header = ",".join(["y"] + [f"x{j}" for j in range(self.p)])
        table = np.column_stack([self.responses, self.features])
        np.savetxt(path, table, fmt="%.17g", delimiter=",", header=header, comments="")
        return path

    @classmethod
    def from_csv(cls, path: str) -> "Dataset":
        """Read a dataset written by `to_csv`."""
        with open(path, "r", encoding="utf-8") as f:
            header = f.readline().strip().split(",")
        if not header or header[0] != "y" or header[1:] != [f"x{j}" for j in range(len(header) - 1)]:
            raise ValueError(f"{path}: expected header 'y,x0,x1,...', got {','.join(header)}")
        table = np.loadtxt(path, delimiter=",", skiprows=1, dtype=np.float64, ndmin=2)
        return cls(features=table[:, 1:], responses=table[:, 0])
