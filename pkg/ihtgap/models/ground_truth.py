"""GroundTruth model for representing the generative model behind synthetic data."""
from enum import Enum
from typing import Optional

import numpy as np
from scipy import linalg
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from ihtgap.config import DEFAULT_MARGIN_SCALE
from ihtgap.exceptions import CovarianceError
from ihtgap.models.array_fields import frozen_array


class CovarianceKind(str, Enum):
    IDENTITY = "identity"
    DIAGONAL = "diagonal"
    DENSE = "dense"


class ModelKind(str, Enum):
    LINEAR = "linear"
    LOGISTIC = "logistic"


class CovarianceSpec(BaseModel):
    """
    Covariance of the feature distribution.

    Attributes:
        kind: Identity, diagonal or dense
        values: Diagonal entries (length p) or the dense p-by-p matrix; unused for identity
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: CovarianceKind = CovarianceKind.IDENTITY
    values: Optional[np.ndarray] = None

    @field_validator("values", mode="before")
    @classmethod
    def _freeze_values(cls, value, info: ValidationInfo):
        kind = info.data.get("kind", CovarianceKind.IDENTITY)
        if kind == CovarianceKind.IDENTITY:
            return None
        if value is None:
            raise ValueError(f"{kind.value} covariance needs values")
        values = frozen_array(value, 1 if kind == CovarianceKind.DIAGONAL else 2, "covariance values")
        if kind == CovarianceKind.DIAGONAL and np.any(values < 0):
            raise ValueError("diagonal covariance entries must be nonnegative")
        if kind == CovarianceKind.DENSE:
            if values.shape[0] != values.shape[1]:
                raise ValueError(f"dense covariance must be square, got {values.shape}")
            if not np.allclose(values, values.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(values).max())):
                raise ValueError("dense covariance must be symmetric")
        return values

    @model_validator(mode="after")
    def _check_values(self) -> "CovarianceSpec":
        if self.kind != CovarianceKind.IDENTITY and self.values is None:
            raise ValueError(f"{self.kind.value} covariance needs values")
        return self

    @classmethod
    def identity(cls) -> "CovarianceSpec":
        return cls(kind=CovarianceKind.IDENTITY)

    @classmethod
    def diagonal(cls, values) -> "CovarianceSpec":
        return cls(kind=CovarianceKind.DIAGONAL, values=values)

    @classmethod
    def dense(cls, matrix) -> "CovarianceSpec":
        return cls(kind=CovarianceKind.DENSE, values=matrix)

    def dimension(self) -> Optional[int]:
        """Dimension fixed by the stored values, or None for the identity."""
        return None if self.values is None else self.values.shape[0]

    def matrix(self, p: int) -> np.ndarray:
        if self.kind == CovarianceKind.IDENTITY:
            return np.eye(p)
        if self.kind == CovarianceKind.DIAGONAL:
            return np.diag(self.values)
        return np.array(self.values)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return Sigma @ v."""
        if self.kind == CovarianceKind.IDENTITY:
            return np.array(v, dtype=np.float64)
        if self.kind == CovarianceKind.DIAGONAL:
            return self.values * v
        return self.values @ v

    def quad_form(self, v: np.ndarray) -> float:
        """Return v' Sigma v."""
        return float(np.dot(v, self.apply(v)))

    def largest_eigenvalue(self, p: int) -> float:
        if self.kind == CovarianceKind.IDENTITY:
            return 1.0
        if self.kind == CovarianceKind.DIAGONAL:
            return float(np.max(self.values))
        return float(linalg.eigvalsh(self.values)[-1])

    def factor(self, p: int) -> np.ndarray:
        """
        A matrix A with A @ A.T == Sigma, used to color standard normal draws.

        Dense matrices are factored through a symmetric eigendecomposition so
        singular positive-semidefinite covariances are accepted.

        Raises:
            CovarianceError: If the dense matrix has a materially negative eigenvalue
        """
        if self.kind == CovarianceKind.IDENTITY:
            return np.eye(p)
        if self.kind == CovarianceKind.DIAGONAL:
            return np.diag(np.sqrt(self.values))
        eigenvalues, eigenvectors = linalg.eigh(self.values)
        tolerance = 1e-10 * max(1.0, float(np.abs(eigenvalues).max()))
        if eigenvalues[0] < -tolerance:
            raise CovarianceError(
                f"dense covariance is not positive semidefinite (min eigenvalue {eigenvalues[0]:.3e})"
            )
        return eigenvectors * np.sqrt(np.clip(eigenvalues, 0.0, None))


class GroundTruth(BaseModel):
    """
    The generative model used to draw synthetic datasets and evaluate population risk.

    Attributes:
        w_bar: Nominal model
        noise_sigma: Standard deviation of the additive Gaussian noise (linear model)
        covariance: Covariance of the Gaussian features
        model_kind: Linear regression or logistic classification
        margin_scale: Factor c in P(y=+1|x) = sigmoid(c w_bar'x) for the logistic model
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    w_bar: np.ndarray = Field(description="Nominal model w_bar")
    noise_sigma: float = Field(default=0.0, ge=0, description="Noise level sigma")
    covariance: CovarianceSpec = Field(default_factory=CovarianceSpec.identity)
    model_kind: ModelKind = ModelKind.LINEAR
    margin_scale: float = Field(default=DEFAULT_MARGIN_SCALE, gt=0)

    @field_validator("w_bar", mode="before")
    @classmethod
    def _freeze_w_bar(cls, value):
        return frozen_array(value, 1, "w_bar")

    @model_validator(mode="after")
    def _check_covariance(self) -> "GroundTruth":
        dimension = self.covariance.dimension()
        if dimension is not None and dimension != self.p:
            raise ValueError(f"covariance dimension {dimension} does not match p={self.p}")
        if self.covariance.kind == CovarianceKind.DENSE:
            self.covariance.factor(self.p)
        return self

    @property
    def p(self) -> int:
        return self.w_bar.shape[0]

    def to_config_dict(self) -> dict:
        """Flat mapping in the harness config format."""
        config = {
            "model_kind": self.model_kind.value,
            "noise_sigma": self.noise_sigma,
            "margin_scale": self.margin_scale,
            "covariance": self.covariance.kind.value,
            "w_bar": self.w_bar.tolist(),
        }
        if self.covariance.values is not None:
            config["covariance_values"] = self.covariance.values.tolist()
        return config

    @classmethod
    def from_config_dict(cls, config: dict) -> "GroundTruth":
        kind = CovarianceKind(config.get("covariance", CovarianceKind.IDENTITY.value))
        covariance = CovarianceSpec(kind=kind, values=config.get("covariance_values"))
        return cls(
            w_bar=config["w_bar"],
            noise_sigma=config.get("noise_sigma", 0.0),
            covariance=covariance,
            model_kind=ModelKind(config.get("model_kind", ModelKind.LINEAR.value)),
            margin_scale=config.get("margin_scale", DEFAULT_MARGIN_SCALE),
        )
