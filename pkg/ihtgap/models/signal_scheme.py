"""SignalScheme model for representing how the nominal model w_bar is constructed."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ihtgap.config import DEFAULT_NONZERO_STD, DEFAULT_PERTURB_SIGMA


class SchemeKind(str, Enum):
    GAUSSIAN_SPARSE = "gaussian_sparse"
    SCALED_FIXED = "scaled_fixed"
    NEARLY_SPARSE = "nearly_sparse"


class SignalScheme(BaseModel):
    """
    Recipe for the nominal model.

    Attributes:
        kind: GaussianSparse, ScaledFixed or NearlySparse
        k_bar: Number of planted nonzeros
        r: Signal strength multiplier (ScaledFixed)
        perturb_sigma: Standard deviation of the dense perturbation (NearlySparse)
        nonzero_std: Standard deviation of the planted nonzeros
    """
    model_config = ConfigDict(frozen=True)

    kind: SchemeKind = SchemeKind.GAUSSIAN_SPARSE
    k_bar: int = Field(ge=0, description="Planted sparsity")
    r: float = Field(default=1.0, gt=0, description="Signal strength")
    perturb_sigma: float = Field(default=DEFAULT_PERTURB_SIGMA, ge=0)
    nonzero_std: float = Field(default=DEFAULT_NONZERO_STD, gt=0)

    @classmethod
    def gaussian_sparse(cls, k_bar: int, nonzero_std: float = DEFAULT_NONZERO_STD) -> "SignalScheme":
        return cls(kind=SchemeKind.GAUSSIAN_SPARSE, k_bar=k_bar, nonzero_std=nonzero_std)

    @classmethod
    def scaled_fixed(cls, k_bar: int, r: float) -> "SignalScheme":
        return cls(kind=SchemeKind.SCALED_FIXED, k_bar=k_bar, r=r)

    @classmethod
    def nearly_sparse(cls, k_bar: int, perturb_sigma: float = DEFAULT_PERTURB_SIGMA,
                      nonzero_std: float = DEFAULT_NONZERO_STD) -> "SignalScheme":
        return cls(kind=SchemeKind.NEARLY_SPARSE, k_bar=k_bar, perturb_sigma=perturb_sigma,
                   nonzero_std=nonzero_std)
