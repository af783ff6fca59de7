"""ExperimentConfig model for representing one generalization-gap sweep."""
from enum import Enum
from typing import List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ihtgap.config import (
    DEFAULT_GRAD_TOL,
    DEFAULT_MARGIN_SCALE,
    DEFAULT_MAX_ITERS,
    DEFAULT_MC_SAMPLES,
    DEFAULT_NONZERO_STD,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PERTURB_SIGMA,
    DEFAULT_SEED,
)


class ExperimentKind(str, Enum):
    LINEAR_WHITE_BOX = "LinearWhiteBox"
    LINEAR_BLACK_BOX = "LinearBlackBox"
    LOGISTIC_WHITE_BOX = "LogisticWhiteBox"
    LOGISTIC_BLACK_BOX = "LogisticBlackBox"
    SIGNAL_STRENGTH = "SignalStrength"
    SPARSITY_INVARIANCE = "SparsityInvariance"

    @property
    def is_logistic(self) -> bool:
        return self in (ExperimentKind.LOGISTIC_WHITE_BOX, ExperimentKind.LOGISTIC_BLACK_BOX)

    @property
    def grid_is_signal_strength(self) -> bool:
        """Whether the sigma_or_r grid holds signal strengths r rather than noise levels."""
        return self == ExperimentKind.SIGNAL_STRENGTH


class ExperimentConfig(BaseModel):
    """
    A full sweep over sample size, sparsity level and noise level (or signal strength).

    Attributes:
        name: Stem used for output files
        kind: Which protocol to run
        p: Feature dimension
        n_over_p: Grid of sample-size ratios; n = round(ratio * p)
        k: Grid of sparsity levels
        sigma_or_r: Grid of noise levels, or of signal strengths for SignalStrength
        noise_sigma: Noise level used when the grid holds signal strengths
        k_bar: Planted sparsity (ignored by SparsityInvariance, which plants k nonzeros)
        replicates: Replicates per grid point
        base_seed: Root of every random stream in the sweep
        step_size: IHT step size or "auto"
        max_iters: IHT iteration budget
        grad_tol: IHT early-stop tolerance
        mc_samples: Monte Carlo sample count for logistic population risk
        perturb_sigma: Dense perturbation level of nearly-sparse models
        nonzero_std: Standard deviation of planted nonzeros
        margin_scale: Logistic margin factor
        evaluate_debiased: Evaluate the debiased iterate instead of the IHT iterate
        record_timing: Write measured wall time instead of 0
        output_dir: Directory for CSV, plots and metadata
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "sweep"
    kind: ExperimentKind
    p: int = Field(ge=1)
    n_over_p: List[float]
    k: List[int]
    sigma_or_r: List[float]
    noise_sigma: float = Field(default=1.0, ge=0)
    k_bar: int = Field(default=50, ge=0)
    replicates: int = Field(default=10, ge=1)
    base_seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    step_size: Union[Literal["auto"], float] = "auto"
    max_iters: int = Field(default=DEFAULT_MAX_ITERS, ge=1)
    grad_tol: float = Field(default=DEFAULT_GRAD_TOL, ge=0)
    mc_samples: int = Field(default=DEFAULT_MC_SAMPLES, ge=1)
    perturb_sigma: float = Field(default=DEFAULT_PERTURB_SIGMA, ge=0)
    nonzero_std: float = Field(default=DEFAULT_NONZERO_STD, gt=0)
    margin_scale: float = Field(default=DEFAULT_MARGIN_SCALE, gt=0)
    evaluate_debiased: bool = False
    record_timing: bool = False
    output_dir: str = DEFAULT_OUTPUT_DIR

    @field_validator("n_over_p", "k", "sigma_or_r")
    @classmethod
    def _check_nonempty(cls, value, info):
        if not value:
            raise ValueError(f"grid '{info.field_name}' must not be empty")
        return value

    @field_validator("k")
    @classmethod
    def _check_k(cls, value):
        if any(k < 1 for k in value):
            raise ValueError(f"sparsity levels must be positive, got {value}")
        return value

    @model_validator(mode="after")
    def _check_grid(self) -> "ExperimentConfig":
        for n in self.n_values:
            if n < 1:
                raise ValueError(f"n_over_p grid gives n={n} < 1 for p={self.p}")
        if self.kind.grid_is_signal_strength and any(r <= 0 for r in self.sigma_or_r):
            raise ValueError("signal strengths must be positive")
        if not self.kind.grid_is_signal_strength and any(s < 0 for s in self.sigma_or_r):
            raise ValueError("noise levels must be nonnegative")
        if self.kind != ExperimentKind.SPARSITY_INVARIANCE and self.k_bar > self.p:
            raise ValueError(f"k_bar={self.k_bar} exceeds p={self.p}")
        return self

    @property
    def n_values(self) -> List[int]:
        return [int(round(ratio * self.p)) for ratio in self.n_over_p]

    @property
    def expected_rows(self) -> int:
        return len(self.n_over_p) * len(self.k) * len(self.sigma_or_r) * self.replicates
