"""ResultRow and SummaryRow models for representing sweep measurements."""
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

RESULT_COLUMNS = [
    "experiment", "replicate", "n", "k", "sigma_or_r", "seed",
    "empirical_risk", "population_risk", "generalization_gap", "excess_risk",
    "iters_run", "support_size", "min_ht_margin", "wall_time_ms",
]


class ResultRow(BaseModel):
    """
    One (grid point, replicate) measurement of a sweep.

    Attributes:
        experiment: Experiment kind
        replicate: Replicate index
        n: Sample size
        k: Sparsity level
        sigma_or_r: Noise level, or signal strength for SignalStrength sweeps
        seed: Fingerprint of the training-data stream
        empirical_risk: F_S(w)
        population_risk: F(w)
        generalization_gap: population_risk - empirical_risk
        excess_risk: Excess population risk, None when not computable
        iters_run: IHT steps performed
        support_size: Number of nonzeros in the evaluated model
        min_ht_margin: Smallest pre-threshold margin along the IHT run
        wall_time_ms: Solve time, 0 unless timing was requested
    """
    model_config = ConfigDict(frozen=True)

    experiment: str
    replicate: int = Field(ge=0)
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    sigma_or_r: float
    seed: int
    empirical_risk: float
    population_risk: float
    generalization_gap: float
    excess_risk: Optional[float] = None
    iters_run: int = Field(ge=0)
    support_size: int = Field(ge=0)
    min_ht_margin: float
    wall_time_ms: float = 0.0


class SummaryRow(BaseModel):
    """
    Mean and sample standard deviation of one grid point across replicates.

    Attributes:
        experiment: Experiment kind
        n: Sample size
        k: Sparsity level
        sigma_or_r: Noise level or signal strength
        count: Number of replicates
        gap_mean: Mean generalization gap
        gap_std: Sample standard deviation of the gap (0 for a single replicate)
        excess_mean: Mean excess risk, None when unavailable
        excess_std: Sample standard deviation of the excess risk
    """
    model_config = ConfigDict(frozen=True)

    experiment: str
    n: int
    k: int
    sigma_or_r: float
    count: int
    gap_mean: float
    gap_std: float
    excess_mean: Optional[float] = None
    excess_std: Optional[float] = None
