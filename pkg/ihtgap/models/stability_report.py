"""Models for representing stability and concentration diagnostics."""
from typing import Callable, List, NamedTuple

from pydantic import BaseModel, ConfigDict, Field

from ihtgap.models.support_set import SupportSet


class StabilityReport(BaseModel):
    """
    Outcome of the replace-one-sample stability experiment.

    Attributes:
        support_agreement_rate: Fraction of trials where both datasets gave the same support
        max_loss_discrepancy: Empirical gamma, the largest per-sample loss change on the evaluation set
        ht_margins: Smallest hard-thresholding margin along both IHT runs, per trial
        loss_discrepancies: Per-trial loss discrepancy
        n_trials: Number of trials
    """
    model_config = ConfigDict(frozen=True)

    support_agreement_rate: float = Field(ge=0, le=1)
    max_loss_discrepancy: float = Field(ge=0, description="Empirical gamma")
    ht_margins: List[float] = Field(default_factory=list)
    loss_discrepancies: List[float] = Field(default_factory=list)
    n_trials: int = Field(ge=1)


class StabilityCertificate(NamedTuple):
    """IHT stability of the population risk and the matching sample-size requirement."""
    epsilon_k: float
    required_sample_size: Callable[..., float]


class ConcentrationResult(NamedTuple):
    """Empirical quantile of the sup-norm of the gradient at w_bar against its bound."""
    empirical_quantile: float
    bound: float
    passed: bool


class RestrictedEigenvalue(NamedTuple):
    """Smallest restricted eigenvalue found and the support attaining it."""
    mu_hat: float
    support: SupportSet


class StrongSignalCheck(NamedTuple):
    """Whether the smallest planted magnitude clears the strong-signal threshold."""
    threshold: float
    w_min: float
    satisfied: bool
