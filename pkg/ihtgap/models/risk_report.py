"""RiskReport model for representing empirical, population and excess risk of a model."""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PopulationMode(str, Enum):
    CLOSED_FORM = "closed_form"
    MONTE_CARLO = "monte_carlo"


class ExcessMode(str, Enum):
    WHITE_BOX_LINEAR = "white_box_linear"
    BLACK_BOX_LINEAR = "black_box_linear"
    WHITE_BOX_MC = "white_box_mc"
    NONE = "none"


class MonteCarloEstimate(BaseModel):
    """
    A Monte Carlo mean with its standard error.

    Attributes:
        value: Sample mean of the per-sample losses
        std_error: Sample standard deviation divided by sqrt(m), 0 when m = 1
        m: Number of samples
    """
    model_config = ConfigDict(frozen=True)

    value: float
    std_error: float = Field(ge=0)
    m: int = Field(ge=1)


class RiskReport(BaseModel):
    """
    Risk measurements of a learned model.

    Attributes:
        empirical_risk: F_S(w)
        population_risk: F(w), exact or Monte Carlo
        population_std_error: Standard error of a Monte Carlo population risk, None when exact
        generalization_gap: population_risk - empirical_risk, exactly as stored
        excess_risk: F(w) - min over k-sparse models of F, None when unavailable
    """
    model_config = ConfigDict(frozen=True)

    empirical_risk: float
    population_risk: float
    population_std_error: Optional[float] = None
    generalization_gap: float
    excess_risk: Optional[float] = Field(default=None, description="None when unavailable")

    @model_validator(mode="after")
    def _check_gap(self) -> "RiskReport":
        if self.generalization_gap != self.population_risk - self.empirical_risk:
            raise ValueError("generalization_gap must equal population_risk - empirical_risk")
        return self

    @classmethod
    def from_risks(cls, empirical_risk: float, population_risk: float,
                   excess_risk: Optional[float] = None,
                   population_std_error: Optional[float] = None) -> "RiskReport":
        return cls(
            empirical_risk=empirical_risk,
            population_risk=population_risk,
            population_std_error=population_std_error,
            generalization_gap=population_risk - empirical_risk,
            excess_risk=excess_risk,
        )
