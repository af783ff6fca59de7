"""Generalization gap, excess risk and the theoretical rates they are compared against."""
import logging
import math
from typing import Iterable, Optional

import numpy as np

from ihtgap.config import DEFAULT_MC_SAMPLES
from ihtgap.core.losses import empirical_risk, monte_carlo_losses, population_risk_linear
from ihtgap.core.thresholding import hard_threshold
from ihtgap.exceptions import InvalidParameterError
from ihtgap.models.bound_curve import BoundCurve, BoundKind
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.risk_report import ExcessMode, PopulationMode, RiskReport
from ihtgap.models.seed import Seed
from ihtgap.models.stability_report import StrongSignalCheck

logger = logging.getLogger("IhtGap.RiskAnalyzer")


def risk_report(problem: Problem, w, truth: GroundTruth,
                population_mode: PopulationMode = PopulationMode.CLOSED_FORM,
                excess_mode: ExcessMode = ExcessMode.NONE,
                seed: Optional[Seed] = None,
                mc_samples: int = DEFAULT_MC_SAMPLES,
                k: Optional[int] = None) -> RiskReport:
    """
    Empirical risk, population risk, generalization gap and excess risk of w.

    Excess modes:
        WHITE_BOX_LINEAR: 0.5 (w - w_bar)' Sigma (w - w_bar)
        BLACK_BOX_LINEAR: 0.5 (|w - w_bar|_Sigma^2 - |H_k(w_bar) - w_bar|_Sigma^2), needs k
        WHITE_BOX_MC: mean over one shared fresh sample of loss(w) - loss(w_bar)
        NONE: excess risk left unavailable

    When both the population risk and the excess risk are Monte Carlo
    estimates they are computed from the same draws.

    Args:
        problem: The training risk F_S
        w: The learned model
        truth: Generative model of the data
        population_mode: Closed form (linear model, squared loss) or Monte Carlo
        excess_mode: How to measure the excess risk
        seed: Stream for Monte Carlo draws, required by either Monte Carlo mode
        mc_samples: Monte Carlo sample count m
        k: Sparsity level for BLACK_BOX_LINEAR

    Returns:
        RiskReport

    Raises:
        InvalidParameterError: If a mode does not fit the ground truth or the loss
    """
    w = np.asarray(w, dtype=np.float64)
    linear_squared = truth.model_kind == ModelKind.LINEAR and problem.loss_kind == LossKind.SQUARED

    if population_mode == PopulationMode.CLOSED_FORM and not linear_squared:
        raise InvalidParameterError("closed-form population risk needs a linear model with squared loss")
    if excess_mode in (ExcessMode.WHITE_BOX_LINEAR, ExcessMode.BLACK_BOX_LINEAR) and not linear_squared:
        raise InvalidParameterError(f"{excess_mode.value} excess risk needs a linear model with squared loss")
    if excess_mode == ExcessMode.BLACK_BOX_LINEAR and k is None:
        raise InvalidParameterError("black-box excess risk needs the sparsity level k")
    uses_mc = population_mode == PopulationMode.MONTE_CARLO or excess_mode == ExcessMode.WHITE_BOX_MC
    if uses_mc and seed is None:
        raise InvalidParameterError("Monte Carlo risk evaluation needs a seed")

    emp = empirical_risk(problem, w)

    mc_w = mc_bar = None
    if uses_mc:
        mc_w, mc_bar = monte_carlo_losses(problem.loss_kind, [w, truth.w_bar], truth, mc_samples, seed)

    std_error = None
    if population_mode == PopulationMode.CLOSED_FORM:
        pop = population_risk_linear(w, truth)
    else:
        pop = float(np.mean(mc_w))
        std_error = float(np.std(mc_w, ddof=1) / math.sqrt(mc_samples)) if mc_samples > 1 else 0.0

    excess = None
    if excess_mode == ExcessMode.WHITE_BOX_LINEAR:
        excess = 0.5 * truth.covariance.quad_form(w - truth.w_bar)
    elif excess_mode == ExcessMode.BLACK_BOX_LINEAR:
        best_sparse = hard_threshold(truth.w_bar, k).vector
        excess = 0.5 * (truth.covariance.quad_form(w - truth.w_bar)
                        - truth.covariance.quad_form(best_sparse - truth.w_bar))
    elif excess_mode == ExcessMode.WHITE_BOX_MC:
        excess = float(np.mean(mc_w - mc_bar))

    return RiskReport.from_risks(emp, pop, excess_risk=excess, population_std_error=std_error)


def _check_positive(**values) -> None:
    for name, value in values.items():
        if not (value > 0 and math.isfinite(value)):
            raise InvalidParameterError(f"{name} must be positive and finite, got {value}")


def theory_bound(kind: BoundKind, k: float, p: float, n: float, sigma: float = 1.0, L: float = 1.0,
                 mu: float = 1.0, constant: float = 1.0, delta: Optional[float] = None) -> float:
    """
    Evaluate one of the theoretical generalization rates.

    WhiteBox: constant * (L/mu^2) * k * sigma^2 * log(p) / n
    Uniform: constant * sqrt(k log(p) / n)
    StrongSignal: constant * log(n) / sqrt(n)

    With a confidence level delta the rates become log(p/delta) for WhiteBox,
    sqrt((k log(p) + log(1/delta)) / n) for Uniform and
    sqrt(log(n) log(n/delta) / n) for StrongSignal.

    Raises:
        InvalidParameterError: If any input is nonpositive, n < 2 or delta is outside (0, 1)
    """
    _check_positive(k=k, p=p, n=n, sigma=sigma, L=L, mu=mu, constant=constant)
    if n < 2:
        raise InvalidParameterError(f"n must be at least 2, got {n}")
    if delta is not None and not 0 < delta < 1:
        raise InvalidParameterError(f"delta must lie in (0, 1), got {delta}")

    kind = BoundKind(kind)
    if kind == BoundKind.WHITE_BOX:
        log_term = math.log(p) if delta is None else math.log(p / delta)
        return constant * (L / mu ** 2) * k * sigma ** 2 * log_term / n
    if kind == BoundKind.UNIFORM:
        complexity = k * math.log(p) if delta is None else k * math.log(p) + math.log(1.0 / delta)
        return constant * math.sqrt(complexity / n)
    if delta is None:
        return constant * math.log(n) / math.sqrt(n)
    return constant * math.sqrt(math.log(n) * math.log(n / delta) / n)


def bound_curve(kind: BoundKind, n_values: Iterable[int], label: Optional[str] = None, **params) -> BoundCurve:
    """theory_bound evaluated at each n, sorted by n."""
    kind = BoundKind(kind)
    points = [(int(n), theory_bound(kind, n=n, **params)) for n in sorted(set(n_values))]
    return BoundCurve(kind=kind, points=points, label=label or f"{kind.value} bound")


def estimation_error_bound(grad_inf_norm: float, s: int, mu: float, epsilon: float = 0.0) -> float:
    """
    Distance bound 2 sqrt(s) |grad f(w')|_inf / mu + sqrt(2 epsilon / mu) between a
    mu-restricted strongly convex function's s-sparse epsilon-minimizer and any
    s-sparse reference point w'.
    """
    _check_positive(mu=mu)
    if grad_inf_norm < 0 or epsilon < 0 or s < 1:
        raise InvalidParameterError("grad_inf_norm and epsilon must be nonnegative and s >= 1")
    return 2.0 * math.sqrt(s) * grad_inf_norm / mu + math.sqrt(2.0 * epsilon / mu)


def strong_signal_check(w_min: float, k: int, mu: float, G: float, n: int, p: int, delta: float,
                        grad_inf_norm: float = 0.0) -> StrongSignalCheck:
    """
    Compare w_min with 2 sqrt(2k) |grad F(w~)|_inf / mu + (2G/mu) sqrt(2k log(2p/delta) / (2n)).

    The constants are taken as supplied; the check reports the comparison and
    does not certify that they hold for the data at hand.
    """
    _check_positive(mu=mu, n=n, p=p)
    if G < 0 or grad_inf_norm < 0 or k < 1:
        raise InvalidParameterError("G and grad_inf_norm must be nonnegative and k >= 1")
    if not 0 < delta < 1:
        raise InvalidParameterError(f"delta must lie in (0, 1), got {delta}")
    threshold = (2.0 * math.sqrt(2.0 * k) * grad_inf_norm / mu
                 + (2.0 * G / mu) * math.sqrt(2.0 * k * math.log(2.0 * p / delta) / (2.0 * n)))
    return StrongSignalCheck(threshold=threshold, w_min=w_min, satisfied=w_min > threshold)
