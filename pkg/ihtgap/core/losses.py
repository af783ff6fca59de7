"""Loss values, gradients, regularity constants and population-risk oracles."""
import logging
import math
from typing import List, Sequence

import numpy as np
from scipy import linalg
from scipy.special import expit

from ihtgap.config import (
    DEFAULT_DOMAIN_RADIUS,
    MC_CHUNK_SIZE,
    POWER_ITERATION_MAX_ITERS,
    POWER_ITERATION_SEED,
    POWER_ITERATION_TOL
)
from ihtgap.core.vectors import check_dimension
from ihtgap.exceptions import InvalidParameterError
from ihtgap.generators.data_generator import gen_dataset
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.regularity_info import RegularityInfo
from ihtgap.models.risk_report import MonteCarloEstimate
from ihtgap.models.seed import Seed

logger = logging.getLogger("IhtGap.Losses")


def _stable_log1p_exp_neg(z: np.ndarray) -> np.ndarray:
    # log(1 + exp(-z)): log1p(exp(-z)) for z >= 0 and -z + log1p(exp(z)) for z < 0
    return np.log1p(np.exp(-np.abs(z))) + np.maximum(-z, 0.0)


def _vector(problem: Problem, w) -> np.ndarray:
    w = np.asarray(w, dtype=np.float64)
    check_dimension(w, problem.p)
    return w


def sample_losses(problem: Problem, w) -> np.ndarray:
    """Per-sample losses loss(w; x_i, y_i) for every sample of the problem."""
    w = _vector(problem, w)
    margins = problem.data.features @ w
    y = problem.data.responses
    if problem.loss_kind == LossKind.SQUARED:
        return 0.5 * (y - margins) ** 2
    return _stable_log1p_exp_neg(problem.margin_scale * y * margins)


def sample_loss(problem: Problem, w, index: int) -> float:
    """
    Loss of w on sample `index`.

    Squared: 0.5 (y - w'x)^2. Logistic: log(1 + exp(-c y w'x)) with c = margin_scale.

    Raises:
        InvalidParameterError: If index is outside [0, n)
    """
    if not 0 <= index < problem.n:
        raise InvalidParameterError(f"sample index {index} out of range for n={problem.n}")
    w = _vector(problem, w)
    x = problem.data.features[index]
    y = problem.data.responses[index]
    margin = float(x @ w)
    if problem.loss_kind == LossKind.SQUARED:
        return 0.5 * (y - margin) ** 2
    return float(_stable_log1p_exp_neg(np.array(problem.margin_scale * y * margin)))


def empirical_risk(problem: Problem, w) -> float:
    """F_S(w), the mean per-sample loss."""
    return float(np.mean(sample_losses(problem, w)))


def empirical_gradient(problem: Problem, w) -> np.ndarray:
    """
    Gradient of F_S at w.

    Squared: (1/n) sum (w'x_i - y_i) x_i.
    Logistic: (1/n) sum -c y_i s(-c y_i w'x_i) x_i with s the sigmoid.
    """
    w = _vector(problem, w)
    X = problem.data.features
    y = problem.data.responses
    margins = X @ w
    if problem.loss_kind == LossKind.SQUARED:
        weights = margins - y
    else:
        c = problem.margin_scale
        weights = -c * y * expit(-c * y * margins)
    return X.T @ weights / problem.n


def _power_iteration(features: np.ndarray, v: np.ndarray, max_iters: int, tol: float) -> float:
    """Rayleigh quotient of X'X/n reached by power iteration from unit vector v; 0 in the null space."""
    n = features.shape[0]
    estimate = 0.0
    for _ in range(max_iters):
        u = features.T @ (features @ v) / n
        norm_u = float(np.linalg.norm(u))
        if norm_u == 0.0:
            break
        updated = float(v @ u)
        v = u / norm_u
        if abs(updated - estimate) <= tol * abs(updated):
            return updated
        estimate = updated
    else:
        logger.debug(f"Power iteration stopped at its cap with estimate {estimate}")
    return estimate


def largest_gram_eigenvalue(features: np.ndarray, max_iters: int = POWER_ITERATION_MAX_ITERS,
                            tol: float = POWER_ITERATION_TOL) -> float:
    """
    lambda_max(X'X / n) by power iteration.

    Runs from the normalized all-ones vector and from a fixed seeded Gaussian
    vector and keeps the larger Rayleigh quotient. The all-ones vector alone can
    be an eigenvector of a smaller eigenvalue.
    Falls back to a dense eigensolve when both runs end in the null space.
    """
    n, p = features.shape
    ones = np.ones(p) / math.sqrt(p)
    random_start = np.random.default_rng(POWER_ITERATION_SEED).standard_normal(p)
    random_start /= np.linalg.norm(random_start)

    estimate = max(_power_iteration(features, ones, max_iters, tol),
                   _power_iteration(features, random_start, max_iters, tol))
    if estimate == 0.0 and np.any(features):
        gram = features.T @ features / n if p <= n else features @ features.T / n
        return float(max(linalg.eigvalsh(gram)[-1], 0.0))
    return estimate


def smoothness_constant(problem: Problem) -> float:
    """
    Strong-smoothness constant L of F_S.

    lambda_max(X'X/n) for the squared loss, times c^2/4 for the logistic loss,
    since the logistic Hessian weights c^2 s(1-s) never exceed c^2/4.
    """
    gram_max = largest_gram_eigenvalue(problem.data.features)
    if problem.loss_kind == LossKind.LOGISTIC:
        return gram_max * problem.margin_scale ** 2 / 4.0
    return gram_max


def regularity(problem: Problem, domain_radius: float = DEFAULT_DOMAIN_RADIUS) -> RegularityInfo:
    """
    Smoothness, Lipschitz and value bounds of the empirical risk over a ball of radius R.

    Args:
        problem: The empirical risk
        domain_radius: Radius R of the domain of interest (DEFAULT_DOMAIN_RADIUS)

    Returns:
        RegularityInfo with L, G and M

    Raises:
        InvalidParameterError: If domain_radius is not positive, or every feature
            is zero so that L = 0 and the step size 2/(3L) does not exist
    """
    if not domain_radius > 0:
        raise InvalidParameterError(f"domain_radius must be positive, got {domain_radius}")
    smoothness = smoothness_constant(problem)
    max_row_norm = float(np.max(np.linalg.norm(problem.data.features, axis=1)))

    if problem.loss_kind == LossKind.SQUARED:
        residual_bound = float(np.max(np.abs(problem.data.responses))) + domain_radius * max_row_norm
        lipschitz = max_row_norm * residual_bound
        value_bound = 0.5 * residual_bound ** 2
    else:
        c = problem.margin_scale
        lipschitz = c * max_row_norm
        value_bound = float(np.logaddexp(0.0, c * domain_radius * max_row_norm))

    if smoothness <= 0:
        raise InvalidParameterError("design has no curvature (all-zero features); smoothness is undefined")

    return RegularityInfo(
        smoothness_L=smoothness,
        lipschitz_G=lipschitz,
        value_bound_M=value_bound,
        domain_radius=domain_radius,
    )


def _check_linear(truth: GroundTruth, w) -> np.ndarray:
    if truth.model_kind != ModelKind.LINEAR:
        raise InvalidParameterError(f"closed-form population risk needs a linear model, got {truth.model_kind.value}")
    w = np.asarray(w, dtype=np.float64)
    check_dimension(w, truth.p)
    return w


def population_risk_linear(w, truth: GroundTruth) -> float:
    """F(w) = 0.5 (w - w_bar)' Sigma (w - w_bar) + sigma^2 / 2."""
    w = _check_linear(truth, w)
    return 0.5 * truth.covariance.quad_form(w - truth.w_bar) + 0.5 * truth.noise_sigma ** 2


def population_gradient_linear(w, truth: GroundTruth) -> np.ndarray:
    """Gradient of the linear population risk, Sigma (w - w_bar)."""
    w = _check_linear(truth, w)
    return truth.covariance.apply(w - truth.w_bar)


def monte_carlo_losses(problem_kind: LossKind, vectors: Sequence[np.ndarray], truth: GroundTruth,
                       m: int, seed: Seed) -> List[np.ndarray]:
    """
    Per-sample losses of several vectors on one shared fresh sample of size m.

    Samples are drawn in chunks of MC_CHUNK_SIZE, chunk i from substream
    "chunk:i", so the draws do not depend on how the chunks are scheduled.
    """
    if m < 1:
        raise InvalidParameterError(f"Monte Carlo sample count must be >= 1, got {m}")
    if problem_kind == LossKind.LOGISTIC and truth.model_kind != ModelKind.LOGISTIC:
        raise InvalidParameterError("logistic loss needs a logistic ground truth")

    losses = [[] for _ in vectors]
    for chunk, start in enumerate(range(0, m, MC_CHUNK_SIZE)):
        size = min(MC_CHUNK_SIZE, m - start)
        data = gen_dataset(truth, size, seed.child(f"chunk:{chunk}"))
        problem = Problem(loss_kind=problem_kind, data=data, margin_scale=truth.margin_scale)
        for collected, w in zip(losses, vectors):
            collected.append(sample_losses(problem, w))
    return [np.concatenate(collected) for collected in losses]


def population_risk_monte_carlo(problem_kind: LossKind, w, truth: GroundTruth, m: int,
                                seed: Seed) -> MonteCarloEstimate:
    """
    Estimate F(w) by the empirical risk on m fresh samples from the ground truth.

    Returns:
        MonteCarloEstimate with the mean loss and its standard error
    """
    losses = monte_carlo_losses(problem_kind, [w], truth, m, seed)[0]
    std_error = float(np.std(losses, ddof=1) / math.sqrt(m)) if m > 1 else 0.0
    return MonteCarloEstimate(value=float(np.mean(losses)), std_error=std_error, m=m)
