"""Support-restricted re-minimization of the empirical risk."""
import logging
from typing import Optional

import numpy as np
from scipy import linalg
from scipy.special import expit

from ihtgap.config import NEWTON_MAX_ITERS, NEWTON_TOL, PINV_RCOND
from ihtgap.exceptions import InvalidParameterError, NewtonConvergenceError
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.support_set import SupportSet

logger = logging.getLogger("IhtGap.Debias")

# Armijo sufficient-decrease constant and the smallest step tried by backtracking
ARMIJO_C = 1e-4
MIN_LINE_SEARCH_STEP = 1e-10


def debias(problem: Problem, support: SupportSet, start: Optional[np.ndarray] = None,
           verbose: bool = False) -> np.ndarray:
    """
    Minimize F_S over vectors supported on `support`.

    The squared loss is solved exactly from the |J|-dimensional normal equations,
    taking the minimum-norm solution when the restricted Gram matrix is singular.
    The logistic loss uses damped Newton with backtracking until the restricted
    gradient norm drops to NEWTON_TOL.

    Args:
        problem: The empirical risk
        support: The coordinate set J, nonempty
        start: Optional warm start (only read on J) for the logistic solver
        verbose: Whether to log Newton progress

    Returns:
        Dense vector that is zero outside J

    Raises:
        InvalidParameterError: If J is empty or lives in the wrong dimension
        NewtonConvergenceError: If the logistic solver hits NEWTON_MAX_ITERS
    """
    if len(support) == 0:
        raise InvalidParameterError("debias needs a nonempty support")
    if support.p != problem.p:
        raise InvalidParameterError(f"support lives in dimension {support.p}, problem has p={problem.p}")

    idx = support.to_array()
    X_J = problem.data.features[:, idx]
    if problem.loss_kind == LossKind.SQUARED:
        v = _restricted_least_squares(X_J, problem.data.responses)
    else:
        v0 = np.zeros(idx.size) if start is None else np.asarray(start, dtype=np.float64)[idx]
        v = _restricted_logistic_newton(X_J, problem.data.responses, problem.margin_scale, v0, verbose)

    w = np.zeros(problem.p)
    w[idx] = v
    return w


def _restricted_least_squares(X_J: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = X_J.shape[0]
    gram = X_J.T @ X_J / n
    moment = X_J.T @ y / n
    # Eigenvalues below PINV_RCOND times the largest are treated as zero
    return linalg.pinvh(gram, rtol=PINV_RCOND) @ moment


def _logistic_value(X_J: np.ndarray, y: np.ndarray, c: float, v: np.ndarray) -> float:
    z = c * y * (X_J @ v)
    return float(np.mean(np.log1p(np.exp(-np.abs(z))) + np.maximum(-z, 0.0)))


def _restricted_logistic_newton(X_J: np.ndarray, y: np.ndarray, c: float, v: np.ndarray,
                                verbose: bool) -> np.ndarray:
    n = X_J.shape[0]
    value = _logistic_value(X_J, y, c, v)
    gradient_norm = np.inf

    for iteration in range(NEWTON_MAX_ITERS):
        z = c * y * (X_J @ v)
        s = expit(-z)
        gradient = X_J.T @ (-c * y * s) / n
        gradient_norm = float(np.linalg.norm(gradient))
        if gradient_norm <= NEWTON_TOL:
            if verbose:
                logger.info(f"Newton converged after {iteration} iterations")
            return v

        weights = c * c * s * (1.0 - s)
        hessian = (X_J * weights[:, None]).T @ X_J / n
        direction = -linalg.pinvh(hessian, rtol=PINV_RCOND) @ gradient
        slope = float(gradient @ direction)
        if slope >= 0:
            # Hessian lost rank along the gradient; fall back to steepest descent
            direction = -gradient
            slope = -gradient_norm ** 2

        step = 1.0
        while step >= MIN_LINE_SEARCH_STEP:
            candidate = v + step * direction
            candidate_value = _logistic_value(X_J, y, c, candidate)
            if candidate_value <= value + ARMIJO_C * step * slope:
                break
            step *= 0.5
        else:
            logger.warning(f"Newton line search stalled at iteration {iteration}, gradient norm {gradient_norm:.3e}")
            raise NewtonConvergenceError(iteration, gradient_norm)

        v, value = candidate, candidate_value

    logger.error(f"Newton debiasing hit its cap of {NEWTON_MAX_ITERS} iterations")
    raise NewtonConvergenceError(NEWTON_MAX_ITERS, gradient_norm)
