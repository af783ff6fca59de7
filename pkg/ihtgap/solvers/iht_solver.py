"""Iterative hard thresholding on the empirical and the population risk."""
import logging
import math
from typing import Callable, List

import numpy as np

from ihtgap.config import STABLE_SUPPORT_STEPS
from ihtgap.core.losses import empirical_gradient, empirical_risk, population_gradient_linear, \
    population_risk_linear, smoothness_constant
from ihtgap.core.thresholding import hard_threshold
from ihtgap.core.vectors import check_dimension, support_of
from ihtgap.exceptions import DivergenceError, InvalidParameterError
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.iht_params import IhtParams
from ihtgap.models.iht_trace import IhtTrace
from ihtgap.models.problem import Problem
from ihtgap.models.solve_report import SolveReport
from ihtgap.models.support_set import SupportSet
from ihtgap.solvers.debias import debias

logger = logging.getLogger("IhtGap.IhtSolver")


def default_step_size(L: float) -> float:
    """The step size 2/(3L) for a strongly smooth objective with constant L."""
    if not (L > 0 and math.isfinite(L)):
        raise InvalidParameterError(f"smoothness constant must be positive and finite, got {L}")
    return 2.0 / (3.0 * L)


def recommended_sparsity(L: float, mu: float, k_bar: int) -> int:
    """
    Relaxed sparsity level ceil(32 L^2 / mu^2 * k_bar) under which IHT provably
    converges linearly. Advisory only; any k may be used.
    """
    if not (L > 0 and mu > 0):
        raise InvalidParameterError(f"L and mu must be positive, got L={L}, mu={mu}")
    if k_bar < 0:
        raise InvalidParameterError(f"k_bar must be nonnegative, got {k_bar}")
    return int(math.ceil(32.0 * (L / mu) ** 2 * k_bar))


def iteration_budget(L: float, mu: float, initial_objective: float, epsilon: float) -> int:
    """Number of steps ceil((L/mu) log(F_S(w0)/epsilon)) to reach accuracy epsilon, at least 1."""
    if not (L > 0 and mu > 0 and epsilon > 0):
        raise InvalidParameterError(f"L, mu and epsilon must be positive, got {L}, {mu}, {epsilon}")
    if initial_objective <= epsilon:
        return 1
    return max(1, int(math.ceil((L / mu) * math.log(initial_objective / epsilon))))


def _initial_point(params: IhtParams, p: int) -> np.ndarray:
    if params.w0 is None:
        return np.zeros(p)
    w0 = np.array(params.w0)
    check_dimension(w0, p, "w0")
    return w0


def _step_margin(outcome, k: int, p: int) -> float:
    # No (k+1)-th entry exists when k >= p, so the thresholding is trivially stable
    return outcome.margin if k < p else math.inf


def _run_iht(objective: Callable[[np.ndarray], float], gradient: Callable[[np.ndarray], np.ndarray],
             w: np.ndarray, k: int, step_size: float, max_iters: int, grad_tol: float,
             early_stop: bool, record_trace: bool, verbose: bool):
    p = w.shape[0]
    value = objective(w)
    iterates: List[np.ndarray] = [w.copy()] if record_trace else []
    objectives: List[float] = [value] if record_trace else []
    supports: List[SupportSet] = [support_of(w)] if record_trace else []
    margins: List[float] = []

    nonzeros = support_of(w)
    kept = nonzeros
    stable_steps = 0
    converged = False
    iters_run = 0
    grad = gradient(w)

    for t in range(1, max_iters + 1):
        with np.errstate(all="ignore"):
            candidate = w - step_size * grad
            if np.all(np.isfinite(candidate)):
                outcome = hard_threshold(candidate, k)
                w = outcome.vector
                value = objective(w)
            else:
                value = math.nan
        if not math.isfinite(value):
            logger.error(f"IHT objective became non-finite at iteration {t}")
            raise DivergenceError(t, value)

        iters_run = t
        kept = outcome.kept
        margins.append(_step_margin(outcome, k, p))
        if record_trace:
            iterates.append(w.copy())
            objectives.append(value)
            supports.append(kept)

        current = support_of(w)
        stable_steps = stable_steps + 1 if current == nonzeros else 0
        nonzeros = current
        grad = gradient(w)

        if verbose and t % 100 == 0:
            logger.info(f"IHT iteration {t}: objective={value:.6e}")

        restricted_norm = float(np.linalg.norm(grad[current.to_array()]))
        if restricted_norm <= grad_tol and stable_steps >= STABLE_SUPPORT_STEPS:
            converged = True
            if early_stop:
                break

    if verbose:
        logger.info(f"IHT finished after {iters_run} iterations (converged={converged}, objective={value:.6e})")

    trace = IhtTrace(
        iterates=iterates,
        objectives=objectives,
        supports=supports,
        margins=margins,
        converged=converged,
        iters_run=iters_run,
        step_size=step_size,
    )
    return w, value, kept, trace


def iht_solve(problem: Problem, params: IhtParams, record_trace: bool = False,
              debias_solution: bool = True, verbose: bool = False) -> SolveReport:
    """
    Run w <- H_k(w - eta grad F_S(w)) from params.w0.

    Stops after params.max_iters steps, or earlier once the gradient restricted
    to the iterate's support has norm at most params.grad_tol and the support has
    not changed for two consecutive steps.

    Args:
        problem: The empirical risk
        params: Sparsity level, step size, budget and initialization
        record_trace: Whether to keep every iterate, objective and support
        debias_solution: Whether to re-minimize F_S over the final support
        verbose: Whether to log progress

    Returns:
        SolveReport with the final iterate, its debiased counterpart and the run record

    Raises:
        DivergenceError: If the objective becomes non-finite
        NewtonConvergenceError: If logistic debiasing does not converge
    """
    p = problem.p
    if params.step_size == "auto":
        step_size = default_step_size(smoothness_constant(problem))
    else:
        step_size = float(params.step_size)
    w0 = _initial_point(params, p)

    if verbose:
        logger.info(f"Running IHT with k={params.k}, step size {step_size:.6e}, n={problem.n}, p={p}")

    solution, objective, kept, trace = _run_iht(
        lambda w: empirical_risk(problem, w),
        lambda w: empirical_gradient(problem, w),
        w0, params.k, step_size, params.max_iters, params.grad_tol,
        early_stop=True, record_trace=record_trace, verbose=verbose,
    )

    if debias_solution:
        debiased = debias(problem, kept, start=solution, verbose=verbose)
        debiased_objective = empirical_risk(problem, debiased)
    else:
        debiased, debiased_objective = solution.copy(), objective

    return SolveReport(
        solution=solution,
        debiased=debiased,
        objective=objective,
        debiased_objective=debiased_objective,
        support=kept,
        iters_run=trace.iters_run,
        converged=trace.converged,
        step_size=step_size,
        min_margin=trace.min_margin,
        trace=trace if record_trace else None,
    )


def population_iht_trajectory(truth: GroundTruth, params: IhtParams, verbose: bool = False) -> IhtTrace:
    """
    Run IHT for exactly params.max_iters steps on the population risk of a linear model.

    The "auto" step uses L = lambda_max(Sigma). The minimum of the recorded
    margins is the IHT stability margin of the trajectory.

    Raises:
        InvalidParameterError: If the ground truth is not linear
        DivergenceError: If the trajectory becomes non-finite
    """
    if truth.model_kind != ModelKind.LINEAR:
        raise InvalidParameterError("population IHT needs a linear ground truth")
    p = truth.p
    if params.step_size == "auto":
        step_size = default_step_size(truth.covariance.largest_eigenvalue(p))
    else:
        step_size = float(params.step_size)
    w0 = _initial_point(params, p)

    _, _, _, trace = _run_iht(
        lambda w: population_risk_linear(w, truth),
        lambda w: population_gradient_linear(w, truth),
        w0, params.k, step_size, params.max_iters, params.grad_tol,
        early_stop=False, record_trace=True, verbose=verbose,
    )
    return trace
