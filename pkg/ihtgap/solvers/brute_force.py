"""Exact l0-constrained ERM by enumerating every support of size k."""
import itertools
import logging
import math

from ihtgap.config import BRUTE_FORCE_MAX_SUPPORTS, BRUTE_FORCE_P_CAP, OBJECTIVE_TIE_TOL
from ihtgap.core.losses import empirical_risk
from ihtgap.exceptions import CombinatorialCapError, InvalidParameterError
from ihtgap.models.problem import Problem
from ihtgap.models.solve_report import SolveReport
from ihtgap.models.support_set import SupportSet
from ihtgap.solvers.debias import debias

logger = logging.getLogger("IhtGap.BruteForce")


def brute_force_l0_erm(problem: Problem, k: int, p_cap: int = BRUTE_FORCE_P_CAP,
                       verbose: bool = False) -> SolveReport:
    """
    Global minimizer of F_S over all k-sparse vectors.

    Every support of size min(k, p) is debiased in lexicographic order; a later
    support replaces the incumbent only if it improves the objective by more than
    OBJECTIVE_TIE_TOL, so ties go to the lexicographically smallest support.

    Args:
        problem: The empirical risk
        k: Sparsity level
        p_cap: Largest dimension accepted
        verbose: Whether to log progress

    Returns:
        SolveReport whose solution and debiased vector are the minimizer

    Raises:
        CombinatorialCapError: If p > p_cap or C(p, k) > BRUTE_FORCE_MAX_SUPPORTS
    """
    if k < 1:
        raise InvalidParameterError(f"sparsity level k must be >= 1, got {k}")
    p = problem.p
    if p > p_cap:
        raise CombinatorialCapError(f"brute force refuses p={p} above the cap p_cap={p_cap}")
    size = min(k, p)
    count = math.comb(p, size)
    if count > BRUTE_FORCE_MAX_SUPPORTS:
        raise CombinatorialCapError(
            f"brute force would enumerate C({p},{size})={count} supports, above {BRUTE_FORCE_MAX_SUPPORTS}"
        )

    if verbose:
        logger.info(f"Enumerating {count} supports of size {size} in dimension {p}")

    best_value = math.inf
    best_w = None
    best_support = None
    for indices in itertools.combinations(range(p), size):
        support = SupportSet(indices=indices, p=p)
        w = debias(problem, support)
        value = empirical_risk(problem, w)
        if value < best_value - OBJECTIVE_TIE_TOL:
            best_value, best_w, best_support = value, w, support

    if verbose:
        logger.info(f"Best support {best_support} with objective {best_value:.6e}")

    return SolveReport(
        solution=best_w,
        debiased=best_w.copy(),
        objective=best_value,
        debiased_objective=best_value,
        support=best_support,
        converged=True,
    )
