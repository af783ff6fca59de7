"""Restricted eigenvalue estimation for sparse curvature diagnostics."""
import itertools
import logging
import math
from typing import Iterable, Optional

import numpy as np
from scipy import linalg

from ihtgap.config import BRUTE_FORCE_MAX_SUPPORTS, DEFAULT_RE_TRIALS
from ihtgap.exceptions import CombinatorialCapError, InvalidParameterError
from ihtgap.generators.data_generator import sample_support
from ihtgap.models.seed import Seed
from ihtgap.models.stability_report import RestrictedEigenvalue
from ihtgap.models.support_set import SupportSet

logger = logging.getLogger("IhtGap.EigenAnalyzer")


def _check_size(features: np.ndarray, s: int) -> None:
    p = features.shape[1]
    if not 1 <= s <= p:
        raise InvalidParameterError(f"support size s must satisfy 1 <= s <= p={p}, got {s}")


def _restricted_min_eigenvalue(gram: np.ndarray, indices) -> float:
    block = gram[np.ix_(indices, indices)]
    # Roundoff can push a singular block slightly below zero
    return max(float(linalg.eigvalsh(block)[0]), 0.0)


def _minimize_over(gram: np.ndarray, supports: Iterable, p: int) -> RestrictedEigenvalue:
    best_value = math.inf
    best_indices = ()
    for indices in supports:
        value = _restricted_min_eigenvalue(gram, list(indices))
        if value < best_value:
            best_value, best_indices = value, tuple(sorted(int(i) for i in indices))
    return RestrictedEigenvalue(mu_hat=best_value, support=SupportSet(indices=best_indices, p=p))


def exhaustive_restricted_eigenvalue(features, s: int,
                                     max_supports: int = BRUTE_FORCE_MAX_SUPPORTS) -> RestrictedEigenvalue:
    """
    Exact min over all size-s supports J of lambda_min(X_J' X_J / n).

    Raises:
        CombinatorialCapError: If C(p, s) exceeds max_supports
    """
    features = np.asarray(features, dtype=np.float64)
    _check_size(features, s)
    n, p = features.shape
    count = math.comb(p, s)
    if count > max_supports:
        raise CombinatorialCapError(f"C({p},{s})={count} supports exceed the cap {max_supports}")
    gram = features.T @ features / n
    return _minimize_over(gram, itertools.combinations(range(p), s), p)


def restricted_eigenvalue_estimate(features, s: int, trials: int = DEFAULT_RE_TRIALS,
                                   seed: Optional[Seed] = None) -> RestrictedEigenvalue:
    """
    Estimate the restricted eigenvalue mu_s of X'X/n from random supports.

    Draws `trials` uniformly random size-s supports and returns the smallest
    lambda_min(X_J' X_J / n) found. Since the true value is a minimum over all
    supports, the estimate can only over-estimate it. When C(p, s) <= trials the
    supports are enumerated instead and the result is exact.

    Args:
        features: n-by-p design
        s: Support size
        trials: Number of sampled supports
        seed: Stream the supports are drawn from, needed unless enumeration applies

    Returns:
        RestrictedEigenvalue with the estimate and the support attaining it
    """
    features = np.asarray(features, dtype=np.float64)
    _check_size(features, s)
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    p = features.shape[1]
    if math.comb(p, s) <= trials:
        return exhaustive_restricted_eigenvalue(features, s)
    if seed is None:
        raise InvalidParameterError("sampling supports needs a seed")

    n = features.shape[0]
    gram = features.T @ features / n
    rng = seed.generator()
    supports = (sample_support(rng, p, s) for _ in range(trials))
    result = _minimize_over(gram, supports, p)
    logger.debug(f"Restricted eigenvalue estimate for s={s} over {trials} supports: {result.mu_hat:.6e}")
    return result
