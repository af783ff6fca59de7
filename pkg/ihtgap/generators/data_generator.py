"""Synthetic ground truths and datasets for the white-box, black-box and signal-strength protocols."""
import logging
from typing import Optional

import numpy as np
from scipy.special import expit

from ihtgap.config import DEFAULT_MARGIN_SCALE
from ihtgap.exceptions import InvalidParameterError
from ihtgap.models.dataset import Dataset
from ihtgap.models.ground_truth import CovarianceKind, CovarianceSpec, GroundTruth, ModelKind
from ihtgap.models.seed import Seed
from ihtgap.models.signal_scheme import SchemeKind, SignalScheme

logger = logging.getLogger("IhtGap.DataGenerator")


def sample_support(rng: np.random.Generator, p: int, k: int) -> np.ndarray:
    """
    k distinct positions out of p, drawn by the first k swaps of a Fisher-Yates shuffle.

    Returns:
        The positions in draw order
    """
    if not 0 <= k <= p:
        raise InvalidParameterError(f"cannot draw {k} positions out of {p}")
    positions = np.arange(p)
    for i in range(k):
        j = int(rng.integers(i, p))
        positions[i], positions[j] = positions[j], positions[i]
    return positions[:k].copy()


def _planted_sparse(p: int, k_bar: int, nonzero_std: float, seed: Seed) -> np.ndarray:
    rng = seed.child("sparse").generator()
    positions = sample_support(rng, p, k_bar)
    w = np.zeros(p)
    w[positions] = nonzero_std * rng.standard_normal(k_bar)
    return w


def gen_ground_truth(p: int, scheme: SignalScheme, sigma: float, model_kind: ModelKind, seed: Seed,
                     covariance: Optional[CovarianceSpec] = None,
                     margin_scale: float = DEFAULT_MARGIN_SCALE) -> GroundTruth:
    """
    Build the nominal model w_bar and wrap it in a GroundTruth.

    GaussianSparse plants k_bar normal nonzeros at uniformly drawn positions.
    ScaledFixed plants the same seed-derived k_bar-sparse standard normal vector,
    scaled by r. NearlySparse adds dense N(0, perturb_sigma^2) noise to the
    GaussianSparse vector drawn from the same seed.

    Args:
        p: Dimension
        scheme: Signal recipe
        sigma: Noise level of the linear model
        model_kind: Linear or logistic
        seed: Stream the vector is drawn from
        covariance: Feature covariance, identity when None
        margin_scale: Logistic margin factor

    Returns:
        GroundTruth
    """
    if scheme.k_bar > p:
        raise InvalidParameterError(f"k_bar={scheme.k_bar} exceeds p={p}")

    if scheme.kind == SchemeKind.SCALED_FIXED:
        w_bar = scheme.r * _planted_sparse(p, scheme.k_bar, 1.0, seed)
    else:
        w_bar = _planted_sparse(p, scheme.k_bar, scheme.nonzero_std, seed)
        if scheme.kind == SchemeKind.NEARLY_SPARSE:
            w_bar = w_bar + scheme.perturb_sigma * seed.child("perturb").generator().standard_normal(p)

    logger.debug(f"Generated {scheme.kind.value} ground truth with p={p}, "
                 f"{np.count_nonzero(w_bar)} nonzeros, seed {seed}")

    return GroundTruth(
        w_bar=w_bar,
        noise_sigma=sigma,
        covariance=covariance if covariance is not None else CovarianceSpec.identity(),
        model_kind=model_kind,
        margin_scale=margin_scale,
    )


def gen_features(truth: GroundTruth, n: int, seed: Seed) -> np.ndarray:
    """n rows drawn from N(0, Sigma)."""
    if n < 1:
        raise InvalidParameterError(f"sample size must be >= 1, got {n}")
    z = seed.child("features").generator().standard_normal((n, truth.p))
    if truth.covariance.kind == CovarianceKind.IDENTITY:
        return z
    if truth.covariance.kind == CovarianceKind.DIAGONAL:
        return z * np.sqrt(truth.covariance.values)
    return z @ truth.covariance.factor(truth.p).T


def gen_linear_dataset(truth: GroundTruth, n: int, seed: Seed) -> Dataset:
    """
    Draw y_i = w_bar'x_i + eps_i with x_i ~ N(0, Sigma) and eps_i ~ N(0, sigma^2).

    Raises:
        CovarianceError: If a dense covariance is not positive semidefinite
    """
    X = gen_features(truth, n, seed)
    noise = truth.noise_sigma * seed.child("noise").generator().standard_normal(n)
    return Dataset(features=X, responses=X @ truth.w_bar + noise)


def label_probability(margin, margin_scale: float = DEFAULT_MARGIN_SCALE):
    """P(y = +1 | w_bar'x = margin) = sigmoid(margin_scale * margin)."""
    return expit(margin_scale * np.asarray(margin, dtype=np.float64))


def gen_logistic_dataset(truth: GroundTruth, n: int, seed: Seed) -> Dataset:
    """Draw x_i ~ N(0, Sigma) and y_i = +1 with probability sigmoid(c w_bar'x_i), else -1."""
    X = gen_features(truth, n, seed)
    u = seed.child("labels").generator().random(n)
    y = np.where(u < label_probability(X @ truth.w_bar, truth.margin_scale), 1.0, -1.0)
    return Dataset(features=X, responses=y)


def gen_dataset(truth: GroundTruth, n: int, seed: Seed) -> Dataset:
    """Dispatch on the model kind of the ground truth."""
    if truth.model_kind == ModelKind.LOGISTIC:
        return gen_logistic_dataset(truth, n, seed)
    return gen_linear_dataset(truth, n, seed)
