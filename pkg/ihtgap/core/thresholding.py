"""Hard-thresholding operator H_k and its stability margin."""
import math

import numpy as np

from ihtgap.exceptions import InvalidParameterError
from ihtgap.models.support_set import SupportSet
from ihtgap.models.threshold_outcome import ThresholdOutcome


def _magnitude_order(w: np.ndarray) -> np.ndarray:
    # Stable sort on -|w|: equal magnitudes keep their index order, so the lowest index wins ties.
    return np.argsort(-np.abs(w), kind="stable")


def _check_k(k: int) -> None:
    if k < 1:
        raise InvalidParameterError(f"sparsity level k must be >= 1, got {k}")


def hard_threshold(w, k: int) -> ThresholdOutcome:
    """
    Keep the min(k, p) largest-magnitude entries of w and zero the rest.

    Ties at the boundary go to the lowest index.

    Args:
        w: Vector
        k: Sparsity level, at least 1

    Returns:
        ThresholdOutcome with the thresholded vector, kept set, margin and tie flag
    """
    _check_k(k)
    w = np.asarray(w, dtype=np.float64)
    p = w.shape[0]
    order = _magnitude_order(w)
    kept_idx = np.sort(order[:min(k, p)])

    vector = np.zeros_like(w)
    vector[kept_idx] = w[kept_idx]

    margin = 0.0
    tie_broken = False
    if k < p:
        magnitudes = np.abs(w)
        boundary, next_in_line = magnitudes[order[k - 1]], magnitudes[order[k]]
        margin = float(boundary - next_in_line)
        tie_broken = bool(boundary == next_in_line)

    return ThresholdOutcome(
        vector=vector,
        kept=SupportSet(indices=tuple(int(i) for i in kept_idx), p=p),
        margin=margin,
        tie_broken=tie_broken,
    )


def ht_stability_margin(w, k: int) -> float:
    """
    |[w]_(k)| - |[w]_(k+1)| in the sorted-magnitude order.

    Returns +inf when k >= p, since no (k+1)-th entry exists.
    """
    _check_k(k)
    magnitudes = np.abs(np.asarray(w, dtype=np.float64))
    if k >= magnitudes.shape[0]:
        return math.inf
    # k-th and (k+1)-th largest via a partial sort of the top k+1 magnitudes
    top = -np.partition(-magnitudes, k)[:k + 1]
    top.sort()
    return float(top[1] - top[0])


def top_k_indices(w, k: int) -> SupportSet:
    """The coordinates hard_threshold(w, k) keeps."""
    return hard_threshold(w, k).kept
