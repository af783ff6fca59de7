"""Dense-vector helpers shared by every module: supports, restriction and magnitudes."""
import numpy as np

from ihtgap.exceptions import DimensionMismatchError, InvalidParameterError
from ihtgap.models.array_fields import frozen_array
from ihtgap.models.support_set import SupportSet


def as_vector(values) -> np.ndarray:
    """Coerce values to a finite 1-D float64 array (the DenseVector representation)."""
    try:
        return frozen_array(values, 1, "vector")
    except ValueError as e:
        raise InvalidParameterError(str(e)) from e


def check_dimension(w: np.ndarray, p: int, name: str = "w") -> None:
    if w.ndim != 1 or w.shape[0] != p:
        raise DimensionMismatchError(f"{name} has shape {w.shape}, expected ({p},)")


def support_of(w, tol: float = 0.0) -> SupportSet:
    """
    Indices i with |w_i| > tol.

    Args:
        w: Vector
        tol: Nonnegative magnitude threshold; 0 gives the exact nonzero pattern

    Returns:
        The support as a SupportSet
    """
    if tol < 0:
        raise InvalidParameterError(f"tol must be nonnegative, got {tol}")
    w = np.asarray(w, dtype=np.float64)
    return SupportSet(indices=tuple(int(i) for i in np.flatnonzero(np.abs(w) > tol)), p=w.shape[0])


def restrict(w, support: SupportSet) -> np.ndarray:
    """Copy of w that keeps the entries on `support` and zeroes the rest."""
    w = np.asarray(w, dtype=np.float64)
    if support.p != w.shape[0]:
        raise DimensionMismatchError(f"support lives in dimension {support.p}, vector has {w.shape[0]}")
    out = np.zeros_like(w)
    idx = support.to_array()
    out[idx] = w[idx]
    return out


def smallest_nonzero_magnitude(w) -> float:
    """
    min over supp(w) of |w_i|.

    Raises:
        InvalidParameterError: If w is the zero vector
    """
    magnitudes = np.abs(np.asarray(w, dtype=np.float64))
    nonzero = magnitudes[magnitudes > 0]
    if nonzero.size == 0:
        raise InvalidParameterError("smallest nonzero magnitude is undefined for the zero vector")
    return float(nonzero.min())
