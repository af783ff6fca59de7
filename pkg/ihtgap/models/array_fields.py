"""Helpers that coerce array-valued model fields into frozen float64 arrays."""
from typing import Any

import numpy as np


def frozen_array(values: Any, ndim: int, name: str) -> np.ndarray:
    """
    Convert values to a read-only, finite float64 array of the given rank.

    Args:
        values: Array-like input
        ndim: Required number of dimensions
        name: Field name used in error messages

    Returns:
        A read-only float64 copy of the input

    Raises:
        ValueError: If the rank is wrong or an entry is NaN/Inf
    """
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} contains non-finite entries")
    array.setflags(write=False)
    return array
