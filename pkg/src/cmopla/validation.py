"""Input validation helpers shared by the estimator-style APIs."""

from __future__ import annotations

import numbers

import numpy as np

__all__ = [
    "check_array_2d",
    "check_in_bounds",
    "check_positive_int",
    "check_positive_float",
]


def check_array_2d(X, *, name: str = "X", dtype=np.float64) -> np.ndarray:
    """Coerce ``X`` to a 2-D float array of finite values."""
    arr = np.asarray(X, dtype=dtype)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_in_bounds(X: np.ndarray, lower: np.ndarray, upper: np.ndarray, *, name: str = "X") -> None:
    """Reject points outside the closed box [lower, upper]."""
    if X.shape[1] != lower.shape[0]:
        raise ValueError(
            f"{name} has {X.shape[1]} columns but the problem dimension is {lower.shape[0]}"
        )
    below = X < lower
    above = X > upper
    if below.any() or above.any():
        bad = int(np.argmax(np.any(below | above, axis=1)))
        raise ValueError(
            f"{name}[{bad}] = {X[bad].tolist()} lies outside bounds "
            f"[{lower.tolist()}, {upper.tolist()}]"
        )


def check_positive_int(value, *, name: str) -> int:
    if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive_float(value, *, name: str) -> float:
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise ValueError(f"{name} must be a positive real, got {value!r}")
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive real, got {value!r}")
    return value
