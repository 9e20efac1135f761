"""Input validation helpers shared by the estimators and functional API."""

from __future__ import annotations

import numpy as np

__all__ = ["as_codes", "as_code_matrix", "check_X_y"]


def _to_integer(arr: np.ndarray, name: str) -> np.ndarray:
    if arr.dtype.kind in "ui":
        return arr.astype(np.intp, copy=False)
    if arr.dtype.kind == "b":
        return arr.astype(np.intp)
    if arr.dtype.kind == "f":
        if np.isnan(arr).any():
            raise ValueError(f"{name} contains NaN; codes must be integers")
        rounded = np.rint(arr)
        if not np.array_equal(rounded, arr):
            raise ValueError(f"{name} contains non-integer values")
        return rounded.astype(np.intp)
    raise TypeError(f"{name} has unsupported dtype {arr.dtype!r}")


def as_codes(x, name: str = "x") -> np.ndarray:
    """Validate a 1-D array of non-negative integer codes."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    arr = _to_integer(arr, name)
    if arr.min() < 0:
        raise ValueError(f"{name} contains negative codes")
    return arr


def as_code_matrix(X, name: str = "X") -> np.ndarray:
    """Validate a 2-D matrix of non-negative integer codes (rows x features)."""
    arr = np.asarray(X)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must have at least one row and one column")
    arr = _to_integer(arr, name)
    if arr.min() < 0:
        raise ValueError(f"{name} contains negative codes")
    return arr


def check_X_y(X, y):
    """Validate a code matrix and class vector of matching length."""
    X = as_code_matrix(X)
    y = as_codes(y, name="y")
    if X.shape[0] != y.shape[0]:
        raise ValueError(
            f"X and y disagree on the number of rows: {X.shape[0]} != {y.shape[0]}"
        )
    return X, y
