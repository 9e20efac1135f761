"""Plug-in information-theoretic quantities over integer-coded data columns.

Everything here works on empirical counts with maximum-likelihood cell
probabilities and base-2 logarithms, so all results are in bits.  Zero-count
cells contribute nothing (0 * log 0 = 0).  Estimates are exact functions of
the contingency table; there is no smoothing or bias correction.
"""

from __future__ import annotations

import numpy as np

from .validation import as_codes

__all__ = [
    "joint_counts",
    "entropy_from_counts",
    "entropy",
    "mutual_information",
    "conditional_mutual_information",
    "symmetrical_uncertainty",
]

# Tiny negatives are floating-point residue from the entropy differences and
# are clamped to zero.  Anything below -1e-12 would indicate a real bug and is
# returned as-is so tests can catch it.
_NEG_TOL = 1e-12


def joint_counts(*columns, arities=None) -> np.ndarray:
    """Dense contingency counts over one to three code columns.

    Parameters
    ----------
    *columns : array-like of int
        Equal-length 1-D columns of non-negative integer codes.
    arities : sequence of int, optional
        Alphabet size per column.  Inferred as ``max(column) + 1`` when
        omitted.  Each stated arity must cover the codes actually present.

    Returns
    -------
    ndarray of int64 with one axis per column, summing to the row count.
    """
    if not 1 <= len(columns) <= 3:
        raise ValueError("joint_counts takes one to three columns")
    cols = [as_codes(c, name=f"column {i}") for i, c in enumerate(columns)]
    n = cols[0].shape[0]
    for i, c in enumerate(cols[1:], start=1):
        if c.shape[0] != n:
            raise ValueError(f"column {i} has length {c.shape[0]}, expected {n}")
    if arities is None:
        shape = [int(c.max()) + 1 for c in cols]
    else:
        shape = [int(a) for a in arities]
        if len(shape) != len(cols):
            raise ValueError("arities must match the number of columns")
        for i, (c, a) in enumerate(zip(cols, shape)):
            if a < 1:
                raise ValueError(f"arity of column {i} must be >= 1")
            if int(c.max()) >= a:
                raise ValueError(f"column {i} holds codes outside its stated arity {a}")
    flat = cols[0]
    for c, a in zip(cols[1:], shape[1:]):
        flat = flat * a + c
    counts = np.bincount(flat, minlength=int(np.prod(shape)))
    return counts.reshape(shape)


def _entropy(counts: np.ndarray) -> float:
    # Sorting the nonzero counts fixes one canonical summation order, which
    # keeps symmetric calls (e.g. I(X;Y) vs I(Y;X)) bitwise identical.
    c = np.sort(counts[counts > 0].ravel())
    n = c.sum()
    p = c / n
    return float(-(p * np.log2(p)).sum())


def entropy_from_counts(counts) -> float:
    """Shannon entropy in bits of a non-negative count array."""
    arr = np.asarray(counts)
    if arr.size == 0:
        raise ValueError("empty count array")
    if arr.dtype.kind not in "uib":
        raise ValueError("counts must be integers")
    arr = arr.astype(np.int64, copy=False)
    if arr.min() < 0:
        raise ValueError("counts must be non-negative")
    if arr.sum() == 0:
        raise ValueError("entropy is undefined for an all-zero count array")
    return _entropy(arr)


def entropy(x) -> float:
    """Empirical entropy in bits of one code column."""
    return _entropy(joint_counts(x))


def _clamp(value: float) -> float:
    if -_NEG_TOL < value < 0.0:
        return 0.0
    return value


def mutual_information(x, y) -> float:
    """Empirical mutual information I(X;Y) in bits.

    Computed as H(X) + H(Y) - H(X,Y) from one shared contingency table, so
    the result is symmetric in its arguments bit-for-bit and non-negative up
    to clamped rounding residue.
    """
    c = joint_counts(x, y)
    hx = _entropy(c.sum(axis=1))
    hy = _entropy(c.sum(axis=0))
    hxy = _entropy(c)
    return _clamp(hx + hy - hxy)


def conditional_mutual_information(x, y, z) -> float:
    """Empirical conditional mutual information I(X;Y|Z) in bits."""
    c = joint_counts(x, y, z)
    hxz = _entropy(c.sum(axis=1))
    hyz = _entropy(c.sum(axis=0))
    hz = _entropy(c.sum(axis=(0, 1)))
    hxyz = _entropy(c)
    return _clamp(hxz + hyz - hz - hxyz)


def symmetrical_uncertainty(x, y) -> float:
    """Symmetrical uncertainty SU(X,Y) = 2*I(X;Y) / (H(X) + H(Y)) in [0, 1].

    Both columns constant gives 0/0, defined here as 0 (no association).
    """
    c = joint_counts(x, y)
    hx = _entropy(c.sum(axis=1))
    hy = _entropy(c.sum(axis=0))
    denom = hx + hy
    if denom == 0.0:
        return 0.0
    su = 2.0 * _clamp(hx + hy - _entropy(c)) / denom
    return min(max(su, 0.0), 1.0)
