"""Supervised discretization by recursive entropy minimization (Fayyad-Irani).

A numeric column is cut at class-boundary midpoints chosen to minimize the
class-information entropy of the induced partition; each cut must pay for
itself under the MDL stopping rule before the two halves are split further.
Columns that never justify a cut become single-bin (arity 1) columns rather
than being dropped, so feature indices stay stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .validation import as_codes

__all__ = ["fit_cuts", "apply_cuts", "DiscretizationModel", "MDLPDiscretizer"]


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    """Entropy in bits of each row of a (m, n_classes) count matrix."""
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = counts / totals
        terms = np.where(counts > 0, p * np.log2(np.where(counts > 0, p, 1.0)), 0.0)
    return -terms.sum(axis=1)


def _check_values(values, name="values") -> np.ndarray:
    v = np.asarray(values, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"{name} must be 1-D")
    if v.size == 0:
        raise ValueError(f"{name} is empty")
    if np.isnan(v).any():
        raise ValueError(f"{name} contains NaN")
    return v


def fit_cuts(values, labels) -> np.ndarray:
    """Learn MDL-accepted cut points for one numeric column.

    Parameters
    ----------
    values : array-like of float
        Numeric column, NaN rejected.
    labels : array-like of int
        Class codes aligned with ``values``.

    Returns
    -------
    ndarray of float, sorted ascending, possibly empty.  Every cut lies at
    the midpoint of two adjacent distinct values whose instances are not all
    of one identical class (a class-boundary point).
    """
    v = _check_values(values)
    y = as_codes(labels, name="labels")
    if v.shape[0] != y.shape[0]:
        raise ValueError("values and labels differ in length")

    order = np.argsort(v, kind="stable")
    vs = v[order]
    ys = y[order]
    n = vs.shape[0]
    n_classes = int(ys.max()) + 1

    # prefix[i, c] = count of class c among the first i sorted rows
    onehot = np.zeros((n, n_classes), dtype=np.int64)
    onehot[np.arange(n), ys] = 1
    prefix = np.zeros((n + 1, n_classes), dtype=np.int64)
    np.cumsum(onehot, axis=0, out=prefix[1:])

    cuts: list[float] = []
    _split(vs, prefix, 0, n, cuts)
    return np.array(sorted(cuts), dtype=float)


def _candidates(vs: np.ndarray, prefix: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """Positions p in (lo, hi) that sit on a class boundary between runs."""
    changes = np.nonzero(vs[lo + 1 : hi] != vs[lo : hi - 1])[0] + lo + 1
    if changes.size == 0:
        return changes
    # run r spans [starts[r], starts[r+1]); a position is a candidate unless
    # the runs on both sides are pure and agree on the class
    starts = np.concatenate(([lo], changes, [hi]))
    run_counts = prefix[starts[1:]] - prefix[starts[:-1]]
    sizes = run_counts.sum(axis=1)
    majority = run_counts.max(axis=1)
    pure = majority == sizes
    label = run_counts.argmax(axis=1)
    left, right = np.arange(changes.size), np.arange(1, changes.size + 1)
    skip = pure[left] & pure[right] & (label[left] == label[right])
    return changes[~skip]


def _split(vs: np.ndarray, prefix: np.ndarray, lo: int, hi: int, cuts: list[float]) -> None:
    cand = _candidates(vs, prefix, lo, hi)
    if cand.size == 0:
        return

    n = hi - lo
    total = prefix[hi] - prefix[lo]
    h_all = _entropy_rows(total[None, :])[0]

    left_counts = prefix[cand] - prefix[lo]
    right_counts = prefix[hi] - prefix[cand]
    n_left = left_counts.sum(axis=1)
    n_right = right_counts.sum(axis=1)
    h_left = _entropy_rows(left_counts)
    h_right = _entropy_rows(right_counts)
    weighted = (n_left * h_left + n_right * h_right) / n

    best = int(np.argmin(weighted))  # ties resolve to the leftmost boundary
    p = int(cand[best])
    gain = h_all - weighted[best]

    k = int((total > 0).sum())
    k1 = int((left_counts[best] > 0).sum())
    k2 = int((right_counts[best] > 0).sum())
    delta = math.log2(3**k - 2) - (k * h_all - k1 * h_left[best] - k2 * h_right[best])
    threshold = (math.log2(n - 1) + delta) / n
    if gain <= threshold:
        return

    cuts.append(float((vs[p - 1] + vs[p]) / 2.0))
    _split(vs, prefix, lo, p, cuts)
    _split(vs, prefix, p, hi, cuts)


def apply_cuts(cuts, values) -> np.ndarray:
    """Map numeric values to bin codes: code = number of cuts <= value."""
    c = np.asarray(cuts, dtype=float)
    if c.ndim != 1:
        raise ValueError("cuts must be 1-D")
    if c.size and not (np.diff(c) > 0).all():
        raise ValueError("cuts must be strictly increasing")
    v = _check_values(values)
    return np.searchsorted(c, v, side="right").astype(np.intp)


@dataclass
class DiscretizationModel:
    """Per-feature cut points; ``None`` marks a column left as-is (nominal)."""

    cut_points: list[list[float] | None]
    feature_names: list[str] | None = None

    def __post_init__(self):
        cleaned: list[list[float] | None] = []
        for j, cuts in enumerate(self.cut_points):
            if cuts is None:
                cleaned.append(None)
                continue
            arr = [float(c) for c in cuts]
            if any(b <= a for a, b in zip(arr, arr[1:])):
                raise ValueError(f"cut points for feature {j} are not strictly increasing")
            cleaned.append(arr)
        self.cut_points = cleaned
        if self.feature_names is not None and len(self.feature_names) != len(self.cut_points):
            raise ValueError("feature_names and cut_points disagree in length")

    @property
    def n_features(self) -> int:
        return len(self.cut_points)

    def arity(self, j: int) -> int | None:
        cuts = self.cut_points[j]
        return None if cuts is None else len(cuts) + 1

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "artifact": "discretization_model",
            "version": __version__,
            "cut_points": [None if c is None else list(c) for c in self.cut_points],
            "feature_names": self.feature_names,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "DiscretizationModel":
        return cls(cut_points=d["cut_points"], feature_names=d.get("feature_names"))

    @classmethod
    def from_json(cls, text: str) -> "DiscretizationModel":
        return cls.from_dict(json.loads(text))


class MDLPDiscretizer(BaseEstimator, TransformerMixin):
    """Columnwise MDL discretizer with a fit/transform interface.

    Fit learns cut points per column of a numeric matrix against integer
    class labels; transform maps values to bin codes.  Zero-cut columns stay
    as single-bin columns.
    """

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValueError("X must be 2-D")
        y = as_codes(y, name="y")
        if X.shape[0] != y.shape[0]:
            raise ValueError("X and y disagree on the number of rows")
        self.cuts_ = [fit_cuts(X[:, j], y) for j in range(X.shape[1])]
        self.arities_ = np.array([c.size + 1 for c in self.cuts_], dtype=np.intp)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "cuts_"):
            raise RuntimeError("MDLPDiscretizer is not fitted")
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features_in_:
            raise ValueError(f"X must have {self.n_features_in_} columns")
        out = np.empty(X.shape, dtype=np.intp)
        for j, cuts in enumerate(self.cuts_):
            out[:, j] = apply_cuts(cuts, X[:, j])
        return out

    def to_model(self, feature_names=None) -> DiscretizationModel:
        if not hasattr(self, "cuts_"):
            raise RuntimeError("MDLPDiscretizer is not fitted")
        return DiscretizationModel(
            cut_points=[list(c) for c in self.cuts_],
            feature_names=list(feature_names) if feature_names is not None else None,
        )
