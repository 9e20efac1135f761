"""Baseline feature selectors: MIM, mRMR, CMIM, FCBF and ReliefF.

All selectors operate on integer-coded feature matrices and class vectors and
return a :class:`~rcdfs.selection.SelectionTrace`.  Index ties always break
toward the lowest feature index so every method is deterministic.
"""

from __future__ import annotations

import numpy as np

from .info import (
    conditional_mutual_information,
    mutual_information,
    symmetrical_uncertainty,
)
from .selection import SelectionTrace, _BaseSelector, _check_n_select, _relevances
from .validation import check_X_y

__all__ = [
    "mim_rank",
    "mrmr_select",
    "cmim_select",
    "fcbf_select",
    "relieff_rank",
    "MIM",
    "MRMR",
    "CMIM",
    "FCBF",
    "ReliefF",
]


def mim_rank(X, y, n_select) -> SelectionTrace:
    """Rank features by marginal relevance I(F;C) and keep the top n_select."""
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    rel = _relevances(X, y)
    order = np.argsort(-rel, kind="stable")[:n_select]
    iterations = [
        {
            "feature": int(f),
            "score": float(rel[f]),
            "relevance": float(rel[f]),
            "pair_cor": None,
            "sigma": None,
            "phi": None,
        }
        for f in order
    ]
    return SelectionTrace(
        method="mim",
        selected=[int(f) for f in order],
        iterations=iterations,
        requested=n_select,
    )


def mrmr_select(X, y, n_select) -> SelectionTrace:
    """Greedy mRMR: J(F) = I(F;C) - mean of I(F;F_s) over the selected set.

    The redundancy sum per candidate grows by one term per round (against the
    newest pick), so the whole run costs O(n_select * |F|) MI computations.
    """
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    rel = _relevances(X, y)

    first = int(np.argmax(rel))
    selected = [first]
    iterations = [_plain_record(first, float(rel[first]))]
    remaining = [f for f in range(X.shape[1]) if f != first]
    redundancy = np.zeros(X.shape[1])

    while len(selected) < n_select:
        newest = selected[-1]
        k = len(selected)
        best_f, best_score = None, None
        for f in remaining:
            redundancy[f] += mutual_information(X[:, f], X[:, newest])
            score = float(rel[f] - redundancy[f] / k)
            if best_score is None or score > best_score:
                best_f, best_score = f, score
        selected.append(best_f)
        remaining.remove(best_f)
        iterations.append(_plain_record(best_f, best_score))

    return SelectionTrace(
        method="mrmr", selected=selected, iterations=iterations, requested=n_select
    )


def cmim_select(X, y, n_select) -> SelectionTrace:
    """Greedy CMIM: J(F) = min over selected F_s of I(F;C|F_s).

    The empty min falls back to I(F;C), which fixes the first pick at the
    most relevant feature.  The running min per candidate absorbs one new
    conditional term per round.
    """
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    rel = _relevances(X, y)

    first = int(np.argmax(rel))
    selected = [first]
    iterations = [_plain_record(first, float(rel[first]))]
    remaining = [f for f in range(X.shape[1]) if f != first]
    min_cmi = np.full(X.shape[1], np.inf)

    while len(selected) < n_select:
        newest = selected[-1]
        best_f, best_score = None, None
        for f in remaining:
            term = conditional_mutual_information(X[:, f], y, X[:, newest])
            if term < min_cmi[f]:
                min_cmi[f] = term
            score = float(min_cmi[f])
            if best_score is None or score > best_score:
                best_f, best_score = f, score
        selected.append(best_f)
        remaining.remove(best_f)
        iterations.append(_plain_record(best_f, best_score))

    return SelectionTrace(
        method="cmim", selected=selected, iterations=iterations, requested=n_select
    )


def fcbf_select(X, y, threshold: float = 0.0) -> SelectionTrace:
    """Fast correlation-based filter with symmetrical uncertainty.

    Features with SU(F;C) > ``threshold`` are ranked by descending SU; walking
    the ranking, a feature F2 is eliminated whenever an earlier survivor F1
    has SU(F1;F2) >= SU(F2;C) (F1 subsumes F2's class information).  Output
    size is intrinsic to the data, not a parameter.
    """
    X, y = check_X_y(X, y)
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    su_class = np.array(
        [symmetrical_uncertainty(X[:, j], y) for j in range(X.shape[1])]
    )
    order = [int(f) for f in np.argsort(-su_class, kind="stable") if su_class[f] > threshold]

    alive = list(order)
    i = 0
    while i < len(alive):
        f1 = alive[i]
        kept = alive[: i + 1]
        for f2 in alive[i + 1 :]:
            if symmetrical_uncertainty(X[:, f1], X[:, f2]) >= su_class[f2]:
                continue
            kept.append(f2)
        alive = kept
        i += 1

    iterations = [
        {
            "feature": f,
            "score": float(su_class[f]),
            "relevance": None,
            "pair_cor": None,
            "sigma": None,
            "phi": None,
        }
        for f in alive
    ]
    return SelectionTrace(
        method="fcbf",
        selected=alive,
        iterations=iterations,
        requested=None,
        params={"threshold": float(threshold)},
    )


def relieff_rank(
    X,
    y,
    n_select,
    n_neighbors: int = 5,
    sample_size: int = 30,
    random_state: int = 0,
) -> SelectionTrace:
    """ReliefF ranking over integer codes with Hamming distance.

    Weights are accumulated over min(sample_size, n_rows) seeded sample rows
    drawn without replacement.  For each sample the n_neighbors nearest hits
    and, per other class, nearest misses are found (distance ties break to
    the lower row index); miss contributions are weighted by the class prior
    over 1 - P(class of the sample).  With 0/1 feature differences the
    resulting weights live in [-1, 1].
    """
    X, y = check_X_y(X, y)
    n_select = _check_n_select(n_select, X.shape[1])
    if n_neighbors < 1:
        raise ValueError("n_neighbors must be at least 1")
    if sample_size < 1:
        raise ValueError("sample_size must be at least 1")
    classes, class_counts = np.unique(y, return_counts=True)
    if classes.size < 2:
        raise ValueError("ReliefF needs at least two classes")
    n_rows, n_features = X.shape
    priors = {int(c): class_counts[i] / n_rows for i, c in enumerate(classes)}

    rng = np.random.default_rng(random_state)
    m = min(sample_size, n_rows)
    sample = np.sort(rng.choice(n_rows, size=m, replace=False))

    weights = np.zeros(n_features)
    row_ids = np.arange(n_rows)
    for i in sample:
        diffs = X != X[i]
        dist = diffs.sum(axis=1)
        same = int(y[i])
        for c in classes:
            c = int(c)
            pool = row_ids[(y == c) & (row_ids != i)]
            if pool.size == 0:
                continue
            nearest = pool[np.lexsort((pool, dist[pool]))][:n_neighbors]
            contrib = diffs[nearest].sum(axis=0) / (m * n_neighbors)
            if c == same:
                weights -= contrib
            else:
                weights += priors[c] / (1.0 - priors[same]) * contrib

    order = np.argsort(-weights, kind="stable")[:n_select]
    iterations = [
        {
            "feature": int(f),
            "score": float(weights[f]),
            "relevance": None,
            "pair_cor": None,
            "sigma": None,
            "phi": None,
        }
        for f in order
    ]
    return SelectionTrace(
        method="relieff",
        selected=[int(f) for f in order],
        iterations=iterations,
        requested=n_select,
        params={
            "n_neighbors": int(n_neighbors),
            "sample_size": int(sample_size),
            "random_state": int(random_state),
        },
    )


def _plain_record(feature: int, score: float) -> dict:
    return {
        "feature": int(feature),
        "score": float(score),
        "relevance": None,
        "pair_cor": None,
        "sigma": None,
        "phi": None,
    }


class MIM(_BaseSelector):
    """Top-k features by marginal mutual information with the class."""

    def __init__(self, n_features_to_select: int = 10):
        self.n_features_to_select = n_features_to_select

    def _fit_trace(self, X, y):
        return mim_rank(X, y, self.n_features_to_select)


class MRMR(_BaseSelector):
    """Greedy minimum-redundancy maximum-relevance selector."""

    def __init__(self, n_features_to_select: int = 10):
        self.n_features_to_select = n_features_to_select

    def _fit_trace(self, X, y):
        return mrmr_select(X, y, self.n_features_to_select)


class CMIM(_BaseSelector):
    """Greedy conditional mutual information maximization selector."""

    def __init__(self, n_features_to_select: int = 10):
        self.n_features_to_select = n_features_to_select

    def _fit_trace(self, X, y):
        return cmim_select(X, y, self.n_features_to_select)


class FCBF(_BaseSelector):
    """Fast correlation-based filter; output size is data-driven."""

    def __init__(self, threshold: float = 0.0):
        self.threshold = threshold

    def _fit_trace(self, X, y):
        return fcbf_select(X, y, self.threshold)


class ReliefF(_BaseSelector):
    """ReliefF ranking selector over integer codes."""

    def __init__(
        self,
        n_features_to_select: int = 10,
        n_neighbors: int = 5,
        sample_size: int = 30,
        random_state: int = 0,
    ):
        self.n_features_to_select = n_features_to_select
        self.n_neighbors = n_neighbors
        self.sample_size = sample_size
        self.random_state = random_state

    def _fit_trace(self, X, y):
        return relieff_rank(
            X,
            y,
            self.n_features_to_select,
            n_neighbors=self.n_neighbors,
            sample_size=self.sample_size,
            random_state=self.random_state,
        )
